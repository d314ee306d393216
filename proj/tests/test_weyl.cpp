#include <doctest.h>

#include "kaccoh/cartan.hpp"
#include "kaccoh/weyl.hpp"

using namespace kaccoh;

namespace {
CartanMatrix cm(const std::vector<std::vector<long>>& raw) { return validate(raw); }
}

TEST_CASE("reflection matrices") {
    CartanMatrix a2 = cm({{2, -1}, {-1, 2}});
    ReflectionMatrix s1 = reflection_matrix(a2, 0);
    CHECK(s1.m == RationalMatrix::from_rows({{-1, 0}, {1, 1}}));

    // column i is e_i minus column i of A
    CartanMatrix aff = cm({{2, -2}, {-2, 2}});
    ReflectionMatrix s2 = reflection_matrix(aff, 1);
    CHECK(s2.m == RationalMatrix::from_rows({{1, 2}, {0, -1}}));

    CHECK_THROWS_AS(reflection_matrix(a2, 2), std::out_of_range);
}

TEST_CASE("every reflection is an involution") {
    CartanMatrix A = cm({{2, -1, -2}, {-3, 2, -2}, {-2, -2, 2}});
    RationalMatrix id = RationalMatrix::identity(3);
    for (int i = 0; i < 3; ++i) {
        RationalMatrix m = reflection_matrix(A, i).m;
        CHECK(m * m == id);
    }
}

TEST_CASE("subgroup enumeration orders") {
    CartanMatrix a2 = cm({{2, -1}, {-1, 2}});
    CHECK(enumerate_subgroup(a2, 0b11).order == 6);
    CHECK(enumerate_subgroup(a2, 0).order == 1);
    CHECK(enumerate_subgroup(a2, 0b01).order == 2);

    CartanMatrix b2 = cm({{2, -2}, {-1, 2}});
    CHECK(enumerate_subgroup(b2, 0b11).order == 8);

    CartanMatrix g2 = cm({{2, -1}, {-3, 2}});
    CHECK(enumerate_subgroup(g2, 0b11).order == 12);

    CartanMatrix a3 = cm({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}});
    CHECK(enumerate_subgroup(a3, 0b111).order == 24);

    CartanMatrix b3 = cm({{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}});
    CHECK(enumerate_subgroup(b3, 0b111).order == 48);
}

TEST_CASE("subgroup orders match dynkin weyl orders inside a bigger matrix") {
    // A2 pair and a G2 pair living inside a rank-3 matrix of infinite type
    CartanMatrix A = cm({{2, -1, -1}, {-1, 2, -3}, {-1, -1, 2}});
    CHECK(enumerate_subgroup(A, 0b011).order == 6);
    CHECK(enumerate_subgroup(A, 0b110).order == 12);
}

TEST_CASE("enumeration refusals") {
    CartanMatrix aff = cm({{2, -2}, {-2, 2}});
    CHECK_THROWS_AS(enumerate_subgroup(aff, 0b11), NotFiniteType);
    CartanMatrix a3 = cm({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}});
    CHECK_THROWS_AS(enumerate_subgroup(a3, 0b111, 10), CapExceeded);
}

TEST_CASE("group closure") {
    CartanMatrix b2 = cm({{2, -2}, {-1, 2}});
    WeylSubgroup W = enumerate_subgroup(b2, 0b11);
    // closed under product
    for (const auto& g : W.elements)
        for (const auto& h : W.elements) {
            RationalMatrix gh = g * h;
            bool found = false;
            for (const auto& e : W.elements)
                if (e == gh) {
                    found = true;
                    break;
                }
            CHECK(found);
        }
}

TEST_CASE("molien series") {
    CartanMatrix a2 = cm({{2, -1}, {-1, 2}});

    SUBCASE("trivial group counts all monomials") {
        WeylSubgroup triv = enumerate_subgroup(a2, 0);
        CHECK(molien_dims(triv, 5) == std::vector<long>{1, 2, 3, 4, 5, 6});
    }
    SUBCASE("W_{1} inside A2") {
        WeylSubgroup W = enumerate_subgroup(a2, 0b01);
        CHECK(molien_dims(W, 4) == std::vector<long>{1, 1, 2, 2, 3});
    }
    SUBCASE("full W(A2) gives 1/((1-t^2)(1-t^3))") {
        WeylSubgroup W = enumerate_subgroup(a2, 0b11);
        CHECK(molien_dims(W, 6) == std::vector<long>{1, 0, 1, 1, 1, 1, 2});
    }
}

TEST_CASE("reverse characteristic polynomial") {
    RationalMatrix m = RationalMatrix::from_rows({{-1, 0}, {1, 1}});
    // det(I - tM) = (1+t)(1-t)
    auto p = reverse_char_poly(m);
    CHECK(p == std::vector<Rational>{1, 0, -1});
}
