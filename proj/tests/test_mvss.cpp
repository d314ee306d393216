#include <doctest.h>

#include <algorithm>
#include <random>

#include "kaccoh/mvss.hpp"

using namespace kaccoh;

namespace {

CartanMatrix cm(const std::vector<std::vector<long>>& raw) { return validate(raw); }

Subset S(std::initializer_list<int> one_based) {
    Subset s = 0;
    for (int i : one_based) s |= Subset(1) << (i - 1);
    return s;
}

std::vector<std::string> surviving_strings(const ItemList& items) {
    std::vector<std::string> out;
    for (const Item& it : items.items)
        if (!it.trivially_zero) out.push_back(item_to_string(it));
    return out;
}

std::vector<std::string> run_strings(const std::vector<Subset>& maximal) {
    return surviving_strings(run_algorithm(maximal));
}

}  // namespace

TEST_CASE("two-simplex step") {
    // Sigma(P_{I1 cap I2} - (P_{I1}+P_{I2})) + P_{I1 cup I2}
    auto items = run_algorithm({S({1, 2}), S({1, 3})});
    REQUIRE(items.items.size() == 2);
    CHECK(item_to_string(items.items[0]) == "Σ(P_1 - (P_12+P_13))");
    CHECK(item_to_string(items.items[1]) == "P_123");
}

TEST_CASE("rank-3 lists match the published tables") {
    SUBCASE("case 1: {1},{2},{3}") {
        CHECK(run_strings({S({1}), S({2}), S({3})}) ==
              std::vector<std::string>{"Σ(P - (P_1+P_2))", "Σ(P - (P_12+P_3))", "P_123"});
    }
    SUBCASE("case 2: {1,2},{3}") {
        CHECK(run_strings({S({1, 2}), S({3})}) ==
              std::vector<std::string>{"Σ(P - (P_12+P_3))", "P_123"});
    }
    SUBCASE("case 3: {1,2},{1,3}") {
        CHECK(run_strings({S({1, 2}), S({1, 3})}) ==
              std::vector<std::string>{"Σ(P_1 - (P_12+P_13))", "P_123"});
    }
    SUBCASE("case 4: {1,2},{1,3},{2,3}") {
        CHECK(run_strings({S({1, 2}), S({1, 3}), S({2, 3})}) ==
              std::vector<std::string>{"Σ^2(P - (P_1+P_2+P_3))",
                                       "Σ(P_1∩(P_2+P_3) - (P_12+P_13))", "P_123"});
    }
}

TEST_CASE("rank-4 lists match the published tables") {
    SUBCASE("case 1: singletons") {
        CHECK(run_strings({S({1}), S({2}), S({3}), S({4})}) ==
              std::vector<std::string>{"Σ(P - (P_1+P_2))", "Σ(P - (P_12+P_3))",
                                       "Σ(P - (P_123+P_4))", "P_1234"});
    }
    SUBCASE("case 3: {1,2},{3,4}") {
        CHECK(run_strings({S({1, 2}), S({3, 4})}) ==
              std::vector<std::string>{"Σ(P - (P_12+P_34))", "P_1234"});
    }
    SUBCASE("case 5: {1,2},{1,3},{1,4}") {
        CHECK(run_strings({S({1, 2}), S({1, 3}), S({1, 4})}) ==
              std::vector<std::string>{"Σ(P_1 - (P_12+P_13))", "Σ(P_1 - (P_123+P_14))",
                                       "P_1234"});
    }
    SUBCASE("case 11: all six pairs") {
        CHECK(run_strings({S({1, 2}), S({1, 3}), S({1, 4}), S({2, 3}), S({2, 4}), S({3, 4})}) ==
              std::vector<std::string>{
                  "Σ^2(P - (P_1+P_2+P_3))", "Σ^2(P - (P_1+P_2+P_4))",
                  "Σ^2(P - (P_1∩(P_2+P_4)+P_3+P_4))",
                  "Σ(P_1∩(P_2+P_4)∩(P_3+P_4) - (P_123+P_14))",
                  "Σ(P_1∩(P_2+P_3) - (P_12+P_13))", "P_1234"});
    }
    SUBCASE("case 16: {1,2,3},{1,2,4}") {
        CHECK(run_strings({S({1, 2, 3}), S({1, 2, 4})}) ==
              std::vector<std::string>{"Σ(P_12 - (P_123+P_124))", "P_1234"});
    }
    SUBCASE("case 19: all four triples") {
        CHECK(run_strings({S({1, 2, 3}), S({1, 2, 4}), S({1, 3, 4}), S({2, 3, 4})}) ==
              std::vector<std::string>{
                  "Σ^3(P - (P_1+P_2+P_3+P_4))",
                  "Σ^2(P_1∩(P_2+P_3+P_4) - (P_12+P_13+P_14))",
                  "Σ^2(P_2∩(P_3+P_4) - (P_12∩(P_13+P_14)+P_23+P_24))",
                  "Σ(P_12∩(P_13+P_14)∩(P_23+P_24) - (P_123+P_124))", "P_1234"});
    }
}

TEST_CASE("generic four-simplex run instantiates the step-4 shape") {
    // Venn construction: S = {1..15}, element T for each nonempty subset of
    // {1,2,3,4}, I_i collects the elements whose label contains i. All
    // intersections and unions are distinct, so nothing collapses.
    std::vector<Subset> maximal(4, 0);
    for (Subset t = 1; t < 16; ++t)
        for (int i = 0; i < 4; ++i)
            if (t & (Subset(1) << i)) maximal[static_cast<std::size_t>(i)] |= Subset(1) << (t - 1);

    auto atom = [&](Subset s) { return make_atom(s); };
    const Subset I1 = maximal[0], I2 = maximal[1], I3 = maximal[2], I4 = maximal[3];
    std::vector<Item> expected;
    expected.push_back(Item{3, atom(I1 & I2 & I3 & I4),
                            make_sum({atom(I1 & I2 & I3), atom(I1 & I2 & I4), atom(I1 & I3 & I4),
                                      atom(I2 & I3 & I4)}),
                            false});
    expected.push_back(Item{2, atom((I1 | I2) & I3 & I4),
                            make_sum({atom((I1 | I2) & I3), atom((I1 | I2) & I4), atom(I3 & I4)}),
                            false});
    expected.push_back(
        Item{2, make_intersect({atom(I1 & I2 & I4), make_sum({atom(I1 & I3 & I4), atom(I2 & I3 & I4)})}),
             make_sum({make_intersect({atom(I1 & I2), make_sum({atom(I1 & I3), atom(I2 & I3)})}),
                       atom(I1 & I4), atom(I2 & I4)}),
             false});
    expected.push_back(
        Item{2,
             make_intersect({atom(I1 & I2 & I3),
                             make_sum({atom(I1 & I2 & I4), atom(I1 & I3 & I4), atom(I2 & I3 & I4)})}),
             make_sum({atom(I1 & I2), atom(I1 & I3), atom(I2 & I3)}), false});
    expected.push_back(Item{1, atom((I1 | I2 | I3) & I4),
                            make_sum({atom(I1 | I2 | I3), atom(I4)}), false});
    expected.push_back(
        Item{1,
             make_intersect({atom((I1 | I2) & I3), make_sum({atom((I1 | I2) & I4), atom(I3 & I4)})}),
             make_sum({atom(I1 | I2), atom(I3)}), false});
    expected.push_back(
        Item{1,
             make_intersect({atom(I1 & I2), make_sum({atom(I1 & I3), atom(I2 & I3)}),
                             make_sum({atom(I1 & I4), atom(I2 & I4)})}),
             make_sum({atom(I1), atom(I2)}), false});
    expected.push_back(Item{0, atom(I1 | I2 | I3 | I4), nullptr, false});

    ItemList run = run_algorithm(maximal);
    REQUIRE(run.items.size() == 8);
    std::vector<std::string> got, want;
    for (const Item& it : run.items) got.push_back(item_to_string(it));
    for (const Item& it : expected) want.push_back(item_to_string(it));
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    CHECK(got == want);
}

TEST_CASE("item list structure") {
    std::mt19937 rng(41);
    for (int t = 0; t < 10; ++t) {
        int d = 2 + static_cast<int>(rng() % 4);
        std::vector<Subset> maximal;
        for (int i = 0; i < d; ++i) maximal.push_back(1 + rng() % 200);
        ItemList run = run_algorithm(maximal);
        CHECK(run.items.size() == (std::size_t(1) << (d - 1)));
        // exactly one unsuspended, denominator-free item: the union atom, last
        std::size_t finals = 0;
        for (const Item& it : run.items)
            if (!it.denominator) {
                ++finals;
                CHECK(it.shift == 0);
            }
        CHECK(finals == 1);
        Subset uni = 0;
        for (Subset s : maximal) uni |= s;
        CHECK(expr_equal(run.items.back().numerator, make_atom(uni)));
        CHECK_FALSE(run.items.back().denominator);
        // sorted by descending shift
        for (std::size_t i = 0; i + 1 < run.items.size(); ++i)
            CHECK(run.items[i].shift >= run.items[i + 1].shift);
    }
    CHECK_THROWS_AS(run_algorithm({}), EmptyOrder);
}

TEST_CASE("cohomology refuses finite type") {
    Context ctx(cm({{2, -1}, {-1, 2}}));
    CHECK_THROWS_AS(cohomology(ctx, 10), FiniteTypeInput);
}

TEST_CASE("cohomology of the rank-2 affine matrix") {
    Context ctx(cm({{2, -2}, {-2, 2}}));
    CohomologyResult res = cohomology(ctx, 12);
    CHECK(res.items.items.size() == 2);
    CHECK(res.total.at(0) == 1);  // constants
    // degree-0 total is always 1 and parity holds per shift
    for (const auto& [r, table] : res.by_shift)
        for (int N = 0; N <= 12; ++N)
            if ((N - r) % 2 != 0) CHECK(table.at(N) == 0);
    // the final item P_{12} contributes the invariant dims at even degrees
    Context fresh(cm({{2, -2}, {-2, 2}}));
    for (int d = 0; d <= 6; ++d)
        CHECK(res.by_shift.at(0).at(2 * d) == fresh.invariant_dim(0b11, d));
}

TEST_CASE("order invariance of the totals") {
    CartanMatrix A = cm({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}});
    std::vector<Subset> maximal{S({1, 2}), S({1, 3}), S({2, 3})};
    std::sort(maximal.begin(), maximal.end());
    std::optional<DimensionTable> reference;
    do {
        Context ctx(A);
        CohomologyResult res = cohomology(ctx, 12, maximal);
        if (!reference) reference = res.total;
        else CHECK(res.total == *reference);
    } while (std::next_permutation(maximal.begin(), maximal.end()));
}

TEST_CASE("prop51 change of basis") {
    SUBCASE("worked example") {
        CartanMatrix A = cm({{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}});
        auto C = prop51_change_of_basis(A, S({1, 2}));
        REQUIRE(C.has_value());
        REQUIRE(C->rows == 1);
        REQUIRE(C->cols == 2);
        CHECK(C->at(0, 0) == Rational(-2, 3));
        CHECK(C->at(0, 1) == Rational(-4, 3));
        CHECK(prop51_block_check(A, S({1, 2}), *C));
    }
    SUBCASE("invertible principal block always solves") {
        CartanMatrix A = cm({{2, -1, -1}, {-1, 2, -3}, {-1, -1, 2}});
        for (Subset I : {S({1}), S({2}), S({3}), S({1, 2}), S({1, 3}), S({2, 3})})
            CHECK(prop51_change_of_basis(A, I).has_value());
    }
    SUBCASE("inconsistent singular system returns nothing") {
        CartanMatrix A = cm({{2, -2, -1}, {-2, 2, -1}, {-1, -1, 2}});
        CHECK_FALSE(prop51_change_of_basis(A, S({1, 2})).has_value());
    }
    SUBCASE("consistent singular system still solves") {
        CartanMatrix A = cm({{2, -2, 0}, {-2, 2, 0}, {0, 0, 2}});
        CHECK(prop51_change_of_basis(A, S({1, 2})).has_value());
    }
}

TEST_CASE("prop51 dimension factorization") {
    Context ctx(cm({{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}}));
    CHECK(prop51_dimension_check(ctx, S({1, 2}), 6));
    CHECK(prop51_dimension_check(ctx, S({1}), 6));
    CHECK(prop51_dimension_check(ctx, S({2, 3}), 6));
}

TEST_CASE("conjecture residual for the rank-2 affine matrix") {
    Context ctx(cm({{2, -2}, {-2, 2}}));
    DimensionTable residual = conjecture_sum_check(ctx, 4);
    CHECK(residual.at(0) == 0);
    CHECK(residual.at(2) == 0);  // the two fixed lines span the weights
    CHECK(residual.at(4) == 0);
}

TEST_CASE("borel image dims, both routes agreeing") {
    Context ctx(cm({{2, -2}, {-2, 2}}));
    DimensionTable t = borel_image_dims(ctx, 12);
    CHECK(t.at(0) == 1);
    CHECK(t.at(2) == 0);
    CHECK(t.at(4) == 1);  // the invariant quadratic of the rank-2 affine pair
}
