#include <doctest.h>

#include "kaccoh/gradedlat.hpp"

using namespace kaccoh;

namespace {

ExprPtr P(std::initializer_list<int> one_based) {
    Subset s = 0;
    for (int i : one_based) s |= Subset(1) << (i - 1);
    return make_atom(s);
}

CartanMatrix cm(const std::vector<std::vector<long>>& raw) { return validate(raw); }

}  // namespace

TEST_CASE("canonicalization") {
    SUBCASE("sum flattening, sorting, idempotence") {
        ExprPtr e = make_sum({P({2}), make_sum({P({1}), P({2})})});
        CHECK(expr_to_string(e) == "P_1+P_2");
        CHECK(expr_equal(make_sum({e, e}), e));
    }
    SUBCASE("P absorbs sums") {
        CHECK(expr_to_string(make_sum({P({1}), P({})})) == "P");
    }
    SUBCASE("atom children of an intersection merge by union") {
        CHECK(expr_to_string(make_intersect({P({1}), P({2})})) == "P_12");
        CHECK(expr_to_string(make_intersect({P({1, 2}), P({})})) == "P_12");
    }
    SUBCASE("intersection keeps sums unexpanded") {
        ExprPtr e = make_intersect({P({1}), make_sum({P({2}), P({3})})});
        CHECK(expr_to_string(e) == "P_1∩(P_2+P_3)");
    }
    SUBCASE("ordering matches the worked examples") {
        ExprPtr e = make_sum({P({3}), P({4}), make_intersect({P({1}), make_sum({P({2}), P({4})})})});
        CHECK(expr_to_string(e) == "P_1∩(P_2+P_4)+P_3+P_4");
        ExprPtr i = make_intersect({make_sum({P({2, 3}), P({2, 4})}), P({1, 2}),
                                    make_sum({P({1, 3}), P({1, 4})})});
        CHECK(expr_to_string(i) == "P_12∩(P_13+P_14)∩(P_23+P_24)");
    }
}

TEST_CASE("bar_substitute") {
    CHECK(expr_to_string(bar_substitute(P({1, 2}), subset_of({0, 2}))) == "P_1");
    ExprPtr sum = make_sum({P({1, 2}), P({3, 4})});
    CHECK(expr_to_string(bar_substitute(sum, subset_of({0, 2}))) == "P_1+P_3");
    // K = S is the identity
    CHECK(expr_equal(bar_substitute(sum, subset_of({0, 1, 2, 3})), sum));
}

TEST_CASE("obviously_contains") {
    CHECK(obviously_contains(P({1}), P({1, 2})));
    CHECK_FALSE(obviously_contains(P({1, 2}), P({1})));
    CHECK(obviously_contains(make_sum({P({1}), P({2})}), P({1, 2})));
    CHECK(obviously_contains(make_sum({P({1, 2, 3}), P({2, 3})}), P({2, 3})));
    CHECK(obviously_contains(P({1}), make_intersect({P({1, 2}), make_sum({P({1, 3}), P({2, 3})})})));
    CHECK_FALSE(obviously_contains(make_sum({P({1, 2}), P({1, 3})}), P({1})));
}

TEST_CASE("eval_subexpr") {
    Context ctx(cm({{2, -1, -1}, {-1, 2, -2}, {-1, -2, 2}}));
    SUBCASE("atom of the empty set is the full space") {
        for (int d = 0; d <= 4; ++d)
            CHECK(eval_subexpr(ctx, P({}), d).dim() == ctx.monomials(d).size());
    }
    SUBCASE("intersection of atoms equals the union atom degreewise") {
        for (int d = 0; d <= 5; ++d) {
            SubspaceBasis lhs = subspace_intersect(eval_subexpr(ctx, P({1}), d),
                                                   eval_subexpr(ctx, P({2}), d));
            CHECK(lhs == eval_subexpr(ctx, P({1, 2}), d));
        }
    }
    SUBCASE("memoized evaluation is consistent") {
        ExprPtr e = make_intersect({P({1}), make_sum({P({2}), P({3})})});
        SubspaceBasis first = eval_subexpr(ctx, e, 3);
        CHECK(eval_subexpr(ctx, e, 3) == first);
    }
}

TEST_CASE("bar inflation: eval(e) <= eval(bar(e))") {
    Context ctx(cm({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}));
    std::vector<ExprPtr> exprs{
        P({1, 2}),
        make_sum({P({1, 2}), P({1, 3})}),
        make_intersect({P({1}), make_sum({P({2}), P({3})})}),
    };
    for (const ExprPtr& e : exprs)
        for (Subset K : {subset_of({0, 1}), subset_of({2}), subset_of({0, 2})})
            for (int d = 0; d <= 4; ++d)
                CHECK(contains(eval_subexpr(ctx, bar_substitute(e, K), d),
                               eval_subexpr(ctx, e, d)));
}

TEST_CASE("item printing") {
    Item it{2, make_intersect({P({1}), make_sum({P({2}), P({3})})}),
            make_sum({P({1, 2}), P({1, 3})}), false};
    CHECK(item_to_string(it) == "Σ^2(P_1∩(P_2+P_3) - (P_12+P_13))");
    Item fin{0, P({1, 2, 3}), nullptr, false};
    CHECK(item_to_string(fin) == "P_123");
    Item s1{1, P({}), make_sum({P({1}), P({2})}), false};
    CHECK(item_to_string(s1) == "Σ(P - (P_1+P_2))");
}

TEST_CASE("item_dims") {
    Context ctx(cm({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}));
    SUBCASE("self-quotients vanish and respect parity") {
        Item zero{1, P({1}), P({1}), false};
        DimensionTable t = item_dims(ctx, zero, 8);
        CHECK(t.dims == std::vector<long>(9, 0));
    }
    SUBCASE("entries sit at 2d + shift") {
        Item it{1, P({}), make_sum({P({1}), P({2})}), false};
        DimensionTable t = item_dims(ctx, it, 7);
        for (int N = 0; N <= 7; N += 2) CHECK(t.at(N) == 0);  // parity
        CHECK(t.at(1) == 0);  // constants lie inside P_1 + P_2
    }
    SUBCASE("guard fires when the quotient is not nested") {
        Item bad{1, P({1, 2}), P({1}), false};  // P_1 is bigger than P_12
        CHECK_THROWS_AS(item_dims(ctx, bad, 6), QuotientNotNested);
    }
}
