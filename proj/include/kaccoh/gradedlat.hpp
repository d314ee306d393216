#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kaccoh/cartan.hpp"
#include "kaccoh/invariants.hpp"

namespace kaccoh {

// Expression tree over the invariant subrings P_J: atoms, sums and
// intersections. Construction canonicalizes: nested sums/intersections are
// flattened, duplicate children dropped, atom children of an intersection
// merged via P_J cap P_K = P_{J u K}, P (= Atom {}) absorbs sums, and
// children are sorted, so equal expressions are pointer-free identical and
// print identically.
struct Expr {
    enum class Kind { Atom, Sum, Intersect };
    Kind kind = Kind::Atom;
    Subset atom = 0;
    std::vector<std::shared_ptr<const Expr>> children;
};

using ExprPtr = std::shared_ptr<const Expr>;

ExprPtr make_atom(Subset J);
ExprPtr make_sum(std::vector<ExprPtr> children);
ExprPtr make_intersect(std::vector<ExprPtr> children);

// Total order on canonical expressions; 0 iff structurally equal.
int expr_cmp(const ExprPtr& a, const ExprPtr& b);
bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// Paper notation: P, P_123, P_1(cap)(P_2+P_3), subscripts 1-based.
std::string expr_to_string(const ExprPtr& e);

// Replace every Atom(J) by Atom(J cap K); results re-canonicalized.
ExprPtr bar_substitute(const ExprPtr& e, Subset K);

// Sound symbolic subset test: true implies eval(inner) <= eval(outer) at
// every degree. Used for the paper's "zero for trivial reason" deletions.
bool obviously_contains(const ExprPtr& outer, const ExprPtr& inner);

// Quotient-free evaluation at one polynomial degree, memoized in ctx.
SubspaceBasis eval_subexpr(Context& ctx, const ExprPtr& e, int d);

// Graded dimensions indexed by cohomological degree 0..max_degree.
struct DimensionTable {
    int max_degree = 0;
    std::vector<long> dims;  // size max_degree + 1

    explicit DimensionTable(int max_deg = 0)
        : max_degree(max_deg), dims(static_cast<std::size_t>(max_deg) + 1, 0) {}
    long at(int n) const { return dims[static_cast<std::size_t>(n)]; }
    bool operator==(const DimensionTable& o) const = default;
};

// One summand of the answer: Sigma^r (numerator - denominator). The final
// item of a run has no denominator and no suspension.
struct Item {
    int shift = 0;
    ExprPtr numerator;
    ExprPtr denominator;       // null for the final item
    bool trivially_zero = false;  // symbolic containment of num in den
};

std::string item_to_string(const Item& it);

struct QuotientNotNested : std::runtime_error {
    int degree;  // polynomial degree where the containment failed
    QuotientNotNested(int d, const std::string& what) : std::runtime_error(what), degree(d) {}
};

// Entry at N = 2d + shift is dim(num)_d - dim(den)_d; checks den <= num at
// every evaluated degree and throws QuotientNotNested otherwise.
DimensionTable item_dims(Context& ctx, const Item& it, int max_cohomological_degree);

}  // namespace kaccoh
