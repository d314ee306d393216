#pragma once

#include <map>
#include <optional>
#include <vector>

#include "kaccoh/gradedlat.hpp"

namespace kaccoh {

struct FiniteTypeInput : std::runtime_error {
    explicit FiniteTypeInput(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyOrder : std::runtime_error {
    explicit EmptyOrder(const std::string& what) : std::runtime_error(what) {}
};

struct MethodMismatch : std::runtime_error {
    explicit MethodMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct ItemList {
    std::vector<Item> items;     // descending shift; the final atom item last
    std::vector<Subset> order;   // maximal simplices in the order processed
};

// The step-by-step transformation of the item list, one step per maximal
// simplex. Purely symbolic; 2^{d-1} items after d steps, exactly one of
// them unsuspended and denominator-free (the atom of the running union).
ItemList run_algorithm(const std::vector<Subset>& maximal_in_order);

struct CohomologyResult {
    ItemList items;
    std::vector<DimensionTable> per_item;
    std::vector<bool> zero_up_to_cutoff;  // per item: dims vanish through D
    DimensionTable total;
    std::map<int, DimensionTable> by_shift;
    int max_degree = 0;
};

// Runs the algorithm on C(A)'s maximal simplices and evaluates every item
// through cohomological degree D. Throws FiniteTypeInput for finite type
// (the answer is then P_S via the invariants path).
CohomologyResult cohomology(Context& ctx, int max_degree,
                            std::optional<std::vector<Subset>> order = std::nullopt);

// Rational solution C of X A_I = A_{JI} (J = S \ I), when one exists.
// A solution is verified to make the span of the adjusted weights
// invariant under every sigma_i, i in I.
std::optional<RationalMatrix> prop51_change_of_basis(const CartanMatrix& A, Subset I);

// Lower-left block of U^{-1} sigma_i U vanishes for all i in I, where U
// adjoins C-corrections to the I-weights.
bool prop51_block_check(const CartanMatrix& A, Subset I, const RationalMatrix& C);

// dim P_I(d) equals the |I|-variable invariant dims of A_I convolved with
// the monomial counts in n-|I| variables, for d = 0..max_poly_degree.
bool prop51_dimension_check(Context& ctx, Subset I, int max_poly_degree);

// Residual dims of P - (P_1 + ... + P_n), reported at cohomological
// degrees 2d; all zeros iff the sum conjecture holds through the cutoff.
DimensionTable conjecture_sum_check(Context& ctx, int max_poly_degree);

// P^{W(A)} computed both from joint generator fixed points and as the
// degreewise intersection over the maximal simplices; the two canonical
// bases must agree (MethodMismatch otherwise). Cohomological grading.
DimensionTable borel_image_dims(Context& ctx, int max_degree);

}  // namespace kaccoh
