#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "kaccoh/cartan.hpp"
#include "kaccoh/exactlin.hpp"

namespace kaccoh {

// All monomials of total degree d in n variables, ordered lexicographically
// by exponent vector, largest first (so degree 1 lists w_1,...,w_n in order).
// The order is shared by every matrix, basis and table in a run.
struct MonomialBasis {
    int n = 0;
    int d = 0;
    std::vector<std::vector<int>> exps;
    std::map<std::vector<int>, std::size_t> index;

    std::size_t size() const { return exps.size(); }
};

MonomialBasis make_monomial_basis(int n, int d);

// One compressed slice of P_J per polynomial degree.
struct GradedSubspace {
    int n = 0;
    std::map<int, SubspaceBasis> pieces;
    int computed_through = -1;
};

// Per-matrix computation context: owns the Cartan matrix and all memo
// caches (monomial bases, generator action columns, invariant bases and
// dimensions, lattice-expression evaluations). Reads and writes are
// mutex-guarded; degree slices can be dropped once a consumer is done
// with them while the dimension record stays.
class Context {
  public:
    explicit Context(CartanMatrix A);

    const CartanMatrix& cartan() const { return A_; }
    int n() const { return A_.n; }

    const MonomialBasis& monomials(int d);

    // Sparse columns of the degree-d action of generator i: column j lists
    // (row, coefficient) for the expansion of sigma_i applied to monomial j.
    using SparseCol = std::vector<std::pair<std::size_t, Integer>>;
    const std::vector<SparseCol>& generator_action(int i, int d);

    SubspaceBasis invariant_piece(Subset J, int d);
    long invariant_dim(Subset J, int d);

    SubspaceBasis eval_cached(const std::string& key, int d,
                              const std::function<SubspaceBasis()>& compute);
    std::optional<long> eval_dim_cached(const std::string& key, int d);

    // Drop the degree-d bases and action matrices; dimension tables persist.
    void release_degree(int d);

  private:
    CartanMatrix A_;
    std::mutex mu_;
    std::map<int, std::unique_ptr<MonomialBasis>> monomials_;
    std::map<std::pair<int, int>, std::unique_ptr<std::vector<SparseCol>>> actions_;
    std::map<std::pair<Subset, int>, SubspaceBasis> invariants_;
    std::map<std::pair<Subset, int>, long> invariant_dims_;
    std::map<std::pair<std::string, int>, SubspaceBasis> exprs_;
    std::map<std::pair<std::string, int>, long> expr_dims_;

    SubspaceBasis compute_invariant(Subset J, int d);
};

// Matrix of the substitution action of M on the degree-d monomial basis:
// functorial, action(M1 M2, d) = action(M1, d) action(M2, d), and equal to
// M itself at d = 1.
RationalMatrix action_on_degree(Context& ctx, const RationalMatrix& M, int d);

GradedSubspace invariant_subspace(Context& ctx, Subset J, int max_poly_degree);

}  // namespace kaccoh
