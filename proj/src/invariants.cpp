#include "kaccoh/invariants.hpp"

#include <bit>
#include <functional>

#include "kaccoh/weyl.hpp"

namespace kaccoh {

namespace {

void gen_exponents(int n, int d, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == n - 1) {
        cur.push_back(d);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int e = d; e >= 0; --e) {
        cur.push_back(e);
        gen_exponents(n, d - e, cur, out);
        cur.pop_back();
    }
}

Integer binomial(int n, int k) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return b;
}

}  // namespace

MonomialBasis make_monomial_basis(int n, int d) {
    MonomialBasis b;
    b.n = n;
    b.d = d;
    if (n == 0) {
        if (d == 0) b.exps.push_back({});
    } else {
        std::vector<int> cur;
        gen_exponents(n, d, cur, b.exps);
    }
    for (std::size_t i = 0; i < b.exps.size(); ++i) b.index[b.exps[i]] = i;
    return b;
}

Context::Context(CartanMatrix A) : A_(std::move(A)) {}

const MonomialBasis& Context::monomials(int d) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = monomials_.find(d);
    if (it == monomials_.end()) {
        it = monomials_.emplace(d, std::make_unique<MonomialBasis>(make_monomial_basis(A_.n, d)))
                 .first;
    }
    return *it->second;
}

const std::vector<Context::SparseCol>& Context::generator_action(int i, int d) {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = actions_.find({i, d});
        if (it != actions_.end()) return *it->second;
    }
    const MonomialBasis& basis = monomials(d);

    // sigma_i sends w_i to w_i - alpha_i and fixes the other variables,
    // so a monomial maps to (base part) * L^{e_i} with L = column i of M_i.
    std::vector<std::pair<int, Integer>> L;  // (variable, coefficient), nonzero only
    for (int k = 0; k < A_.n; ++k) {
        Integer c = (k == i ? 1 : 0);
        c -= A_.at(k, i);
        if (c != 0) L.emplace_back(k, c);
    }

    auto cols = std::make_unique<std::vector<SparseCol>>(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        const std::vector<int>& e = basis.exps[j];
        const int p = e[static_cast<std::size_t>(i)];
        if (p == 0) {
            (*cols)[j].emplace_back(j, 1);
            continue;
        }
        // expand L^p over distributions of p among the variables of L
        std::map<std::vector<int>, Integer> acc;
        std::function<void(std::size_t, int, const Integer&, std::vector<int>&)> rec =
            [&](std::size_t pos, int rem, const Integer& coef, std::vector<int>& ex) {
                if (pos + 1 == L.size()) {
                    Integer c = coef;
                    for (int t = 0; t < rem; ++t) c *= L[pos].second;
                    ex[static_cast<std::size_t>(L[pos].first)] += rem;
                    acc[ex] += c;
                    ex[static_cast<std::size_t>(L[pos].first)] -= rem;
                    return;
                }
                Integer powc = 1;
                for (int k = 0; k <= rem; ++k) {
                    if (k > 0) powc *= L[pos].second;
                    ex[static_cast<std::size_t>(L[pos].first)] += k;
                    rec(pos + 1, rem - k, coef * binomial(rem, k) * powc, ex);
                    ex[static_cast<std::size_t>(L[pos].first)] -= k;
                }
            };
        std::vector<int> ex = e;
        ex[static_cast<std::size_t>(i)] = 0;
        rec(0, p, 1, ex);
        for (auto& [mexp, c] : acc) {
            if (c != 0) (*cols)[j].emplace_back(basis.index.at(mexp), std::move(c));
        }
    }

    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = actions_.try_emplace({i, d}, std::move(cols));
    return *it->second;
}

SubspaceBasis Context::compute_invariant(Subset J, int d) {
    const MonomialBasis& basis = monomials(d);
    const std::size_t N = basis.size();
    if (J == 0) return SubspaceBasis::full_space(N);

    const int i = std::countr_zero(J);
    const Subset rest = J & (J - 1);
    const auto& cols = generator_action(i, d);

    if (rest == 0) {
        // kernel of (R_i - I) on the whole degree-d space
        RationalMatrix m(N, N);
        for (std::size_t j = 0; j < N; ++j) {
            for (const auto& [row, c] : cols[j]) m.at(row, j) += Rational(c);
            m.at(j, j) -= 1;
        }
        return kernel_basis(m);
    }

    SubspaceBasis base = invariant_piece(rest, d);
    const std::size_t k = base.dim();
    if (k == 0) return SubspaceBasis::zero_space(N);

    // restrict (R_i - I) to the previous fixed space and take its kernel
    RationalMatrix W(N, k);
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t j = 0; j < N; ++j) {
            const Rational& b = base.basis.at(r, j);
            if (b == 0) continue;
            for (const auto& [row, c] : cols[j]) W.at(row, r) += b * Rational(c);
        }
        for (std::size_t j = 0; j < N; ++j) W.at(j, r) -= base.basis.at(r, j);
    }
    SubspaceBasis coeffs = kernel_basis(W);
    RationalMatrix gens(coeffs.dim(), N);
    for (std::size_t g = 0; g < coeffs.dim(); ++g)
        for (std::size_t r = 0; r < k; ++r) {
            const Rational& c = coeffs.basis.at(g, r);
            if (c == 0) continue;
            for (std::size_t j = 0; j < N; ++j) {
                if (base.basis.at(r, j) != 0) gens.at(g, j) += c * base.basis.at(r, j);
            }
        }
    return SubspaceBasis::from_spanning_rows(gens);
}

SubspaceBasis Context::invariant_piece(Subset J, int d) {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = invariants_.find({J, d});
        if (it != invariants_.end()) return it->second;
    }
    SubspaceBasis s = compute_invariant(J, d);
    std::lock_guard<std::mutex> lock(mu_);
    invariant_dims_[{J, d}] = static_cast<long>(s.dim());
    return invariants_.try_emplace({J, d}, std::move(s)).first->second;
}

long Context::invariant_dim(Subset J, int d) {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = invariant_dims_.find({J, d});
        if (it != invariant_dims_.end()) return it->second;
    }
    return static_cast<long>(invariant_piece(J, d).dim());
}

SubspaceBasis Context::eval_cached(const std::string& key, int d,
                                   const std::function<SubspaceBasis()>& compute) {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = exprs_.find({key, d});
        if (it != exprs_.end()) return it->second;
    }
    SubspaceBasis s = compute();
    std::lock_guard<std::mutex> lock(mu_);
    expr_dims_[{key, d}] = static_cast<long>(s.dim());
    return exprs_.try_emplace({key, d}, std::move(s)).first->second;
}

std::optional<long> Context::eval_dim_cached(const std::string& key, int d) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = expr_dims_.find({key, d});
    if (it == expr_dims_.end()) return std::nullopt;
    return it->second;
}

void Context::release_degree(int d) {
    std::lock_guard<std::mutex> lock(mu_);
    monomials_.erase(d);
    for (auto it = actions_.begin(); it != actions_.end();)
        it = (it->first.second == d) ? actions_.erase(it) : std::next(it);
    for (auto it = invariants_.begin(); it != invariants_.end();)
        it = (it->first.second == d) ? invariants_.erase(it) : std::next(it);
    for (auto it = exprs_.begin(); it != exprs_.end();)
        it = (it->first.second == d) ? exprs_.erase(it) : std::next(it);
}

RationalMatrix action_on_degree(Context& ctx, const RationalMatrix& M, int d) {
    if (M.rows != M.cols || static_cast<int>(M.rows) != ctx.n())
        throw DimensionMismatch("action_on_degree: matrix must be n x n");
    const MonomialBasis& target = ctx.monomials(d);
    RationalMatrix out(target.size(), target.size());

    // multiply out prod_t (column t of M)^{e_t}, one linear factor at a time
    for (std::size_t j = 0; j < target.size(); ++j) {
        const std::vector<int>& e = target.exps[j];
        std::vector<Rational> cur{Rational(1)};
        const MonomialBasis* cur_basis = &ctx.monomials(0);
        int deg = 0;
        for (int t = 0; t < ctx.n(); ++t) {
            for (int rep = 0; rep < e[static_cast<std::size_t>(t)]; ++rep) {
                const MonomialBasis& next_basis = ctx.monomials(deg + 1);
                std::vector<Rational> next(next_basis.size());
                for (std::size_t m = 0; m < cur.size(); ++m) {
                    if (cur[m] == 0) continue;
                    for (int v = 0; v < ctx.n(); ++v) {
                        const Rational& coeff = M.at(static_cast<std::size_t>(v), static_cast<std::size_t>(t));
                        if (coeff == 0) continue;
                        std::vector<int> ex = cur_basis->exps[m];
                        ex[static_cast<std::size_t>(v)] += 1;
                        next[next_basis.index.at(ex)] += cur[m] * coeff;
                    }
                }
                cur = std::move(next);
                cur_basis = &next_basis;
                ++deg;
            }
        }
        for (std::size_t r = 0; r < target.size(); ++r) out.at(r, j) = cur[r];
    }
    return out;
}

GradedSubspace invariant_subspace(Context& ctx, Subset J, int max_poly_degree) {
    GradedSubspace g;
    g.n = ctx.n();
    g.computed_through = max_poly_degree;
    for (int d = 0; d <= max_poly_degree; ++d) g.pieces[d] = ctx.invariant_piece(J, d);
    return g;
}

}  // namespace kaccoh
