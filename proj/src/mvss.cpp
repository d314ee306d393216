#include "kaccoh/mvss.hpp"

#include <algorithm>
#include <mutex>

#include "kaccoh/parallel.hpp"
#include "kaccoh/weyl.hpp"

namespace kaccoh {

namespace {

void mark_trivial_zeros(std::vector<Item>& items) {
    for (Item& it : items)
        it.trivially_zero = it.denominator && obviously_contains(it.denominator, it.numerator);
}

}  // namespace

ItemList run_algorithm(const std::vector<Subset>& maximal_in_order) {
    if (maximal_in_order.empty()) throw EmptyOrder("no maximal simplices given");
    ItemList result;
    result.order = maximal_in_order;

    std::vector<Item> items{Item{0, make_atom(maximal_in_order[0]), nullptr, false}};
    Subset running_union = maximal_in_order[0];

    for (std::size_t k = 1; k < maximal_in_order.size(); ++k) {
        const Subset next = maximal_in_order[k];
        std::vector<Item> emitted;
        emitted.reserve(items.size() * 2);
        for (const Item& f : items) {
            if (!f.denominator) {
                // final pair (A', bar A'): Sigma(bar A' - (A' + P_next)) and the new union atom
                ExprPtr abar = make_atom(running_union & next);
                emitted.push_back(
                    Item{1, abar, make_sum({f.numerator, make_atom(next)}), false});
                emitted.push_back(Item{0, make_atom(running_union | next), nullptr, false});
            } else {
                ExprPtr abar = bar_substitute(f.numerator, next);
                ExprPtr bbar = bar_substitute(f.denominator, next);
                emitted.push_back(Item{f.shift, make_intersect({f.numerator, bbar}),
                                       f.denominator, false});
                emitted.push_back(
                    Item{f.shift + 1, abar, make_sum({bbar, f.numerator}), false});
            }
        }
        std::stable_sort(emitted.begin(), emitted.end(),
                         [](const Item& a, const Item& b) { return a.shift > b.shift; });
        items = std::move(emitted);
        running_union |= next;
    }
    mark_trivial_zeros(items);
    result.items = std::move(items);
    return result;
}

CohomologyResult cohomology(Context& ctx, int max_degree, std::optional<std::vector<Subset>> order) {
    const CartanMatrix& A = ctx.cartan();
    if (classify(A).finite_overall)
        throw FiniteTypeInput(
            "the matrix is of finite type; its classifying-space cohomology is P_S "
            "(use the invariants path)");

    std::vector<Subset> maximal = finite_subsets(A).maximal;
    if (order) {
        std::vector<Subset> sorted_given = *order, sorted_max = maximal;
        std::sort(sorted_given.begin(), sorted_given.end());
        std::sort(sorted_max.begin(), sorted_max.end());
        if (sorted_given != sorted_max)
            throw EmptyOrder("order override is not a permutation of the maximal simplices");
        maximal = *order;
    }

    CohomologyResult res;
    res.max_degree = max_degree;
    res.items = run_algorithm(maximal);
    const std::size_t m = res.items.items.size();
    res.per_item.assign(m, DimensionTable(max_degree));

    // warm the caches degree by degree so items can share subexpressions;
    // degrees are independent and run in parallel
    std::exception_ptr quotient_error;
    std::mutex err_mu;
    parallel_for(static_cast<std::size_t>(max_degree / 2) + 1, [&](std::size_t d) {
        try {
            for (const Item& it : res.items.items) {
                if (2 * static_cast<int>(d) + it.shift > max_degree) continue;
                eval_subexpr(ctx, it.numerator, static_cast<int>(d));
                if (it.denominator) eval_subexpr(ctx, it.denominator, static_cast<int>(d));
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mu);
            if (!quotient_error) quotient_error = std::current_exception();
        }
    });
    if (quotient_error) std::rethrow_exception(quotient_error);

    res.total = DimensionTable(max_degree);
    for (std::size_t i = 0; i < m; ++i) {
        res.per_item[i] = item_dims(ctx, res.items.items[i], max_degree);
        bool zero = true;
        for (long v : res.per_item[i].dims)
            if (v != 0) zero = false;
        res.zero_up_to_cutoff.push_back(zero);
        int r = res.items.items[i].shift;
        auto [it, inserted] = res.by_shift.try_emplace(r, DimensionTable(max_degree));
        for (int nDeg = 0; nDeg <= max_degree; ++nDeg) {
            it->second.dims[static_cast<std::size_t>(nDeg)] += res.per_item[i].at(nDeg);
            res.total.dims[static_cast<std::size_t>(nDeg)] += res.per_item[i].at(nDeg);
        }
    }
    return res;
}

std::optional<RationalMatrix> prop51_change_of_basis(const CartanMatrix& A, Subset I) {
    std::vector<int> mi = subset_members(I);
    std::vector<int> mj = subset_members(A.full_set() & ~I);
    const std::size_t ni = mi.size(), nj = mj.size();

    // solve A_I^T X^T = A_JI^T columnwise via one echelon pass
    RationalMatrix aug(ni, ni + nj);
    for (std::size_t r = 0; r < ni; ++r) {
        for (std::size_t c = 0; c < ni; ++c) aug.at(r, c) = A.at(mi[c], mi[r]);
        for (std::size_t c = 0; c < nj; ++c) aug.at(r, ni + c) = A.at(mj[c], mi[r]);
    }
    auto [red, rk] = rref(aug);

    // consistency: no pivot may fall in the augmented columns
    std::vector<std::size_t> pivots;
    for (std::size_t r = 0; r < rk; ++r) {
        std::size_t p = 0;
        while (p < aug.cols && red.at(r, p) == 0) ++p;
        if (p >= ni) return std::nullopt;
        pivots.push_back(p);
    }

    RationalMatrix C(nj, ni);  // particular solution, free variables zero
    for (std::size_t r = 0; r < rk; ++r)
        for (std::size_t c = 0; c < nj; ++c) C.at(c, pivots[r]) = red.at(r, ni + c);

    if (!prop51_block_check(A, I, C))
        throw std::logic_error("prop51: solution failed the block-triangularity check");
    return C;
}

bool prop51_block_check(const CartanMatrix& A, Subset I, const RationalMatrix& C) {
    std::vector<int> mi = subset_members(I);
    std::vector<int> mj = subset_members(A.full_set() & ~I);
    const std::size_t n = static_cast<std::size_t>(A.n);

    // U adjoins the correction: w'_i = w_i + sum_j C_{j,i} w_j, w'_j = w_j
    RationalMatrix U = RationalMatrix::identity(n);
    RationalMatrix Uinv = RationalMatrix::identity(n);
    for (std::size_t c = 0; c < mi.size(); ++c)
        for (std::size_t r = 0; r < mj.size(); ++r) {
            U.at(static_cast<std::size_t>(mj[r]), static_cast<std::size_t>(mi[c])) = C.at(r, c);
            Uinv.at(static_cast<std::size_t>(mj[r]), static_cast<std::size_t>(mi[c])) = -C.at(r, c);
        }

    for (int i : mi) {
        RationalMatrix M = Uinv * reflection_matrix(A, i).m * U;
        for (int j : mj)
            for (int ic : mi)
                if (M.at(static_cast<std::size_t>(j), static_cast<std::size_t>(ic)) != 0)
                    return false;
    }
    return true;
}

bool prop51_dimension_check(Context& ctx, Subset I, int max_poly_degree) {
    const CartanMatrix& A = ctx.cartan();
    const int ni = static_cast<int>(subset_members(I).size());
    const int nj = A.n - ni;

    Context sub_ctx(A.submatrix(I));
    std::vector<long> inv_dims, free_dims;
    for (int d = 0; d <= max_poly_degree; ++d) {
        inv_dims.push_back(sub_ctx.invariant_dim(sub_ctx.cartan().full_set(), d));
        free_dims.push_back(static_cast<long>(make_monomial_basis(nj, d).size()));
    }
    for (int d = 0; d <= max_poly_degree; ++d) {
        long conv = 0;
        for (int e = 0; e <= d; ++e) conv += inv_dims[static_cast<std::size_t>(e)] *
                                             free_dims[static_cast<std::size_t>(d - e)];
        if (conv != ctx.invariant_dim(I, d)) return false;
    }
    return true;
}

DimensionTable conjecture_sum_check(Context& ctx, int max_poly_degree) {
    DimensionTable residual(2 * max_poly_degree);
    std::vector<ExprPtr> singles;
    for (int i = 0; i < ctx.n(); ++i) singles.push_back(make_atom(Subset(1) << i));
    ExprPtr sum = make_sum(singles);
    parallel_for(static_cast<std::size_t>(max_poly_degree) + 1, [&](std::size_t d) {
        eval_subexpr(ctx, sum, static_cast<int>(d));
    });
    for (int d = 0; d <= max_poly_degree; ++d) {
        long full = static_cast<long>(ctx.monomials(d).size());
        long span = static_cast<long>(eval_subexpr(ctx, sum, d).dim());
        residual.dims[static_cast<std::size_t>(2 * d)] = full - span;
    }
    return residual;
}

DimensionTable borel_image_dims(Context& ctx, int max_degree) {
    const CartanMatrix& A = ctx.cartan();
    if (classify(A).finite_overall)
        throw FiniteTypeInput("borel_image_dims expects a matrix of infinite type");
    std::vector<Subset> maximal = finite_subsets(A).maximal;

    DimensionTable table(max_degree);
    std::exception_ptr error;
    std::mutex err_mu;
    parallel_for(static_cast<std::size_t>(max_degree / 2) + 1, [&](std::size_t dz) {
        try {
            int d = static_cast<int>(dz);
            SubspaceBasis generators = ctx.invariant_piece(A.full_set(), d);
            SubspaceBasis meet = ctx.invariant_piece(maximal[0], d);
            for (std::size_t i = 1; i < maximal.size(); ++i)
                meet = subspace_intersect(meet, ctx.invariant_piece(maximal[i], d));
            if (!(generators == meet))
                throw MethodMismatch(
                    "P^W generator fixed points differ from the intersection over maximal "
                    "simplices at polynomial degree " + std::to_string(d));
            table.dims[static_cast<std::size_t>(2 * d)] = static_cast<long>(generators.dim());
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mu);
            if (!error) error = std::current_exception();
        }
    });
    if (error) std::rethrow_exception(error);
    return table;
}

}  // namespace kaccoh
