#include "kaccoh/gradedlat.hpp"

#include <algorithm>

namespace kaccoh {

ExprPtr make_atom(Subset J) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Atom;
    e->atom = J;
    return e;
}

int expr_cmp(const ExprPtr& a, const ExprPtr& b) {
    const bool a_atom = a->kind == Expr::Kind::Atom;
    const bool b_atom = b->kind == Expr::Kind::Atom;
    if (a_atom && b_atom) {
        std::vector<int> ma = subset_members(a->atom), mb = subset_members(b->atom);
        if (ma < mb) return -1;
        if (mb < ma) return 1;
        return 0;
    }
    if (a_atom) {
        int c = expr_cmp(a, b->children.front());
        return c != 0 ? c : -1;  // the bare atom sorts before a compound led by it
    }
    if (b_atom) {
        int c = expr_cmp(a->children.front(), b);
        return c != 0 ? c : 1;
    }
    const std::size_t k = std::min(a->children.size(), b->children.size());
    for (std::size_t i = 0; i < k; ++i) {
        int c = expr_cmp(a->children[i], b->children[i]);
        if (c != 0) return c;
    }
    if (a->children.size() != b->children.size())
        return a->children.size() < b->children.size() ? -1 : 1;
    if (a->kind != b->kind) return a->kind == Expr::Kind::Sum ? -1 : 1;
    return 0;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) { return expr_cmp(a, b) == 0; }

namespace {

void sort_dedupe(std::vector<ExprPtr>& cs) {
    std::sort(cs.begin(), cs.end(),
              [](const ExprPtr& x, const ExprPtr& y) { return expr_cmp(x, y) < 0; });
    cs.erase(std::unique(cs.begin(), cs.end(),
                         [](const ExprPtr& x, const ExprPtr& y) { return expr_equal(x, y); }),
             cs.end());
}

}  // namespace

ExprPtr make_sum(std::vector<ExprPtr> children) {
    std::vector<ExprPtr> flat;
    for (auto& c : children) {
        if (c->kind == Expr::Kind::Sum)
            flat.insert(flat.end(), c->children.begin(), c->children.end());
        else
            flat.push_back(c);
    }
    if (flat.empty()) throw std::logic_error("make_sum: empty child list");
    for (const auto& c : flat)
        if (c->kind == Expr::Kind::Atom && c->atom == 0) return c;  // P absorbs
    sort_dedupe(flat);
    if (flat.size() == 1) return flat.front();
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Sum;
    e->children = std::move(flat);
    return e;
}

ExprPtr make_intersect(std::vector<ExprPtr> children) {
    std::vector<ExprPtr> flat;
    for (auto& c : children) {
        if (c->kind == Expr::Kind::Intersect)
            flat.insert(flat.end(), c->children.begin(), c->children.end());
        else
            flat.push_back(c);
    }
    if (flat.empty()) throw std::logic_error("make_intersect: empty child list");
    // merge atoms: P_J cap P_K = P_{J u K}
    Subset merged = 0;
    bool have_atom = false;
    std::vector<ExprPtr> rest;
    for (auto& c : flat) {
        if (c->kind == Expr::Kind::Atom) {
            merged |= c->atom;
            have_atom = true;
        } else {
            rest.push_back(c);
        }
    }
    if (have_atom && (merged != 0 || rest.empty())) rest.push_back(make_atom(merged));
    sort_dedupe(rest);
    if (rest.size() == 1) return rest.front();
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Intersect;
    e->children = std::move(rest);
    return e;
}

std::string expr_to_string(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Atom:
            return e->atom == 0 ? "P" : "P_" + subset_label(e->atom);
        case Expr::Kind::Sum: {
            std::string s;
            for (std::size_t i = 0; i < e->children.size(); ++i) {
                if (i) s += "+";
                s += expr_to_string(e->children[i]);
            }
            return s;
        }
        case Expr::Kind::Intersect: {
            std::string s;
            for (std::size_t i = 0; i < e->children.size(); ++i) {
                if (i) s += "∩";
                const ExprPtr& c = e->children[i];
                if (c->kind == Expr::Kind::Sum)
                    s += "(" + expr_to_string(c) + ")";
                else
                    s += expr_to_string(c);
            }
            return s;
        }
    }
    return "?";
}

ExprPtr bar_substitute(const ExprPtr& e, Subset K) {
    switch (e->kind) {
        case Expr::Kind::Atom:
            return make_atom(e->atom & K);
        case Expr::Kind::Sum: {
            std::vector<ExprPtr> cs;
            for (const auto& c : e->children) cs.push_back(bar_substitute(c, K));
            return make_sum(std::move(cs));
        }
        case Expr::Kind::Intersect: {
            std::vector<ExprPtr> cs;
            for (const auto& c : e->children) cs.push_back(bar_substitute(c, K));
            return make_intersect(std::move(cs));
        }
    }
    return e;
}

bool obviously_contains(const ExprPtr& outer, const ExprPtr& inner) {
    if (expr_equal(outer, inner)) return true;
    switch (outer->kind) {
        case Expr::Kind::Atom: {
            switch (inner->kind) {
                case Expr::Kind::Atom:
                    return (outer->atom & inner->atom) == outer->atom;  // outer subset of inner
                case Expr::Kind::Intersect: {
                    for (const auto& c : inner->children)
                        if (obviously_contains(outer, c)) return true;
                    return false;
                }
                case Expr::Kind::Sum: {
                    for (const auto& c : inner->children)
                        if (!obviously_contains(outer, c)) return false;
                    return true;
                }
            }
            return false;
        }
        case Expr::Kind::Sum: {
            for (const auto& c : outer->children)
                if (obviously_contains(c, inner)) return true;
            if (inner->kind == Expr::Kind::Sum) {
                bool all = true;
                for (const auto& c : inner->children)
                    if (!obviously_contains(outer, c)) {
                        all = false;
                        break;
                    }
                if (all) return true;
            }
            return false;
        }
        case Expr::Kind::Intersect: {
            for (const auto& c : outer->children)
                if (!obviously_contains(c, inner)) return false;
            return true;
        }
    }
    return false;
}

SubspaceBasis eval_subexpr(Context& ctx, const ExprPtr& e, int d) {
    if (e->kind == Expr::Kind::Atom) return ctx.invariant_piece(e->atom, d);
    return ctx.eval_cached(expr_to_string(e), d, [&]() {
        SubspaceBasis acc = eval_subexpr(ctx, e->children.front(), d);
        for (std::size_t i = 1; i < e->children.size(); ++i) {
            SubspaceBasis next = eval_subexpr(ctx, e->children[i], d);
            acc = (e->kind == Expr::Kind::Sum) ? subspace_sum(acc, next)
                                               : subspace_intersect(acc, next);
        }
        return acc;
    });
}

std::string item_to_string(const Item& it) {
    std::string body = expr_to_string(it.numerator);
    if (it.denominator) {
        body += " - ";
        if (it.denominator->kind == Expr::Kind::Sum)
            body += "(" + expr_to_string(it.denominator) + ")";
        else
            body += expr_to_string(it.denominator);
    }
    if (it.shift == 0) return body;
    if (it.shift == 1) return "Σ(" + body + ")";
    return "Σ^" + std::to_string(it.shift) + "(" + body + ")";
}

DimensionTable item_dims(Context& ctx, const Item& it, int max_cohomological_degree) {
    DimensionTable table(max_cohomological_degree);
    for (int d = 0; 2 * d + it.shift <= max_cohomological_degree; ++d) {
        SubspaceBasis num = eval_subexpr(ctx, it.numerator, d);
        long dim = static_cast<long>(num.dim());
        if (it.denominator) {
            SubspaceBasis den = eval_subexpr(ctx, it.denominator, d);
            if (!contains(num, den))
                throw QuotientNotNested(
                    d, "denominator not contained in numerator at polynomial degree " +
                           std::to_string(d) + " for item " + item_to_string(it));
            dim -= static_cast<long>(den.dim());
        }
        table.dims[static_cast<std::size_t>(2 * d + it.shift)] = dim;
    }
    return table;
}

}  // namespace kaccoh
