#include "kaccoh/cartan.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace kaccoh {

std::vector<int> subset_members(Subset s) {
    std::vector<int> v;
    for (int i = 0; s != 0; ++i, s >>= 1)
        if (s & 1u) v.push_back(i);
    return v;
}

Subset subset_of(const std::vector<int>& members) {
    Subset s = 0;
    for (int i : members) s |= (Subset(1) << i);
    return s;
}

std::string subset_label(Subset s) {
    std::vector<int> m = subset_members(s);
    if (m.empty()) return "{}";
    bool wide = m.back() >= 9;  // index 10 and up needs separators
    std::ostringstream os;
    if (wide) os << "{";
    for (std::size_t k = 0; k < m.size(); ++k) {
        if (wide && k) os << ",";
        os << (m[k] + 1);
    }
    if (wide) os << "}";
    return os.str();
}

CartanMatrix CartanMatrix::submatrix(Subset s) const {
    std::vector<int> m = subset_members(s);
    CartanMatrix sub;
    sub.n = static_cast<int>(m.size());
    sub.a.resize(static_cast<std::size_t>(sub.n) * sub.n);
    for (int i = 0; i < sub.n; ++i)
        for (int j = 0; j < sub.n; ++j)
            sub.a[static_cast<std::size_t>(i) * sub.n + j] = at(m[i], m[j]);
    return sub;
}

CartanMatrix validate(const std::vector<std::vector<long>>& raw) {
    const int n = static_cast<int>(raw.size());
    for (const auto& row : raw)
        if (static_cast<int>(row.size()) != n)
            throw ValidationError(ValidationError::Kind::DiagonalNotTwo, -1, -1,
                                  "matrix is not square");
    if (n > 10)
        throw ValidationError(ValidationError::Kind::RankCapExceeded, -1, -1,
                              "rank cap exceeded: n = " + std::to_string(n) + " > 10");
    for (int i = 0; i < n; ++i) {
        if (raw[i][i] != 2)
            throw ValidationError(ValidationError::Kind::DiagonalNotTwo, i, i,
                                  "a_" + std::to_string(i + 1) + std::to_string(i + 1) +
                                      " = " + std::to_string(raw[i][i]) + ", must be 2");
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (raw[i][j] > 0)
                throw ValidationError(ValidationError::Kind::PositiveOffDiagonal, i, j,
                                      "a_" + std::to_string(i + 1) + std::to_string(j + 1) +
                                          " > 0 off the diagonal");
            if ((raw[i][j] == 0) != (raw[j][i] == 0))
                throw ValidationError(ValidationError::Kind::AsymmetricZero, i, j,
                                      "a_" + std::to_string(i + 1) + std::to_string(j + 1) +
                                          " = 0 but a_" + std::to_string(j + 1) +
                                          std::to_string(i + 1) + " != 0");
        }
    }
    CartanMatrix A;
    A.n = n;
    A.a.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : raw) A.a.insert(A.a.end(), row.begin(), row.end());
    return A;
}

namespace {

// Exact determinant of a small integer matrix (Bareiss).
Integer int_det(const CartanMatrix& M) {
    const int n = M.n;
    if (n == 0) return 1;
    std::vector<Integer> m(M.a.begin(), M.a.end());
    auto at = [&](int i, int j) -> Integer& { return m[static_cast<std::size_t>(i) * n + j]; };
    Integer prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (at(k, k) == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i)
                if (at(i, k) != 0) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(at(k, j), at(swap_row, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Integer t = at(i, j) * at(k, k) - at(i, k) * at(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                at(i, j) = t;
            }
        prev = at(k, k);
    }
    return sign > 0 ? at(n - 1, n - 1) : -at(n - 1, n - 1);
}

BlockType classify_block(const CartanMatrix& A, Subset block) {
    std::vector<int> m = subset_members(block);
    const int k = static_cast<int>(m.size());
    bool proper_positive = true;
    for (Subset t = 1; t + 1 < (Subset(1) << k); ++t) {  // proper nonempty subsets
        Subset sub = 0;
        for (int b = 0; b < k; ++b)
            if (t & (Subset(1) << b)) sub |= (Subset(1) << m[b]);
        if (int_det(A.submatrix(sub)) <= 0) {
            proper_positive = false;
            break;
        }
    }
    Integer d = int_det(A.submatrix(block));
    if (proper_positive && d > 0) return BlockType::Finite;
    if (proper_positive && d == 0) return BlockType::Affine;
    return BlockType::Indefinite;
}

}  // namespace

std::string block_type_name(BlockType t) {
    switch (t) {
        case BlockType::Finite: return "Finite";
        case BlockType::Affine: return "Affine";
        case BlockType::Indefinite: return "Indefinite";
    }
    return "?";
}

std::vector<Subset> decompose(const CartanMatrix& A) {
    std::vector<Subset> blocks;
    std::vector<bool> seen(static_cast<std::size_t>(A.n), false);
    for (int i = 0; i < A.n; ++i) {
        if (seen[i]) continue;
        Subset comp = 0;
        std::vector<int> stack{i};
        seen[i] = true;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp |= (Subset(1) << v);
            for (int j = 0; j < A.n; ++j)
                if (!seen[j] && A.at(v, j) != 0) {
                    seen[j] = true;
                    stack.push_back(j);
                }
        }
        blocks.push_back(comp);
    }
    return blocks;  // roots visited in increasing order => sorted by smallest member
}

TypeLabel classify(const CartanMatrix& A) {
    TypeLabel label;
    label.finite_overall = true;
    std::vector<Subset> blocks = decompose(A);
    label.decomposable = blocks.size() > 1;
    for (Subset b : blocks) {
        BlockType t = classify_block(A, b);
        if (t != BlockType::Finite) label.finite_overall = false;
        label.blocks.push_back({b, t});
    }
    return label;
}

bool is_finite_type(const CartanMatrix& A) { return classify(A).finite_overall; }

SimplicialCategory finite_subsets(const CartanMatrix& A) {
    SimplicialCategory cat;
    cat.n = A.n;
    const Subset full = A.full_set();
    std::vector<bool> is_simplex(Subset(1) << A.n, false);
    is_simplex[0] = true;
    cat.simplices.push_back(0);
    for (int card = 1; card < A.n; ++card) {
        for (Subset s = 0; s < (Subset(1) << A.n); ++s) {
            if (std::popcount(s) != card || s == full) continue;
            bool facets_ok = true;
            for (int i = 0; i < A.n && facets_ok; ++i)
                if (s & (Subset(1) << i)) facets_ok = is_simplex[s ^ (Subset(1) << i)];
            if (!facets_ok) continue;
            if (is_finite_type(A.submatrix(s))) {
                is_simplex[s] = true;
                cat.simplices.push_back(s);
            }
        }
    }
    for (Subset s : cat.simplices) {
        bool maximal = true;
        for (int j = 0; j < A.n && maximal; ++j) {
            Subset t = s | (Subset(1) << j);
            if (t != s && t != full && is_simplex[t]) maximal = false;
        }
        if (maximal) cat.maximal.push_back(s);
    }
    std::sort(cat.maximal.begin(), cat.maximal.end(), [](Subset x, Subset y) {
        return subset_members(x) < subset_members(y);
    });
    return cat;
}

CartanMatrix standard_cartan(char family, int rank) {
    CartanMatrix M;
    M.n = rank;
    M.a.assign(static_cast<std::size_t>(rank) * rank, 0);
    auto set = [&](int i, int j, long v) { M.a[static_cast<std::size_t>(i) * rank + j] = v; };
    for (int i = 0; i < rank; ++i) set(i, i, 2);
    auto edge = [&](int i, int j, long down = -1, long up = -1) {
        set(i, j, up);
        set(j, i, down);
    };
    switch (family) {
        case 'A':
            for (int i = 0; i + 1 < rank; ++i) edge(i, i + 1);
            break;
        case 'B':  // short last root: a_{rank,rank-1} = -2
            for (int i = 0; i + 2 < rank; ++i) edge(i, i + 1);
            edge(rank - 2, rank - 1, -2, -1);
            break;
        case 'C':
            for (int i = 0; i + 2 < rank; ++i) edge(i, i + 1);
            edge(rank - 2, rank - 1, -1, -2);
            break;
        case 'D':
            for (int i = 0; i + 2 < rank; ++i) edge(i, i + 1);
            edge(rank - 3, rank - 1);
            break;
        case 'E':
            for (int i = 0; i + 2 < rank; ++i) edge(i, i + 1);
            edge(2, rank - 1);
            break;
        case 'F':
            edge(0, 1);
            edge(1, 2, -2, -1);
            edge(2, 3);
            break;
        case 'G':
            edge(0, 1, -3, -1);
            break;
        default:
            throw NoMatch("unknown family");
    }
    return M;
}

unsigned long weyl_order_of(char family, int rank) {
    auto fact = [](int k) {
        unsigned long f = 1;
        for (int i = 2; i <= k; ++i) f *= static_cast<unsigned long>(i);
        return f;
    };
    switch (family) {
        case 'A': return fact(rank + 1);
        case 'B':
        case 'C': return (1ul << rank) * fact(rank);
        case 'D': return (1ul << (rank - 1)) * fact(rank);
        case 'E': return rank == 6 ? 51840ul : rank == 7 ? 2903040ul : 696729600ul;
        case 'F': return 1152ul;
        case 'G': return 12ul;
    }
    return 0;
}

namespace {

bool match_permutation(const CartanMatrix& blk, const CartanMatrix& std_m, std::vector<int>& perm,
                       std::vector<bool>& used, int next) {
    const int k = blk.n;
    if (next == k) return true;
    for (int cand = 0; cand < k; ++cand) {
        if (used[cand]) continue;
        bool ok = blk.at(cand, cand) == std_m.at(next, next);
        for (int j = 0; j < next && ok; ++j)
            ok = blk.at(cand, perm[j]) == std_m.at(next, j) &&
                 blk.at(perm[j], cand) == std_m.at(j, next);
        if (!ok) continue;
        perm[next] = cand;
        used[cand] = true;
        if (match_permutation(blk, std_m, perm, used, next + 1)) return true;
        used[cand] = false;
    }
    return false;
}

}  // namespace

std::vector<DynkinBlock> dynkin_type(const CartanMatrix& A) {
    TypeLabel label = classify(A);
    if (!label.finite_overall) throw NoMatch("dynkin_type requires a finite-type matrix");
    std::vector<DynkinBlock> out;
    for (const auto& block : label.blocks) {
        CartanMatrix blk = A.submatrix(block.members);
        std::vector<int> members = subset_members(block.members);
        const int k = blk.n;

        std::vector<std::pair<char, int>> candidates;
        candidates.emplace_back('A', k);
        if (k >= 2) candidates.emplace_back('B', k);
        if (k >= 3) candidates.emplace_back('C', k);
        if (k >= 4) candidates.emplace_back('D', k);
        if (k >= 6 && k <= 8) candidates.emplace_back('E', k);
        if (k == 4) candidates.emplace_back('F', 4);
        if (k == 2) candidates.emplace_back('G', 2);

        bool matched = false;
        for (auto [fam, rk] : candidates) {
            CartanMatrix std_m = standard_cartan(fam, rk);
            std::vector<int> perm(static_cast<std::size_t>(k));
            std::vector<bool> used(static_cast<std::size_t>(k), false);
            if (match_permutation(blk, std_m, perm, used, 0)) {
                DynkinBlock db;
                db.family = fam;
                db.rank = rk;
                db.weyl_order = weyl_order_of(fam, rk);
                for (int i = 0; i < k; ++i) db.relabel.push_back(members[perm[i]]);
                out.push_back(db);
                matched = true;
                break;
            }
        }
        if (!matched)
            throw NoMatch("finite-type block " + subset_label(block.members) +
                          " matches no standard diagram");
    }
    return out;
}

}  // namespace kaccoh
