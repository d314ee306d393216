#pragma once

#include <map>
#include <vector>

#include "kaccoh/gradedlat.hpp"
#include "kaccoh/invariants.hpp"

namespace kaccoh {

struct OddDegree : std::runtime_error {
    explicit OddDegree(const std::string& what) : std::runtime_error(what) {}
};

// Combinatorial shape of the E_1 cochain complex: one cell per nonempty
// tuple of maximal simplices, carrying P_K for K the intersection of the
// tuple's index sets. Every differential block is a rational multiple of
// the identity inclusion P_{K_src} <= P_{K_dst}, so the whole skeleton is
// degree-independent.
struct CechSkeleton {
    struct Cell {
        std::vector<int> tuple;  // indices into the maximal-simplex order
        Subset K = 0;
        int level = 0;  // r = |tuple| - 1
        bool alive = true;
    };
    int d = 0;  // number of maximal simplices
    std::vector<Cell> cells;
    std::map<std::pair<std::size_t, std::size_t>, Rational> blocks;  // (src,dst) -> coeff
    // cancelled (src,dst) pairs per source level, keyed by their common K
    std::vector<std::map<Subset, long>> eliminated;
};

// Original complex with the worked example's signs: the level-0 blocks
// follow (v_i, v_j) -> v_i - v_j, higher levels alternate by deletion
// position.
CechSkeleton build_skeleton(const std::vector<Subset>& order);

// Cancels pairs of cells with equal K joined by a nonzero block (exact
// two-cell reductions, homology preserved per column). Shrinks the rank
// work by orders of magnitude when many tuples share an intersection.
void compress_skeleton(CechSkeleton& skel);

// Scalar-level composite check: sum over middle cells of coefficient
// products vanishes for every (src, dst-two-levels-up) pair.
bool skeleton_dd_zero(const CechSkeleton& skel);

// One even cohomological degree of the E_1 complex in ambient monomial
// coordinates: summand bases plus the signed-inclusion differentials, both
// restricted to the bases (columns) and as full block-identity matrices.
struct ComplexSlice {
    int s = 0;
    struct Summand {
        std::vector<int> tuple;
        Subset K = 0;
        SubspaceBasis basis;
    };
    std::vector<std::vector<Summand>> levels;        // index r
    std::vector<RationalMatrix> delta_restricted;    // (#tuples_{r+1} * N) x sum dims_r
    std::vector<RationalMatrix> delta_full;          // (#tuples_{r+1} * N) x (#tuples_r * N)
};

ComplexSlice build_complex(Context& ctx, const std::vector<Subset>& order, int s);

struct E2Result {
    int d = 0;
    std::map<std::pair<int, int>, long> e2;     // (r, s) -> dim E_2^{r,s}
    std::map<std::pair<int, int>, long> e1;     // (r, s) -> dim E_1^{r,s}
    std::map<std::pair<int, int>, long> ranks;  // (r, s) -> rank of delta_r (original complex)

    long e2_at(int r, int s) const {
        auto it = e2.find({r, s});
        return it == e2.end() ? 0 : it->second;
    }
    // total cohomology at degree N: sum over r of E_2^{r, N-r}
    long total_at(int N) const {
        long t = 0;
        for (int r = 0; r <= N && r < d; ++r)
            if ((N - r) % 2 == 0) t += e2_at(r, N - r);
        return t;
    }
};

// dim E_2^{r,s} = dim ker(delta_r at s) - rank(delta_{r-1} at s) for every
// even s <= D. `compress` runs the exact skeleton reduction first; the
// direct path works on the full complex (they agree, tested).
E2Result e2_dims(Context& ctx, const std::vector<Subset>& order, int max_degree,
                 bool compress = true);

}  // namespace kaccoh
