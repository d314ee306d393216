#include "kaccoh/cech.hpp"

#include <algorithm>
#include <mutex>

#include "kaccoh/parallel.hpp"

namespace kaccoh {

CechSkeleton build_skeleton(const std::vector<Subset>& order) {
    CechSkeleton skel;
    skel.d = static_cast<int>(order.size());
    skel.eliminated.assign(static_cast<std::size_t>(skel.d), {});

    std::map<std::vector<int>, std::size_t> index_of;
    for (Subset t = 1; t < (Subset(1) << skel.d); ++t) {
        CechSkeleton::Cell cell;
        Subset K = ~Subset(0);
        for (int i = 0; i < skel.d; ++i)
            if (t & (Subset(1) << i)) {
                cell.tuple.push_back(i);
                K &= order[static_cast<std::size_t>(i)];
            }
        cell.K = K;
        cell.level = static_cast<int>(cell.tuple.size()) - 1;
        index_of[cell.tuple] = skel.cells.size();
        skel.cells.push_back(std::move(cell));
    }

    for (std::size_t dst = 0; dst < skel.cells.size(); ++dst) {
        const auto& tuple = skel.cells[dst].tuple;
        if (tuple.size() < 2) continue;
        for (std::size_t p = 0; p < tuple.size(); ++p) {
            std::vector<int> face = tuple;
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(p));
            std::size_t src = index_of.at(face);
            // alternating sign by deletion position; the two-element rows
            // follow the worked example's (v_i, v_j) -> v_i - v_j
            long sign = (p % 2 == 0) ? 1 : -1;
            if (tuple.size() == 2) sign = -sign;
            skel.blocks[{src, dst}] = Rational(sign);
        }
    }
    return skel;
}

bool skeleton_dd_zero(const CechSkeleton& skel) {
    // composite coefficient src -> mid -> dst must vanish for all pairs
    std::map<std::pair<std::size_t, std::size_t>, Rational> composite;
    for (const auto& [edge1, c1] : skel.blocks) {
        auto [src, mid] = edge1;
        for (const auto& [edge2, c2] : skel.blocks) {
            if (edge2.first != mid) continue;
            composite[{src, edge2.second}] += c1 * c2;
        }
    }
    for (const auto& [edge, c] : composite)
        if (c != 0) return false;
    return true;
}

void compress_skeleton(CechSkeleton& skel) {
    // adjacency as mutable per-cell maps for the cancellation passes
    std::vector<std::map<std::size_t, Rational>> out(skel.cells.size()), in(skel.cells.size());
    for (const auto& [edge, c] : skel.blocks) {
        out[edge.first][edge.second] = c;
        in[edge.second][edge.first] = c;
    }

    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t a = 0; a < skel.cells.size() && !progress; ++a) {
            if (!skel.cells[a].alive) continue;
            for (const auto& [b, u] : out[a]) {
                if (skel.cells[b].K != skel.cells[a].K || u == 0) continue;
                // cancel the pair (a, b)
                std::vector<std::pair<std::size_t, Rational>> to_b(in[b].begin(), in[b].end());
                std::vector<std::pair<std::size_t, Rational>> from_a(out[a].begin(), out[a].end());
                for (const auto& [alpha, c1] : to_b) {
                    if (alpha == a) continue;
                    for (const auto& [beta, c2] : from_a) {
                        if (beta == b) continue;
                        Rational delta = -c1 * c2 / u;
                        Rational& slot = out[alpha][beta];
                        slot += delta;
                        if (slot == 0) {
                            out[alpha].erase(beta);
                            in[beta].erase(alpha);
                        } else {
                            in[beta][alpha] = slot;
                        }
                    }
                }
                for (const auto& [beta, c] : out[a]) in[beta].erase(a);
                for (const auto& [alpha, c] : in[a]) out[alpha].erase(a);
                for (const auto& [beta, c] : out[b]) in[beta].erase(b);
                for (const auto& [alpha, c] : in[b]) out[alpha].erase(b);
                out[a].clear();
                in[a].clear();
                out[b].clear();
                in[b].clear();
                skel.cells[a].alive = false;
                skel.cells[b].alive = false;
                skel.eliminated[static_cast<std::size_t>(skel.cells[a].level)]
                               [skel.cells[a].K] += 1;
                progress = true;
                break;
            }
        }
    }

    skel.blocks.clear();
    for (std::size_t a = 0; a < skel.cells.size(); ++a)
        for (const auto& [b, c] : out[a])
            if (c != 0) skel.blocks[{a, b}] = c;
}

ComplexSlice build_complex(Context& ctx, const std::vector<Subset>& order, int s) {
    if (s % 2 != 0) throw OddDegree("E_1 lives in even cohomological degrees only");
    const int dpoly = s / 2;
    const std::size_t N = ctx.monomials(dpoly).size();

    CechSkeleton skel = build_skeleton(order);
    ComplexSlice slice;
    slice.s = s;
    slice.levels.resize(order.size());
    std::vector<std::size_t> pos_in_level(skel.cells.size());
    for (std::size_t i = 0; i < skel.cells.size(); ++i) {
        const auto& cell = skel.cells[i];
        pos_in_level[i] = slice.levels[static_cast<std::size_t>(cell.level)].size();
        slice.levels[static_cast<std::size_t>(cell.level)].push_back(
            {cell.tuple, cell.K, ctx.invariant_piece(cell.K, dpoly)});
    }

    const int d = static_cast<int>(order.size());
    for (int r = 0; r + 1 < d; ++r) {
        const auto& srcs = slice.levels[static_cast<std::size_t>(r)];
        const auto& dsts = slice.levels[static_cast<std::size_t>(r + 1)];
        std::vector<std::size_t> src_offset(srcs.size() + 1, 0);
        for (std::size_t i = 0; i < srcs.size(); ++i)
            src_offset[i + 1] = src_offset[i] + srcs[i].basis.dim();
        RationalMatrix restricted(dsts.size() * N, src_offset.back());
        RationalMatrix full(dsts.size() * N, srcs.size() * N);
        slice.delta_restricted.push_back(std::move(restricted));
        slice.delta_full.push_back(std::move(full));
    }

    for (const auto& [edge, c] : skel.blocks) {
        const auto& src = skel.cells[edge.first];
        const int r = src.level;
        const auto& srcs = slice.levels[static_cast<std::size_t>(r)];
        std::vector<std::size_t> src_offset(srcs.size() + 1, 0);
        for (std::size_t i = 0; i < srcs.size(); ++i)
            src_offset[i + 1] = src_offset[i] + srcs[i].basis.dim();

        const std::size_t row0 = pos_in_level[edge.second] * N;
        RationalMatrix& restricted = slice.delta_restricted[static_cast<std::size_t>(r)];
        const SubspaceBasis& basis = srcs[pos_in_level[edge.first]].basis;
        const std::size_t col0 = src_offset[pos_in_level[edge.first]];
        for (std::size_t v = 0; v < basis.dim(); ++v)
            for (std::size_t j = 0; j < N; ++j)
                if (basis.basis.at(v, j) != 0)
                    restricted.at(row0 + j, col0 + v) = c * basis.basis.at(v, j);

        RationalMatrix& full = slice.delta_full[static_cast<std::size_t>(r)];
        const std::size_t fcol0 = pos_in_level[edge.first] * N;
        for (std::size_t j = 0; j < N; ++j) full.at(row0 + j, fcol0 + j) = c;
    }
    return slice;
}

namespace {

// kernel and rank data of one level's differential in basis coordinates
struct LevelMatrices {
    std::vector<long> cols;   // per level r: total source dimension
    std::vector<long> ranks;  // per level r: rank of delta_r
};

LevelMatrices level_ranks(Context& ctx, const CechSkeleton& skel, int dpoly, int d) {
    std::vector<std::vector<std::size_t>> level_cells(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < skel.cells.size(); ++i)
        if (skel.cells[i].alive)
            level_cells[static_cast<std::size_t>(skel.cells[i].level)].push_back(i);

    std::map<std::size_t, std::size_t> offset;  // cell -> column offset in its level
    std::vector<long> total(static_cast<std::size_t>(d), 0);
    std::map<std::size_t, SubspaceBasis> bases;
    for (int r = 0; r < d; ++r)
        for (std::size_t cell : level_cells[static_cast<std::size_t>(r)]) {
            bases[cell] = ctx.invariant_piece(skel.cells[cell].K, dpoly);
            offset[cell] = static_cast<std::size_t>(total[static_cast<std::size_t>(r)]);
            total[static_cast<std::size_t>(r)] += static_cast<long>(bases[cell].dim());
        }

    LevelMatrices out;
    out.cols = total;
    out.ranks.assign(static_cast<std::size_t>(d), 0);

    std::map<std::pair<Subset, Subset>, RationalMatrix> coord_cache;
    for (int r = 0; r + 1 < d; ++r) {
        long rows = total[static_cast<std::size_t>(r) + 1];
        long cols = total[static_cast<std::size_t>(r)];
        if (rows == 0 || cols == 0) continue;
        RationalMatrix M(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
        bool any = false;
        for (const auto& [edge, c] : skel.blocks) {
            const auto& src = skel.cells[edge.first];
            if (src.level != r) continue;
            const auto& dst = skel.cells[edge.second];
            const SubspaceBasis& vs = bases.at(edge.first);
            const SubspaceBasis& vd = bases.at(edge.second);
            if (vs.dim() == 0 || vd.dim() == 0) continue;
            auto key = std::make_pair(src.K, dst.K);
            auto it = coord_cache.find(key);
            if (it == coord_cache.end())
                it = coord_cache.emplace(key, coordinates_in(vd, vs)).first;
            const RationalMatrix& coords = it->second;
            for (std::size_t i = 0; i < vs.dim(); ++i)
                for (std::size_t j = 0; j < vd.dim(); ++j)
                    if (coords.at(i, j) != 0) {
                        M.at(offset.at(edge.second) + j, offset.at(edge.first) + i) +=
                            c * coords.at(i, j);
                        any = true;
                    }
        }
        if (any) out.ranks[static_cast<std::size_t>(r)] = static_cast<long>(rank(M));
    }
    return out;
}

}  // namespace

E2Result e2_dims(Context& ctx, const std::vector<Subset>& order, int max_degree, bool compress) {
    const int d = static_cast<int>(order.size());
    CechSkeleton original = build_skeleton(order);
    CechSkeleton skel = original;
    if (compress) compress_skeleton(skel);

    E2Result res;
    res.d = d;
    std::mutex mu;
    std::exception_ptr error;

    parallel_for(static_cast<std::size_t>(max_degree / 2) + 1, [&](std::size_t dz) {
        try {
            const int dpoly = static_cast<int>(dz);
            const int s = 2 * dpoly;
            LevelMatrices lm = level_ranks(ctx, skel, dpoly, d);

            // reconstruct the original complex's ranks and E_1 dims
            std::vector<long> rank_orig = lm.ranks;
            for (int r = 0; r < d; ++r)
                for (const auto& [K, count] : skel.eliminated[static_cast<std::size_t>(r)])
                    rank_orig[static_cast<std::size_t>(r)] +=
                        count * ctx.invariant_dim(K, dpoly);
            std::vector<long> e1(static_cast<std::size_t>(d), 0);
            for (const auto& cell : original.cells)
                e1[static_cast<std::size_t>(cell.level)] += ctx.invariant_dim(cell.K, dpoly);

            std::lock_guard<std::mutex> lock(mu);
            for (int r = 0; r < d; ++r) {
                long ker = lm.cols[static_cast<std::size_t>(r)] -
                           lm.ranks[static_cast<std::size_t>(r)];
                long prev = (r == 0) ? 0 : lm.ranks[static_cast<std::size_t>(r) - 1];
                res.e2[{r, s}] = ker - prev;
                res.e1[{r, s}] = e1[static_cast<std::size_t>(r)];
                res.ranks[{r, s}] = rank_orig[static_cast<std::size_t>(r)];
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            if (!error) error = std::current_exception();
        }
    });
    if (error) std::rethrow_exception(error);
    return res;
}

}  // namespace kaccoh
