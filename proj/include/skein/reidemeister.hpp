#pragma once

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "skein/cube.hpp"

namespace skein {

// A Reidemeister move together with the chain homotopy equivalences it
// induces between cube complexes. `forward` maps C(source) -> C(modified),
// `backward` the other way; backward . forward is the identity on the nose,
// forward . backward is homotopic to it.
//
// Construction: the move's local differential entries are cancelled (the
// cone of the extra crossings collapses onto the smaller cube) and the
// surviving complex is checked to equal the small cube entry-for-entry.
// Any mismatch throws instead of returning an unverified map.
template <class F>
struct ReidemeisterMove {
    TangleDiagram source;
    TangleDiagram modified;
    CubeData<F> cube_src, cube_dst;
    ChainMapData<F> forward;
    ChainMapData<F> backward;
    // for removals: arcs of `modified` expanded into arcs of `source`
    std::map<int, std::vector<int>> modified_atoms;
};

namespace detail {

// Cuts an arc for a move insertion: returns (kept piece, trailing piece).
// Loops cut into a single piece appearing twice; oriented arcs keep the
// origin incidence on the original label. `fresh` names the trailing piece
// when one is needed.
inline std::pair<int, int> cut_arc_for_insert(TangleDiagram& d, int arc, int fresh) {
    for (size_t i = 0; i < d.loops.size(); ++i) {
        if (d.loops[i] == arc) {
            d.loops.erase(d.loops.begin() + i);
            return {arc, arc};
        }
    }
    int found_k = -1, found_s = -1;
    for (int k = 0; k < d.crossing_count() && found_k < 0; ++k) {
        const Crossing& x = d.crossings[k];
        for (int s = 0; s < 4; ++s) {
            if (x.slot[s] != arc) continue;
            if (s == 0 || s == x.over_in) {  // strand terminates here
                found_k = k;
                found_s = s;
                break;
            }
        }
    }
    if (found_k < 0) {
        for (int k = d.crossing_count() - 1; k >= 0 && found_k < 0; --k)
            for (int s = 3; s >= 0; --s)
                if (d.crossings[k].slot[s] == arc) {
                    found_k = k;
                    found_s = s;
                    break;
                }
    }
    if (found_k < 0) throw InputError("move location: arc not found at any crossing");
    d.crossings[found_k].slot[found_s] = fresh;
    return {arc, fresh};
}

using ArcKeys = std::function<std::vector<int>(int)>;

inline ArcKeys key_with_aliases(std::map<int, int> alias, std::set<int> skip) {
    return [alias = std::move(alias), skip = std::move(skip)](int a) -> std::vector<int> {
        if (skip.count(a)) return {};
        auto it = alias.find(a);
        return {it == alias.end() ? a : it->second};
    };
}

// Survivor pattern of a targeted reduction: basis elements at the stated
// crossing-bit values, with at most one circle dropped (identified by an arc
// it contains, with its label forced).
struct SurvivorPattern {
    std::vector<std::pair<int, int>> fixed_bits;
    int drop_arc = -1;
    int forced_label = 0;
    ArcKeys key_big;
    ArcKeys key_small;
};

// Matches the survivors of a reduction of `big` against the basis of
// `small`, asserting the reduced differential equals the small cube's.
// Returns, per degree, the original big-cube index of each small basis
// element.
template <class G>
std::map<int, std::vector<int>> match_survivors(const Reduction<G>& red, const CubeData<G>& big,
                                                const CubeData<G>& small,
                                                const SurvivorPattern& pat) {
    std::map<int, std::vector<int>> big_of_small;
    std::map<int, std::map<int, int>> alive_pos;
    for (const auto& [deg, alive] : red.alive)
        for (size_t i = 0; i < alive.size(); ++i) alive_pos[deg][alive[i]] = static_cast<int>(i);

    std::set<int> fixed_positions;
    for (auto [k, v] : pat.fixed_bits) fixed_positions.insert(k);
    auto small_vertex_of = [&](uint64_t w) {
        uint64_t v = 0;
        int out_pos = 0;
        for (int k = 0; k < big.diagram.crossing_count(); ++k) {
            if (fixed_positions.count(k)) continue;
            if ((w >> k) & 1) v |= uint64_t{1} << out_pos;
            ++out_pos;
        }
        return v;
    };

    for (const auto& [deg, alive] : red.alive) {
        if (alive.empty()) continue;
        if (static_cast<int>(alive.size()) != small.cx.dim(deg))
            throw std::logic_error("reidemeister: survivor count mismatch at degree " +
                                   std::to_string(deg));
        std::vector<int>& row = big_of_small[deg];
        row.assign(alive.size(), -1);
        for (int idx : alive) {
            const BasisElem& be = big.cx.basis(deg)[idx];
            uint64_t w = be.aux0;
            for (auto [k, val] : pat.fixed_bits)
                if (static_cast<int>((w >> k) & 1) != val)
                    throw std::logic_error("reidemeister: survivor outside the expected slice");
            uint64_t v = small_vertex_of(w);
            const auto& bc = big.circles[w];
            const auto& sc = small.circles[v];
            std::map<int, int> key_to_small;
            for (size_t j = 0; j < sc.size(); ++j)
                for (int a : sc[j])
                    for (int key : pat.key_small(a)) key_to_small[key] = static_cast<int>(j);
            uint64_t small_lab = 0;
            std::set<int> hit;
            for (size_t i = 0; i < bc.size(); ++i) {
                bool dropped =
                    pat.drop_arc >= 0 &&
                    std::binary_search(bc[i].begin(), bc[i].end(), pat.drop_arc);
                int label = static_cast<int>((be.aux1 >> i) & 1);
                if (dropped) {
                    if (label != pat.forced_label)
                        throw std::logic_error("reidemeister: dropped circle has wrong label");
                    continue;
                }
                int target = -1;
                for (int a : bc[i])
                    for (int key : pat.key_big(a)) {
                        auto it = key_to_small.find(key);
                        if (it != key_to_small.end()) {
                            if (target >= 0 && target != it->second)
                                throw std::logic_error("reidemeister: ambiguous circle match");
                            target = it->second;
                        }
                    }
                if (target < 0) throw std::logic_error("reidemeister: unmatched circle");
                if (hit.count(target)) throw std::logic_error("reidemeister: circle hit twice");
                hit.insert(target);
                if (label) small_lab |= uint64_t{1} << target;
            }
            if (hit.size() != sc.size())
                throw std::logic_error("reidemeister: small circle left unmatched");
            int small_idx = small.basis_index(v, small_lab);
            if (row[small_idx] != -1) throw std::logic_error("reidemeister: basis collision");
            row[small_idx] = idx;
            if (big.cx.graded && be.q != small.cx.basis(deg)[small_idx].q)
                throw std::logic_error("reidemeister: quantum degree mismatch");
        }
    }
    for (int deg : small.cx.degrees())
        if (small.cx.dim(deg) > 0 &&
            (big_of_small.find(deg) == big_of_small.end() ||
             static_cast<int>(big_of_small.at(deg).size()) != small.cx.dim(deg)))
            throw std::logic_error("reidemeister: degree missing among survivors");

    for (const auto& [deg, row] : big_of_small) {
        auto next = big_of_small.find(deg + 1);
        if (next == big_of_small.end()) continue;
        SparseMatrix<G> small_d = small.cx.diff(deg);
        SparseMatrix<G> red_d = red.reduced.diff(deg);
        for (int j = 0; j < static_cast<int>(row.size()); ++j)
            for (int i = 0; i < static_cast<int>(next->second.size()); ++i) {
                G expect = small_d.at(i, j);
                G got = red_d.at(alive_pos.at(deg + 1).at(next->second[i]),
                                 alive_pos.at(deg).at(row[j]));
                if (!(expect == got))
                    throw std::logic_error(
                        "reidemeister: reduced differential deviates from the small cube");
            }
    }
    return big_of_small;
}

// Builds to_big (small -> big) and to_small (big -> small) chain maps from a
// verified reduction.
template <class G>
void assemble_maps(const Reduction<G>& red, const CubeData<G>& big, const CubeData<G>& small,
                   const std::map<int, std::vector<int>>& big_of_small, ChainMapData<G>& to_big,
                   ChainMapData<G>& to_small) {
    to_big.t_shift = to_small.t_shift = 0;
    to_big.q_shift = to_small.q_shift = 0;
    std::map<int, std::map<int, int>> alive_pos;
    for (const auto& [deg, alive] : red.alive)
        for (size_t i = 0; i < alive.size(); ++i) alive_pos[deg][alive[i]] = static_cast<int>(i);
    std::map<int, std::map<int, int>> small_of_big;
    for (const auto& [deg, row] : big_of_small)
        for (size_t j = 0; j < row.size(); ++j) small_of_big[deg][row[j]] = static_cast<int>(j);

    for (int deg : small.cx.degrees()) {
        SparseMatrix<G> fwd(big.cx.dim(deg), small.cx.dim(deg));
        auto rit = big_of_small.find(deg);
        for (int j = 0; rit != big_of_small.end() && j < small.cx.dim(deg); ++j) {
            SparseVec<G> col =
                red.include_raw(deg, SparseVec<G>::unit(alive_pos.at(deg).at(rit->second[j])));
            for (const auto& [r, cv] : col.ent) fwd.set(r, j, cv);
        }
        to_big.comp[deg] = std::move(fwd);
    }
    for (int deg : big.cx.degrees()) {
        SparseMatrix<G> bwd(small.cx.dim(deg), big.cx.dim(deg));
        auto sm = small_of_big.find(deg);
        for (int j = 0; j < big.cx.dim(deg); ++j) {
            SparseVec<G> proj = red.project(deg, SparseVec<G>::unit(j));
            if (proj.is_zero()) continue;
            if (sm == small_of_big.end())
                throw std::logic_error("reidemeister: projection hits an empty degree");
            for (const auto& [pos, cv] : proj.ent) {
                int orig = red.alive.at(deg)[pos];
                bwd.set(sm->second.at(orig), j, cv);
            }
        }
        to_small.comp[deg] = std::move(bwd);
    }
    validate_chain_map(to_big, small.cx, big.cx);
    validate_chain_map(to_small, big.cx, small.cx);
}

// Unique differential entry out of `col` whose row sits at `want_vertex`
// (optionally with a required label bit on one circle).
template <class G>
int unique_pivot_row(const SparseMatrix<G>& d, const CubeData<G>& big, int deg, int col,
                     uint64_t want_vertex, int want_bit_circle = -1, int want_bit = 0) {
    int found = -1;
    for (int r = 0; r < d.rows(); ++r) {
        if (d.at(r, col).is_zero()) continue;
        const BasisElem& be = big.cx.basis(deg + 1)[r];
        if (be.aux0 != want_vertex) continue;
        if (want_bit_circle >= 0 && static_cast<int>((be.aux1 >> want_bit_circle) & 1) != want_bit)
            continue;
        if (found >= 0) throw std::logic_error("reidemeister: pivot row not unique");
        found = r;
    }
    if (found < 0) throw std::logic_error("reidemeister: pivot row not found");
    return found;
}

}  // namespace detail

namespace detail {

// Smoothing of a crossing at which the two given slots become paired:
// 0 pairs (0,1) and (2,3); 1 pairs (0,3) and (1,2).
inline int pairing_smoothing(int slot_a, int slot_b) {
    int lo = std::min(slot_a, slot_b), hi = std::max(slot_a, slot_b);
    if ((lo == 0 && hi == 1) || (lo == 2 && hi == 3)) return 0;
    if ((lo == 0 && hi == 3) || (lo == 1 && hi == 2)) return 1;
    throw std::logic_error("pairing_smoothing: slots not adjacent");
}

inline int slot_of(const Crossing& x, int arc, bool under) {
    int first = under ? 0 : 1;
    if (x.slot[first] == arc) return first;
    if (x.slot[first + 2] == arc) return first + 2;
    return -1;
}

// The cancelling bigon of crossings (k1, k2) sharing the under-under arc
// mid_a and over-over arc mid_b: bubble_bit[i] is the smoothing of crossing
// k_i at which the two middles join.
struct BigonPattern {
    int k1, k2;
    int bub1, bub2;
};

template <class G>
BigonPattern detect_bigon(const CubeData<G>& big, int k1, int k2, int mid_a, int mid_b) {
    const Crossing& c1 = big.diagram.crossings[k1];
    const Crossing& c2 = big.diagram.crossings[k2];
    int a1 = slot_of(c1, mid_a, true), a2 = slot_of(c2, mid_a, true);
    int b1 = slot_of(c1, mid_b, false), b2 = slot_of(c2, mid_b, false);
    if (a1 < 0 || a2 < 0)
        throw InputError("r2: middle arc is not under-shared by the crossing pair");
    if (b1 < 0 || b2 < 0)
        throw InputError("r2: middle arc is not over-shared by the crossing pair");
    BigonPattern pat;
    pat.k1 = k1;
    pat.k2 = k2;
    pat.bub1 = pairing_smoothing(a1, b1);
    pat.bub2 = pairing_smoothing(a2, b2);
    if (pat.bub1 + pat.bub2 != 1)
        throw InputError("r2: the crossing pair is a clasp, not a cancelling bigon");
    return pat;
}

// Eliminates the two pivot families of a cancelling bigon inside the slices
// selected by `filter` (a predicate on vertices; bits of k1/k2 excluded).
// Survivor slice: k1-bit = 1-bub1, k2-bit = 1-bub2 within the filter.
template <class G>
void eliminate_bigon(Eliminator<G>& elim, const CubeData<G>& big, const BigonPattern& pat,
                     int mid_a, int mid_b,
                     const std::function<bool(uint64_t)>& filter = nullptr) {
    const uint64_t bit1 = uint64_t{1} << pat.k1;
    const uint64_t bit2 = uint64_t{1} << pat.k2;
    std::map<int, SparseMatrix<G>> diff_cache;
    auto diff_at = [&](int deg) -> const SparseMatrix<G>& {
        auto it = diff_cache.find(deg);
        if (it == diff_cache.end()) it = diff_cache.emplace(deg, big.cx.diff(deg)).first;
        return it->second;
    };
    const uint64_t nv_all = uint64_t{1} << big.diagram.crossing_count();
    // family (a): bubble slice, bubble labeled 1, merge edge into (1,1)
    for (uint64_t w = 0; w < nv_all; ++w) {
        if (static_cast<int>((w >> pat.k1) & 1) != pat.bub1) continue;
        if (static_cast<int>((w >> pat.k2) & 1) != pat.bub2) continue;
        if (filter && !filter(w)) continue;
        int ci = big.circle_of_arc(w, mid_a);
        if (!std::binary_search(big.circles[w][ci].begin(), big.circles[w][ci].end(), mid_b))
            throw std::logic_error("r2: bubble circle does not contain both middles");
        int deg = big.vertex_degree(w);
        int nc = static_cast<int>(big.circles[w].size());
        uint64_t up = w | bit1 | bit2;
        for (uint64_t lab = 0; lab < (uint64_t{1} << nc); ++lab) {
            if ((lab >> ci) & 1) continue;
            int col = big.basis_index(w, lab);
            int row = unique_pivot_row(diff_at(deg), big, deg, col, up);
            elim.eliminate(deg, row, col);
        }
    }
    // family (b): (0,0) slice, split edge into the bubble slice, bubble at X
    for (uint64_t w = 0; w < nv_all; ++w) {
        if (((w >> pat.k1) & 1) || ((w >> pat.k2) & 1)) continue;
        if (filter && !filter(w)) continue;
        uint64_t up = w | (pat.bub1 ? bit1 : bit2);
        int ci_up = big.circle_of_arc(up, mid_a);
        int deg = big.vertex_degree(w);
        int nc = static_cast<int>(big.circles[w].size());
        for (uint64_t lab = 0; lab < (uint64_t{1} << nc); ++lab) {
            int col = big.basis_index(w, lab);
            int row = unique_pivot_row(diff_at(deg), big, deg, col, up, ci_up, 1);
            elim.eliminate(deg, row, col);
        }
    }
}

}  // namespace detail

// Shared R2 collapse: eliminates the two pivot families of the crossing pair
// (k1, k2) with middle arcs (mid_a, mid_b); asserts the survivors reproduce
// `small`. Returns (to_big, to_small).
template <class F>
std::pair<ChainMapData<F>, ChainMapData<F>> r2_reduce(const CubeData<F>& big,
                                                      const CubeData<F>& small, int k1, int k2,
                                                      int mid_a, int mid_b,
                                                      const detail::ArcKeys& key_big,
                                                      const detail::ArcKeys& key_small) {
    auto pat = detail::detect_bigon(big, k1, k2, mid_a, mid_b);
    Eliminator<F> elim(big.cx);
    detail::eliminate_bigon(elim, big, pat, mid_a, mid_b);
    Reduction<F> red = std::move(elim).finalize();

    detail::SurvivorPattern spat;
    spat.fixed_bits = {{pat.k1, 1 - pat.bub1}, {pat.k2, 1 - pat.bub2}};
    spat.key_big = key_big;
    spat.key_small = key_small;
    auto corr = detail::match_survivors(red, big, small, spat);
    ChainMapData<F> to_big, to_small;
    detail::assemble_maps(red, big, small, corr, to_big, to_small);
    return {std::move(to_big), std::move(to_small)};
}

// Shared R1 collapse: eliminates the kink-crossing cone of crossing `kink`
// with loop arc `loop_arc`; asserts the survivors reproduce `small`.
// Returns (to_big, to_small).
template <class F>
std::pair<ChainMapData<F>, ChainMapData<F>> r1_reduce(const CubeData<F>& big,
                                                      const CubeData<F>& small, int kink,
                                                      int loop_arc,
                                                      const detail::ArcKeys& key_big,
                                                      const detail::ArcKeys& key_small) {
    const bool positive = big.diagram.crossings[kink].sign() > 0;
    const uint64_t kink_bit = uint64_t{1} << kink;
    std::map<int, SparseMatrix<F>> diff_cache;
    auto diff_at = [&](int deg) -> const SparseMatrix<F>& {
        auto it = diff_cache.find(deg);
        if (it == diff_cache.end()) it = diff_cache.emplace(deg, big.cx.diff(deg)).first;
        return it->second;
    };
    Eliminator<F> elim(big.cx);
    const uint64_t nv_all = uint64_t{1} << big.diagram.crossing_count();
    for (uint64_t w = 0; w < nv_all; ++w) {
        if (w & kink_bit) continue;
        int deg = big.vertex_degree(w);
        int nc = static_cast<int>(big.circles[w].size());
        if (positive) {
            int ci = big.circle_of_arc(w, loop_arc);
            for (uint64_t lab = 0; lab < (uint64_t{1} << nc); ++lab) {
                if ((lab >> ci) & 1) continue;
                int col = big.basis_index(w, lab);
                int row = detail::unique_pivot_row(diff_at(deg), big, deg, col, w | kink_bit);
                elim.eliminate(deg, row, col);
            }
        } else {
            int ci_up = big.circle_of_arc(w | kink_bit, loop_arc);
            for (uint64_t lab = 0; lab < (uint64_t{1} << nc); ++lab) {
                int col = big.basis_index(w, lab);
                int row = detail::unique_pivot_row(diff_at(deg), big, deg, col, w | kink_bit,
                                                   ci_up, 1);
                elim.eliminate(deg, row, col);
            }
        }
    }
    Reduction<F> red = std::move(elim).finalize();

    detail::SurvivorPattern pat;
    pat.fixed_bits = {{kink, positive ? 0 : 1}};
    pat.drop_arc = loop_arc;
    pat.forced_label = positive ? 1 : 0;
    pat.key_big = key_big;
    pat.key_small = key_small;
    auto corr = detail::match_survivors(red, big, small, pat);
    ChainMapData<F> to_big, to_small;
    detail::assemble_maps(red, big, small, corr, to_big, to_small);
    return {std::move(to_big), std::move(to_small)};
}

// R1: insert a positive or negative kink on `arc` of a closed diagram.
template <class F>
ReidemeisterMove<F> reidemeister1(const TangleDiagram& d, int arc, bool positive,
                                  const FrobeniusSpec<F>& spec, int crossing_cap = 14) {
    ReidemeisterMove<F> mv;
    mv.source = d;
    TangleDiagram big = d;
    int fresh = big.max_arc_label() + 1;
    auto [a1, a3] = detail::cut_arc_for_insert(big, arc, fresh);
    int a2 = fresh + 1;
    big.crossings.push_back(positive ? Crossing{{a1, a3, a2, a2}, 3}
                                     : Crossing{{a1, a2, a2, a3}, 1});
    mv.modified = big;

    mv.cube_src = build_cube(d, spec, crossing_cap);
    mv.cube_dst = build_cube(big, spec, crossing_cap + 1);
    auto [to_big, to_small] = r1_reduce(mv.cube_dst, mv.cube_src, big.crossing_count() - 1, a2,
                                        detail::key_with_aliases({{a3, a1}}, {a2}),
                                        detail::key_with_aliases({}, {}));
    mv.forward = std::move(to_big);
    mv.backward = std::move(to_small);
    return mv;
}

// R1 removal: cancels the kink at crossing `k` (a crossing carrying the same
// arc at two adjacent slots). source = d, modified = the smaller diagram.
template <class F>
ReidemeisterMove<F> reidemeister1_remove(const TangleDiagram& d, int k,
                                         const FrobeniusSpec<F>& spec, int crossing_cap = 14) {
    const Crossing& x = d.crossings[k];
    int loop_arc = -1, a_in = -1, a_out = -1;
    for (int s = 0; s < 4; ++s)
        if (x.slot[s] == x.slot[(s + 1) % 4]) {
            loop_arc = x.slot[s];
            a_in = x.slot[(s + 2) % 4];
            a_out = x.slot[(s + 3) % 4];
        }
    if (loop_arc < 0) throw InputError("r1 remove: crossing is not a kink");
    ReidemeisterMove<F> mv;
    mv.source = d;
    TangleDiagram small = d;
    small.crossings.clear();
    for (int i = 0; i < d.crossing_count(); ++i)
        if (i != k) small.crossings.push_back(d.crossings[i]);
    GluedDiagram glued = glue_raw(small, {{a_in, a_out}});
    mv.modified = glued.diagram;
    mv.modified_atoms = glued.rep_atoms;

    mv.cube_src = build_cube(d, spec, crossing_cap);
    mv.cube_dst = build_cube(mv.modified, spec, crossing_cap);
    std::map<int, int> alias;
    for (const auto& [rep, atoms] : glued.rep_atoms)
        for (int a : atoms) alias[a] = rep;
    auto [to_big, to_small] =
        r1_reduce(mv.cube_src, mv.cube_dst, k, loop_arc, detail::key_with_aliases(alias, {loop_arc}),
                  detail::key_with_aliases(alias, {}));
    mv.forward = std::move(to_small);
    mv.backward = std::move(to_big);
    return mv;
}

// R2: slide `alpha` under `beta` (two new crossings of opposite sign).
template <class F>
ReidemeisterMove<F> reidemeister2(const TangleDiagram& d, int alpha, int beta,
                                  const FrobeniusSpec<F>& spec, int crossing_cap = 14) {
    if (alpha == beta) throw InputError("r2: the two arcs must differ");
    ReidemeisterMove<F> mv;
    mv.source = d;
    TangleDiagram big = d;
    int fresh = big.max_arc_label() + 1;
    auto [a1, a3] = detail::cut_arc_for_insert(big, alpha, fresh);
    auto [b1, b3] = detail::cut_arc_for_insert(big, beta, fresh + 1);
    int a2 = fresh + 2;
    int b2 = fresh + 3;
    big.crossings.push_back(Crossing{{a1, b1, a2, b2}, 1});
    big.crossings.push_back(Crossing{{a2, b3, a3, b2}, 3});
    mv.modified = big;

    mv.cube_src = build_cube(d, spec, crossing_cap);
    mv.cube_dst = build_cube(big, spec, crossing_cap + 2);
    const int k1 = big.crossing_count() - 2;
    auto [to_big, to_small] = r2_reduce(mv.cube_dst, mv.cube_src, k1, k1 + 1, a2, b2,
                                        detail::key_with_aliases({{a3, a1}, {b3, b1}}, {a2, b2}),
                                        detail::key_with_aliases({}, {}));
    mv.forward = std::move(to_big);
    mv.backward = std::move(to_small);
    return mv;
}

// R2 removal: cancels the crossing pair (k1, k2) whose shared arcs
// (mid_a under-under, mid_b over-over) bound the cancelling corridor.
// source = d, modified = the smaller diagram.
template <class F>
ReidemeisterMove<F> reidemeister2_remove(const TangleDiagram& d, int k1, int k2, int mid_a,
                                         int mid_b, const FrobeniusSpec<F>& spec,
                                         int crossing_cap = 14) {
    if (k1 == k2) throw InputError("r2 remove: need two distinct crossings");
    ReidemeisterMove<F> mv;
    mv.source = d;
    const Crossing& c1 = d.crossings[k1];
    const Crossing& c2 = d.crossings[k2];
    // outer pieces: the non-middle under and over slots at each crossing
    auto other_under = [&](const Crossing& c) {
        int s = detail::slot_of(c, mid_a, true);
        if (s < 0) throw InputError("r2 remove: middle arc is not under-shared by the pair");
        return c.slot[s == 0 ? 2 : 0];
    };
    auto other_over = [&](const Crossing& c) {
        int s = detail::slot_of(c, mid_b, false);
        if (s < 0) throw InputError("r2 remove: middle arc is not over-shared by the pair");
        return c.slot[s == 1 ? 3 : 1];
    };
    int a1 = other_under(c1), a3 = other_under(c2);
    int b1 = other_over(c1), b3 = other_over(c2);

    TangleDiagram small = d;
    small.crossings.clear();
    for (int k = 0; k < d.crossing_count(); ++k)
        if (k != k1 && k != k2) small.crossings.push_back(d.crossings[k]);
    GluedDiagram glued = glue_raw(small, {{a1, mid_a}, {mid_a, a3}, {b1, mid_b}, {mid_b, b3}});
    mv.modified = glued.diagram;
    mv.modified_atoms = glued.rep_atoms;

    mv.cube_src = build_cube(d, spec, crossing_cap);
    mv.cube_dst = build_cube(mv.modified, spec, crossing_cap);

    std::map<int, int> alias;
    for (const auto& [rep, atoms] : glued.rep_atoms)
        for (int a : atoms) alias[a] = rep;
    auto [to_big, to_small] =
        r2_reduce(mv.cube_src, mv.cube_dst, k1, k2, mid_a, mid_b,
                  detail::key_with_aliases(alias, {mid_a, mid_b}),
                  detail::key_with_aliases(alias, {}));
    mv.forward = std::move(to_small);
    mv.backward = std::move(to_big);
    return mv;
}

}  // namespace skein
