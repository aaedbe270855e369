#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "skein/complex.hpp"
#include "skein/diagram.hpp"
#include "skein/tqft.hpp"

namespace skein {

// Cube of resolutions of a closed diagram, assembled into a bigraded chain
// complex. Basis element (vertex v, labeling L): bit k of v picks the
// 1-smoothing of crossing k; bit i of L labels circle i (in the canonical
// per-vertex circle order) with X. Homological degree |v| - n_minus, quantum
// degree |v| + n_plus - 2 n_minus + sum(+1 for 1, -1 for X).
template <class F>
struct CubeData {
    TangleDiagram diagram;
    FrobeniusSpec<F> spec;
    int n_plus = 0, n_minus = 0;
    std::vector<std::vector<std::vector<int>>> circles;  // [vertex][circle] = arcs
    std::vector<int> vertex_offset;                      // position of labeling 0 in its degree
    ChainComplex<F> cx;

    int vertex_degree(uint64_t v) const { return __builtin_popcountll(v) - n_minus; }

    int basis_index(uint64_t v, uint64_t labeling) const {
        return vertex_offset[v] + static_cast<int>(labeling);
    }

    int circle_of_arc(uint64_t v, int arc) const {
        const auto& cs = circles[v];
        for (size_t i = 0; i < cs.size(); ++i)
            if (std::binary_search(cs[i].begin(), cs[i].end(), arc)) return static_cast<int>(i);
        throw std::logic_error("circle_of_arc: arc not found");
    }
};

template <class F>
CubeData<F> build_cube(const TangleDiagram& d, const FrobeniusSpec<F>& spec,
                       int crossing_cap = 14) {
    if (!d.closed()) throw InputError("cube: diagram must be closed");
    const int c = d.crossing_count();
    if (c > crossing_cap)
        throw CapError("cube: " + std::to_string(c) + " crossings exceed cap " +
                       std::to_string(crossing_cap));
    CubeData<F> cube;
    cube.diagram = d;
    cube.spec = spec;
    cube.n_plus = d.positive_crossings();
    cube.n_minus = d.negative_crossings();

    const uint64_t nv = uint64_t{1} << c;
    cube.circles.resize(nv);
    cube.vertex_offset.assign(nv, 0);
    std::map<int, std::vector<BasisElem>> basis;
    for (uint64_t v = 0; v < nv; ++v) {
        cube.circles[v] = resolution_circles(d, v);
        int deg = cube.vertex_degree(v);
        auto& b = basis[deg];
        cube.vertex_offset[v] = static_cast<int>(b.size());
        int nc = static_cast<int>(cube.circles[v].size());
        int w = __builtin_popcountll(v);
        for (uint64_t lab = 0; lab < (uint64_t{1} << nc); ++lab) {
            int qlab = nc - 2 * __builtin_popcountll(lab);
            BasisElem e;
            e.q = w + cube.n_plus - 2 * cube.n_minus + qlab;
            e.aux0 = v;
            e.aux1 = lab;
            b.push_back(e);
        }
    }
    cube.cx.graded = spec.graded();
    for (auto& [deg, b] : basis) cube.cx.set_basis(deg, std::move(b));

    // differentials: one merge or split per cube edge
    for (int deg = cube.cx.min_degree(); deg < cube.cx.max_degree(); ++deg) {
        SparseMatrix<F> m(cube.cx.dim(deg + 1), cube.cx.dim(deg));
        for (uint64_t v = 0; v < nv; ++v) {
            if (cube.vertex_degree(v) != deg) continue;
            const auto& sc = cube.circles[v];
            const int nc = static_cast<int>(sc.size());
            for (int k = 0; k < c; ++k) {
                if ((v >> k) & 1) continue;
                uint64_t w = v | (uint64_t{1} << k);
                const auto& tc = cube.circles[w];
                const int ntc = static_cast<int>(tc.size());
                int sign_bits = __builtin_popcountll(v & ((uint64_t{1} << k) - 1));
                F edge_sign = (sign_bits % 2) ? -F::one() : F::one();

                // match circles by first-arc membership
                std::map<int, int> arc_to_src;
                for (int i = 0; i < nc; ++i)
                    for (int a : sc[i]) arc_to_src[a] = i;
                std::vector<int> tgt_of_src(nc, -1);
                int merge_a = -1, merge_b = -1, merge_t = -1;
                int split_s = -1, split_t1 = -1, split_t2 = -1;
                if (ntc == nc - 1) {
                    // merge: find the target circle covering two source circles
                    for (int j = 0; j < ntc; ++j) {
                        std::set<int> srcs;
                        for (int a : tc[j]) srcs.insert(arc_to_src.at(a));
                        if (srcs.size() == 2) {
                            merge_a = *srcs.begin();
                            merge_b = *srcs.rbegin();
                            merge_t = j;
                        } else {
                            tgt_of_src[*srcs.begin()] = j;
                        }
                    }
                } else if (ntc == nc + 1) {
                    // split: one source circle covers two target circles
                    std::map<int, std::vector<int>> tgts_of;
                    for (int j = 0; j < ntc; ++j) tgts_of[arc_to_src.at(tc[j][0])].push_back(j);
                    for (const auto& [i, js] : tgts_of) {
                        if (js.size() == 2) {
                            split_s = i;
                            split_t1 = js[0];
                            split_t2 = js[1];
                        } else {
                            tgt_of_src[i] = js[0];
                        }
                    }
                } else {
                    // a planar diagram's smoothing change is always a single
                    // merge or split; anything else is an inconsistent input
                    throw InputError(
                        "diagram is not planar-consistent: a smoothing change at crossing " +
                        std::to_string(k) + " does not change the circle count");
                }

                for (uint64_t lab = 0; lab < (uint64_t{1} << nc); ++lab) {
                    int col = cube.basis_index(v, lab);
                    auto base_target = [&]() {
                        uint64_t t = 0;
                        for (int i = 0; i < nc; ++i)
                            if (tgt_of_src[i] >= 0 && ((lab >> i) & 1))
                                t |= uint64_t{1} << tgt_of_src[i];
                        return t;
                    };
                    if (merge_t >= 0) {
                        F out[2];
                        spec.multiply((lab >> merge_a) & 1, (lab >> merge_b) & 1, out);
                        uint64_t t0 = base_target();
                        for (int lt = 0; lt < 2; ++lt) {
                            if (out[lt].is_zero()) continue;
                            uint64_t t = t0 | (lt ? (uint64_t{1} << merge_t) : 0);
                            m.add(cube.basis_index(w, t), col, edge_sign * out[lt]);
                        }
                    } else {
                        uint64_t t0 = base_target();
                        for (const auto& [l1, l2, coef] : spec.comultiply((lab >> split_s) & 1)) {
                            uint64_t t = t0 | (l1 ? (uint64_t{1} << split_t1) : 0) |
                                         (l2 ? (uint64_t{1} << split_t2) : 0);
                            m.add(cube.basis_index(w, t), col, edge_sign * coef);
                        }
                    }
                }
            }
        }
        cube.cx.set_diff(deg, std::move(m));
    }
    cube.cx.validate();
    return cube;
}

template <class F>
struct KhResult {
    CubeData<F> cube;
    Homology<F> hom;
    GradedDims dims;
};

template <class F>
KhResult<F> kh(const TangleDiagram& d, const FrobeniusSpec<F>& spec, int crossing_cap = 14) {
    KhResult<F> r;
    r.cube = build_cube(d, spec, crossing_cap);
    r.hom = homology(r.cube.cx);
    r.dims = r.hom.dims;
    return r;
}

// ---------------------------------------------------------------------------
// Cobordism transitions between cubes over the same crossing list.
//
// The two diagrams must have matching crossing lists (same order and signs);
// they may differ in how arcs interconnect elsewhere (saddles re-pair arcs,
// births/deaths add/remove loops). Per vertex, the circle partitions then
// differ by at most one elementary event, detected by overlap of circle key
// sets. The expand hooks map each side's arc labels into a common key space
// (atom arcs for glued states, canonical labels for relabelings); identity
// by default.

using ArcExpand = std::function<std::vector<int>(int)>;

inline std::vector<int> expand_identity(int a) { return {a}; }

template <class F>
ChainMapData<F> transition_map(const CubeData<F>& src, const CubeData<F>& dst, int q_shift,
                               const ArcExpand& expand_src = expand_identity,
                               const ArcExpand& expand_dst = expand_identity) {
    if (src.diagram.crossing_count() != dst.diagram.crossing_count())
        throw std::logic_error("transition_map: crossing counts differ");
    for (int k = 0; k < src.diagram.crossing_count(); ++k)
        if (src.diagram.crossings[k].over_in != dst.diagram.crossings[k].over_in)
            throw std::logic_error("transition_map: crossing signs differ");
    ChainMapData<F> f;
    f.t_shift = 0;
    f.q_shift = q_shift;
    const int c = src.diagram.crossing_count();
    const uint64_t nv = uint64_t{1} << c;
    std::map<int, SparseMatrix<F>> comp;
    for (int deg : src.cx.degrees())
        comp[deg] = SparseMatrix<F>(dst.cx.dim(deg), src.cx.dim(deg));
    for (uint64_t v = 0; v < nv; ++v) {
        int deg = src.vertex_degree(v);
        const auto& sc = src.circles[v];
        const auto& tc = dst.circles[v];
        const int nc = static_cast<int>(sc.size());
        const int ntc = static_cast<int>(tc.size());
        std::map<int, int> key_to_src;
        for (int i = 0; i < nc; ++i)
            for (int a : sc[i])
                for (int key : expand_src(a)) key_to_src[key] = i;

        // classify: for each target circle, the source circles it meets
        std::vector<std::vector<int>> meets(ntc);
        std::vector<int> hits(nc, 0);
        for (int j = 0; j < ntc; ++j) {
            std::set<int> srcs;
            for (int a : tc[j])
                for (int key : expand_dst(a)) {
                    auto it = key_to_src.find(key);
                    if (it != key_to_src.end()) srcs.insert(it->second);
                }
            meets[j].assign(srcs.begin(), srcs.end());
            for (int i : meets[j]) ++hits[i];
        }

        std::vector<int> tgt_of_src(nc, -1);
        int merge_a = -1, merge_b = -1, merge_t = -1;
        int split_s = -1, split_t1 = -1, split_t2 = -1;
        int birth_t = -1, death_s = -1;
        for (int j = 0; j < ntc; ++j) {
            if (meets[j].empty()) {
                if (birth_t >= 0) throw std::logic_error("transition: two births at a vertex");
                birth_t = j;
            } else if (meets[j].size() == 2) {
                if (merge_t >= 0) throw std::logic_error("transition: two merges at a vertex");
                merge_a = meets[j][0];
                merge_b = meets[j][1];
                merge_t = j;
            } else {
                int i = meets[j][0];
                if (hits[i] == 2) {
                    if (split_s >= 0 && split_s != i)
                        throw std::logic_error("transition: two splits at a vertex");
                    if (split_s == i) split_t2 = j;
                    else {
                        split_s = i;
                        split_t1 = j;
                    }
                } else {
                    tgt_of_src[i] = j;
                }
            }
        }
        for (int i = 0; i < nc; ++i)
            if (hits[i] == 0) {
                if (death_s >= 0) throw std::logic_error("transition: two deaths at a vertex");
                death_s = i;
            }
        int events = (merge_t >= 0) + (split_s >= 0) + (birth_t >= 0) + (death_s >= 0);
        if (events > 1) throw std::logic_error("transition: multiple events at a vertex");

        SparseMatrix<F>& m = comp[deg];
        for (uint64_t lab = 0; lab < (uint64_t{1} << nc); ++lab) {
            int col = src.basis_index(v, lab);
            uint64_t t0 = 0;
            for (int i = 0; i < nc; ++i)
                if (tgt_of_src[i] >= 0 && ((lab >> i) & 1)) t0 |= uint64_t{1} << tgt_of_src[i];
            if (merge_t >= 0) {
                F out[2];
                src.spec.multiply((lab >> merge_a) & 1, (lab >> merge_b) & 1, out);
                for (int lt = 0; lt < 2; ++lt)
                    if (!out[lt].is_zero())
                        m.add(dst.basis_index(v, t0 | (lt ? (uint64_t{1} << merge_t) : 0)), col,
                              out[lt]);
            } else if (split_s >= 0) {
                for (const auto& [l1, l2, coef] : src.spec.comultiply((lab >> split_s) & 1)) {
                    uint64_t t = t0 | (l1 ? (uint64_t{1} << split_t1) : 0) |
                                 (l2 ? (uint64_t{1} << split_t2) : 0);
                    m.add(dst.basis_index(v, t), col, coef);
                }
            } else if (birth_t >= 0) {
                // new circle labeled 1
                m.add(dst.basis_index(v, t0), col, F::one());
            } else if (death_s >= 0) {
                F eps = src.spec.counit((lab >> death_s) & 1);
                if (!eps.is_zero()) m.add(dst.basis_index(v, t0), col, eps);
            } else {
                m.add(dst.basis_index(v, t0), col, F::one());
            }
        }
    }
    for (auto& [deg, m] : comp) f.comp[deg] = std::move(m);
    return f;
}

// Multiplication by X on the circle through `arc`, as an endomorphism of the
// cube complex. Quantum shift -2.
template <class F>
ChainMapData<F> dot_map(const CubeData<F>& cube, int arc) {
    ChainMapData<F> f;
    f.t_shift = 0;
    f.q_shift = -2;
    const int c = cube.diagram.crossing_count();
    const uint64_t nv = uint64_t{1} << c;
    std::map<int, SparseMatrix<F>> comp;
    for (int deg : cube.cx.degrees())
        comp[deg] = SparseMatrix<F>(cube.cx.dim(deg), cube.cx.dim(deg));
    for (uint64_t v = 0; v < nv; ++v) {
        int deg = cube.vertex_degree(v);
        int ci = cube.circle_of_arc(v, arc);
        const int nc = static_cast<int>(cube.circles[v].size());
        SparseMatrix<F>& m = comp[deg];
        for (uint64_t lab = 0; lab < (uint64_t{1} << nc); ++lab) {
            int col = cube.basis_index(v, lab);
            for (const auto& [l, coef] : cube.spec.dot((lab >> ci) & 1)) {
                uint64_t t = (lab & ~(uint64_t{1} << ci)) | (l ? (uint64_t{1} << ci) : 0);
                m.add(cube.basis_index(v, t), col, coef);
            }
        }
    }
    for (auto& [deg, m] : comp) f.comp[deg] = std::move(m);
    return f;
}

}  // namespace skein
