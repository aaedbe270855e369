#pragma once

#include "skein/reidemeister.hpp"

namespace skein {

namespace detail {

// Triangle data of an R3 move: the distinguished crossing X (between the two
// non-slider strands) and the slider crossings Y1, Y2, with the connecting
// middle arcs.
struct R3Triangle {
    int x, y1, y2;        // crossing indices
    int p, q, s;          // middles: X-Y1, X-Y2, Y1-Y2
    int sp, sq;           // slots of p, q at X
    int smoothing;        // smoothing of X joining p to q
};

inline std::vector<int> shared_arcs(const Crossing& a, const Crossing& b) {
    std::vector<int> out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (a.slot[i] == b.slot[j] &&
                std::find(out.begin(), out.end(), a.slot[i]) == out.end())
                out.push_back(a.slot[i]);
    return out;
}

inline int any_slot_of(const Crossing& x, int arc) {
    for (int s = 0; s < 4; ++s)
        if (x.slot[s] == arc) return s;
    return -1;
}

// The closure arcs of a small diagram can also join the three crossings, so
// several candidate triangles may exist; each is attempted and the runtime
// verification keeps the valid one.
inline std::vector<R3Triangle> r3_candidates(const TangleDiagram& d, int ka, int kb, int kc) {
    std::array<int, 3> ks = {ka, kb, kc};
    std::vector<R3Triangle> cands;
    for (int out = 0; out < 3; ++out) {
        int x = ks[out];
        int y1 = ks[(out + 1) % 3], y2 = ks[(out + 2) % 3];
        for (int s : shared_arcs(d.crossings[y1], d.crossings[y2])) {
            bool over_both = slot_of(d.crossings[y1], s, false) >= 0 &&
                             slot_of(d.crossings[y2], s, false) >= 0;
            bool under_both = slot_of(d.crossings[y1], s, true) >= 0 &&
                              slot_of(d.crossings[y2], s, true) >= 0;
            if (!over_both && !under_both) continue;
            for (int p : shared_arcs(d.crossings[x], d.crossings[y1])) {
                if (p == s) continue;
                // p rides the non-slider strand of y1
                if (slot_of(d.crossings[y1], p, over_both) < 0) continue;
                for (int q : shared_arcs(d.crossings[x], d.crossings[y2])) {
                    if (q == s || q == p) continue;
                    if (slot_of(d.crossings[y2], q, over_both) < 0) continue;
                    R3Triangle t;
                    t.x = x;
                    t.y1 = y1;
                    t.y2 = y2;
                    t.s = s;
                    t.p = p;
                    t.q = q;
                    t.sp = any_slot_of(d.crossings[x], p);
                    t.sq = any_slot_of(d.crossings[x], q);
                    if (((t.sp ^ t.sq) & 1) == 0) continue;  // same strand of X
                    t.smoothing = pairing_smoothing(t.sp, t.sq);
                    cands.push_back(t);
                }
            }
        }
    }
    if (cands.empty()) throw InputError("r3: the three crossings do not form a slide triangle");
    return cands;
}

// Slides the X-passages of both non-slider strands across their slider
// crossings, producing the moved diagram. Crossing indices and chirality
// flags are preserved.
inline TangleDiagram r3_rewire(const TangleDiagram& d, const R3Triangle& t) {
    TangleDiagram out = d;
    auto passage = [&](const Crossing& c, int arc) {
        // (in slot, out slot) of the strand through `arc` at c
        int s_under = slot_of(c, arc, true);
        if (s_under >= 0) return std::make_pair(0, 2);
        return std::make_pair(c.over_in, c.over_in == 1 ? 3 : 1);
    };
    auto flows_into = [&](const Crossing& c, int arc) {
        auto [in, outs] = passage(c, arc);
        return c.slot[in] == arc;
    };
    // strand A: u - X - p - Y1 - u1  (or reversed); after: u - Y1 - p - X - u1
    auto slide = [&](int kx, int ky, int mid) {
        Crossing& cx = out.crossings[kx];
        Crossing& cy = out.crossings[ky];
        auto [x_in, x_out] = passage(d.crossings[kx], mid);
        auto [y_in, y_out] = passage(d.crossings[ky], mid);
        int u, u1;
        if (flows_into(d.crossings[kx], mid)) {
            // mid flows Y -> X: u1 - Y - mid - X - u ; after: u1 - X - mid - Y - u
            u1 = d.crossings[ky].slot[y_in];
            u = d.crossings[kx].slot[x_out];
            cx.slot[x_in] = u1;
            cx.slot[x_out] = mid;
            cy.slot[y_in] = mid;
            cy.slot[y_out] = u;
        } else {
            // mid flows X -> Y: u - X - mid - Y - u1 ; after: u - Y - mid - X - u1
            u = d.crossings[kx].slot[x_in];
            u1 = d.crossings[ky].slot[y_out];
            cy.slot[y_in] = u;
            cy.slot[y_out] = mid;
            cx.slot[x_in] = mid;
            cx.slot[x_out] = u1;
        }
    };
    slide(t.x, t.y1, t.p);
    slide(t.x, t.y2, t.q);
    // the slider meets the two strands in the opposite order on the other
    // side of X, so its own crossings transpose as well
    slide(t.y1, t.y2, t.s);
    return out;
}

}  // namespace detail

// R3: slides the strand through Y1 and Y2 across the crossing X of the other
// two strands. The map comes from reducing both cubes onto the shared
// partial-smoothing complex (the distinguished crossing resolved, the slider
// bigon cancelled on one side) and matching the survivors.
template <class F>
ReidemeisterMove<F> r3_attempt(const TangleDiagram& d, const detail::R3Triangle& tri,
                               const FrobeniusSpec<F>& spec, int crossing_cap) {
    ReidemeisterMove<F> mv;
    mv.source = d;
    mv.modified = detail::r3_rewire(d, tri);
    detail::R3Triangle tri2 = tri;
    tri2.sp = detail::any_slot_of(mv.modified.crossings[tri.x], tri.p);
    tri2.sq = detail::any_slot_of(mv.modified.crossings[tri.x], tri.q);
    tri2.smoothing = detail::pairing_smoothing(tri2.sp, tri2.sq);
    if (tri2.smoothing != tri.smoothing)
        throw std::logic_error("r3: rewiring changed the resolved smoothing");

    mv.cube_src = build_cube(d, spec, crossing_cap);
    mv.cube_dst = build_cube(mv.modified, spec, crossing_cap);

    // reduce each side: cancel the slider bigon inside the X = smoothing slice
    auto reduce_side = [&](const CubeData<F>& cube,
                           const detail::R3Triangle& t) -> Reduction<F> {
        detail::BigonPattern pat;
        pat.k1 = t.y1;
        pat.k2 = t.y2;
        const Crossing& cy1 = cube.diagram.crossings[t.y1];
        const Crossing& cy2 = cube.diagram.crossings[t.y2];
        pat.bub1 = detail::pairing_smoothing(detail::any_slot_of(cy1, t.p),
                                             detail::any_slot_of(cy1, t.s));
        pat.bub2 = detail::pairing_smoothing(detail::any_slot_of(cy2, t.q),
                                             detail::any_slot_of(cy2, t.s));
        if (pat.bub1 + pat.bub2 != 1)
            throw InputError("r3: slider bigon does not cancel in the resolved slice");
        Eliminator<F> elim(cube.cx);
        auto filter = [&](uint64_t w) {
            return static_cast<int>((w >> t.x) & 1) == t.smoothing;
        };
        detail::eliminate_bigon(elim, cube, pat, t.p, t.s, filter);
        return std::move(elim).finalize();
    };
    Reduction<F> red_src = reduce_side(mv.cube_src, tri);
    Reduction<F> red_dst = reduce_side(mv.cube_dst, tri2);

    // Survivor matching goes through the canonically identified partial
    // smoothing models: the E-part (X resolved the other way) and the T-part
    // (X resolved, slider bigon cancelled). Both models must agree between
    // the two sides; configurations where the slide corridor carries other
    // diagram features fail here and are reported unsupported.
    struct ModelKeys {
        std::map<int, int> key;  // big-cube arc -> canonical model label
    };
    auto build_model = [&](const TangleDiagram& dd, const detail::R3Triangle& t, bool t_part)
        -> std::pair<TangleDiagram, ModelKeys> {
        TangleDiagram base = dd;
        base.crossings.clear();
        std::set<int> drop = {t.x};
        if (t_part) {
            drop.insert(t.y1);
            drop.insert(t.y2);
        }
        for (int k = 0; k < dd.crossing_count(); ++k)
            if (!drop.count(k)) base.crossings.push_back(dd.crossings[k]);
        std::vector<std::pair<int, int>> seams;
        const Crossing& cx = dd.crossings[t.x];
        int sm = t_part ? detail::pairing_smoothing(detail::any_slot_of(cx, t.p),
                                                    detail::any_slot_of(cx, t.q))
                        : 1 - detail::pairing_smoothing(detail::any_slot_of(cx, t.p),
                                                        detail::any_slot_of(cx, t.q));
        if (sm == 0) {
            seams.push_back({cx.slot[0], cx.slot[1]});
            seams.push_back({cx.slot[2], cx.slot[3]});
        } else {
            seams.push_back({cx.slot[0], cx.slot[3]});
            seams.push_back({cx.slot[1], cx.slot[2]});
        }
        if (t_part) {
            for (int y : {t.y1, t.y2}) {
                const Crossing& cy = dd.crossings[y];
                seams.push_back({cy.slot[0], cy.slot[2]});
                seams.push_back({cy.slot[1], cy.slot[3]});
            }
        }
        GluedDiagram glued = glue_raw(base, seams);
        auto [canon, cmap] = canonicalize_with_map(glued.diagram);
        ModelKeys keys;
        std::map<int, int> rep_of;
        for (const auto& [rep, atoms] : glued.rep_atoms)
            for (int a : atoms) rep_of[a] = rep;
        for (const auto& [a, rep] : rep_of) {
            auto it = cmap.find(rep);
            if (it != cmap.end()) keys.key[a] = it->second;
        }
        return {canon, keys};
    };
    auto [e_src, ekey_src] = build_model(d, tri, false);
    auto [e_dst, ekey_dst] = build_model(mv.modified, tri2, false);
    auto [t_src, tkey_src] = build_model(d, tri, true);
    auto [t_dst, tkey_dst] = build_model(mv.modified, tri2, true);
    if (!(e_src == e_dst))
        throw InputError("r3: slide corridor is not clear (the off-smoothings differ)");
    if (!(t_src == t_dst))
        throw InputError("r3: collapsed models differ; configuration unsupported");

    auto key_lookup = [&](bool is_src, bool t_part, int arc) -> int {
        const ModelKeys& mk = t_part ? (is_src ? tkey_src : tkey_dst)
                                     : (is_src ? ekey_src : ekey_dst);
        auto it = mk.key.find(arc);
        return it == mk.key.end() ? -1 : it->second;
    };

    auto try_match = [&]() -> std::pair<bool, std::map<int, std::vector<std::pair<int, int>>>> {
        std::map<int, std::vector<std::pair<int, int>>> pairs;
        for (const auto& [deg, alive_src] : red_src.alive) {
            auto it_dst = red_dst.alive.find(deg);
            if (it_dst == red_dst.alive.end()) return {alive_src.empty(), {}};
            const auto& alive_dst = it_dst->second;
            if (alive_src.size() != alive_dst.size()) return {false, {}};
            std::map<int, int> dst_pos_of_orig;
            for (size_t j = 0; j < alive_dst.size(); ++j)
                dst_pos_of_orig[alive_dst[j]] = static_cast<int>(j);
            std::vector<std::pair<int, int>>& out = pairs[deg];
            for (size_t i = 0; i < alive_src.size(); ++i) {
                const BasisElem& be = mv.cube_src.cx.basis(deg)[alive_src[i]];
                uint64_t w = be.aux0;
                bool t_part = static_cast<int>((w >> tri.x) & 1) == tri.smoothing;
                uint64_t wd = w;  // bit positions agree between the sides
                if (static_cast<uint64_t>(wd) >= mv.cube_dst.circles.size()) return {false, {}};
                const auto& sc = mv.cube_src.circles[w];
                const auto& tc = mv.cube_dst.circles[wd];
                if (sc.size() != tc.size()) return {false, {}};
                std::map<int, int> key_to_dst;
                for (size_t cj = 0; cj < tc.size(); ++cj)
                    for (int a : tc[cj]) {
                        int key = key_lookup(false, t_part, a);
                        if (key >= 0) key_to_dst[key] = static_cast<int>(cj);
                    }
                uint64_t lab_dst = 0;
                bool ok = true;
                for (size_t ci = 0; ci < sc.size() && ok; ++ci) {
                    int target = -1;
                    for (int a : sc[ci]) {
                        int key = key_lookup(true, t_part, a);
                        if (key < 0) continue;
                        auto kt = key_to_dst.find(key);
                        if (kt != key_to_dst.end()) {
                            if (target >= 0 && target != kt->second) ok = false;
                            target = kt->second;
                        }
                    }
                    if (target < 0) ok = false;
                    if (ok && ((be.aux1 >> ci) & 1)) lab_dst |= uint64_t{1} << target;
                }
                if (!ok) return {false, {}};
                auto jp = dst_pos_of_orig.find(mv.cube_dst.basis_index(wd, lab_dst));
                if (jp == dst_pos_of_orig.end()) return {false, {}};
                out.push_back({static_cast<int>(i), jp->second});
            }
        }
        return {true, pairs};
    };

    auto [matched, match] = try_match();
    if (matched) {
        for (const auto& [deg, prs] : match) {
            auto next = match.find(deg + 1);
            SparseMatrix<F> ds = red_src.reduced.diff(deg);
            SparseMatrix<F> dd = red_dst.reduced.diff(deg);
            std::vector<int> dst_of_src(prs.size());
            for (const auto& [i, j] : prs) dst_of_src[i] = j;
            std::vector<int> dst_of_src_next;
            if (next != match.end()) {
                dst_of_src_next.resize(next->second.size());
                for (const auto& [i, j] : next->second) dst_of_src_next[i] = j;
            }
            for (int c = 0; c < ds.cols() && matched; ++c)
                for (int r = 0; r < ds.rows() && matched; ++r)
                    if (!(ds.at(r, c) == dd.at(dst_of_src_next[r], dst_of_src[c])))
                        matched = false;
        }
    }
    if (!matched)
        throw std::logic_error("r3: reduced complexes do not match; configuration unsupported");

    // forward = include_dst . sigma . project_src ; backward symmetric
    mv.forward.t_shift = mv.backward.t_shift = 0;
    mv.forward.q_shift = mv.backward.q_shift = 0;
    for (int deg : mv.cube_src.cx.degrees()) {
        SparseMatrix<F> fwd(mv.cube_dst.cx.dim(deg), mv.cube_src.cx.dim(deg));
        auto it = match.find(deg);
        if (it != match.end()) {
            std::vector<int> dst_of_src(it->second.size());
            for (const auto& [i, j] : it->second) dst_of_src[i] = j;
            for (int col = 0; col < mv.cube_src.cx.dim(deg); ++col) {
                SparseVec<F> proj = red_src.project(deg, SparseVec<F>::unit(col));
                SparseVec<F> mapped;
                for (const auto& [pos, c] : proj.ent)
                    mapped.set(dst_of_src[pos], c);
                SparseVec<F> out_col = red_dst.include_raw(deg, mapped);
                for (const auto& [r, c] : out_col.ent) fwd.set(r, col, c);
            }
        }
        mv.forward.comp[deg] = std::move(fwd);

        SparseMatrix<F> bwd(mv.cube_src.cx.dim(deg), mv.cube_dst.cx.dim(deg));
        if (it != match.end()) {
            std::map<int, int> src_of_dst;
            for (const auto& [i, j] : it->second) src_of_dst[j] = i;
            for (int col = 0; col < mv.cube_dst.cx.dim(deg); ++col) {
                SparseVec<F> proj = red_dst.project(deg, SparseVec<F>::unit(col));
                SparseVec<F> mapped;
                for (const auto& [pos, c] : proj.ent) mapped.set(src_of_dst.at(pos), c);
                SparseVec<F> out_col = red_src.include_raw(deg, mapped);
                for (const auto& [r, c] : out_col.ent) bwd.set(r, col, c);
            }
        }
        mv.backward.comp[deg] = std::move(bwd);
    }
    validate_chain_map(mv.forward, mv.cube_src.cx, mv.cube_dst.cx);
    validate_chain_map(mv.backward, mv.cube_dst.cx, mv.cube_src.cx);
    return mv;
}

template <class F>
ReidemeisterMove<F> reidemeister3(const TangleDiagram& d, int ka, int kb, int kc,
                                  const FrobeniusSpec<F>& spec, int crossing_cap = 14) {
    auto cands = detail::r3_candidates(d, ka, kb, kc);
    std::string last_error;
    for (const auto& tri : cands) {
        try {
            return r3_attempt(d, tri, spec, crossing_cap);
        } catch (const std::exception& e) {
            last_error = e.what();
        }
    }
    throw InputError("r3: no candidate triangle produced a verified move (last: " + last_error +
                     ")");
}

}  // namespace skein
