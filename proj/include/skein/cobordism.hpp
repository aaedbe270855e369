#pragma once

#include <vector>

#include "skein/cube.hpp"

namespace skein {

// Applies one elementary cobordism event to a closed diagram. Saddles use
// the canonical half-pairing: the first scan-order endpoint of arc_a joins
// the first of arc_b. Returns the new diagram plus the arc-expansion hook
// identifying its arcs with the source's for transition maps.
struct EventStep {
    TangleDiagram after;
    CobordismEvent event;
    std::map<int, std::vector<int>> dst_keys;  // arc -> source keys (default self)
    int q_shift = 0;
};

inline EventStep apply_event_to_diagram(const TangleDiagram& d, const CobordismEvent& e) {
    EventStep step;
    step.event = e;
    step.after = d;
    auto is_loop = [&](int a) {
        return std::find(d.loops.begin(), d.loops.end(), a) != d.loops.end();
    };
    switch (e.kind) {
        case EventKind::Birth: {
            int fresh = d.max_arc_label() + 1;
            step.after.loops.push_back(fresh);
            step.event.arc_a = fresh;
            step.q_shift = +1;
            return step;
        }
        case EventKind::Death: {
            if (!is_loop(e.arc_a)) throw InputError("death: arc is not a free loop");
            auto& loops = step.after.loops;
            loops.erase(std::find(loops.begin(), loops.end(), e.arc_a));
            step.q_shift = +1;
            return step;
        }
        case EventKind::Dot:
            if (d.max_arc_label() < e.arc_a) throw InputError("dot: unknown arc");
            step.q_shift = -2;
            return step;
        default: break;
    }
    // merge and split both name a saddle; which one occurs is read off the
    // resolutions
    int x = e.arc_a, y = e.arc_b;
    step.q_shift = -1;
    bool lx = is_loop(x), ly = is_loop(y);
    if (x == y) {
        // split off a loop from the strand through x
        int fresh = d.max_arc_label() + 1;
        step.after.loops.push_back(fresh);
        step.dst_keys[fresh] = {x};
        return step;
    }
    if (lx && ly) {
        auto& loops = step.after.loops;
        loops.erase(std::find(loops.begin(), loops.end(), y));
        step.dst_keys[x] = {x, y};
        return step;
    }
    if (lx || ly) {
        int loop = lx ? x : y;
        int arc = lx ? y : x;
        auto& loops = step.after.loops;
        loops.erase(std::find(loops.begin(), loops.end(), loop));
        step.dst_keys[arc] = {arc, loop};
        return step;
    }
    // two honest arcs: reconnect first endpoints together
    int fresh = d.max_arc_label() + 1;
    int seen_x = 0, seen_y = 0;
    for (auto& c : step.after.crossings)
        for (int& a : c.slot) {
            if (a == x && ++seen_x == 2) a = fresh;
            else if (a == y) {
                ++seen_y;
                if (seen_y == 1) a = x;
                else a = fresh;
            }
        }
    for (int& a : step.after.top_arcs) {
        if (a == x && ++seen_x == 2) a = fresh;
        else if (a == y) a = (++seen_y == 1) ? x : fresh;
    }
    for (int& a : step.after.bottom_arcs) {
        if (a == x && ++seen_x == 2) a = fresh;
        else if (a == y) a = (++seen_y == 1) ? x : fresh;
    }
    if (seen_x != 2 || seen_y != 2) throw InputError("saddle: arcs not found twice");
    step.dst_keys[x] = {x, y};
    step.dst_keys[fresh] = {x, y};
    return step;
}

// Chain map induced by a sequence of elementary cobordism events from d1 to
// d2. Each event must relate consecutive diagrams; the final diagram must
// equal d2 up to canonical relabeling.
template <class F>
struct CobordismResult {
    KhResult<F> source, target;
    ChainMapData<F> map;  // C(d1) -> C(d2)
};

template <class F>
CobordismResult<F> cobordism_map(const TangleDiagram& d1, const TangleDiagram& d2,
                                 const std::vector<CobordismEvent>& events,
                                 const FrobeniusSpec<F>& spec, int crossing_cap = 14) {
    CobordismResult<F> out;
    out.source = kh(d1, spec, crossing_cap);
    out.target = kh(d2, spec, crossing_cap);

    CubeData<F> cur = out.source.cube;
    ChainMapData<F> acc;
    acc.t_shift = 0;
    acc.q_shift = 0;
    for (int deg : cur.cx.degrees()) acc.comp[deg] = SparseMatrix<F>::identity(cur.cx.dim(deg));

    for (const auto& e : events) {
        if (e.kind == EventKind::Dot) {
            ChainMapData<F> dm = dot_map(cur, e.arc_a);
            acc = compose(dm, acc, out.source.cube.cx, cur.cx, cur.cx);
            continue;
        }
        EventStep step = apply_event_to_diagram(cur.diagram, e);
        CubeData<F> next = build_cube(step.after, spec, crossing_cap);
        auto expand_dst = [&step](int arc) {
            auto it = step.dst_keys.find(arc);
            return it == step.dst_keys.end() ? std::vector<int>{arc} : it->second;
        };
        ChainMapData<F> t = transition_map(cur, next, step.q_shift, expand_identity, expand_dst);
        acc = compose(t, acc, out.source.cube.cx, cur.cx, next.cx);
        cur = std::move(next);
    }

    // final identification with d2
    auto [canon_cur, map_cur] = canonicalize_with_map(cur.diagram);
    auto [canon_d2, map_d2] = canonicalize_with_map(d2);
    if (!(canon_cur == canon_d2))
        throw InputError("cobordism_map: event sequence does not produce the target diagram");
    ChainMapData<F> relab = transition_map(
        cur, out.target.cube, 0, [&](int arc) { return std::vector<int>{map_cur.at(arc)}; },
        [&](int arc) { return std::vector<int>{map_d2.at(arc)}; });
    out.map = compose(relab, acc, out.source.cube.cx, cur.cx, out.target.cube.cx);
    validate_chain_map(out.map, out.source.cube.cx, out.target.cube.cx);
    return out;
}

}  // namespace skein
