#pragma once

#include <string>
#include <utility>
#include <vector>

#include "skein/diagram.hpp"

namespace skein {

// Named link diagrams, all within 8 crossings.
inline std::vector<std::pair<std::string, TangleDiagram>> corpus_links() {
    std::vector<std::pair<std::string, TangleDiagram>> out;
    TangleDiagram unknot;
    unknot.loops = {0};
    out.push_back({"unknot", unknot});

    TangleDiagram kink_pos;
    kink_pos.crossings.push_back({{0, 0, 1, 1}, 3});
    out.push_back({"unknot-kink-positive", kink_pos});

    TangleDiagram kink_neg;
    kink_neg.crossings.push_back({{0, 1, 1, 0}, 1});
    out.push_back({"unknot-kink-negative", kink_neg});

    out.push_back({"unlink-2", disjoint_union(unknot, unknot)});
    out.push_back({"unlink-3", disjoint_union(disjoint_union(unknot, unknot), unknot)});
    out.push_back({"unknot-r2", trace_closure(braid_diagram(2, {+1, -1}))});
    out.push_back({"hopf-positive", trace_closure(braid_diagram(2, {+1, +1}))});
    out.push_back({"hopf-negative", trace_closure(braid_diagram(2, {-1, -1}))});
    out.push_back({"trefoil-right", trace_closure(braid_diagram(2, {+1, +1, +1}))});
    out.push_back({"trefoil-left", trace_closure(braid_diagram(2, {-1, -1, -1}))});
    out.push_back({"figure-eight", trace_closure(braid_diagram(3, {+1, -2, +1, -2}))});
    out.push_back({"torus-2-4", trace_closure(braid_diagram(2, {+1, +1, +1, +1}))});
    out.push_back({"torus-2-5", trace_closure(braid_diagram(2, {+1, +1, +1, +1, +1}))});
    out.push_back({"torus-2-6", trace_closure(braid_diagram(2, {+1, +1, +1, +1, +1, +1}))});
    out.push_back({"torus-3-3", trace_closure(braid_diagram(3, {+1, +2, +1, +2, +1, +2}))});
    out.push_back({"braid-3-mixed", trace_closure(braid_diagram(3, {+1, +1, +2, +2}))});
    out.push_back({"solomon-mirror", trace_closure(braid_diagram(2, {-1, -1, -1, -1}))});
    return out;
}

// Splittings (d1, d2) with compose(d1, d2) a closed link, n <= 2.
inline std::vector<std::tuple<std::string, TangleDiagram, TangleDiagram>> corpus_glue_pairs() {
    auto m1 = CrossinglessMatching{1, {{1, 2}}};
    auto side = CrossinglessMatching{2, {{1, 2}, {3, 4}}};
    auto nested = CrossinglessMatching{2, {{1, 4}, {2, 3}}};
    TangleDiagram cup = matching_tangle(m1, /*caps=*/true);
    TangleDiagram cap = matching_tangle(m1, /*caps=*/false);
    TangleDiagram cups_side = matching_tangle(side, true);
    TangleDiagram caps_side = matching_tangle(side, false);
    TangleDiagram cups_nested = matching_tangle(nested, true);
    TangleDiagram caps_nested = matching_tangle(nested, false);

    std::vector<std::tuple<std::string, TangleDiagram, TangleDiagram>> out;
    out.push_back({"cup-cap", cup, cap});
    out.push_back({"cup-id-cap", compose(cup, identity_tangle(2)), cap});
    out.push_back({"cup-kinked-cap", compose(cup, braid_diagram(2, {+1})), cap});
    out.push_back({"cup-r2-cap", compose(cup, braid_diagram(2, {+1, -1})), cap});
    out.push_back({"cups-side-caps-side", cups_side, caps_side});
    out.push_back({"cups-side-caps-nested", cups_side, caps_nested});
    out.push_back({"cups-nested-caps-nested", cups_nested, caps_nested});
    out.push_back({"hopf-positive-split", compose(cups_side, braid_diagram(4, {+2, +2})),
                   caps_side});
    out.push_back({"hopf-negative-split", compose(cups_side, braid_diagram(4, {-2, -2})),
                   caps_side});
    out.push_back({"trefoil-split", compose(cups_side, braid_diagram(4, {+2, +2, +2})),
                   caps_side});
    out.push_back({"figure-eight-ish-split",
                   compose(cups_side, braid_diagram(4, {+2, -2})), caps_nested});
    out.push_back({"unknot-wide-split", compose(cups_nested, identity_tangle(4)), caps_side});
    return out;
}

// (n,n)-tangles accepted by the 1-handle (closing orientations compatible).
inline std::vector<std::pair<std::string, TangleDiagram>> corpus_handle1_tangles() {
    std::vector<std::pair<std::string, TangleDiagram>> out;
    out.push_back({"empty", empty_diagram()});
    out.push_back({"identity-1", identity_tangle(2, +1)});
    TangleDiagram tw = braid_diagram(2, {+1, +1});
    out.push_back({"full-twist-2", tw});
    TangleDiagram turnback =
        compose(matching_tangle(CrossinglessMatching{1, {{1, 2}}}, false),
                matching_tangle(CrossinglessMatching{1, {{1, 2}}}, true));
    out.push_back({"turnback-2", turnback});
    return out;
}

}  // namespace skein
