#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "skein/errors.hpp"

namespace skein {

// One crossing in PD form: arc labels at the four slots, counterclockwise,
// starting at the incoming under-strand. over_in names the slot (1 or 3)
// where the over-strand enters; the crossing is positive exactly when the
// over-strand enters at slot 3.
struct Crossing {
    std::array<int, 4> slot{};
    int over_in = 3;

    int sign() const { return over_in == 3 ? +1 : -1; }
    bool operator==(const Crossing&) const = default;
};

// Planar diagram of a framed, oriented tangle. Arcs are named by non-negative
// integers; every non-loop arc occurs exactly twice among crossing slots and
// boundary positions. Closed crossing-free components are listed in `loops`.
// Boundary direction: +1 strand enters the tangle at that position, -1 it
// leaves, 0 unknown (closure arcs of unoriented matchings).
struct TangleDiagram {
    std::vector<Crossing> crossings;
    std::vector<int> top_arcs;
    std::vector<int> bottom_arcs;
    std::vector<int> loops;
    std::vector<int8_t> top_dir;
    std::vector<int8_t> bottom_dir;
    // framing correction per closed component, keyed by least arc label
    std::map<int, int> framing;

    int top_count() const { return static_cast<int>(top_arcs.size()); }
    int bottom_count() const { return static_cast<int>(bottom_arcs.size()); }
    bool closed() const { return top_arcs.empty() && bottom_arcs.empty(); }
    int crossing_count() const { return static_cast<int>(crossings.size()); }

    int positive_crossings() const {
        int n = 0;
        for (const auto& c : crossings) n += c.sign() > 0;
        return n;
    }
    int negative_crossings() const { return crossing_count() - positive_crossings(); }
    int writhe() const { return positive_crossings() - negative_crossings(); }

    int max_arc_label() const;
    void validate() const;

    bool operator==(const TangleDiagram&) const = default;
};

// Non-crossing perfect matching of points 1..2n.
struct CrossinglessMatching {
    int n = 0;
    std::vector<std::pair<int, int>> pairs;  // (lo, hi), sorted by lo

    void normalize();
    void validate() const;
    bool operator==(const CrossinglessMatching&) const = default;
    bool operator<(const CrossinglessMatching& o) const { return pairs < o.pairs; }
};

// Closed crossingless diagram: circles carrying dot decorations.
struct FlatDiagram {
    struct CircleInfo {
        int id = 0;
        int dots = 0;
    };
    std::vector<CircleInfo> circles;
    // original arc -> circle position
    std::map<int, int> provenance;
};

// Cabling data for the 2-handle generators: n_plus parallel and n_minus
// reversed copies of a framed companion knot.
struct CableSpec {
    int n_plus = 0;
    int n_minus = 0;
    TangleDiagram companion;
};

CrossinglessMatching reflect(const CrossinglessMatching& a);
std::vector<CrossinglessMatching> enumerate_matchings(int n, int cap = 6);
uint64_t catalan(int n);

// Result of gluing without canonicalization: arc labels are class
// representatives over the input's label universe, and rep_atoms lists the
// input arcs merged into each representative.
struct GluedDiagram {
    TangleDiagram diagram;
    std::map<int, std::vector<int>> rep_atoms;
};

GluedDiagram glue_raw(const TangleDiagram& base, const std::vector<std::pair<int, int>>& seams);

// Canonical relabeling together with the old-label -> new-label map.
std::pair<TangleDiagram, std::map<int, int>> canonicalize_with_map(const TangleDiagram& d);

// Matching drawn as a (0,2n)- or (2n,0)-tangle (caps above / cups below).
TangleDiagram matching_tangle(const CrossinglessMatching& m, bool caps);
TangleDiagram identity_tangle(int strands, int8_t dir = 0);
TangleDiagram empty_diagram();

// Braid tangle on downward strands; word entry +k / -k inserts a positive /
// negative crossing between strands k and k+1 (1-based).
TangleDiagram braid_diagram(int strands, const std::vector<int>& word);

// Glues bottom position i back to top position i.
TangleDiagram trace_closure(const TangleDiagram& d);

TangleDiagram canonicalize(const TangleDiagram& d);
TangleDiagram compose(const TangleDiagram& d1, const TangleDiagram& d2);

// Composition together with the arc maps of both factors into the canonical
// composite.
struct ComposeResult {
    TangleDiagram composite;
    std::map<int, int> from_d1;
    std::map<int, int> from_d2;
};
ComposeResult compose_with_maps(const TangleDiagram& d1, const TangleDiagram& d2);
TangleDiagram close_diagram(const TangleDiagram& d, const CrossinglessMatching& a,
                            const CrossinglessMatching& b);
TangleDiagram disjoint_union(const TangleDiagram& d1, const TangleDiagram& d2);
TangleDiagram cable(const CableSpec& spec, const TangleDiagram& ambient);

// Connected components of the strand graph (under goes straight through);
// returns classes of arc labels, ordered by least label.
std::vector<std::vector<int>> components(const TangleDiagram& d);

// Circles of the full smoothing selected by `vertex` (bit k = 1 picks the
// 1-smoothing of crossing k). Each circle is the sorted list of its arcs;
// circles ordered by least arc label.
std::vector<std::vector<int>> resolution_circles(const TangleDiagram& d, uint64_t vertex);

// Flattens a closed crossingless diagram.
FlatDiagram flatten(const TangleDiagram& d);

}  // namespace skein
