#include "skein/jones.hpp"

#include <array>
#include <set>

#include "skein/errors.hpp"

namespace skein {

TangleDiagram smooth_crossing(const TangleDiagram& d, int k, int resolution) {
    if (k < 0 || k >= d.crossing_count()) throw InputError("smooth_crossing: index out of range");
    const auto& s = d.crossings[k].slot;
    TangleDiagram out = d;
    out.crossings.erase(out.crossings.begin() + k);

    // identify arcs per the chosen pairing; classes that close up with no
    // remaining occurrences become loops
    auto pairs = resolution ? std::array<std::pair<int, int>, 2>{{{s[0], s[3]}, {s[1], s[2]}}}
                            : std::array<std::pair<int, int>, 2>{{{s[0], s[1]}, {s[2], s[3]}}};
    int labels = d.max_arc_label() + 1;
    std::vector<int> parent(labels);
    for (int i = 0; i < labels; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [a, b] : pairs) parent[find(a)] = find(b);

    for (auto& x : out.crossings)
        for (int& a : x.slot) a = find(a);
    for (int& a : out.top_arcs) a = find(a);
    for (int& a : out.bottom_arcs) a = find(a);
    for (int& a : out.loops) a = find(a);

    std::set<int> used;
    for (const auto& x : out.crossings)
        for (int a : x.slot) used.insert(a);
    for (int a : out.top_arcs) used.insert(a);
    for (int a : out.bottom_arcs) used.insert(a);
    for (int a : out.loops) used.insert(a);
    for (const auto& [a, b] : pairs) {
        int c = find(a);
        if (!used.count(c)) {
            out.loops.push_back(c);
            used.insert(c);
        }
    }
    out.framing.clear();
    return canonicalize(out);
}

namespace {

Laurent bracket(const TangleDiagram& d) {
    if (d.crossing_count() == 0) {
        Laurent v(1);
        Laurent loop = loop_value();
        for (size_t i = 0; i < d.loops.size(); ++i) v = v * loop;
        return v;
    }
    int k = d.crossing_count() - 1;
    Laurent zero_side = bracket(smooth_crossing(d, k, 0));
    Laurent one_side = bracket(smooth_crossing(d, k, 1));
    return zero_side - Laurent(1, 1) * one_side;
}

}  // namespace

Laurent jones(const TangleDiagram& d, int crossing_cap) {
    if (!d.closed()) throw InputError("jones: diagram must be closed");
    if (d.crossing_count() > crossing_cap)
        throw CapError("jones: " + std::to_string(d.crossing_count()) +
                       " crossings exceed cap " + std::to_string(crossing_cap));
    int np = d.positive_crossings(), nm = d.negative_crossings();
    Laurent w = Laurent(((nm % 2) ? -1 : 1), np - 2 * nm);
    return w * bracket(d);
}

Laurent graded_euler(const GradedDims& dims) {
    Laurent chi;
    for (const auto& [tq, dim] : dims.entries()) chi.add(tq.second, tq.first % 2 == 0 ? dim : -dim);
    return chi;
}

}  // namespace skein
