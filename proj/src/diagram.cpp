#include "skein/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace skein {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Endpoint incidence of an arc: at a crossing slot or a boundary position.
struct Incidence {
    int kind;        // 0 crossing, 1 top, 2 bottom
    int index;       // crossing index or boundary position
    int slot;        // slot within crossing, -1 otherwise
    bool is_origin;  // strand leaves this point along the arc
    bool known;
};

std::map<int, std::vector<Incidence>> incidences(const TangleDiagram& d) {
    std::map<int, std::vector<Incidence>> out;
    for (int k = 0; k < d.crossing_count(); ++k) {
        const Crossing& x = d.crossings[k];
        int over_out = x.over_in == 3 ? 1 : 3;
        for (int s = 0; s < 4; ++s) {
            bool origin = (s == 2) || (s == over_out);
            out[x.slot[s]].push_back({0, k, s, origin, true});
        }
    }
    for (int p = 0; p < d.top_count(); ++p) {
        int8_t dir = p < static_cast<int>(d.top_dir.size()) ? d.top_dir[p] : 0;
        out[d.top_arcs[p]].push_back({1, p, -1, dir > 0, dir != 0});
    }
    for (int p = 0; p < d.bottom_count(); ++p) {
        int8_t dir = p < static_cast<int>(d.bottom_dir.size()) ? d.bottom_dir[p] : 0;
        out[d.bottom_arcs[p]].push_back({2, p, -1, dir > 0, dir != 0});
    }
    return out;
}

}  // namespace

int TangleDiagram::max_arc_label() const {
    int m = -1;
    for (const auto& x : crossings)
        for (int a : x.slot) m = std::max(m, a);
    for (int a : top_arcs) m = std::max(m, a);
    for (int a : bottom_arcs) m = std::max(m, a);
    for (int a : loops) m = std::max(m, a);
    return m;
}

void TangleDiagram::validate() const {
    if (top_count() % 2 || bottom_count() % 2)
        throw InputError("tangle boundary sizes must be even");
    if (!top_dir.empty() && static_cast<int>(top_dir.size()) != top_count())
        throw InputError("top orientation list size mismatch");
    if (!bottom_dir.empty() && static_cast<int>(bottom_dir.size()) != bottom_count())
        throw InputError("bottom orientation list size mismatch");
    std::map<int, int> count;
    for (const auto& x : crossings) {
        if (x.over_in != 1 && x.over_in != 3) throw InputError("crossing over_in must be 1 or 3");
        for (int a : x.slot) {
            if (a < 0) throw InputError("negative arc label");
            ++count[a];
        }
    }
    for (int a : top_arcs) ++count[a];
    for (int a : bottom_arcs) ++count[a];
    std::set<int> loop_set(loops.begin(), loops.end());
    if (loop_set.size() != loops.size()) throw InputError("duplicate loop label");
    for (int a : loops) {
        if (count.count(a))
            throw InputError("arc " + std::to_string(a) + " is both a loop and an endpoint arc");
        if (a < 0) throw InputError("negative arc label");
    }
    for (const auto& [a, c] : count)
        if (c != 2)
            throw InputError("arc " + std::to_string(a) + " occurs " + std::to_string(c) +
                             " times; expected 2");
    // Where directions are known, an arc must have one origin and one terminus.
    for (const auto& [a, inc] : incidences(*this)) {
        int known_origins = 0, known_termini = 0;
        for (const auto& i : inc) {
            if (!i.known) continue;
            (i.is_origin ? known_origins : known_termini) += 1;
        }
        if (known_origins > 1 || known_termini > 1)
            throw InputError("arc " + std::to_string(a) + " has inconsistent orientation");
    }
}

void CrossinglessMatching::normalize() {
    for (auto& [a, b] : pairs)
        if (a > b) std::swap(a, b);
    std::sort(pairs.begin(), pairs.end());
}

void CrossinglessMatching::validate() const {
    if (static_cast<int>(pairs.size()) != n) throw InputError("matching size mismatch");
    std::set<int> seen;
    for (const auto& [a, b] : pairs) {
        if (a < 1 || b < 1 || a > 2 * n || b > 2 * n || a == b)
            throw InputError("matching point out of range");
        seen.insert(a);
        seen.insert(b);
    }
    if (static_cast<int>(seen.size()) != 2 * n) throw InputError("matching not a perfect matching");
    for (const auto& [a, b] : pairs)
        for (const auto& [c, d] : pairs)
            if (a < c && c < b && b < d) throw InputError("matching pairs interleave");
}

CrossinglessMatching reflect(const CrossinglessMatching& a) {
    CrossinglessMatching out;
    out.n = a.n;
    for (const auto& [p, q] : a.pairs) out.pairs.push_back({2 * a.n + 1 - p, 2 * a.n + 1 - q});
    out.normalize();
    return out;
}

std::vector<CrossinglessMatching> enumerate_matchings(int n, int cap) {
    if (n < 0) throw InputError("negative matching size");
    if (n > cap)
        throw CapError("matching size " + std::to_string(n) + " exceeds cap " +
                       std::to_string(cap));
    // match the least point to a partner at odd distance, recurse inside/outside
    struct Rec {
        static std::vector<std::vector<std::pair<int, int>>> fill(int a, int b) {
            std::vector<std::vector<std::pair<int, int>>> res;
            if (a > b) {
                res.push_back({});
                return res;
            }
            for (int q = a + 1; q <= b; q += 2) {
                auto inner = fill(a + 1, q - 1);
                auto outer = fill(q + 1, b);
                for (const auto& in : inner)
                    for (const auto& ou : outer) {
                        std::vector<std::pair<int, int>> m;
                        m.push_back({a, q});
                        m.insert(m.end(), in.begin(), in.end());
                        m.insert(m.end(), ou.begin(), ou.end());
                        res.push_back(std::move(m));
                    }
            }
            return res;
        }
    };
    std::vector<CrossinglessMatching> out;
    for (auto& pairs : Rec::fill(1, 2 * n)) {
        CrossinglessMatching m;
        m.n = n;
        m.pairs = std::move(pairs);
        m.normalize();
        out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end());
    return out;
}

uint64_t catalan(int n) {
    uint64_t c = 1;
    for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

TangleDiagram matching_tangle(const CrossinglessMatching& m, bool caps) {
    TangleDiagram d;
    std::vector<int> arcs(2 * m.n, -1);
    int next = 0;
    for (const auto& [a, b] : m.pairs) {
        arcs[a - 1] = next;
        arcs[b - 1] = next;
        ++next;
    }
    if (caps) {
        d.bottom_arcs = arcs;
        d.bottom_dir.assign(2 * m.n, 0);
    } else {
        d.top_arcs = arcs;
        d.top_dir.assign(2 * m.n, 0);
    }
    return d;
}

TangleDiagram identity_tangle(int strands, int8_t dir) {
    TangleDiagram d;
    for (int i = 0; i < strands; ++i) {
        d.top_arcs.push_back(i);
        d.bottom_arcs.push_back(i);
        d.top_dir.push_back(dir);
        d.bottom_dir.push_back(static_cast<int8_t>(-dir));
    }
    return d;
}

TangleDiagram empty_diagram() { return TangleDiagram{}; }

TangleDiagram canonicalize(const TangleDiagram& d) { return canonicalize_with_map(d).first; }

std::pair<TangleDiagram, std::map<int, int>> canonicalize_with_map(const TangleDiagram& d) {
    std::map<int, int> relabel;
    int next = 0;
    auto touch = [&](int a) {
        if (!relabel.count(a)) relabel[a] = next++;
    };
    for (const auto& x : d.crossings)
        for (int a : x.slot) touch(a);
    for (int a : d.top_arcs) touch(a);
    for (int a : d.bottom_arcs) touch(a);
    std::vector<int> sorted_loops = d.loops;
    std::sort(sorted_loops.begin(), sorted_loops.end());
    for (int a : sorted_loops) touch(a);

    TangleDiagram out = d;
    for (auto& x : out.crossings)
        for (int& a : x.slot) a = relabel[a];
    for (int& a : out.top_arcs) a = relabel[a];
    for (int& a : out.bottom_arcs) a = relabel[a];
    out.loops.clear();
    for (int a : sorted_loops) out.loops.push_back(relabel[a]);
    std::sort(out.loops.begin(), out.loops.end());

    // framing keys follow the components they name
    std::map<int, int> moved;
    for (const auto& [rep, f] : d.framing) {
        auto it = relabel.find(rep);
        if (it != relabel.end() && f != 0) moved[it->second] += f;
    }
    out.framing.clear();
    for (const auto& comp : components(out)) {
        int total = 0;
        for (int a : comp) {
            auto it = moved.find(a);
            if (it != moved.end()) total += it->second;
        }
        if (total != 0) out.framing[comp.front()] = total;
    }
    return {out, relabel};
}

namespace {

// Gluing core shared by compose, closures and cabling. `label_count` bounds
// all arc labels in play; seams are identified pairwise, fully-glued-away
// classes become loops.
TangleDiagram glue(const TangleDiagram& base, int label_count,
                   const std::vector<std::pair<int, int>>& seams, std::vector<int> new_top,
                   std::vector<int> new_bottom, std::vector<int8_t> new_top_dir,
                   std::vector<int8_t> new_bottom_dir) {
    UnionFind uf(label_count);
    for (const auto& [a, b] : seams) uf.unite(a, b);

    TangleDiagram out;
    out.crossings = base.crossings;
    for (auto& x : out.crossings)
        for (int& a : x.slot) a = uf.find(a);
    out.top_arcs = std::move(new_top);
    out.bottom_arcs = std::move(new_bottom);
    for (int& a : out.top_arcs) a = uf.find(a);
    for (int& a : out.bottom_arcs) a = uf.find(a);
    out.top_dir = std::move(new_top_dir);
    out.bottom_dir = std::move(new_bottom_dir);
    for (int a : base.loops) out.loops.push_back(uf.find(a));

    std::set<int> used;
    for (const auto& x : out.crossings)
        for (int a : x.slot) used.insert(a);
    for (int a : out.top_arcs) used.insert(a);
    for (int a : out.bottom_arcs) used.insert(a);
    for (int a : out.loops) used.insert(a);
    std::set<int> glued_classes;
    for (const auto& [a, b] : seams) glued_classes.insert(uf.find(a));
    for (int c : glued_classes)
        if (!used.count(c)) {
            out.loops.push_back(c);
            used.insert(c);
        }

    for (const auto& [rep, f] : base.framing) {
        int r = uf.find(rep);
        out.framing[r] += f;
        if (out.framing[r] == 0) out.framing.erase(r);
    }
    return canonicalize(out);
}

void check_seam_orientation(int8_t out_side, int8_t in_side, int position) {
    if (out_side != 0 && in_side != 0 && out_side != -in_side)
        throw InputError("orientation mismatch at glued point " + std::to_string(position));
}

// Appends s2's data into base with labels shifted past `offset`.
void append_shifted(TangleDiagram& base, const TangleDiagram& d2, int offset) {
    TangleDiagram s2 = d2;
    for (auto& x : s2.crossings)
        for (int& a : x.slot) a += offset;
    for (int& a : s2.loops) a += offset;
    base.crossings.insert(base.crossings.end(), s2.crossings.begin(), s2.crossings.end());
    base.loops.insert(base.loops.end(), s2.loops.begin(), s2.loops.end());
    for (const auto& [rep, f] : d2.framing) base.framing[rep + offset] += f;
}

}  // namespace

ComposeResult compose_with_maps(const TangleDiagram& d1, const TangleDiagram& d2) {
    if (d1.bottom_count() != d2.top_count())
        throw InputError("compose: boundary size mismatch (" + std::to_string(d1.bottom_count()) +
                         " vs " + std::to_string(d2.top_count()) + ")");
    for (int p = 0; p < d1.bottom_count(); ++p) {
        int8_t b = p < static_cast<int>(d1.bottom_dir.size()) ? d1.bottom_dir[p] : 0;
        int8_t t = p < static_cast<int>(d2.top_dir.size()) ? d2.top_dir[p] : 0;
        check_seam_orientation(b, t, p);
    }
    int offset = d1.max_arc_label() + 1;
    TangleDiagram base = d1;
    base.top_arcs.clear();
    base.bottom_arcs.clear();
    base.top_dir.clear();
    base.bottom_dir.clear();
    append_shifted(base, d2, offset);

    std::vector<std::pair<int, int>> seams;
    for (int p = 0; p < d1.bottom_count(); ++p)
        seams.push_back({d1.bottom_arcs[p], d2.top_arcs[p] + offset});
    int label_count = offset + d2.max_arc_label() + 1;
    UnionFind uf(label_count);
    for (const auto& [a, b] : seams) uf.unite(a, b);

    TangleDiagram out;
    out.crossings = base.crossings;
    for (auto& x : out.crossings)
        for (int& a : x.slot) a = uf.find(a);
    out.top_arcs = d1.top_arcs;
    for (int& a : out.top_arcs) a = uf.find(a);
    for (int a : d2.bottom_arcs) out.bottom_arcs.push_back(uf.find(a + offset));
    out.top_dir = d1.top_dir;
    out.bottom_dir = d2.bottom_dir;
    for (int a : base.loops) out.loops.push_back(uf.find(a));

    std::set<int> used;
    for (const auto& x : out.crossings)
        for (int a : x.slot) used.insert(a);
    for (int a : out.top_arcs) used.insert(a);
    for (int a : out.bottom_arcs) used.insert(a);
    for (int a : out.loops) used.insert(a);
    for (const auto& [a, b] : seams) {
        int c = uf.find(a);
        if (!used.count(c)) {
            out.loops.push_back(c);
            used.insert(c);
        }
    }
    for (const auto& [rep, f] : base.framing) {
        int r = uf.find(rep);
        out.framing[r] += f;
        if (out.framing[r] == 0) out.framing.erase(r);
    }
    auto [canon, relabel] = canonicalize_with_map(out);
    ComposeResult res;
    res.composite = std::move(canon);
    for (int a = 0; a <= d1.max_arc_label(); ++a) {
        auto it = relabel.find(uf.find(a));
        if (it != relabel.end()) res.from_d1[a] = it->second;
    }
    for (int a = 0; a <= d2.max_arc_label(); ++a) {
        auto it = relabel.find(uf.find(a + offset));
        if (it != relabel.end()) res.from_d2[a] = it->second;
    }
    return res;
}

TangleDiagram compose(const TangleDiagram& d1, const TangleDiagram& d2) {
    return compose_with_maps(d1, d2).composite;
}

// The top matching closes as caps at the same boundary positions (the
// reflection through the boundary line turns its cups into caps), the bottom
// one as cups.
TangleDiagram close_diagram(const TangleDiagram& d, const CrossinglessMatching& a,
                            const CrossinglessMatching& b) {
    if (2 * a.n != d.top_count() || 2 * b.n != d.bottom_count())
        throw InputError("close: matching size mismatch");
    TangleDiagram top = matching_tangle(a, /*caps=*/true);
    TangleDiagram bot = matching_tangle(b, /*caps=*/false);
    return compose(compose(top, d), bot);
}

GluedDiagram glue_raw(const TangleDiagram& base, const std::vector<std::pair<int, int>>& seams) {
    int label_count = base.max_arc_label() + 1;
    for (const auto& [a, b] : seams) label_count = std::max({label_count, a + 1, b + 1});
    UnionFind uf(label_count);
    for (const auto& [a, b] : seams) uf.unite(a, b);

    GluedDiagram out;
    out.diagram.crossings = base.crossings;
    for (auto& x : out.diagram.crossings)
        for (int& a : x.slot) a = uf.find(a);
    for (int a : base.loops) out.diagram.loops.push_back(uf.find(a));

    std::set<int> used;
    for (const auto& x : out.diagram.crossings)
        for (int a : x.slot) used.insert(a);
    for (int a : out.diagram.loops) used.insert(a);
    std::set<int> glued_classes;
    for (const auto& [a, b] : seams) glued_classes.insert(uf.find(a));
    for (int c : glued_classes)
        if (!used.count(c)) {
            out.diagram.loops.push_back(c);
            used.insert(c);
        }
    std::sort(out.diagram.loops.begin(), out.diagram.loops.end());

    for (int a = 0; a < label_count; ++a) out.rep_atoms[uf.find(a)].push_back(a);
    return out;
}

TangleDiagram disjoint_union(const TangleDiagram& d1, const TangleDiagram& d2) {
    int offset = d1.max_arc_label() + 1;
    TangleDiagram base = d1;
    base.top_arcs.clear();
    base.bottom_arcs.clear();
    base.top_dir.clear();
    base.bottom_dir.clear();
    append_shifted(base, d2, offset);
    TangleDiagram out = base;
    out.top_arcs = d1.top_arcs;
    out.bottom_arcs = d1.bottom_arcs;
    out.top_dir = d1.top_dir;
    out.bottom_dir = d1.bottom_dir;
    out.top_dir.resize(d1.top_arcs.size(), 0);
    out.bottom_dir.resize(d1.bottom_arcs.size(), 0);
    for (int a : d2.top_arcs) out.top_arcs.push_back(a + offset);
    for (int a : d2.bottom_arcs) out.bottom_arcs.push_back(a + offset);
    std::vector<int8_t> t2 = d2.top_dir, b2 = d2.bottom_dir;
    t2.resize(d2.top_arcs.size(), 0);
    b2.resize(d2.bottom_arcs.size(), 0);
    out.top_dir.insert(out.top_dir.end(), t2.begin(), t2.end());
    out.bottom_dir.insert(out.bottom_dir.end(), b2.begin(), b2.end());
    return canonicalize(out);
}

std::vector<std::vector<int>> components(const TangleDiagram& d) {
    int labels = d.max_arc_label() + 1;
    if (labels == 0) return {};
    UnionFind uf(labels);
    for (const auto& x : d.crossings) {
        uf.unite(x.slot[0], x.slot[2]);
        uf.unite(x.slot[1], x.slot[3]);
    }
    std::set<int> present;
    for (const auto& x : d.crossings)
        for (int a : x.slot) present.insert(a);
    for (int a : d.top_arcs) present.insert(a);
    for (int a : d.bottom_arcs) present.insert(a);
    for (int a : d.loops) present.insert(a);
    std::map<int, std::vector<int>> classes;
    for (int a : present) classes[uf.find(a)].push_back(a);
    std::vector<std::vector<int>> out;
    for (auto& [rep, arcs] : classes) {
        std::sort(arcs.begin(), arcs.end());
        out.push_back(arcs);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

std::vector<std::vector<int>> resolution_circles(const TangleDiagram& d, uint64_t vertex) {
    int labels = d.max_arc_label() + 1;
    if (labels == 0) return {};
    UnionFind uf(labels);
    for (int k = 0; k < d.crossing_count(); ++k) {
        const auto& s = d.crossings[k].slot;
        if ((vertex >> k) & 1) {
            uf.unite(s[0], s[3]);
            uf.unite(s[1], s[2]);
        } else {
            uf.unite(s[0], s[1]);
            uf.unite(s[2], s[3]);
        }
    }
    std::set<int> present;
    for (const auto& x : d.crossings)
        for (int a : x.slot) present.insert(a);
    for (int a : d.loops) present.insert(a);
    std::map<int, std::vector<int>> classes;
    for (int a : present) classes[uf.find(a)].push_back(a);
    std::vector<std::vector<int>> out;
    for (auto& [rep, arcs] : classes) {
        std::sort(arcs.begin(), arcs.end());
        out.push_back(arcs);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

FlatDiagram flatten(const TangleDiagram& d) {
    if (!d.closed()) throw InputError("flatten: diagram has boundary");
    if (d.crossing_count() != 0) throw InputError("flatten: diagram has crossings");
    FlatDiagram f;
    for (size_t i = 0; i < d.loops.size(); ++i) {
        f.circles.push_back({static_cast<int>(i), 0});
        f.provenance[d.loops[i]] = static_cast<int>(i);
    }
    return f;
}

// ---------------------------------------------------------------------------
// Cabling

namespace {

// Slot offset between compass angles, counterclockwise in 90-degree steps.
int slot_offset(int from_angle, int to_angle) {
    int diff = ((to_angle - from_angle) % 360 + 360) % 360;
    return diff / 90;
}

Crossing place_crossing(int under_in_angle, int under_in, int under_out, int over_in_angle,
                        int over_in, int over_out) {
    Crossing x;
    x.slot[0] = under_in;
    x.slot[2] = under_out;
    int s = slot_offset(under_in_angle, over_in_angle);
    if (s != 1 && s != 3) throw std::logic_error("place_crossing: bad geometry");
    x.over_in = s;
    x.slot[s] = over_in;
    x.slot[s == 1 ? 3 : 1] = over_out;
    return x;
}

// Cuts one arc of a closed single-component diagram, producing a (1,1)-tangle
// oriented downward through the cut.
TangleDiagram cut_open(const TangleDiagram& d) {
    TangleDiagram out = d;
    if (d.crossing_count() == 0 && d.loops.size() == 1) {
        int a = d.loops[0];
        out.loops.clear();
        out.top_arcs = {a};
        out.bottom_arcs = {a};
        out.top_dir = {0};
        out.bottom_dir = {0};
        return out;
    }
    int cut = -1;
    for (const auto& x : d.crossings)
        for (int a : x.slot) cut = cut < 0 ? a : std::min(cut, a);
    auto inc = incidences(d);
    const auto& list = inc.at(cut);
    if (list.size() != 2) throw InputError("cut_open: malformed diagram");
    int origin_pos = -1;
    for (int i = 0; i < 2; ++i)
        if (list[i].known && list[i].is_origin) origin_pos = i;
    if (origin_pos < 0) throw InputError("cut_open: companion must be oriented");
    int fresh = d.max_arc_label() + 1;
    const Incidence& o = list[origin_pos];
    out.crossings[o.index].slot[o.slot] = fresh;
    out.top_arcs = {cut};
    out.bottom_arcs = {fresh};
    out.top_dir = {+1};
    out.bottom_dir = {-1};
    return out;
}

}  // namespace

TangleDiagram cable(const CableSpec& spec, const TangleDiagram& ambient) {
    if (spec.n_plus < 0 || spec.n_minus < 0) throw InputError("cable: negative strand count");
    const int n = spec.n_plus + spec.n_minus;
    if (n == 0) return canonicalize(ambient);
    if (!spec.companion.closed()) throw InputError("cable: companion must be closed");
    if (components(spec.companion).size() != 1)
        throw InputError("cable: companion must have one component");

    int framing = 0;
    for (const auto& [rep, f] : spec.companion.framing) framing += f;

    TangleDiagram open = cut_open(canonicalize(spec.companion));

    // copy k of arc a is labeled a*n + k; fresh labels are allocated past that
    const int base_labels = open.max_arc_label() + 1;
    int next_fresh = base_labels * n;
    auto copy_arc = [&](int a, int k) { return a * n + k; };
    auto rev = [&](int k) { return k >= spec.n_plus; };

    TangleDiagram cab;
    for (const auto& x : open.crossings) {
        int u_in = x.slot[0], u_out = x.slot[2];
        int o_in = x.slot[x.over_in], o_out = x.slot[x.over_in == 3 ? 1 : 3];
        // Local frame: under bundle northbound in columns i (copy i at column
        // i, leftmost first); over bundle eastbound in rows, copy j in row
        // n-1-j so that copy 0 is leftmost along its own travel direction.
        std::vector<std::vector<int>> seg_u(n, std::vector<int>(n + 1));
        std::vector<std::vector<int>> seg_o(n + 1, std::vector<int>(n));
        for (int i = 0; i < n; ++i) {
            seg_u[i][0] = copy_arc(u_in, i);
            seg_u[i][n] = copy_arc(u_out, i);
            for (int m = 1; m < n; ++m) seg_u[i][m] = next_fresh++;
        }
        for (int j = 0; j < n; ++j) {
            seg_o[0][j] = copy_arc(o_in, j);
            seg_o[n][j] = copy_arc(o_out, j);
            for (int i = 1; i < n; ++i) seg_o[i][j] = next_fresh++;
        }
        int over_in_angle_par = x.over_in == 3 ? 180 : 0;
        for (int i = 0; i < n; ++i) {
            for (int m = 0; m < n; ++m) {
                int j = n - 1 - m;  // over copy in row m
                bool ru = rev(i), ro = rev(j);
                int uin_angle = ru ? 90 : 270;
                int uin = ru ? seg_u[i][m + 1] : seg_u[i][m];
                int uout = ru ? seg_u[i][m] : seg_u[i][m + 1];
                int oin_angle = ro ? (over_in_angle_par + 180) % 360 : over_in_angle_par;
                int oin = ro ? seg_o[i + 1][j] : seg_o[i][j];
                int oout = ro ? seg_o[i][j] : seg_o[i + 1][j];
                cab.crossings.push_back(place_crossing(uin_angle, uin, uout, oin_angle, oin, oout));
            }
        }
    }
    for (int k = 0; k < n; ++k) {
        cab.top_arcs.push_back(copy_arc(open.top_arcs[0], k));
        cab.bottom_arcs.push_back(copy_arc(open.bottom_arcs[0], k));
        cab.top_dir.push_back(static_cast<int8_t>(rev(k) ? -1 : +1));
        cab.bottom_dir.push_back(static_cast<int8_t>(rev(k) ? +1 : -1));
    }

    // |framing| full twists of the stated sign, inserted at the cut
    if (framing != 0) {
        std::vector<int> cur = cab.bottom_arcs;
        std::vector<int8_t> cur_dir;  // +1 = travels downward at the working edge
        for (int k = 0; k < n; ++k) cur_dir.push_back(static_cast<int8_t>(rev(k) ? -1 : +1));
        int sgn = framing > 0 ? +1 : -1;
        int twists = framing > 0 ? framing : -framing;
        for (int t = 0; t < twists; ++t) {
            for (int round = 0; round < n; ++round) {
                for (int k = 0; k + 1 < n; ++k) {
                    int left = cur[k], right = cur[k + 1];
                    int8_t dl = cur_dir[k], dr = cur_dir[k + 1];
                    int nl = next_fresh++, nr = next_fresh++;
                    // left strand occupies NW/SE corners, right NE/SW;
                    // they swap working-edge positions below the crossing
                    int l_in_angle = dl > 0 ? 135 : 315;
                    int r_in_angle = dr > 0 ? 45 : 225;
                    int l_in = dl > 0 ? left : nr;
                    int l_out = dl > 0 ? nr : left;
                    int r_in = dr > 0 ? right : nl;
                    int r_out = dr > 0 ? nl : right;
                    Crossing x = place_crossing(r_in_angle, r_in, r_out, l_in_angle, l_in, l_out);
                    if (x.sign() != sgn)
                        x = place_crossing(l_in_angle, l_in, l_out, r_in_angle, r_in, r_out);
                    if (x.sign() != sgn) throw std::logic_error("cable: twist sign unreachable");
                    cab.crossings.push_back(x);
                    cur[k] = nl;
                    cur[k + 1] = nr;
                    std::swap(cur_dir[k], cur_dir[k + 1]);
                }
            }
        }
        cab.bottom_arcs = cur;
        for (int k = 0; k < n; ++k) cab.bottom_dir[k] = static_cast<int8_t>(-cur_dir[k]);
    }

    // trace closure
    TangleDiagram closed;
    if (cab.crossings.empty()) {
        for (int k = 0; k < n; ++k) closed.loops.push_back(k);
    } else {
        std::vector<std::pair<int, int>> seams;
        for (int i = 0; i < n; ++i) seams.push_back({cab.bottom_arcs[i], cab.top_arcs[i]});
        closed = glue(cab, next_fresh, seams, {}, {}, {}, {});
    }
    return disjoint_union(canonicalize(ambient), closed);
}

TangleDiagram braid_diagram(int strands, const std::vector<int>& word) {
    if (strands < 0) throw InputError("braid: negative strand count");
    TangleDiagram d;
    std::vector<int> cur(strands);
    int next = strands;
    for (int i = 0; i < strands; ++i) {
        cur[i] = i;
        d.top_arcs.push_back(i);
        d.top_dir.push_back(+1);
    }
    for (int g : word) {
        int k = (g > 0 ? g : -g) - 1;
        if (g == 0 || k + 1 >= strands) throw InputError("braid: generator out of range");
        int left = cur[k], right = cur[k + 1];
        int nl = next++, nr = next++;
        // downward strands: left occupies NW/SE, right NE/SW; positive means
        // the right strand passes over
        Crossing x = g > 0 ? place_crossing(135, left, nr, 45, right, nl)
                           : place_crossing(45, right, nl, 135, left, nr);
        d.crossings.push_back(x);
        cur[k] = nl;
        cur[k + 1] = nr;
    }
    d.bottom_arcs = cur;
    d.bottom_dir.assign(strands, -1);
    return d;
}

TangleDiagram trace_closure(const TangleDiagram& d) {
    if (d.top_count() != d.bottom_count()) throw InputError("trace closure: boundary mismatch");
    for (int p = 0; p < d.top_count(); ++p) {
        int8_t t = p < static_cast<int>(d.top_dir.size()) ? d.top_dir[p] : 0;
        int8_t b = p < static_cast<int>(d.bottom_dir.size()) ? d.bottom_dir[p] : 0;
        check_seam_orientation(b, t, p);
    }
    std::vector<std::pair<int, int>> seams;
    for (int p = 0; p < d.top_count(); ++p) seams.push_back({d.bottom_arcs[p], d.top_arcs[p]});
    return glue(d, d.max_arc_label() + 1, seams, {}, {}, {}, {});
}

}  // namespace skein
