#include "skein/diagram_io.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "skein/errors.hpp"

namespace skein {

namespace {

struct Occurrence {
    int kind;   // 0 crossing slot, 1 top, 2 bottom
    int index;  // crossing or position index
    int slot;   // slot within crossing
};

struct ParseState {
    std::vector<std::array<int, 4>> crossings;
    std::vector<int> top, bottom, comps;
    std::vector<std::pair<int, int>> orient_entries;  // (arc, +-1)
    std::vector<std::pair<int, int>> framing_entries;
};

[[noreturn]] void fail(int line, const std::string& msg) {
    throw InputError("line " + std::to_string(line) + ": " + msg);
}

std::vector<long> parse_ints(const std::string& s, int line) {
    std::vector<long> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) {
        size_t pos = 0;
        long v = 0;
        try {
            v = std::stol(tok, &pos);
        } catch (...) {
            fail(line, "expected integer, got '" + tok + "'");
        }
        if (pos != tok.size()) fail(line, "expected integer, got '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

}  // namespace

TangleDiagram parse_diagram(const std::string& text) {
    ParseState st;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        // trim
        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        size_t e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);

        std::string body = line;
        size_t colon = line.find(':');
        if (colon != std::string::npos) {
            std::string key = line.substr(0, colon);
            size_t ke = key.find_last_not_of(" \t");
            key = ke == std::string::npos ? "" : key.substr(0, ke + 1);
            static const char* keys[] = {"crossings", "top", "bottom",
                                         "orientations", "framing", "components"};
            bool known = false;
            for (const char* k : keys) known = known || key == k;
            if (!known) fail(line_no, "unknown section '" + key + "'");
            section = key;
            body = line.substr(colon + 1);
        } else if (section.empty()) {
            fail(line_no, "content before any section header");
        }
        auto vals = parse_ints(body, line_no);
        if (vals.empty()) continue;
        if (section == "crossings") {
            if (vals.size() != 4) fail(line_no, "crossing needs exactly 4 arc labels");
            st.crossings.push_back({static_cast<int>(vals[0]), static_cast<int>(vals[1]),
                                    static_cast<int>(vals[2]), static_cast<int>(vals[3])});
        } else if (section == "top") {
            for (long v : vals) st.top.push_back(static_cast<int>(v));
        } else if (section == "bottom") {
            for (long v : vals) st.bottom.push_back(static_cast<int>(v));
        } else if (section == "components") {
            for (long v : vals) st.comps.push_back(static_cast<int>(v));
        } else if (section == "orientations") {
            if (vals.size() % 2) fail(line_no, "orientations entries are 'arc d' pairs");
            for (size_t i = 0; i + 1 < vals.size(); i += 2) {
                if (vals[i + 1] != 1 && vals[i + 1] != -1)
                    fail(line_no, "orientation direction must be 1 or -1");
                st.orient_entries.push_back({static_cast<int>(vals[i]),
                                             static_cast<int>(vals[i + 1])});
            }
        } else if (section == "framing") {
            if (vals.size() % 2) fail(line_no, "framing entries are 'arc f' pairs");
            for (size_t i = 0; i + 1 < vals.size(); i += 2)
                st.framing_entries.push_back({static_cast<int>(vals[i]),
                                              static_cast<int>(vals[i + 1])});
        }
    }

    // occurrences in scan order
    std::map<int, std::vector<Occurrence>> occ;
    for (size_t k = 0; k < st.crossings.size(); ++k)
        for (int s = 0; s < 4; ++s)
            occ[st.crossings[k][s]].push_back({0, static_cast<int>(k), s});
    for (size_t p = 0; p < st.top.size(); ++p)
        occ[st.top[p]].push_back({1, static_cast<int>(p), -1});
    for (size_t p = 0; p < st.bottom.size(); ++p)
        occ[st.bottom[p]].push_back({2, static_cast<int>(p), -1});

    for (const auto& [a, os] : occ)
        if (os.size() != 2)
            throw InputError("arc " + std::to_string(a) + " occurs " +
                             std::to_string(os.size()) + " times; expected 2");
    for (int l : st.comps)
        if (occ.count(l))
            throw InputError("component arc " + std::to_string(l) +
                             " also occurs at a crossing or boundary");

    // direction solve: d[a] = +1 means the arc runs first->second occurrence.
    // "arc flows into its occurrence o" is a function of d and which
    // occurrence o is: in(o_first) = (d == -1), in(o_second) = (d == +1).
    std::map<int, int> dir;  // 0 unknown
    auto set_dir = [&](int a, int d) {
        auto it = dir.find(a);
        if (it != dir.end() && it->second != 0 && it->second != d)
            throw InputError("arc " + std::to_string(a) + " has inconsistent orientation");
        dir[a] = d;
    };
    auto occ_pos = [&](int a, int kind, int index, int slot) {
        const auto& os = occ.at(a);
        for (int i = 0; i < 2; ++i)
            if (os[i].kind == kind && os[i].index == index && os[i].slot == slot) return i;
        throw std::logic_error("occurrence not found");
    };
    // under-slot constraints
    for (size_t k = 0; k < st.crossings.size(); ++k) {
        int a0 = st.crossings[k][0];
        int a2 = st.crossings[k][2];
        set_dir(a0, occ_pos(a0, 0, static_cast<int>(k), 0) == 0 ? -1 : +1);  // flows in
        set_dir(a2, occ_pos(a2, 0, static_cast<int>(k), 2) == 0 ? +1 : -1);  // flows out
    }
    for (const auto& [a, d] : st.orient_entries) {
        if (!occ.count(a) && std::find(st.comps.begin(), st.comps.end(), a) == st.comps.end())
            throw InputError("orientation given for unknown arc " + std::to_string(a));
        if (occ.count(a)) set_dir(a, d);
    }
    // over-slot parity: exactly one of slots 1,3 flows in; propagate to fixpoint
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t k = 0; k < st.crossings.size(); ++k) {
            int a1 = st.crossings[k][1];
            int a3 = st.crossings[k][3];
            int p1 = occ_pos(a1, 0, static_cast<int>(k), 1);
            int p3 = occ_pos(a3, 0, static_cast<int>(k), 3);
            auto in_of = [&](int a, int p) {
                auto it = dir.find(a);
                if (it == dir.end() || it->second == 0) return 0;
                return (p == 0 ? (it->second == -1) : (it->second == +1)) ? 1 : -1;
            };
            int i1 = in_of(a1, p1), i3 = in_of(a3, p3);
            if (i1 != 0 && i3 != 0) {
                if (i1 == i3)
                    throw InputError("crossing " + std::to_string(k) +
                                     " has inconsistent over-strand orientation");
            } else if (i1 != 0 && i3 == 0) {
                bool in3 = i1 < 0;
                set_dir(a3, in3 == (p3 == 1) ? +1 : -1);
                changed = true;
            } else if (i3 != 0 && i1 == 0) {
                bool in1 = i3 < 0;
                set_dir(a1, in1 == (p1 == 1) ? +1 : -1);
                changed = true;
            }
        }
    }

    TangleDiagram d;
    for (size_t k = 0; k < st.crossings.size(); ++k) {
        Crossing x;
        x.slot = st.crossings[k];
        int a1 = x.slot[1], a3 = x.slot[3];
        auto it1 = dir.find(a1);
        if (it1 == dir.end() || it1->second == 0)
            throw InputError("orientation of arc " + std::to_string(a1) +
                             " undetermined; add an orientations entry");
        int p1 = occ_pos(a1, 0, static_cast<int>(k), 1);
        bool in1 = p1 == 0 ? it1->second == -1 : it1->second == +1;
        x.over_in = in1 ? 1 : 3;
        auto it3 = dir.find(a3);
        if (it3 == dir.end() || it3->second == 0)
            throw InputError("orientation of arc " + std::to_string(a3) +
                             " undetermined; add an orientations entry");
        d.crossings.push_back(x);
    }
    d.top_arcs = st.top;
    d.bottom_arcs = st.bottom;
    d.loops = st.comps;
    for (size_t p = 0; p < st.top.size(); ++p) {
        int a = st.top[p];
        auto it = dir.find(a);
        if (it == dir.end() || it->second == 0) {
            d.top_dir.push_back(0);
        } else {
            int pos = occ_pos(a, 1, static_cast<int>(p), -1);
            bool origin = pos == 0 ? it->second == +1 : it->second == -1;
            d.top_dir.push_back(origin ? +1 : -1);
        }
    }
    for (size_t p = 0; p < st.bottom.size(); ++p) {
        int a = st.bottom[p];
        auto it = dir.find(a);
        if (it == dir.end() || it->second == 0) {
            d.bottom_dir.push_back(0);
        } else {
            int pos = occ_pos(a, 2, static_cast<int>(p), -1);
            bool origin = pos == 0 ? it->second == +1 : it->second == -1;
            d.bottom_dir.push_back(origin ? +1 : -1);
        }
    }
    d.validate();

    // framing after validation so components are well-formed
    std::map<int, int> comp_of;
    auto comps = components(d);
    for (size_t c = 0; c < comps.size(); ++c)
        for (int a : comps[c]) comp_of[a] = static_cast<int>(c);
    std::map<int, int> framing_by_comp;
    for (const auto& [a, f] : st.framing_entries) {
        auto it = comp_of.find(a);
        if (it == comp_of.end()) throw InputError("framing names unknown arc " + std::to_string(a));
        framing_by_comp[it->second] += f;
    }
    for (const auto& [c, f] : framing_by_comp)
        if (f != 0) d.framing[comps[c].front()] = f;
    return d;
}

TangleDiagram parse_diagram_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_diagram(ss.str());
}

std::string serialize_diagram(const TangleDiagram& d) {
    std::ostringstream out;
    out << "crossings:\n";
    for (const auto& x : d.crossings)
        out << "  " << x.slot[0] << " " << x.slot[1] << " " << x.slot[2] << " " << x.slot[3]
            << "\n";
    out << "top:";
    for (int a : d.top_arcs) out << " " << a;
    out << "\n";
    out << "bottom:";
    for (int a : d.bottom_arcs) out << " " << a;
    out << "\n";

    // reconstruct per-arc directions from crossing data and boundary dirs
    std::map<int, std::vector<Occurrence>> occ;
    for (int k = 0; k < d.crossing_count(); ++k)
        for (int s = 0; s < 4; ++s) occ[d.crossings[k].slot[s]].push_back({0, k, s});
    for (int p = 0; p < d.top_count(); ++p) occ[d.top_arcs[p]].push_back({1, p, -1});
    for (int p = 0; p < d.bottom_count(); ++p) occ[d.bottom_arcs[p]].push_back({2, p, -1});
    out << "orientations:\n";
    for (const auto& [a, os] : occ) {
        int dval = 0;
        for (int i = 0; i < 2 && dval == 0; ++i) {
            const Occurrence& o = os[i];
            int in = 0;  // +1 flows in at o, -1 flows out, 0 unknown
            if (o.kind == 0) {
                const Crossing& x = d.crossings[o.index];
                if (o.slot == 0) in = +1;
                else if (o.slot == 2) in = -1;
                else in = o.slot == x.over_in ? +1 : -1;
            } else if (o.kind == 1 && o.index < static_cast<int>(d.top_dir.size())) {
                int8_t td = d.top_dir[o.index];
                if (td != 0) in = td > 0 ? -1 : +1;  // enters diagram = arc origin
            } else if (o.kind == 2 && o.index < static_cast<int>(d.bottom_dir.size())) {
                int8_t bd = d.bottom_dir[o.index];
                if (bd != 0) in = bd > 0 ? -1 : +1;
            }
            if (in != 0) dval = (in > 0) == (i == 1) ? +1 : -1;
        }
        if (dval != 0) out << "  " << a << " " << dval << "\n";
    }
    out << "framing:\n";
    for (const auto& [rep, f] : d.framing) out << "  " << rep << " " << f << "\n";
    out << "components:";
    for (int a : d.loops) out << " " << a;
    out << "\n";
    return out.str();
}

}  // namespace skein
