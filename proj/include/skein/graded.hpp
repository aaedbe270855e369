#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace skein {

// (homological degree t, quantum degree q)
struct Bidegree {
    int t = 0;
    int q = 0;
    auto operator<=>(const Bidegree&) const = default;
};

// Bigraded dimension function with finite support.
class GradedDims {
public:
    using Map = std::map<std::pair<int, int>, int64_t>;

    void add(int t, int q, int64_t d) {
        if (d == 0) return;
        auto key = std::make_pair(t, q);
        auto it = map_.find(key);
        if (it == map_.end()) map_[key] = d;
        else {
            it->second += d;
            if (it->second == 0) map_.erase(it);
        }
    }

    int64_t at(int t, int q) const {
        auto it = map_.find({t, q});
        return it == map_.end() ? 0 : it->second;
    }

    int64_t total() const {
        int64_t s = 0;
        for (const auto& [k, d] : map_) s += d;
        return s;
    }

    bool empty() const { return map_.empty(); }
    const Map& entries() const { return map_; }

    bool operator==(const GradedDims&) const = default;

    // Sorted t ascending, q descending within t.
    std::string poincare() const {
        if (map_.empty()) return "0";
        std::string s;
        bool first = true;
        std::map<int, std::map<int, int64_t, std::greater<int>>> by_t;
        for (const auto& [k, d] : map_) by_t[k.first][k.second] = d;
        for (const auto& [t, qs] : by_t) {
            for (const auto& [q, d] : qs) {
                if (!first) s += " + ";
                first = false;
                if (d != 1) s += std::to_string(d) + " ";
                s += "t^" + std::to_string(t) + " q^" + std::to_string(q);
            }
        }
        return s;
    }

private:
    Map map_;
};

}  // namespace skein
