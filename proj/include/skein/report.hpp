#pragma once

#include <json.hpp>
#include <string>

#include "skein/graded.hpp"
#include "skein/laurent.hpp"

namespace skein {

using json = nlohmann::ordered_json;

inline json dims_to_json(const GradedDims& dims) {
    // sorted t ascending, q descending within t, matching the Poincare text
    std::map<int, std::map<int, int64_t, std::greater<int>>> by_t;
    for (const auto& [tq, d] : dims.entries()) by_t[tq.first][tq.second] = d;
    json out = json::array();
    for (const auto& [t, qs] : by_t)
        for (const auto& [q, d] : qs) out.push_back({{"t", t}, {"q", q}, {"dim", d}});
    return out;
}

inline json laurent_to_json(const Laurent& p) {
    json out = json::array();
    for (const auto& [e, c] : p.coefficients()) out.push_back({{"exp", e}, {"coeff", c}});
    return out;
}

inline json report_envelope(const std::string& subcommand, const std::string& theory,
                            const std::string& field) {
    json j;
    j["tool"] = "skein";
    j["version"] = "1.0.0";
    j["subcommand"] = subcommand;
    j["theory"] = theory;
    j["field"] = field;
    j["status"] = "ok";
    return j;
}

}  // namespace skein
