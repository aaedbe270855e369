#pragma once

#include <string>
#include <vector>

namespace skein {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    double limit_seconds = 0.0;
    std::string detail;
};

// Runs the full acceptance battery; one result per criterion.
std::vector<CriterionResult> run_acceptance(int threads = 1);

// One `PASS`/`FAIL` line per criterion.
std::string format_acceptance_line(const CriterionResult& r);

}  // namespace skein
