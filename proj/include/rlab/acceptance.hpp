#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rlab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceConfig {
    std::uint64_t seed = 42;
    bool verbose = true; // print one pass/fail line per criterion
};

/// Runs the full verification suite (nine criteria) and returns one result
/// per criterion. All tolerances are pinned here.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& config);

/// Convenience: true iff every criterion passed.
bool all_passed(const std::vector<CriterionResult>& results);

} // namespace rlab
