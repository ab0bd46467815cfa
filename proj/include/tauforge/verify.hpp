#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tauforge/rational.hpp"

namespace tauforge {

/// One verification item. `criterion` ties the item to the numbered
/// acceptance list (1..12) so the acceptance runner can aggregate.
struct CheckResult {
    int criterion = 0;
    std::string name;
    bool pass = false;
    std::string detail;   // first counterexample or a short summary
};

/// Deterministic small-rational source for random-instance checks; same
/// (seed, i, j) always yields the same value.
Rat hash_rat(std::uint64_t seed, std::uint64_t i, std::uint64_t j);

std::vector<CheckResult> suite_appendix_a();   // criterion 1
std::vector<CheckResult> suite_wk_terms();     // criterion 2
std::vector<CheckResult> suite_operators();    // criterion 4
std::vector<CheckResult> suite_identities();   // criteria 3, 5, 6
std::vector<CheckResult> suite_models();       // criteria 7, 8, 10, 11
std::vector<CheckResult> suite_hierarchy();    // criterion 9
std::vector<CheckResult> suite_bilinear();     // criterion 12 (slow)

const std::vector<std::string>& suite_names();   // excludes "all"

/// Runs one suite by name, or "all" (bilinear only when include_slow).
/// Throws std::invalid_argument on an unknown name.
std::vector<CheckResult> run_suite(const std::string& name, bool include_slow = false);

} // namespace tauforge
