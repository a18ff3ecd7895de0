#pragma once

#include <string>
#include <vector>

namespace mulab::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// The acceptance gate: one result per numbered criterion, every tolerance
// pinned in code. Self-contained (sieves its own tables, no prior state).
std::vector<CheckResult> run_acceptance_checks();

// Additional module invariants and properties beyond the numbered criteria.
std::vector<CheckResult> run_property_checks();

// Formats one "[PASS] name — detail" line.
std::string format_line(const CheckResult& check);

}  // namespace mulab::verify
