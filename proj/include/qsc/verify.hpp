#pragma once

#include <string>
#include <vector>

namespace qsc {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Runs the fast cross-module consistency checks (closed-form identities and
/// oracle agreements). Returns one result per check.
std::vector<CheckResult> verify_all();

}  // namespace qsc
