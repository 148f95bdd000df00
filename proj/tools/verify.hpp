#pragma once

#include <string>
#include <vector>

namespace signorini::cli {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Module invariant suite at default resolutions. Deterministic; runs the
/// default 3D scenario once and shares it across the dependent checks.
std::vector<CheckResult> run_verify_suite();

}  // namespace signorini::cli
