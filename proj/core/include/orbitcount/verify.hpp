#pragma once

#include <functional>
#include <string>
#include <vector>

namespace orbitcount {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Full acceptance battery, in order. Each criterion runs independently;
// exceptions are caught and reported as failures with the message in
// detail. on_done, when set, fires after each criterion so callers can
// stream progress.
std::vector<CriterionResult> run_acceptance_criteria(
    const std::function<void(const CriterionResult&)>& on_done = {});

}  // namespace orbitcount
