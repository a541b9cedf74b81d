// Acceptance gate: runs every release criterion and prints one verdict
// line per criterion. Exit status is nonzero when any criterion fails.
#include <algorithm>
#include <cstdio>

#include "orbitcount/verify.hpp"

int main() {
    std::setvbuf(stdout, nullptr, _IOLBF, 1 << 12);
    bool all_pass = true;
    double total_seconds = 0.0;
    const auto results = orbitcount::run_acceptance_criteria(
        [&](const orbitcount::CriterionResult& r) {
            std::printf("[%s] %2d %-34s %7.2fs  %s\n", r.pass ? "PASS" : "FAIL", r.id,
                        r.name.c_str(), r.seconds, r.detail.c_str());
            all_pass = all_pass && r.pass;
            total_seconds += r.seconds;
        });
    std::printf("%zu/%zu criteria passed in %.1fs\n",
                results.size() - static_cast<std::size_t>(
                                     std::count_if(results.begin(), results.end(),
                                                   [](const auto& r) { return !r.pass; })),
                results.size(), total_seconds);
    return all_pass ? 0 : 1;
}
