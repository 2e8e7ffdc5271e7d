// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. The same battery backs `fermirw verify` without a model argument.

#include <cstdio>

#include "fermirw/verification.hpp"

int main() {
    const fermirw::numerics::Tolerances tol{};
    const std::vector<fermirw::verify::CheckResult> results =
        fermirw::verify::acceptance_battery(tol, /*seed=*/20250809);

    int failures = 0;
    for (size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        if (!r.pass) ++failures;
        std::printf("[%2zu/%zu] %s %-32s margin=%+.3e  %s\n", i + 1, results.size(),
                    r.pass ? "PASS" : "FAIL", r.id.c_str(), r.margin, r.detail.c_str());
    }
    std::printf("%s: %zu criteria, %d failed\n", failures == 0 ? "PASS" : "FAIL",
                results.size(), failures);
    return failures == 0 ? 0 : 1;
}
