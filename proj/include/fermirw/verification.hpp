#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fermirw/chart.hpp"

namespace fermirw::verify {

struct CheckResult {
    std::string id;
    bool pass = false;
    double margin = 0.0; // worst-case slack; negative = violated by that much
    std::string detail;
};

struct FigureRow {
    double alpha;
    double tau;
    double diameter; // 2 * max_radius(tau)
};

/// Spaceslice diameter versus proper time for the power-law exponents
/// 1/2, 1, 2; each series is exactly linear in tau.
std::vector<FigureRow> figure_rows(double tau_min, double tau_max, int count,
                                   const numerics::Tolerances& tol);

/// The full fixed-model verification battery (one result per criterion).
std::vector<CheckResult> acceptance_battery(const numerics::Tolerances& tol,
                                            std::uint64_t seed);

/// Generic theorem checks applicable to a single model context.
std::vector<CheckResult> model_checks(const chart::ChartContext& ctx,
                                      std::uint64_t seed);

} // namespace fermirw::verify
