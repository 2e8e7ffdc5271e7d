#pragma once

#include <functional>

#include "fermirw/tolerances.hpp"

namespace fermirw::numerics {

/// Globally adaptive Gauss-Kronrod (7-15) integration of f over [lo, hi].
/// Splits the interval with the largest error estimate until
///   sum(err) <= max(quad_abs, quad_rel * |sum(value)|).
/// Throws IntegrandError on non-finite integrand values and
/// ConvergenceError (carrying the best estimate) when the subdivision
/// budget is exhausted.
QuadResult integrate_smooth(const std::function<double(double)>& f,
                            double lo, double hi, const Tolerances& tol);

/// Improper integral of a positive, eventually decreasing f over [lo, inf).
struct TailResult {
    bool divergent = false;
    QuadResult quad; // meaningful only when !divergent
};

/// Sums panels [lo*g^j, lo*g^(j+1)] (g = tail_probe_factor) until one falls
/// below quad_abs. Declares divergence when the panel ratio stays >= 1 -
/// quad_rel over a confirmation window of 8 panels, or when the panel budget
/// / representable range is exhausted before the panels become negligible
/// (non-summable within double range).
TailResult integrate_tail(const std::function<double(double)>& f,
                          double lo, const Tolerances& tol);

} // namespace fermirw::numerics
