#pragma once

#include <functional>
#include <limits>

#include "fermirw/tolerances.hpp"

namespace fermirw::numerics {

/// Sentinel upper bracket: grow the bracket geometrically until the sign
/// of f flips, then refine.
inline constexpr double kOpenBracket = std::numeric_limits<double>::infinity();

/// Brent-style bracketed root of a function that is strictly monotone on
/// the bracket. With hi == kOpenBracket the bracket [lo, hi] is grown by
/// tol.tail_probe_factor per step. Throws NoRootError when no sign change
/// can be established within the growth budget.
double find_root_monotone(const std::function<double(double)>& f,
                          double lo, double hi, const Tolerances& tol);

} // namespace fermirw::numerics
