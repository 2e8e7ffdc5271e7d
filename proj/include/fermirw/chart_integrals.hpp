#pragma once

#include "fermirw/quadrature.hpp"
#include "fermirw/scale_factor.hpp"

namespace fermirw::numerics {

/// The two radial integrals along a spacelike geodesic reaching back from
/// cosmological time tau to t_lo:
///   Rho:  integral of a(t) / sqrt(a^2(tau) - a^2(t))            (proper length)
///   Chi:  integral of (1/a(t)) * a(tau) / sqrt(a^2(tau) - a^2(t)) (radial coordinate)
enum class ChartKernel { Rho, Chi };

/// Angle at which a(t_lo) = a(tau) * sin(theta); 0 when t_lo == 0.
double theta_lower(const ScaleFactorModel& model, double tau, double t_lo);

/// Both kernels have an inverse-square-root singularity at t = tau. The
/// substitution a(t) = a(tau) * sin(theta) removes it exactly, mapping the
/// integrands onto [theta_lower, pi/2]:
///   Rho -> a(tau) * sin(theta) * bdot(a(tau) sin(theta))
///   Chi -> bdot(a(tau) sin(theta)) / sin(theta)
/// Chi with t_lo == 0 is rejected: its transformed integrand behaves like
/// bdot/theta near zero and may diverge. Rho with t_lo == 0 is the full
/// spaceslice radius; its integrand vanishes at theta = 0.
QuadResult integrate_chart(ChartKernel kernel, const ScaleFactorModel& model,
                           double tau, double t_lo, const Tolerances& tol);

/// integral of bddot(a(tau) sin(theta)) d(theta) over [theta_lower, pi/2].
/// Equals -integral of (addot/adot^2) / sqrt(a^2(tau) - a^2(t)) dt, the
/// correction kernel shared by the metric coefficient and the velocity
/// formulas.
QuadResult integrate_bddot(const ScaleFactorModel& model, double tau,
                           double t_lo, const Tolerances& tol);

/// integral of -bddot(a(tau) sin(theta)) * (a^2(tau) sin^2(theta) - a^2(t_lo))
/// d(theta) over the same range; equals the deviation-from-Hubble-flow
/// integral of (addot/adot^2) * (a^2(t) - a^2(t_lo)) / sqrt(a^2(tau) - a^2(t)) dt.
QuadResult integrate_hubble_deviation(const ScaleFactorModel& model, double tau,
                                      double t_lo, const Tolerances& tol);

} // namespace fermirw::numerics
