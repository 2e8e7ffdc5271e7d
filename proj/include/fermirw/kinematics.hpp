#pragma once

#include <string>

#include "fermirw/chart.hpp"

namespace fermirw::kinematics {

/// Sign of addot over an interval, decided by sampling on a log-spaced grid.
/// A sign change flips the classification to Mixed and suppresses the
/// inequality assertions that assume a single-signed interval.
enum class Regime { NonInflationary, Inflationary, Mixed };

const char* to_string(Regime r);

Regime regime_on_interval(const ScaleFactorModel& model, double t_lo, double t_hi,
                          int n_probe = 64);

/// Speeds of a comoving test particle seen by the central observer at
/// proper time tau, with cosmological time t0 at the intersection with the
/// simultaneity slice. All speeds are scalars: the velocities are radial
/// by construction for comoving particles.
struct VelocitySample {
    double tau = 0.0;
    double t0 = 0.0;
    double rho = 0.0;
    double v_kin = 0.0;        // parallel-transport (kinematic) speed, < 1
    double v_fermi = 0.0;      // d rho / d tau
    double hubble_term = 0.0;  // H(tau) * rho
    double correction = 0.0;   // Hubble-law deviation integral
    double light_bound = 0.0;  // sqrt(-g_tautau): local light speed bound
    Regime regime = Regime::Mixed;
    double decomposition_residual = 0.0; // |v_fermi - (hubble_term - correction)|
};

/// sqrt(1 - a^2(t0)/a^2(tau)).
double v_kin_comoving(const chart::ChartContext& ctx, double tau, double t0);

/// H(tau) * [sqrt(a^2(tau) - a^2(t0))/adot(t0) + (a^2(tau) - a^2(t0)) * Ibb]
/// with Ibb the regularized addot/adot^2 kernel integral; equals
/// v_kin * sqrt(-g_tautau).
double v_fermi_comoving(const chart::ChartContext& ctx, double tau, double t0);

/// Splits v_fermi into the Hubble-law term H(tau)*rho and the correction
/// integral; the two reproduce v_fermi exactly up to quadrature error
/// (recorded in decomposition_residual).
VelocitySample hubble_decomposition(const chart::ChartContext& ctx, double tau,
                                    double t0);

struct OrderingReport {
    bool asserted = false; // false for Mixed regimes
    bool holds = false;
    std::string relation;
};

struct ClassifiedSample {
    VelocitySample sample;
    OrderingReport ordering;
};

/// Full velocity sample plus the speed ordering implied by the regime:
/// non-inflationary histories give v_fermi >= v_kin and -g_tautau >= 1,
/// inflationary ones v_fermi <= v_kin < 1 and -g_tautau <= 1.
ClassifiedSample classify_speeds(const chart::ChartContext& ctx, double tau, double t0);

struct DistanceSandwich {
    double lower = 0.0;
    double rho = 0.0;
    double upper = 0.0;
};

/// Proper distance rho bracketed by the scaled Hubble distances
/// (a(t)/a(tau)) * d <= rho <= (a(tau)/a(t)) * d with d = a(t) * chi.
DistanceSandwich distance_sandwich(const chart::ChartContext& ctx,
                                   const chart::CurvaturePoint& p);

} // namespace fermirw::kinematics
