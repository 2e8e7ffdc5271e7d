#pragma once

#include <array>

#include "fermirw/chart.hpp"

namespace fermirw::metric {

/// The time-time metric coefficient has three equivalent formulas; they are
/// evaluated through separate quadrature paths so their spread is a live
/// consistency probe of the whole pipeline.
///   Sigma:         the inverse-function form in the geodesic parameter
///   T0Integral:    the expansion-history form anchored at cosmological
///                  time t0 (production default: a single quadrature of
///                  forward-function derivatives)
///   ChiDerivative: -(a^2(tau) - a^2(t0)) times the squared rate of change
///                  of the radial coordinate reached at t0
enum class GttForm { Sigma, T0Integral, ChiDerivative };

/// Relative disagreement above this marks the sample instead of aborting,
/// so boundary-adjacent evaluations still return data.
inline constexpr double kFormAgreementWarn = 1e-6;

struct GttSample {
    double sigma_form = 0.0;
    double t0_form = 0.0;
    double chi_derivative_form = 0.0;
    double spread = 0.0; // max relative disagreement
    bool consistent = true;
};

/// g_tautau at Fermi point (tau, rho); rho == 0 returns exactly -1.
double g_tau_tau(const chart::ChartContext& ctx, double tau, double rho,
                 GttForm form = GttForm::T0Integral);
GttSample g_tau_tau_all(const chart::ChartContext& ctx, double tau, double rho);

/// Same coefficient addressed by the cosmological time of the point, for
/// callers that already know t0 (velocity formulas, geodesic sweeps).
double g_tau_tau_from_t0(const chart::ChartContext& ctx, double tau, double t0,
                         GttForm form = GttForm::T0Integral);
GttSample g_tau_tau_all_from_t0(const chart::ChartContext& ctx, double tau, double t0);

/// Jacobian determinant of the map (tau, sigma) -> (t, chi); strictly
/// positive on the chart.
double jacobian(const chart::ChartContext& ctx, double tau, double sigma);

/// S_k(chi): chi for flat slices (k = 0), sinh(chi) for k = -1.
double sk(int curvature_k, double chi);

/// Anisotropy coefficient of the Fermi line element,
///   lambda_k = (a^2(t0) S_k^2(chi_t0(tau)) - rho^2) / rho^4,
/// a smooth function of tau and rho^2. rho == 0 evaluates the limit by
/// Richardson extrapolation in rho^2 from rho = h, h/2, h/4 with
/// h = 1e-3 * max_radius(tau).
double lambda_k(const chart::ChartContext& ctx, double tau, double rho);

struct LambdaLimit {
    double value = 0.0;
    double error_estimate = 0.0;
};
LambdaLimit lambda_k_limit(const chart::ChartContext& ctx, double tau);

struct MetricSample {
    double tau = 0.0;
    double rho = 0.0;
    double g_tautau = -1.0;     // production (T0Integral) value
    double lambda_k = 0.0;
    double angular_coeff = 0.0; // coefficient of the solid-angle block
    double form_spread = 0.0;
    bool consistent = true;
};

/// All polar line-element coefficients at a Fermi point, with the
/// cross-checked alternative forms folded into form_spread.
MetricSample line_element(const chart::ChartContext& ctx, const chart::FermiPoint& p);

/// Full 4x4 coefficient table in Cartesian Fermi coordinates
/// (tau, x, y, z); row/column 0 is the time direction.
std::array<std::array<double, 4>, 4> cartesian_metric(const chart::ChartContext& ctx,
                                                      double tau, double x, double y,
                                                      double z);

} // namespace fermirw::metric
