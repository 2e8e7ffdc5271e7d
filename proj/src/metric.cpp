#include "fermirw/metric.hpp"

#include <algorithm>
#include <cmath>

#include "fermirw/quadrature.hpp"

namespace fermirw::metric {

using chart::ChartContext;
using numerics::QuadResult;

namespace {

constexpr double kHalfPi = 1.5707963267948966;

void require_interior(double tau, double t0) {
    if (!(tau > 0.0) || !(t0 > 0.0) || !(t0 < tau)) {
        throw std::domain_error("metric: requires 0 < t0 < tau");
    }
}

// T0Integral route: integral of (addot/adot^2) / sqrt(a^2(tau) - a^2(t)) dt,
// regularized by a(t) = a(tau) sin(theta); the integrand becomes
// (addot/adot^2)(b(s)) * bdot(s) with s = a(tau) sin(theta).
QuadResult addot_kernel_integral(const ScaleFactorModel& m, double tau, double t0,
                                 const numerics::Tolerances& tol) {
    const double a_tau = m.a(tau);
    const double theta0 = numerics::theta_lower(m, tau, t0);
    if (theta0 >= kHalfPi) return {0.0, 0.0, 0};
    return numerics::integrate_smooth(
        [&](double theta) {
            const double s = a_tau * std::sin(theta);
            const auto inv = m.inverse(s);
            const auto d = m.eval(inv.b);
            return d.addot / (d.adot * d.adot) * inv.bdot;
        },
        theta0, kHalfPi, tol);
}

// ChiDerivative route: integral of (addot/adot^2) * a(tau)/sqrt(a^2(tau) - a^2(t)) dt
// under the same substitution, with a(tau) folded into the integrand.
QuadResult addot_chi_weighted_integral(const ScaleFactorModel& m, double tau, double t0,
                                       const numerics::Tolerances& tol) {
    const double a_tau = m.a(tau);
    const double theta0 = numerics::theta_lower(m, tau, t0);
    if (theta0 >= kHalfPi) return {0.0, 0.0, 0};
    return numerics::integrate_smooth(
        [&](double theta) {
            const double s = a_tau * std::sin(theta);
            const auto inv = m.inverse(s);
            const auto d = m.eval(inv.b);
            return a_tau * d.addot / (d.adot * d.adot) * inv.bdot;
        },
        theta0, kHalfPi, tol);
}

double gtt_sigma_form(const ChartContext& ctx, double tau, double t0) {
    const ScaleFactorModel& m = ctx.model();
    const double a_tau = m.a(tau);
    const double a_t0 = m.a(t0);
    const double sigma = (a_tau / a_t0) * (a_tau / a_t0);
    // integral of bddot(a(tau)/sqrt(s)) / (s sqrt(s-1)) ds over [1, sigma]
    // equals twice the theta-space bddot integral.
    const double bddot_int =
        2.0 * numerics::integrate_bddot(m, tau, t0, ctx.tol()).value;
    const double bdot = m.bdot(a_t0);
    const double bracket =
        bdot + a_tau * std::sqrt(sigma - 1.0) / (2.0 * std::sqrt(sigma)) * bddot_int;
    const double adot_tau = m.adot(tau);
    return -(adot_tau * adot_tau) * bracket * bracket;
}

double gtt_t0_form(const ChartContext& ctx, double tau, double t0) {
    const ScaleFactorModel& m = ctx.model();
    const double a_tau = m.a(tau);
    const double a_t0 = m.a(t0);
    const double delta = (a_tau - a_t0) * (a_tau + a_t0);
    const double kernel = addot_kernel_integral(m, tau, t0, ctx.tol()).value;
    const double bracket = 1.0 / (m.adot(t0) * std::sqrt(delta)) - kernel;
    const double adot_tau = m.adot(tau);
    return -(adot_tau * adot_tau) * delta * bracket * bracket;
}

double gtt_chi_derivative_form(const ChartContext& ctx, double tau, double t0) {
    const ScaleFactorModel& m = ctx.model();
    const double a_tau = m.a(tau);
    const double a_t0 = m.a(t0);
    const double delta = (a_tau - a_t0) * (a_tau + a_t0);
    const double weighted = addot_chi_weighted_integral(m, tau, t0, ctx.tol()).value;
    const double dchi_dtau =
        m.hubble(tau) * (a_tau / (m.adot(t0) * std::sqrt(delta)) - weighted);
    return -delta * dchi_dtau * dchi_dtau;
}

double resolve_t0(const ChartContext& ctx, double tau, double rho) {
    const chart::SigmaParam sigma = ctx.sigma_from_rho(tau, rho);
    return ctx.time_at_sigma(tau, sigma.sigma);
}

GttSample assemble_sample(const ChartContext& ctx, double tau, double t0) {
    GttSample s;
    s.sigma_form = gtt_sigma_form(ctx, tau, t0);
    s.t0_form = gtt_t0_form(ctx, tau, t0);
    s.chi_derivative_form = gtt_chi_derivative_form(ctx, tau, t0);
    const double lo = std::min({s.sigma_form, s.t0_form, s.chi_derivative_form});
    const double hi = std::max({s.sigma_form, s.t0_form, s.chi_derivative_form});
    const double scale = std::max({std::fabs(lo), std::fabs(hi), 1e-300});
    s.spread = (hi - lo) / scale;
    s.consistent = s.spread <= kFormAgreementWarn;
    return s;
}

} // namespace

double g_tau_tau_from_t0(const ChartContext& ctx, double tau, double t0, GttForm form) {
    require_interior(tau, t0);
    switch (form) {
    case GttForm::Sigma: return gtt_sigma_form(ctx, tau, t0);
    case GttForm::T0Integral: return gtt_t0_form(ctx, tau, t0);
    case GttForm::ChiDerivative: return gtt_chi_derivative_form(ctx, tau, t0);
    }
    throw std::logic_error("unreachable form");
}

GttSample g_tau_tau_all_from_t0(const ChartContext& ctx, double tau, double t0) {
    require_interior(tau, t0);
    return assemble_sample(ctx, tau, t0);
}

double g_tau_tau(const ChartContext& ctx, double tau, double rho, GttForm form) {
    if (rho == 0.0) return -1.0;
    if (!(rho > 0.0)) {
        throw std::domain_error("g_tau_tau: rho must be non-negative");
    }
    return g_tau_tau_from_t0(ctx, tau, resolve_t0(ctx, tau, rho), form);
}

GttSample g_tau_tau_all(const ChartContext& ctx, double tau, double rho) {
    if (rho == 0.0) return {-1.0, -1.0, -1.0, 0.0, true};
    return g_tau_tau_all_from_t0(ctx, tau, resolve_t0(ctx, tau, rho));
}

double jacobian(const ChartContext& ctx, double tau, double sigma) {
    if (!(tau > 0.0) || !(sigma > 1.0)) {
        throw std::domain_error("jacobian: requires tau > 0 and sigma > 1");
    }
    const ScaleFactorModel& m = ctx.model();
    const double a_tau = m.a(tau);
    const double t0 = ctx.time_at_sigma(tau, sigma);
    const double bdot = m.bdot(a_tau / std::sqrt(sigma));
    const double bddot_int =
        2.0 * numerics::integrate_bddot(m, tau, t0, ctx.tol()).value;
    const double inner = bdot / std::sqrt(sigma - 1.0) +
                         a_tau / (2.0 * std::sqrt(sigma)) * bddot_int;
    return m.adot(tau) / (2.0 * sigma) * bdot * inner;
}

double sk(int curvature_k, double chi) {
    if (curvature_k == 0) return chi;
    if (curvature_k == -1) return std::sinh(chi);
    throw std::invalid_argument("sk: curvature index must be 0 or -1");
}

namespace {

// The numerator is a catastrophic difference near the worldline, so both
// members are recomputed from the resolved t0: an inconsistent pairing of
// the requested rho with the quadrature-based radial term would swamp the
// rho^4-scaled result.
double lambda_k_at(const ChartContext& ctx, double tau, double rho) {
    const double t0 = resolve_t0(ctx, tau, rho);
    const double chi = ctx.chi_t0(t0, tau);
    const double rho_res = ctx.proper_length(tau, t0);
    const double radial = ctx.model().a(t0) * sk(ctx.curvature_k(), chi);
    return (radial - rho_res) * (radial + rho_res) /
           (rho_res * rho_res * rho_res * rho_res);
}

} // namespace

LambdaLimit lambda_k_limit(const ChartContext& ctx, double tau) {
    const double h = 1e-3 * ctx.max_radius(tau);
    const double l0 = lambda_k_at(ctx, tau, h);
    const double l1 = lambda_k_at(ctx, tau, 0.5 * h);
    const double l2 = lambda_k_at(ctx, tau, 0.25 * h);
    // Neville extrapolation to x = 0 in the smooth variable x = rho^2.
    const double x0 = h * h, x1 = 0.25 * h * h, x2 = 0.0625 * h * h;
    const double p01 = (x0 * l1 - x1 * l0) / (x0 - x1);
    const double p12 = (x1 * l2 - x2 * l1) / (x1 - x2);
    const double p012 = (x0 * p12 - x2 * p01) / (x0 - x2);
    return {p012, std::fabs(p012 - p12)};
}

double lambda_k(const ChartContext& ctx, double tau, double rho) {
    if (!(tau > 0.0) || !(rho >= 0.0)) {
        throw std::domain_error("lambda_k: requires tau > 0 and rho >= 0");
    }
    if (rho == 0.0) return lambda_k_limit(ctx, tau).value;
    return lambda_k_at(ctx, tau, rho);
}

MetricSample line_element(const ChartContext& ctx, const chart::FermiPoint& p) {
    MetricSample out;
    out.tau = p.tau;
    out.rho = p.rho;
    if (p.rho == 0.0) {
        out.g_tautau = -1.0;
        out.lambda_k = lambda_k_limit(ctx, p.tau).value;
        out.angular_coeff = 0.0;
        out.form_spread = 0.0;
        out.consistent = true;
        return out;
    }
    const double t0 = resolve_t0(ctx, p.tau, p.rho);
    const GttSample g = assemble_sample(ctx, p.tau, t0);
    out.g_tautau = g.t0_form;
    out.form_spread = g.spread;
    out.consistent = g.consistent;
    const double chi = ctx.chi_t0(t0, p.tau);
    const double rho_res = ctx.proper_length(p.tau, t0);
    const double radial = ctx.model().a(t0) * sk(ctx.curvature_k(), chi);
    out.angular_coeff = radial * radial;
    out.lambda_k = (radial - rho_res) * (radial + rho_res) /
                   (rho_res * rho_res * rho_res * rho_res);
    return out;
}

std::array<std::array<double, 4>, 4> cartesian_metric(const ChartContext& ctx,
                                                      double tau, double x, double y,
                                                      double z) {
    std::array<std::array<double, 4>, 4> g{};
    const double rho = std::sqrt(x * x + y * y + z * z);
    if (rho == 0.0) {
        g[0][0] = -1.0;
        g[1][1] = g[2][2] = g[3][3] = 1.0;
        return g;
    }
    const double gtt = g_tau_tau(ctx, tau, rho);
    const double lam = lambda_k(ctx, tau, rho);
    const double r[3] = {x, y, z};
    g[0][0] = gtt;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const double delta = (i == j) ? 1.0 : 0.0;
            g[i + 1][j + 1] = delta + lam * (rho * rho * delta - r[i] * r[j]);
        }
    }
    return g;
}

} // namespace fermirw::metric
