#include "fermirw/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fermirw/metric.hpp"

namespace fermirw::kinematics {

using chart::ChartContext;

namespace {

void require_order(double tau, double t0, bool strict) {
    const bool ok = tau > 0.0 && t0 > 0.0 && (strict ? t0 < tau : t0 <= tau);
    if (!ok) {
        throw std::domain_error(strict ? "kinematics: requires 0 < t0 < tau"
                                       : "kinematics: requires 0 < t0 <= tau");
    }
}

} // namespace

const char* to_string(Regime r) {
    switch (r) {
    case Regime::NonInflationary: return "non_inflationary";
    case Regime::Inflationary: return "inflationary";
    case Regime::Mixed: return "mixed";
    }
    return "unknown";
}

Regime regime_on_interval(const ScaleFactorModel& model, double t_lo, double t_hi,
                          int n_probe) {
    if (!(t_hi > 0.0) || t_lo > t_hi || n_probe < 2) {
        throw std::invalid_argument("regime_on_interval: bad interval");
    }
    if (t_lo <= 0.0) t_lo = t_hi * 1e-8;
    const double ratio = std::pow(t_hi / t_lo, 1.0 / (n_probe - 1));
    double scale = 0.0;
    std::vector<double> addots(n_probe);
    for (int i = 0; i < n_probe; ++i) {
        addots[i] = model.eval(t_lo * std::pow(ratio, i)).addot;
        scale = std::max(scale, std::fabs(addots[i]));
    }
    const double eps = 1e-14 * scale;
    bool any_pos = false, any_neg = false;
    for (double v : addots) {
        if (v > eps) any_pos = true;
        if (v < -eps) any_neg = true;
    }
    if (any_pos && any_neg) return Regime::Mixed;
    if (any_pos) return Regime::Inflationary;
    return Regime::NonInflationary; // covers addot identically zero
}

double v_kin_comoving(const ChartContext& ctx, double tau, double t0) {
    require_order(tau, t0, /*strict=*/false);
    const double ratio = ctx.model().a(t0) / ctx.model().a(tau);
    return std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
}

double v_fermi_comoving(const ChartContext& ctx, double tau, double t0) {
    require_order(tau, t0, /*strict=*/true);
    const ScaleFactorModel& m = ctx.model();
    const double a_tau = m.a(tau);
    const double a_t0 = m.a(t0);
    const double delta = (a_tau - a_t0) * (a_tau + a_t0);
    const double bddot_int = numerics::integrate_bddot(m, tau, t0, ctx.tol()).value;
    return m.hubble(tau) * (std::sqrt(delta) / m.adot(t0) + delta * bddot_int);
}

VelocitySample hubble_decomposition(const ChartContext& ctx, double tau, double t0) {
    require_order(tau, t0, /*strict=*/true);
    VelocitySample s;
    s.tau = tau;
    s.t0 = t0;
    const double H = ctx.model().hubble(tau);
    s.rho = ctx.proper_length(tau, t0);
    s.hubble_term = H * s.rho;
    s.correction =
        H * numerics::integrate_hubble_deviation(ctx.model(), tau, t0, ctx.tol()).value;
    s.v_fermi = v_fermi_comoving(ctx, tau, t0);
    s.v_kin = v_kin_comoving(ctx, tau, t0);
    s.regime = regime_on_interval(ctx.model(), t0, tau);
    s.decomposition_residual = std::fabs(s.v_fermi - (s.hubble_term - s.correction));
    return s;
}

ClassifiedSample classify_speeds(const ChartContext& ctx, double tau, double t0) {
    ClassifiedSample out;
    out.sample = hubble_decomposition(ctx, tau, t0);
    out.sample.light_bound =
        std::sqrt(-metric::g_tau_tau_from_t0(ctx, tau, t0, metric::GttForm::T0Integral));

    // The super-luminal ordering assumes a non-inflationary history over the
    // whole chart back to the big bang, not just (t0, tau).
    const Regime global = regime_on_interval(ctx.model(), 0.0, tau);
    const VelocitySample& s = out.sample;
    const double slack = 1e-9 * std::max(1.0, s.v_kin);
    if (global == Regime::NonInflationary) {
        out.ordering.asserted = true;
        out.ordering.relation = "v_fermi >= v_kin and -g_tautau >= 1";
        out.ordering.holds = s.v_fermi >= s.v_kin - slack &&
                             s.light_bound >= 1.0 - slack;
    } else if (out.sample.regime == Regime::Inflationary) {
        out.ordering.asserted = true;
        out.ordering.relation = "v_fermi <= v_kin < 1 and -g_tautau <= 1";
        out.ordering.holds = s.v_fermi <= s.v_kin + slack && s.v_kin < 1.0 &&
                             s.light_bound <= 1.0 + slack;
    } else {
        out.ordering.asserted = false;
        out.ordering.relation = "mixed regime: no ordering asserted";
        out.ordering.holds = true;
    }
    return out;
}

DistanceSandwich distance_sandwich(const ChartContext& ctx,
                                   const chart::CurvaturePoint& p) {
    if (p.chi == 0.0) return {0.0, 0.0, 0.0};
    const chart::InChart membership = ctx.in_chart(p);
    if (!membership.inside) {
        throw chart::OutOfChartError("distance_sandwich: point outside the chart");
    }
    const chart::FermiPoint fermi = ctx.to_fermi(p);
    const double a_t = ctx.model().a(p.t);
    const double a_tau = ctx.model().a(fermi.tau);
    const double d = a_t * p.chi;
    return {(a_t / a_tau) * d, fermi.rho, (a_tau / a_t) * d};
}

} // namespace fermirw::kinematics
