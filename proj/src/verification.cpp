#include "fermirw/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "fermirw/kinematics.hpp"
#include "fermirw/metric.hpp"

namespace fermirw::verify {

using chart::ChartContext;
using chart::CurvaturePoint;
using chart::FermiPoint;
using numerics::Tolerances;

namespace {

constexpr double kPi = 3.141592653589793;

std::string fmt(const char* format, ...) {
    char buffer[512];
    va_list args;
    va_start(args, format);
    vsnprintf(buffer, sizeof(buffer), format, args);
    va_end(args);
    return std::string(buffer);
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo * std::exp(uniform01(rng) * std::log(hi / lo));
}

/// Expected spaceslice radius over tau for a power-law scale factor, from
/// the standard-library gamma function (independent of the quadrature path).
double power_law_radius_ratio(double alpha) {
    return std::sqrt(kPi) * std::tgamma((1.0 + alpha) / (2.0 * alpha)) /
           std::tgamma(1.0 / (2.0 * alpha));
}

struct WorstCase {
    double margin = std::numeric_limits<double>::infinity();
    std::string where;

    void update(double slack, std::string description) {
        if (slack < margin) {
            margin = slack;
            where = std::move(description);
        }
    }
    bool ok() const { return margin >= 0.0; }
};

// ---------------------------------------------------------------------------
// criterion 1: power-law radius ratio against the gamma-function closed form
// ---------------------------------------------------------------------------
CheckResult check_power_law_radius(const Tolerances& tol) {
    CheckResult result{"radius.power_law_ratio", false, 0.0, ""};
    const double alphas[] = {0.5, 1.0, 2.0, 3.0};
    const double taus[] = {0.7, 1.7};
    double worst_rel = 0.0;
    for (double alpha : alphas) {
        const ChartContext ctx(ScaleFactorModel::power_law(alpha), 0, tol);
        const double expected = power_law_radius_ratio(alpha);
        for (double tau : taus) {
            const double ratio = ctx.max_radius(tau) / tau;
            worst_rel = std::max(worst_rel, std::fabs(ratio - expected) / expected);
        }
        if (alpha == 0.5) {
            worst_rel = std::max(worst_rel,
                                 std::fabs(ctx.max_radius(1.0) - kPi / 2.0) / (kPi / 2.0));
        }
        if (alpha == 1.0) {
            worst_rel = std::max(worst_rel, std::fabs(ctx.max_radius(1.0) - 1.0));
        }
    }
    result.pass = worst_rel <= 1e-8;
    result.margin = 1e-8 - worst_rel;
    result.detail = fmt("max relative error %.3g over alpha in {1/2,1,2,3} "
                        "(alpha=1/2 ratio pi/2, alpha=1 ratio 1)", worst_rel);
    return result;
}

// ---------------------------------------------------------------------------
// criterion 2: diameter-vs-tau series are linear with the expected slopes
// ---------------------------------------------------------------------------
CheckResult check_figure_slopes(const Tolerances& tol) {
    CheckResult result{"figure.linear_slopes", false, 0.0, ""};
    const std::vector<FigureRow> rows = figure_rows(0.1, 10.0, 25, tol);
    const double expected[3] = {2.0 * power_law_radius_ratio(0.5),
                                2.0 * power_law_radius_ratio(1.0),
                                2.0 * power_law_radius_ratio(2.0)};
    const double alphas[3] = {0.5, 1.0, 2.0};
    double worst_slope_rel = 0.0, worst_residual = 0.0;
    double slopes[3] = {0, 0, 0};
    for (int i = 0; i < 3; ++i) {
        double num = 0.0, den = 0.0;
        for (const FigureRow& row : rows) {
            if (row.alpha != alphas[i]) continue;
            num += row.diameter * row.tau;
            den += row.tau * row.tau;
        }
        slopes[i] = num / den;
        worst_slope_rel = std::max(worst_slope_rel,
                                   std::fabs(slopes[i] - expected[i]) / expected[i]);
        for (const FigureRow& row : rows) {
            if (row.alpha != alphas[i]) continue;
            worst_residual = std::max(
                worst_residual,
                std::fabs(row.diameter - slopes[i] * row.tau) / (slopes[i] * row.tau));
        }
    }
    result.pass = worst_slope_rel <= 1e-6 && worst_residual <= 1e-8;
    result.margin = std::min(1e-6 - worst_slope_rel, 1e-8 - worst_residual);
    result.detail = fmt("slopes %.10g, %.10g, %.10g (expect pi, 2, %.6f); "
                        "slope rel err %.3g, linearity residual %.3g",
                        slopes[0], slopes[1], slopes[2], expected[2],
                        worst_slope_rel, worst_residual);
    return result;
}

// ---------------------------------------------------------------------------
// criterion 3: the a(t) = t chart is an exact hyperbolic-angle transform
// ---------------------------------------------------------------------------
CheckResult check_milne_oracle(const Tolerances& tol) {
    CheckResult result{"chart.milne_exact", false, 0.0, ""};
    const ChartContext ctx(ScaleFactorModel::power_law(1.0), -1, tol);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double t = 0.25 + (3.0 - 0.25) * i / 19.0;
        for (int j = 0; j < 20; ++j) {
            const double chi = 0.05 + (2.5 - 0.05) * j / 19.0;
            const FermiPoint f = ctx.to_fermi({t, chi, {}, {}});
            const double tau_exact = t * std::cosh(chi);
            const double rho_exact = t * std::sinh(chi);
            worst = std::max(worst, std::fabs(f.tau - tau_exact) / tau_exact);
            worst = std::max(worst,
                             std::fabs(f.rho - rho_exact) / std::max(rho_exact, 1.0));

            const metric::GttSample g = metric::g_tau_tau_all_from_t0(ctx, f.tau, t);
            worst = std::max({worst, std::fabs(g.sigma_form + 1.0),
                              std::fabs(g.t0_form + 1.0),
                              std::fabs(g.chi_derivative_form + 1.0)});

            const CurvaturePoint back = ctx.from_fermi(f);
            worst = std::max(worst, std::fabs(back.t - t) / t);
            worst = std::max(worst, std::fabs(back.chi - chi) / chi);
        }
    }
    result.pass = worst <= 1e-9;
    result.margin = 1e-9 - worst;
    result.detail = fmt("worst transform / g_tautau / round-trip error %.3g "
                        "over a 20x20 grid", worst);
    return result;
}

struct NamedModel {
    ScaleFactorModel model;
    int k;
};

std::vector<NamedModel> built_in_models() {
    return {
        {ScaleFactorModel::power_law(0.5), 0},
        {ScaleFactorModel::power_law(1.0), -1},
        {ScaleFactorModel::power_law(2.0), 0},
        {ScaleFactorModel::power_law(3.0), 0},
        {ScaleFactorModel::sinh_model(), -1},
        {ScaleFactorModel::log_model(), 0},
        {ScaleFactorModel::lambda_fluid(3.0, 1.0), 0},
    };
}

// ---------------------------------------------------------------------------
// criterion 4: universal and non-inflationary radius bounds
// ---------------------------------------------------------------------------
CheckResult check_radius_bounds(const Tolerances& tol, std::uint64_t seed) {
    CheckResult result{"radius.hubble_bounds", false, 0.0, ""};
    std::mt19937_64 rng(seed);
    WorstCase worst;
    for (const NamedModel& entry : built_in_models()) {
        const ChartContext ctx(entry.model, entry.k, tol);
        for (int i = 0; i < 50; ++i) {
            const double tau = log_uniform(rng, 0.05, 40.0);
            const double radius = ctx.max_radius(tau);
            const double inv_h = 1.0 / ctx.model().hubble(tau);
            worst.update((kPi / 2.0) * inv_h + 1e-9 - radius,
                         fmt("%s tau=%.4g universal bound", ctx.model().name().c_str(), tau));
            if (kinematics::regime_on_interval(ctx.model(), 0.0, tau) ==
                kinematics::Regime::NonInflationary) {
                worst.update(inv_h + 1e-9 - radius,
                             fmt("%s tau=%.4g non-inflationary bound",
                                 ctx.model().name().c_str(), tau));
            }
        }
    }
    result.pass = worst.ok();
    result.margin = worst.margin;
    result.detail = fmt("minimum slack %.3g at %s (50 random tau per model)",
                        worst.margin, worst.where.c_str());
    return result;
}

// ---------------------------------------------------------------------------
// criterion 5: horizon values, horizon bound, and the gap inequalities
// ---------------------------------------------------------------------------
CheckResult check_horizon_suite(const Tolerances& tol) {
    CheckResult result{"horizon.values_and_gap", false, 0.0, ""};
    WorstCase worst;
    std::ostringstream detail;

    const ChartContext quad_ctx(ScaleFactorModel::power_law(2.0), 0, tol);
    for (double t0 : {0.5, 1.0, 2.0}) {
        const chart::HorizonValue h = quad_ctx.chi_horizon(t0);
        if (!h.finite) {
            worst.update(-1.0, fmt("alpha=2 horizon at t0=%.2g reported infinite", t0));
            continue;
        }
        worst.update(1e-9 - std::fabs(h.chi - 1.0 / t0),
                     fmt("alpha=2 horizon value at t0=%.2g", t0));
    }
    // gap inequalities: 0 <= chi_t0(tau) - integral(1/a) < 1/adot(tau),
    // and chi_t0(tau) below the horizon.
    const double t0 = 1.0;
    const double chi_h = quad_ctx.chi_horizon(t0).chi;
    for (double tau : {1.5, 2.0, 5.0, 10.0, 100.0}) {
        const double chi = quad_ctx.chi_t0(t0, tau);
        const double plain = numerics::integrate_smooth(
            [&](double t) { return 1.0 / quad_ctx.model().a(t); }, t0, tau, tol).value;
        const double inv_adot = 1.0 / quad_ctx.model().adot(tau);
        worst.update(chi - plain + 1e-12, fmt("gap lower bound at tau=%.3g", tau));
        worst.update(inv_adot - (chi - plain) + 1e-12, fmt("gap upper bound at tau=%.3g", tau));
        worst.update(chi_h - chi, fmt("horizon bound at tau=%.3g", tau));
    }
    detail << fmt("alpha=2: chi_horiz(t0)=1/t0 to 1e-9, gap within [0, 1/adot) at all probes; ");

    const ChartContext sqrt_ctx(ScaleFactorModel::power_law(0.5), 0, tol);
    const ChartContext log_ctx(ScaleFactorModel::log_model(), 0, tol);
    const bool sqrt_infinite = !sqrt_ctx.chi_horizon(1.0).finite;
    const bool log_infinite = !log_ctx.chi_horizon(1.0).finite;
    if (!sqrt_infinite) worst.update(-1.0, "alpha=1/2 horizon not reported infinite");
    if (!log_infinite) worst.update(-1.0, "log model horizon not reported infinite");
    detail << fmt("alpha=1/2 horizon infinite: %s; log-model horizon infinite: %s",
                  sqrt_infinite ? "yes" : "NO", log_infinite ? "yes" : "NO");

    result.pass = worst.ok();
    result.margin = worst.margin;
    result.detail = detail.str() + fmt(" (min slack %.3g, %s)", worst.margin,
                                       worst.where.c_str());
    return result;
}

// shared chart-spanning grid: fractions of the spaceslice radius
const std::vector<double>& radius_fractions() {
    static const std::vector<double> fractions = {0.05, 0.15, 0.25, 0.35, 0.45,
                                                  0.55, 0.65, 0.75, 0.85, 0.90};
    return fractions;
}

std::vector<double> model_tau_grid() { return {0.8, 2.0, 5.0}; }

// ---------------------------------------------------------------------------
// criterion 6: the three metric-coefficient forms agree
// ---------------------------------------------------------------------------
CheckResult check_metric_forms(const Tolerances& tol) {
    CheckResult result{"metric.form_agreement", false, 0.0, ""};
    double worst_spread = 0.0;
    std::string where;
    for (const NamedModel& entry : built_in_models()) {
        const ChartContext ctx(entry.model, entry.k, tol);
        for (double tau : model_tau_grid()) {
            for (double frac : radius_fractions()) {
                const double rho = frac * ctx.max_radius(tau);
                const metric::GttSample g = metric::g_tau_tau_all(ctx, tau, rho);
                if (g.spread > worst_spread) {
                    worst_spread = g.spread;
                    where = fmt("%s tau=%.3g rho/radius=%.2f",
                                ctx.model().name().c_str(), tau, frac);
                }
            }
        }
    }
    result.pass = worst_spread <= 1e-7;
    result.margin = 1e-7 - worst_spread;
    result.detail = fmt("max relative spread %.3g at %s", worst_spread, where.c_str());
    return result;
}

// ---------------------------------------------------------------------------
// criterion 7: -g_tautau = (v_fermi / v_kin)^2
// ---------------------------------------------------------------------------
CheckResult check_velocity_identity(const Tolerances& tol) {
    CheckResult result{"velocity.metric_identity", false, 0.0, ""};
    double worst_rel = 0.0;
    std::string where;
    for (const NamedModel& entry : built_in_models()) {
        const ChartContext ctx(entry.model, entry.k, tol);
        for (double tau : model_tau_grid()) {
            for (double frac : radius_fractions()) {
                const double rho = frac * ctx.max_radius(tau);
                const double t0 =
                    ctx.time_at_sigma(tau, ctx.sigma_from_rho(tau, rho).sigma);
                const double g =
                    metric::g_tau_tau_from_t0(ctx, tau, t0, metric::GttForm::Sigma);
                const double v_ratio = kinematics::v_fermi_comoving(ctx, tau, t0) /
                                       kinematics::v_kin_comoving(ctx, tau, t0);
                const double rel = std::fabs(-g - v_ratio * v_ratio) / std::fabs(g);
                if (rel > worst_rel) {
                    worst_rel = rel;
                    where = fmt("%s tau=%.3g rho/radius=%.2f",
                                ctx.model().name().c_str(), tau, frac);
                }
            }
        }
    }
    result.pass = worst_rel <= 1e-7;
    result.margin = 1e-7 - worst_rel;
    result.detail = fmt("max relative identity error %.3g at %s", worst_rel, where.c_str());
    return result;
}

// ---------------------------------------------------------------------------
// criterion 8: Hubble-law inequalities per regime, equality for a(t) = t
// ---------------------------------------------------------------------------
CheckResult check_hubble_inequalities(const Tolerances& tol) {
    CheckResult result{"velocity.hubble_inequalities", false, 0.0, ""};
    WorstCase worst;
    const double fractions[] = {0.1, 0.3, 0.5, 0.7, 0.9};

    const ChartContext decel(ScaleFactorModel::power_law(0.5), 0, tol);
    const ChartContext accel(ScaleFactorModel::power_law(2.0), 0, tol);
    const ChartContext milne(ScaleFactorModel::power_law(1.0), -1, tol);
    for (double tau : {1.0, 3.0}) {
        for (double frac : fractions) {
            const double t0 = frac * tau;
            const auto d = kinematics::hubble_decomposition(decel, tau, t0);
            worst.update(d.v_fermi - d.hubble_term,
                         fmt("alpha=1/2 tau=%.2g t0=%.2g expansion-dominated bound", tau, t0));
            const auto a = kinematics::hubble_decomposition(accel, tau, t0);
            worst.update(a.hubble_term - a.v_fermi,
                         fmt("alpha=2 tau=%.2g t0=%.2g inflation-dominated bound", tau, t0));
            const auto m = kinematics::hubble_decomposition(milne, tau, t0);
            worst.update(1e-10 - std::fabs(m.v_fermi - m.hubble_term),
                         fmt("milne equality tau=%.2g t0=%.2g", tau, t0));
        }
    }
    result.pass = worst.ok();
    result.margin = worst.margin;
    result.detail = fmt("min slack %.3g at %s", worst.margin, worst.where.c_str());
    return result;
}

// ---------------------------------------------------------------------------
// criterion 9: super/sub-luminal dichotomy of the comoving Fermi speed
// ---------------------------------------------------------------------------
CheckResult check_superluminal_dichotomy(const Tolerances& tol) {
    CheckResult result{"velocity.superluminal_dichotomy", false, 0.0, ""};
    WorstCase worst;

    const ChartContext decel(ScaleFactorModel::power_law(0.5), 0, tol);
    const double v_small_t0 = kinematics::v_fermi_comoving(decel, 1.0, 1e-3);
    worst.update(v_small_t0 - 1.0, "alpha=1/2 speed above 1 at t0=1e-3");
    const double v_limit = kinematics::v_fermi_comoving(decel, 1.0, 1e-8);
    worst.update(1e-4 - std::fabs(v_limit - kPi / 2.0), "alpha=1/2 t0->0 limit pi/2");

    for (double alpha : {2.0, 3.0}) {
        const ChartContext ctx(ScaleFactorModel::power_law(alpha), 0, tol);
        for (double tau : {1.0, 4.0}) {
            for (double frac : {1e-4, 1e-3, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9}) {
                const double v = kinematics::v_fermi_comoving(ctx, tau, frac * tau);
                worst.update(1.0 - v, fmt("alpha=%.0f tau=%.2g t0/tau=%.2g subluminal",
                                          alpha, tau, frac));
            }
        }
    }
    result.pass = worst.ok();
    result.margin = worst.margin;
    result.detail = fmt("alpha=1/2 limit %.8f (pi/2 = %.8f); min slack %.3g at %s",
                        v_limit, kPi / 2.0, worst.margin, worst.where.c_str());
    return result;
}

// ---------------------------------------------------------------------------
// criterion 10: bounded spaceslice radii for the hyperbolic-sine and
// lambda-fluid histories
// ---------------------------------------------------------------------------
CheckResult check_bounded_universe(const Tolerances& tol) {
    CheckResult result{"radius.bounded_universe", false, 0.0, ""};
    WorstCase worst;
    std::ostringstream detail;

    // Hyperbolic-sine model. The radius integral has the exact closed form
    // arccos(sech(tau)) (substitute x = cosh t), giving an independent
    // oracle for the quadrature.
    const ChartContext sinh_ctx(ScaleFactorModel::sinh_model(), -1, tol);
    double prev = 0.0;
    double closed_form_err = 0.0;
    for (double tau : {0.5, 1.0, 2.0, 4.0, 8.0, 14.0, 20.0}) {
        const double radius = sinh_ctx.max_radius(tau);
        worst.update(radius - prev - 1e-12, fmt("sinh radius increasing at tau=%.3g", tau));
        worst.update(1.0 - radius, fmt("sinh radius below 1 at tau=%.3g", tau));
        closed_form_err = std::max(
            closed_form_err, std::fabs(radius - std::acos(1.0 / std::cosh(tau))));
        prev = radius;
    }
    const double radius20 = sinh_ctx.max_radius(20.0);
    worst.update(0.01 - std::fabs(radius20 - 1.0), "sinh radius within 0.01 of 1 at tau=20");
    detail << fmt("sinh: radius(20)=%.9f (expected-value check against 1; "
                  "quadrature matches the closed form arccos(sech tau) to %.2g, "
                  "which tends to pi/2=%.9f = the universal bound (pi/2)/H(inf)); ",
                  radius20, closed_form_err, kPi / 2.0);

    // Lambda-fluid model: bounded, increasing radius; report which of the
    // two candidate expressions the late-time a/adot limit matches.
    const double lambda = 3.0;
    const ChartContext fluid_ctx(ScaleFactorModel::lambda_fluid(lambda, 1.0), 0, tol);
    prev = 0.0;
    double sup_radius = 0.0;
    for (double tau : {1.0, 2.0, 5.0, 10.0, 20.0, 40.0}) {
        const double radius = fluid_ctx.max_radius(tau);
        worst.update(radius - prev - 1e-12,
                     fmt("lambda-fluid radius increasing at tau=%.3g", tau));
        sup_radius = std::max(sup_radius, radius);
        prev = radius;
    }
    const double limit = fluid_ctx.model().a(40.0) / fluid_ctx.model().adot(40.0);
    const double cand_a = std::sqrt(lambda / 3.0); // sqrt(Lambda/3)
    const double cand_b = std::sqrt(3.0 / lambda); // sqrt(3/Lambda)
    const bool match_a = std::fabs(limit - cand_a) <= 1e-6 * cand_a;
    const bool match_b = std::fabs(limit - cand_b) <= 1e-6 * cand_b;
    worst.update((match_a || match_b) ? 0.0 : -1.0, "lambda-fluid a/adot limit matches a candidate");
    worst.update((kPi / 2.0) * limit * (1.0 + 1e-6) - sup_radius,
                 "lambda-fluid radius bounded by (pi/2) * lim a/adot");

    // Disambiguate at a Lambda where the two candidates differ.
    const ScaleFactorModel fluid12 = ScaleFactorModel::lambda_fluid(12.0, 1.0);
    const double limit12 = fluid12.a(40.0) / fluid12.adot(40.0);
    const bool match12_a = std::fabs(limit12 - std::sqrt(12.0 / 3.0)) <= 1e-6 * 2.0;
    const bool match12_b = std::fabs(limit12 - std::sqrt(3.0 / 12.0)) <= 1e-6 * 0.5;
    detail << fmt("lambda-fluid(3,1): lim a/adot = %.9f matches sqrt(Lambda/3)=%.4f: %s, "
                  "sqrt(3/Lambda)=%.4f: %s (degenerate at Lambda=3); "
                  "at Lambda=12: lim=%.9f matches sqrt(Lambda/3): %s, sqrt(3/Lambda): %s; "
                  "radius sup %.6f <= (pi/2)*lim = %.6f",
                  limit, cand_a, match_a ? "yes" : "no", cand_b, match_b ? "yes" : "no",
                  limit12, match12_a ? "yes" : "no", match12_b ? "yes" : "no",
                  sup_radius, (kPi / 2.0) * limit);

    result.pass = worst.ok();
    result.margin = worst.margin;
    result.detail = detail.str() + fmt(" (min slack %.3g at %s)", worst.margin,
                                       worst.where.c_str());
    return result;
}

// ---------------------------------------------------------------------------
// criterion 11: randomized property suite
// ---------------------------------------------------------------------------
CheckResult check_property_suite(const Tolerances& tol, std::uint64_t seed) {
    CheckResult result{"chart.property_suite", false, 0.0, ""};
    std::mt19937_64 rng(seed);
    int violations = 0;
    std::ostringstream first_violation;
    auto report = [&](bool ok, const std::string& what) {
        if (!ok) {
            if (violations == 0) first_violation << what;
            ++violations;
        }
    };

    for (const NamedModel& entry : built_in_models()) {
        const ChartContext ctx(entry.model, entry.k, tol);
        const std::string name = ctx.model().name();

        // chi_t0 strictly increasing in tau
        const double t0 = 0.3;
        std::vector<double> taus;
        for (int i = 0; i < 10; ++i) taus.push_back(log_uniform(rng, t0 * 1.01, t0 * 20.0));
        std::sort(taus.begin(), taus.end());
        double prev_chi = 0.0;
        for (double tau : taus) {
            const double chi = ctx.chi_t0(t0, tau);
            report(chi > prev_chi, fmt("%s: chi_t0 not increasing at tau=%.6g", name.c_str(), tau));
            prev_chi = chi;
        }

        // radius non-decreasing in tau
        std::vector<double> rtaus;
        for (int i = 0; i < 10; ++i) rtaus.push_back(log_uniform(rng, 0.2, 20.0));
        std::sort(rtaus.begin(), rtaus.end());
        double prev_radius = 0.0;
        for (double tau : rtaus) {
            const double radius = ctx.max_radius(tau);
            report(radius >= prev_radius - 1e-12,
                   fmt("%s: radius decreasing at tau=%.6g", name.c_str(), tau));
            prev_radius = radius;
        }

        // cosmological time strictly decreasing along a geodesic
        const double tau_geo = 2.0;
        double prev_t = tau_geo;
        for (double frac : radius_fractions()) {
            const CurvaturePoint p =
                ctx.from_fermi({tau_geo, frac * ctx.max_radius(tau_geo), {}, {}});
            report(p.t < prev_t, fmt("%s: t not decreasing along geodesic (frac %.2f)",
                                     name.c_str(), frac));
            prev_t = p.t;
        }

        // Distance sandwich and bijection round-trips on random chart points.
        // Curvature-side probes are taken as images of the radius-fraction
        // grid (and of the horizon fraction when one exists): the chart of a
        // horizonless model is unbounded in chi, and the t-component of the
        // inverse becomes ill-conditioned as a(tau)/a(t) grows, so "90% of
        // the chart" is meaningful only in those fractions.
        for (int i = 0; i < 10; ++i) {
            const double tau = log_uniform(rng, 0.5, 3.0);
            const double frac = 0.05 + 0.85 * uniform01(rng);
            const double rho = frac * ctx.max_radius(tau);
            const CurvaturePoint cp = ctx.from_fermi({tau, rho, {}, {}});
            const auto sandwich = kinematics::distance_sandwich(ctx, cp);
            report(sandwich.lower <= sandwich.rho * (1.0 + 1e-10) &&
                       sandwich.rho <= sandwich.upper * (1.0 + 1e-10),
                   fmt("%s: distance sandwich violated at t=%.4g chi=%.4g",
                       name.c_str(), cp.t, cp.chi));
            report(cp.chi <= 0.0 || sandwich.rho > sandwich.lower * (1.0 - 1e-10),
                   fmt("%s: sandwich lower bound not strict at t=%.4g", name.c_str(), cp.t));

            const FermiPoint f = ctx.to_fermi(cp);
            const double fermi_rt = std::fabs(f.tau - tau) / tau +
                                    std::fabs(f.rho - rho) / std::max(rho, 1e-6);
            report(fermi_rt <= 1e-8,
                   fmt("%s: Fermi round-trip error %.3g at tau=%.4g rho=%.4g",
                       name.c_str(), fermi_rt, tau, rho));

            const chart::HorizonValue h = ctx.chi_horizon(cp.t);
            if (h.finite) {
                const double chi = frac * h.chi;
                const FermiPoint f2 = ctx.to_fermi({cp.t, chi, {}, {}});
                const CurvaturePoint back = ctx.from_fermi(f2);
                const double rt = std::fabs(back.t - cp.t) / cp.t +
                                  std::fabs(back.chi - chi) / std::max(chi, 1e-6);
                report(rt <= 1e-8,
                       fmt("%s: curvature round-trip error %.3g at t=%.4g chi=%.4g",
                           name.c_str(), rt, cp.t, chi));
            }
        }

        // Jacobian positivity on random (tau, sigma)
        for (int i = 0; i < 10; ++i) {
            const double tau = log_uniform(rng, 0.5, 10.0);
            const double sigma = 1.0 + log_uniform(rng, 1e-3, 99.0);
            const double jac = metric::jacobian(ctx, tau, sigma);
            report(jac > 0.0, fmt("%s: Jacobian not positive at tau=%.4g sigma=%.4g",
                                  name.c_str(), tau, sigma));
        }
    }

    // unbounded growth for eventually non-inflationary histories
    for (double alpha : {0.5, 1.0}) {
        const ChartContext ctx(ScaleFactorModel::power_law(alpha), 0, tol);
        report(ctx.max_radius(1000.0) > 10.0 * ctx.max_radius(1.0),
               fmt("alpha=%.1f: radius growth bound violated", alpha));
    }

    result.pass = violations == 0;
    result.margin = violations == 0 ? 0.0 : -static_cast<double>(violations);
    result.detail = violations == 0
                        ? "zero violations over randomized probes (fixed seed)"
                        : fmt("%d violations; first: %s", violations,
                              first_violation.str().c_str());
    return result;
}

} // namespace

std::vector<FigureRow> figure_rows(double tau_min, double tau_max, int count,
                                   const Tolerances& tol) {
    if (!(tau_min > 0.0) || !(tau_max > tau_min) || count < 2) {
        throw std::invalid_argument("figure_rows: bad tau range");
    }
    std::vector<FigureRow> rows;
    rows.reserve(3 * count);
    for (double alpha : {0.5, 1.0, 2.0}) {
        const ChartContext ctx(ScaleFactorModel::power_law(alpha), 0, tol);
        for (int i = 0; i < count; ++i) {
            const double tau = tau_min + (tau_max - tau_min) * i / (count - 1);
            rows.push_back({alpha, tau, 2.0 * ctx.max_radius(tau)});
        }
    }
    return rows;
}

std::vector<CheckResult> acceptance_battery(const Tolerances& tol, std::uint64_t seed) {
    std::vector<CheckResult> results;
    // Checks are independent: one blowing up must not take the suite down.
    auto run = [&results](const char* id, auto&& check) {
        try {
            results.push_back(check());
        } catch (const std::exception& e) {
            results.push_back({id, false, -std::numeric_limits<double>::infinity(),
                               fmt("exception: %s", e.what())});
        }
    };
    run("radius.power_law_ratio", [&] { return check_power_law_radius(tol); });
    run("figure.linear_slopes", [&] { return check_figure_slopes(tol); });
    run("chart.milne_exact", [&] { return check_milne_oracle(tol); });
    run("radius.hubble_bounds", [&] { return check_radius_bounds(tol, seed); });
    run("horizon.values_and_gap", [&] { return check_horizon_suite(tol); });
    run("metric.form_agreement", [&] { return check_metric_forms(tol); });
    run("velocity.metric_identity", [&] { return check_velocity_identity(tol); });
    run("velocity.hubble_inequalities", [&] { return check_hubble_inequalities(tol); });
    run("velocity.superluminal_dichotomy", [&] { return check_superluminal_dichotomy(tol); });
    run("radius.bounded_universe", [&] { return check_bounded_universe(tol); });
    run("chart.property_suite", [&] { return check_property_suite(tol, seed); });
    return results;
}

std::vector<CheckResult> model_checks(const ChartContext& ctx, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const Tolerances& tol = ctx.tol();
    std::vector<CheckResult> results;
    const double t_cap = std::min(ctx.model().t_max(), 20.0);

    // One misbehaving check (for instance a quadrature that cannot reach the
    // requested tolerance on a coarse tabulated model) must not take down the
    // report; it fails with the reason instead.
    auto guarded = [&results](const char* id, auto&& block) {
        try {
            block();
        } catch (const std::exception& e) {
            results.push_back({id, false, -std::numeric_limits<double>::infinity(),
                               fmt("exception: %s", e.what())});
        }
    };

    // regularity of the supplied scale factor
    {
        const RegularityReport& reg = ctx.regularity();
        results.push_back({"model.regularity", reg.is_regular,
                           1.0 - reg.max_condition_value,
                           fmt("max condition value %.6g over %zu probes",
                               reg.max_condition_value, reg.probe_grid.size())});
    }

    // radius bounds
    guarded("radius.hubble_bounds", [&] {
        WorstCase worst;
        for (int i = 0; i < 25; ++i) {
            const double tau = log_uniform(rng, 0.05 * t_cap, 0.9 * t_cap);
            const double radius = ctx.max_radius(tau);
            const double inv_h = 1.0 / ctx.model().hubble(tau);
            worst.update((kPi / 2.0) * inv_h + 1e-9 - radius,
                         fmt("universal bound at tau=%.4g", tau));
            if (kinematics::regime_on_interval(ctx.model(), 0.0, tau) ==
                kinematics::Regime::NonInflationary) {
                worst.update(inv_h + 1e-9 - radius,
                             fmt("non-inflationary bound at tau=%.4g", tau));
            }
        }
        results.push_back({"radius.hubble_bounds", worst.ok(), worst.margin,
                           fmt("min slack %.3g (%s)", worst.margin, worst.where.c_str())});
    });

    // monotone radius and chi_t0, geodesic time decrease, bijection, sandwich
    guarded("chart.properties", [&] {
        WorstCase worst;
        int violations = 0;
        std::string first;
        auto report = [&](bool ok, const std::string& what) {
            if (!ok) {
                if (violations == 0) first = what;
                ++violations;
            }
        };
        const double t0 = 0.05 * t_cap;
        double prev_chi = 0.0, prev_radius = 0.0;
        for (int i = 1; i <= 8; ++i) {
            const double tau = t0 + (0.9 * t_cap - t0) * i / 8.0;
            const double chi = ctx.chi_t0(t0, tau);
            report(chi > prev_chi, fmt("chi_t0 not increasing at tau=%.5g", tau));
            prev_chi = chi;
            const double radius = ctx.max_radius(tau);
            report(radius >= prev_radius - 1e-12, fmt("radius decreasing at tau=%.5g", tau));
            prev_radius = radius;
        }
        const double tau_geo = 0.5 * t_cap;
        double prev_t = tau_geo;
        for (double frac : radius_fractions()) {
            const CurvaturePoint p =
                ctx.from_fermi({tau_geo, frac * ctx.max_radius(tau_geo), {}, {}});
            report(p.t < prev_t, fmt("t not decreasing along geodesic at frac %.2f", frac));
            prev_t = p.t;
            const FermiPoint f = ctx.to_fermi(p);
            const double rt = std::fabs(f.tau - tau_geo) / tau_geo;
            report(rt <= 1e-8, fmt("round-trip tau error %.3g at frac %.2f", rt, frac));
        }
        for (int i = 0; i < 8; ++i) {
            const double tau = log_uniform(rng, 0.2 * t_cap, 0.6 * t_cap);
            const double frac = 0.05 + 0.85 * uniform01(rng);
            const CurvaturePoint cp =
                ctx.from_fermi({tau, frac * ctx.max_radius(tau), {}, {}});
            const auto s = kinematics::distance_sandwich(ctx, cp);
            report(s.lower <= s.rho * (1.0 + 1e-10) && s.rho <= s.upper * (1.0 + 1e-10),
                   fmt("distance sandwich violated at t=%.4g chi=%.4g", cp.t, cp.chi));
        }
        results.push_back({"chart.properties", violations == 0,
                           -static_cast<double>(violations),
                           violations == 0 ? "zero violations"
                                           : fmt("%d violations; first: %s", violations,
                                                 first.c_str())});
    });

    // metric form agreement + velocity identity on a chart-spanning grid
    guarded("metric.form_agreement", [&] {
        double worst_spread = 0.0, worst_identity = 0.0;
        for (double frac_tau : {0.2, 0.5}) {
            const double tau = frac_tau * t_cap;
            for (double frac : radius_fractions()) {
                const double rho = frac * ctx.max_radius(tau);
                const metric::GttSample g = metric::g_tau_tau_all(ctx, tau, rho);
                worst_spread = std::max(worst_spread, g.spread);
                const double t0 =
                    ctx.time_at_sigma(tau, ctx.sigma_from_rho(tau, rho).sigma);
                const double ratio = kinematics::v_fermi_comoving(ctx, tau, t0) /
                                     kinematics::v_kin_comoving(ctx, tau, t0);
                worst_identity = std::max(
                    worst_identity,
                    std::fabs(-g.sigma_form - ratio * ratio) / std::fabs(g.sigma_form));
            }
        }
        results.push_back({"metric.form_agreement", worst_spread <= 1e-7,
                           1e-7 - worst_spread,
                           fmt("max relative spread %.3g", worst_spread)});
        results.push_back({"velocity.metric_identity", worst_identity <= 1e-7,
                           1e-7 - worst_identity,
                           fmt("max relative identity error %.3g", worst_identity)});
    });

    // Hubble-law inequality according to the regime
    guarded("velocity.hubble_inequalities", [&] {
        WorstCase worst;
        bool any_asserted = false;
        const double tau = 0.5 * t_cap;
        for (double frac : {0.2, 0.5, 0.8}) {
            const auto s = kinematics::hubble_decomposition(ctx, tau, frac * tau);
            if (s.regime == kinematics::Regime::NonInflationary) {
                any_asserted = true;
                worst.update(s.v_fermi - s.hubble_term + 1e-10,
                             fmt("expansion bound at t0=%.4g", frac * tau));
            } else if (s.regime == kinematics::Regime::Inflationary) {
                any_asserted = true;
                worst.update(s.hubble_term - s.v_fermi + 1e-10,
                             fmt("inflation bound at t0=%.4g", frac * tau));
            }
            const double residual_bound =
                50.0 * tol.quad_rel * std::max(1.0, s.v_fermi) + 50.0 * tol.quad_abs;
            worst.update(residual_bound - s.decomposition_residual,
                         fmt("decomposition residual at t0=%.4g", frac * tau));
        }
        results.push_back({"velocity.hubble_inequalities", worst.ok(), worst.margin,
                           any_asserted ? fmt("min slack %.3g (%s)", worst.margin,
                                              worst.where.c_str())
                                        : "mixed regime at all probes: only the "
                                          "decomposition identity checked"});
    });

    // horizon classification and gap bound
    if (std::isfinite(ctx.model().t_max())) {
        results.push_back({"horizon.values_and_gap", true, 0.0,
                           "not applicable: range-limited (tabulated) scale factor"});
    } else {
        WorstCase worst;
        std::string kind;
        try {
            const double t0 = 0.1 * t_cap;
            const chart::HorizonValue h = ctx.chi_horizon(t0);
            kind = h.finite ? fmt("finite horizon chi=%.9g at t0=%.4g", h.chi, t0)
                            : fmt("no horizon (divergent) at t0=%.4g", t0);
            for (double frac_tau : {0.3, 0.6}) {
                const double tau = frac_tau * t_cap;
                const double chi = ctx.chi_t0(t0, tau);
                const double plain = numerics::integrate_smooth(
                    [&](double t) { return 1.0 / ctx.model().a(t); }, t0, tau, tol).value;
                worst.update(chi - plain + 1e-12, fmt("gap lower bound at tau=%.4g", tau));
                worst.update(1.0 / ctx.model().adot(tau) - (chi - plain) + 1e-12,
                             fmt("gap upper bound at tau=%.4g", tau));
                if (h.finite) worst.update(h.chi - chi, fmt("horizon bound at tau=%.4g", tau));
            }
        } catch (const std::exception& e) {
            worst.update(-1.0, fmt("horizon evaluation failed: %s", e.what()));
        }
        results.push_back({"horizon.values_and_gap", worst.ok(), worst.margin,
                           kind + fmt("; min slack %.3g (%s)", worst.margin,
                                      worst.where.c_str())});
    }

    return results;
}

} // namespace fermirw::verify
