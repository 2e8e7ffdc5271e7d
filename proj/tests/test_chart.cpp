#include <doctest.h>

#include <array>
#include <cmath>
#include <functional>
#include <thread>
#include <vector>

#include "fermirw/chart.hpp"

using fermirw::ScaleFactorModel;
using fermirw::chart::BeyondHorizonError;
using fermirw::chart::ChartContext;
using fermirw::chart::CurvaturePoint;
using fermirw::chart::FermiPoint;
using fermirw::chart::HorizonValue;
using fermirw::chart::OutOfChartError;
using fermirw::numerics::Tolerances;

namespace {

constexpr double kPi = 3.141592653589793;

const ChartContext& milne() {
    static const ChartContext ctx(ScaleFactorModel::power_law(1.0), -1, Tolerances{});
    return ctx;
}

// plain composite Simpson, the test-side oracle integrator
double simpson(const std::function<double(double)>& f, double lo, double hi, int n) {
    double sum = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) {
        const double x = lo + (hi - lo) * i / n;
        sum += f(x) * (i % 2 ? 4.0 : 2.0);
    }
    return sum * (hi - lo) / (3.0 * n);
}

} // namespace

TEST_CASE("event horizon of the quadratic power law") {
    const ChartContext ctx(ScaleFactorModel::power_law(2.0), 0);
    for (double t0 : {0.5, 1.0, 2.0}) {
        const HorizonValue h = ctx.chi_horizon(t0);
        REQUIRE(h.finite);
        CHECK(h.chi == doctest::Approx(1.0 / t0).epsilon(1e-9));
    }
}

TEST_CASE("models without an event horizon") {
    const ChartContext sqrt_ctx(ScaleFactorModel::power_law(0.5), 0);
    CHECK_FALSE(sqrt_ctx.chi_horizon(1.0).finite);
    const ChartContext log_ctx(ScaleFactorModel::log_model(), 0);
    CHECK_FALSE(log_ctx.chi_horizon(1.0).finite);
    CHECK_FALSE(milne().chi_horizon(1.0).finite);
}

TEST_CASE("hyperbolic-sine horizon matches its closed form") {
    const ChartContext ctx(ScaleFactorModel::sinh_model(), -1);
    const HorizonValue h = ctx.chi_horizon(1.0);
    REQUIRE(h.finite);
    CHECK(h.chi == doctest::Approx(2.0 * std::atanh(std::exp(-1.0))).epsilon(1e-9));
}

TEST_CASE("radial coordinate reached at a fixed time") {
    CHECK(milne().chi_t0(1.0, 1.0) == 0.0);
    CHECK(milne().chi_t0(1.0, std::cosh(1.0)) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(milne().chi_t0(2.0, 1.0), std::domain_error);
}

TEST_CASE("gap between the radial coordinate and the conformal integral") {
    const ChartContext ctx(ScaleFactorModel::power_law(2.0), 0);
    const double chi = ctx.chi_t0(1.0, 10.0);
    const double conformal = 1.0 - 1.0 / 10.0; // integral of t^-2 over [1, 10]
    CHECK(chi < ctx.chi_horizon(1.0).chi);
    CHECK(chi - conformal >= 0.0);
    CHECK(chi - conformal < 1.0 / ctx.model().adot(10.0)); // 1/adot(10) = 0.05
}

TEST_CASE("geodesic points in closed form") {
    const CurvaturePoint start = milne().geodesic_point(2.0, 1.0);
    CHECK(start.t == 2.0);
    CHECK(start.chi == 0.0);

    const CurvaturePoint p = milne().geodesic_point(2.0, 4.0);
    CHECK(p.t == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.chi == doctest::Approx(std::acosh(2.0)).epsilon(1e-10));

    CHECK_THROWS_AS(milne().geodesic_point(2.0, 0.5), std::domain_error);
}

TEST_CASE("geodesic radial coordinate against the sigma-space form") {
    // independent evaluation of the same curve: substitute s = 1 + u^2 in the
    // sigma-space integral, then Simpson
    const ChartContext ctx(ScaleFactorModel::power_law(0.5), 0);
    const double tau = 1.0, sigma = 4.0;
    const CurvaturePoint p = ctx.geodesic_point(tau, sigma);
    // t = b(a(tau)/sqrt(sigma)) = (1/2)^2
    CHECK(p.t == doctest::Approx(0.25).epsilon(1e-12));

    const double a_tau = ctx.model().a(tau);
    const double oracle = simpson(
        [&](double u) {
            const double s = std::sqrt(1.0 + u * u);
            return ctx.model().bdot(a_tau / s) / s;
        },
        0.0, std::sqrt(sigma - 1.0), 4000);
    CHECK(p.chi == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("proper length closed forms") {
    CHECK(milne().proper_length(2.0, 1.0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-10));
    CHECK(milne().proper_length(2.0, 2.0 - 1e-12) < 1e-5);
    CHECK_THROWS_AS(milne().proper_length(2.0, 2.0), std::domain_error);

    const ChartContext ctx(ScaleFactorModel::power_law(0.5), 0);
    CHECK(ctx.proper_length(1.0, 0.0) == doctest::Approx(kPi / 2.0).epsilon(1e-9));
}

TEST_CASE("proper length against the untransformed integrand plus tail estimate") {
    // truncate the raw t-space integral just short of the singular endpoint
    // and add the analytic square-root tail; the regularized path must agree.
    std::vector<std::pair<ScaleFactorModel, double>> cases = {
        {ScaleFactorModel::power_law(1.0), 2.0},
        {ScaleFactorModel::power_law(0.5), 1.0},
        {ScaleFactorModel::sinh_model(), 1.5},
    };
    for (const auto& [model, tau] : cases) {
        const ChartContext ctx(model, 0);
        const double t0 = 0.3 * tau;
        const double eps = 1e-8 * tau;
        const double a_tau = model.a(tau);
        const double direct = fermirw::numerics::integrate_smooth(
            [&](double t) {
                const double a = model.a(t);
                return a / std::sqrt((a_tau - a) * (a_tau + a));
            },
            t0, tau - eps, ctx.tol()).value;
        const double tail = std::sqrt(2.0 * model.a(tau) * eps / model.adot(tau));
        CHECK(ctx.proper_length(tau, t0) == doctest::Approx(direct + tail).epsilon(1e-6));
    }
}

TEST_CASE("geodesic parameter from proper distance") {
    CHECK(milne().sigma_from_rho(2.0, 0.0).sigma == 1.0);
    CHECK(milne().sigma_from_rho(2.0, std::sqrt(3.0)).sigma ==
          doctest::Approx(4.0).epsilon(1e-9));
    CHECK_THROWS_AS(milne().sigma_from_rho(2.0, 5.0), OutOfChartError);
    CHECK_THROWS_AS(milne().sigma_from_rho(2.0, -0.1), std::domain_error);

    // self-consistency on a grid of distances
    const ChartContext ctx(ScaleFactorModel::power_law(2.0), 0);
    const double tau = 1.5;
    const double radius = ctx.max_radius(tau);
    for (double frac : {0.1, 0.4, 0.7, 0.9}) {
        const double rho = frac * radius;
        const double sigma = ctx.sigma_from_rho(tau, rho).sigma;
        const double t0 = ctx.time_at_sigma(tau, sigma);
        CHECK(ctx.proper_length(tau, t0) == doctest::Approx(rho).epsilon(1e-10));
    }
}

TEST_CASE("transform to Fermi coordinates in the flat-wedge model") {
    const FermiPoint f = milne().to_fermi({1.0, 1.0, {}, {}});
    CHECK(f.tau == doctest::Approx(std::cosh(1.0)).epsilon(1e-10));
    CHECK(f.rho == doctest::Approx(std::sinh(1.0)).epsilon(1e-10));

    const FermiPoint fixed = milne().to_fermi({1.7, 0.0, {}, {}});
    CHECK(fixed.tau == 1.7);
    CHECK(fixed.rho == 0.0);
}

TEST_CASE("horizon boundary is open") {
    const ChartContext ctx(ScaleFactorModel::power_law(2.0), 0);
    const double chi_h = ctx.chi_horizon(1.0).chi;
    const FermiPoint inside = ctx.to_fermi({1.0, 0.999 * chi_h, {}, {}});
    CHECK(std::isfinite(inside.tau));
    CHECK(inside.tau > 1.0);
    CHECK_THROWS_AS(ctx.to_fermi({1.0, 1.001 * chi_h, {}, {}}), BeyondHorizonError);
    CHECK_THROWS_AS(ctx.to_fermi({1.0, chi_h, {}, {}}), BeyondHorizonError);
}

TEST_CASE("inverse transform and round trips") {
    const CurvaturePoint p = milne().from_fermi({std::cosh(1.0), std::sinh(1.0), {}, {}});
    CHECK(p.t == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(p.chi == doctest::Approx(1.0).epsilon(1e-10));

    const CurvaturePoint fixed = milne().from_fermi({2.5, 0.0, {}, {}});
    CHECK(fixed.t == 2.5);
    CHECK(fixed.chi == 0.0);
    CHECK_THROWS_AS(milne().from_fermi({2.0, 2.0, {}, {}}), OutOfChartError);

    const std::vector<std::pair<ScaleFactorModel, int>> cases = {
        {ScaleFactorModel::power_law(0.5), 0},
        {ScaleFactorModel::power_law(2.0), 0},
        {ScaleFactorModel::sinh_model(), -1}};
    for (const auto& [model, k] : cases) {
        const ChartContext ctx(model, k);
        for (double tau : {0.8, 2.0}) {
            const double radius = ctx.max_radius(tau);
            for (double frac : {0.1, 0.5, 0.9}) {
                const FermiPoint f{tau, frac * radius, {}, {}};
                const FermiPoint back = ctx.to_fermi(ctx.from_fermi(f));
                CHECK(back.tau == doctest::Approx(tau).epsilon(1e-8));
                CHECK(back.rho == doctest::Approx(f.rho).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("angular coordinates pass through the transforms untouched") {
    const FermiPoint f = milne().to_fermi({1.0, 1.0, 0.25, 1.5});
    CHECK(f.theta.value() == 0.25);
    CHECK(f.phi.value() == 1.5);
    const CurvaturePoint back = milne().from_fermi(f);
    CHECK(back.theta.value() == 0.25);
    CHECK(back.phi.value() == 1.5);
}

TEST_CASE("spaceslice radius ratios for power laws") {
    for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
        const ChartContext ctx(ScaleFactorModel::power_law(alpha), 0);
        const double expected = std::sqrt(kPi) *
                                std::tgamma((1.0 + alpha) / (2.0 * alpha)) /
                                std::tgamma(1.0 / (2.0 * alpha));
        CHECK(ctx.max_radius(1.3) / 1.3 == doctest::Approx(expected).epsilon(1e-8));
    }
    const ChartContext quad_ctx(ScaleFactorModel::power_law(2.0), 0);
    CHECK(quad_ctx.max_radius(1.0) == doctest::Approx(0.59907).epsilon(1e-5));
}

TEST_CASE("hyperbolic-sine radius matches its closed form and saturates") {
    const ChartContext ctx(ScaleFactorModel::sinh_model(), -1);
    double prev = 0.0;
    for (double tau : {0.5, 1.0, 2.0, 5.0, 12.0, 20.0}) {
        const double radius = ctx.max_radius(tau);
        CHECK(radius == doctest::Approx(std::acos(1.0 / std::cosh(tau))).epsilon(1e-8));
        CHECK(radius > prev);
        CHECK(radius < kPi / 2.0);
        prev = radius;
    }
    CHECK(std::fabs(ctx.max_radius(20.0) - kPi / 2.0) < 0.01);
}

TEST_CASE("lambda-fluid expansion rate limit resolves to sqrt(3/Lambda)") {
    const ScaleFactorModel m = ScaleFactorModel::lambda_fluid(12.0, 1.0);
    const double limit = m.a(50.0) / m.adot(50.0);
    CHECK(limit == doctest::Approx(std::sqrt(3.0 / 12.0)).epsilon(1e-10));
    CHECK(std::fabs(limit - std::sqrt(12.0 / 3.0)) > 1.0);

    const ChartContext ctx(m, 0);
    CHECK(ctx.max_radius(30.0) < (kPi / 2.0) * std::sqrt(3.0 / 12.0) + 1e-9);
}

TEST_CASE("chart membership and margins") {
    const ChartContext open_ctx(ScaleFactorModel::power_law(0.5), 0);
    const auto anywhere = open_ctx.in_chart(CurvaturePoint{1.0, 50.0, {}, {}});
    CHECK(anywhere.inside);
    CHECK(std::isinf(anywhere.margin));

    const ChartContext quad_ctx(ScaleFactorModel::power_law(2.0), 0);
    const auto outside = quad_ctx.in_chart(CurvaturePoint{1.0, 2.0, {}, {}});
    CHECK_FALSE(outside.inside);
    CHECK(outside.margin == doctest::Approx(-1.0).epsilon(1e-9));

    const auto worldline = quad_ctx.in_chart(FermiPoint{3.0, 0.0, {}, {}});
    CHECK(worldline.inside);
    CHECK(worldline.margin == doctest::Approx(quad_ctx.max_radius(3.0)).epsilon(1e-12));
}

TEST_CASE("context construction rejects inadmissible scale factors") {
    std::vector<std::pair<double, double>> exp_samples;
    for (int i = 0; i <= 400; ++i) {
        const double t = 3.0 * i / 400.0;
        exp_samples.emplace_back(t, std::exp(t));
    }
    CHECK_THROWS_AS(ChartContext(ScaleFactorModel::tabulated(exp_samples), 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(ChartContext(ScaleFactorModel::power_law(1.0), 1),
                    std::invalid_argument);
}

TEST_CASE("tabulated model transforms within its range") {
    std::vector<std::pair<double, double>> samples;
    for (int i = 0; i <= 800; ++i) {
        const double t = 6.0 * i / 800.0;
        samples.emplace_back(t, std::sinh(t));
    }
    const ChartContext ctx(ScaleFactorModel::tabulated(samples), -1);
    const double tau = 2.0;
    const double radius = ctx.max_radius(tau);
    CHECK(radius == doctest::Approx(std::acos(1.0 / std::cosh(tau))).epsilon(1e-5));
    const CurvaturePoint p = ctx.from_fermi({tau, 0.5 * radius, {}, {}});
    const FermiPoint back = ctx.to_fermi(p);
    CHECK(back.tau == doctest::Approx(tau).epsilon(1e-6));

    // horizon machinery is undefined for range-limited data
    CHECK_THROWS_AS(ctx.chi_horizon(1.0), std::domain_error);
    // unreachable targets are out-of-chart, not hard failures deeper down
    CHECK_THROWS_AS(ctx.to_fermi({1.0, 50.0, {}, {}}), OutOfChartError);
    CHECK_THROWS_AS(ctx.to_fermi({6.0, 0.5, {}, {}}), OutOfChartError);
    CHECK(ctx.in_chart(CurvaturePoint{1.0, 50.0, {}, {}}).inside == false);
    CHECK(ctx.in_chart(CurvaturePoint{1.0, 0.1, {}, {}}).inside);
}

TEST_CASE("fermi-side membership rejects the boundary and beyond") {
    const ChartContext ctx(ScaleFactorModel::power_law(2.0), 0);
    const double radius = ctx.max_radius(2.0);
    CHECK_FALSE(ctx.in_chart(FermiPoint{2.0, radius, {}, {}}).inside);
    CHECK_FALSE(ctx.in_chart(FermiPoint{2.0, 2.0 * radius, {}, {}}).inside);
    CHECK_FALSE(ctx.in_chart(FermiPoint{-1.0, 0.1, {}, {}}).inside);
    CHECK(ctx.in_chart(FermiPoint{2.0, 0.99 * radius, {}, {}}).inside);
}

TEST_CASE("chart kernel integrals and the divergence guard") {
    const ScaleFactorModel m = ScaleFactorModel::power_law(1.0);
    const fermirw::numerics::Tolerances tol{};
    using fermirw::numerics::ChartKernel;
    const auto rho = fermirw::numerics::integrate_chart(ChartKernel::Rho, m, 2.0, 1.0, tol);
    CHECK(rho.value == doctest::Approx(std::sqrt(3.0)).epsilon(1e-10));
    const auto chi = fermirw::numerics::integrate_chart(ChartKernel::Chi, m, 2.0, 1.0, tol);
    CHECK(chi.value == doctest::Approx(std::acosh(2.0)).epsilon(1e-10));
    // the radial-coordinate kernel may diverge at the big bang: guarded
    CHECK_THROWS_AS(fermirw::numerics::integrate_chart(ChartKernel::Chi, m, 2.0, 0.0, tol),
                    std::domain_error);
    CHECK_THROWS_AS(milne().chi_t0(0.0, 2.0), std::domain_error);
}

TEST_CASE("gap to the horizon closes at late proper times") {
    const ChartContext ctx(ScaleFactorModel::power_law(2.0), 0);
    const double t0 = 1.0;
    const double chi_h = ctx.chi_horizon(t0).chi;
    const double tau = 1000.0 * t0;
    const double gap = chi_h - ctx.chi_t0(t0, tau);
    const double remaining = 1.0 / tau; // integral of t^-2 beyond tau
    CHECK(gap >= 0.0);
    CHECK(gap <= remaining + 1e-9);
    CHECK(gap >= remaining - 1.0 / ctx.model().adot(tau) - 1e-9);
}

TEST_CASE("context memoization is safe under concurrent use") {
    const ChartContext ctx(ScaleFactorModel::power_law(2.0), 0);
    const double serial_radius = ctx.max_radius(1.5);
    const double serial_horizon = ctx.chi_horizon(1.0).chi;
    const FermiPoint serial_point = ctx.to_fermi({1.0, 0.5, {}, {}});

    std::vector<std::thread> workers;
    std::array<double, 8> radii{}, horizons{}, taus{};
    for (int i = 0; i < 8; ++i) {
        workers.emplace_back([&, i] {
            radii[i] = ctx.max_radius(1.5);
            horizons[i] = ctx.chi_horizon(1.0).chi;
            taus[i] = ctx.to_fermi({1.0, 0.5, {}, {}}).tau;
        });
    }
    for (auto& w : workers) w.join();
    for (int i = 0; i < 8; ++i) {
        CHECK(radii[i] == serial_radius);
        CHECK(horizons[i] == serial_horizon);
        CHECK(taus[i] == serial_point.tau);
    }
}
