#include <doctest.h>

#include <cmath>

#include "fermirw/kinematics.hpp"
#include "fermirw/metric.hpp"

using fermirw::ScaleFactorModel;
using fermirw::chart::ChartContext;
using fermirw::kinematics::classify_speeds;
using fermirw::kinematics::ClassifiedSample;
using fermirw::kinematics::distance_sandwich;
using fermirw::kinematics::DistanceSandwich;
using fermirw::kinematics::hubble_decomposition;
using fermirw::kinematics::Regime;
using fermirw::kinematics::regime_on_interval;
using fermirw::kinematics::v_fermi_comoving;
using fermirw::kinematics::v_kin_comoving;
using fermirw::kinematics::VelocitySample;

namespace {

constexpr double kPi = 3.141592653589793;

const ChartContext& milne() {
    static const ChartContext ctx(ScaleFactorModel::power_law(1.0), -1);
    return ctx;
}

} // namespace

TEST_CASE("kinematic speed of comoving particles") {
    const ChartContext ctx(ScaleFactorModel::power_law(2.0), 0);
    CHECK(v_kin_comoving(ctx, 2.0, 2.0) == 0.0);
    CHECK(v_kin_comoving(ctx, 2.0, 1.0) ==
          doctest::Approx(std::sqrt(15.0) / 4.0).epsilon(1e-14));
    CHECK(v_kin_comoving(ctx, 2.0, 1e-4) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK_THROWS_AS(v_kin_comoving(ctx, 1.0, 2.0), std::domain_error);
}

TEST_CASE("speeds coincide when the expansion is exactly linear") {
    for (double t0 : {0.2, 0.9, 1.7}) {
        const double vf = v_fermi_comoving(milne(), 2.0, t0);
        const double vk = v_kin_comoving(milne(), 2.0, t0);
        CHECK(std::fabs(vf - vk) <= 1e-10);
        CHECK(vf == doctest::Approx(std::sqrt(1.0 - t0 * t0 / 4.0)).epsilon(1e-10));
    }
}

TEST_CASE("decelerating expansion reaches the super-luminal limit") {
    const ChartContext ctx(ScaleFactorModel::power_law(0.5), 0);
    CHECK(std::fabs(v_fermi_comoving(ctx, 1.0, 1e-8) - kPi / 2.0) <= 1e-6);
    CHECK(v_fermi_comoving(ctx, 1.0, 1e-3) > 1.0);
    // speeds grow with distance (decreasing t0)
    double prev = 0.0;
    for (double t0 : {0.9, 0.6, 0.3, 0.1, 0.01}) {
        const double vf = v_fermi_comoving(ctx, 1.0, t0);
        CHECK(vf > prev);
        CHECK(vf > v_kin_comoving(ctx, 1.0, t0));
        prev = vf;
    }
}

TEST_CASE("accelerating expansion keeps speeds below light") {
    for (double alpha : {2.0, 3.0}) {
        const ChartContext ctx(ScaleFactorModel::power_law(alpha), 0);
        for (double t0 : {0.01, 0.2, 0.5, 0.8}) {
            const double vf = v_fermi_comoving(ctx, 1.0, t0);
            const double vk = v_kin_comoving(ctx, 1.0, t0);
            CHECK(vf < vk);
            CHECK(vk < 1.0);
        }
    }
}

TEST_CASE("velocity decomposition identities") {
    // linear model: correction vanishes and the flow term is everything
    const VelocitySample m = hubble_decomposition(milne(), 2.0, 1.0);
    CHECK(std::fabs(m.correction) <= 1e-12);
    CHECK(std::fabs(m.v_fermi - m.hubble_term) <= 1e-10);
    CHECK(m.v_fermi == doctest::Approx(m.rho / 2.0).epsilon(1e-10));

    const ChartContext decel(ScaleFactorModel::power_law(0.5), 0);
    const VelocitySample d = hubble_decomposition(decel, 1.0, 0.5);
    CHECK(d.correction < 0.0);
    CHECK(d.v_fermi >= d.hubble_term);
    CHECK(d.decomposition_residual <= 1e-9);
    CHECK(d.regime == Regime::NonInflationary);

    const ChartContext accel(ScaleFactorModel::power_law(2.0), 0);
    const VelocitySample a = hubble_decomposition(accel, 1.0, 0.5);
    CHECK(a.correction > 0.0);
    CHECK(a.v_fermi <= a.hubble_term);
    CHECK(a.decomposition_residual <= 1e-9);
    CHECK(a.regime == Regime::Inflationary);
}

TEST_CASE("speed ratio reproduces the metric coefficient") {
    const std::pair<ScaleFactorModel, int> cases[] = {
        {ScaleFactorModel::power_law(0.5), 0},
        {ScaleFactorModel::power_law(3.0), 0},
        {ScaleFactorModel::sinh_model(), -1},
        {ScaleFactorModel::log_model(), 0}};
    for (const auto& [model, k] : cases) {
        const ChartContext ctx(model, k);
        for (double t0 : {0.3, 0.9, 1.5}) {
            const double g =
                fermirw::metric::g_tau_tau_from_t0(ctx, 2.0, t0,
                                                   fermirw::metric::GttForm::Sigma);
            const double ratio =
                v_fermi_comoving(ctx, 2.0, t0) / v_kin_comoving(ctx, 2.0, t0);
            CHECK(-g == doctest::Approx(ratio * ratio).epsilon(1e-7));
        }
    }
}

TEST_CASE("regime classification") {
    CHECK(regime_on_interval(ScaleFactorModel::power_law(0.5), 0.1, 1.0) ==
          Regime::NonInflationary);
    CHECK(regime_on_interval(ScaleFactorModel::power_law(1.0), 0.1, 1.0) ==
          Regime::NonInflationary); // addot identically zero
    CHECK(regime_on_interval(ScaleFactorModel::power_law(2.0), 0.1, 1.0) ==
          Regime::Inflationary);
    // the fluid model flips sign at tanh^2(ct) = 1 - 2/(3 gamma)
    CHECK(regime_on_interval(ScaleFactorModel::lambda_fluid(3.0, 1.0), 0.2, 2.0) ==
          Regime::Mixed);
}

TEST_CASE("classification carries the ordering report") {
    const ChartContext decel(ScaleFactorModel::power_law(0.5), 0);
    const ClassifiedSample d = classify_speeds(decel, 1.0, 0.25);
    CHECK(d.ordering.asserted);
    CHECK(d.ordering.holds);
    CHECK(d.sample.v_fermi > d.sample.v_kin);
    CHECK(d.sample.light_bound > 1.0);
    CHECK(d.sample.v_fermi < d.sample.light_bound);

    const ChartContext accel(ScaleFactorModel::power_law(3.0), 0);
    const ClassifiedSample a = classify_speeds(accel, 1.0, 0.25);
    CHECK(a.ordering.asserted);
    CHECK(a.ordering.holds);
    CHECK(a.sample.light_bound < 1.0);

    const ClassifiedSample m = classify_speeds(milne(), 2.0, 1.0);
    CHECK(m.ordering.holds);
    CHECK(std::fabs(m.sample.v_fermi - m.sample.v_kin) <= 1e-10);
    CHECK(std::fabs(m.sample.light_bound - 1.0) <= 1e-10);

    const ChartContext fluid(ScaleFactorModel::lambda_fluid(3.0, 1.0), 0);
    const ClassifiedSample f = classify_speeds(fluid, 2.0, 0.2);
    CHECK_FALSE(f.ordering.asserted);
}

TEST_CASE("proper distance sits inside the scaled Hubble distances") {
    const DistanceSandwich zero = distance_sandwich(milne(), {1.0, 0.0, {}, {}});
    CHECK(zero.lower == 0.0);
    CHECK(zero.rho == 0.0);
    CHECK(zero.upper == 0.0);

    // closed forms at t = 1, chi = 1: d = 1, tau = cosh 1, rho = sinh 1
    const DistanceSandwich s = distance_sandwich(milne(), {1.0, 1.0, {}, {}});
    CHECK(s.lower == doctest::Approx(1.0 / std::cosh(1.0)).epsilon(1e-9));
    CHECK(s.rho == doctest::Approx(std::sinh(1.0)).epsilon(1e-9));
    CHECK(s.upper == doctest::Approx(std::cosh(1.0)).epsilon(1e-9));
    CHECK(s.lower < s.rho);
    CHECK(s.rho < s.upper);

    const ChartContext quad(ScaleFactorModel::power_law(2.0), 0);
    CHECK_THROWS_AS(distance_sandwich(quad, {1.0, 2.0, {}, {}}),
                    fermirw::chart::OutOfChartError);
}
