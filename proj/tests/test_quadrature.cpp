#include <doctest.h>

#include <cmath>

#include "fermirw/quadrature.hpp"

using fermirw::numerics::ConvergenceError;
using fermirw::numerics::IntegrandError;
using fermirw::numerics::integrate_smooth;
using fermirw::numerics::integrate_tail;
using fermirw::numerics::QuadResult;
using fermirw::numerics::TailResult;
using fermirw::numerics::Tolerances;

namespace {
const Tolerances kTol{};
constexpr double kPi = 3.141592653589793;
} // namespace

TEST_CASE("integrates sin over a half period") {
    const QuadResult r = integrate_smooth([](double x) { return std::sin(x); }, 0.0, kPi, kTol);
    CHECK(std::fabs(r.value - 2.0) <= 1e-12);
    CHECK(r.evaluations > 0);
    CHECK(r.abs_error_estimate >= 0.0);
}

TEST_CASE("integrates a monomial exactly") {
    const QuadResult r = integrate_smooth([](double x) { return x * x; }, 0.0, 1.0, kTol);
    CHECK(std::fabs(r.value - 1.0 / 3.0) <= 1e-14);
}

TEST_CASE("regularized endpoint-singular integral") {
    // integral over [0,1] of 1/(sqrt(1-x^2) (1 + sqrt(1-x^2))) dx; x = sin(theta)
    // turns it into integral over [0, pi/2] of 1/(1 + cos(theta)), which is 1.
    const QuadResult r = integrate_smooth(
        [](double theta) { return 1.0 / (1.0 + std::cos(theta)); }, 0.0, kPi / 2.0, kTol);
    CHECK(std::fabs(r.value - 1.0) <= 1e-12);
}

TEST_CASE("error estimate covers the true error on a hard integrand") {
    // sqrt has unbounded derivatives at 0; the estimate must stay honest.
    const QuadResult r =
        integrate_smooth([](double x) { return std::sqrt(x); }, 0.0, 1.0, kTol);
    CHECK(std::fabs(r.value - 2.0 / 3.0) <= std::max(r.abs_error_estimate, 1e-12));
}

TEST_CASE("non-finite integrand values are rejected") {
    CHECK_THROWS_AS(integrate_smooth([](double x) { return std::log(x - 0.5); }, 0.0, 1.0, kTol),
                    IntegrandError);
}

TEST_CASE("subdivision budget exhaustion carries the best estimate") {
    Tolerances tight = kTol;
    tight.max_subdivisions = 4;
    tight.quad_rel = 1e-14;
    tight.quad_abs = 1e-16;
    try {
        integrate_smooth([](double x) { return std::pow(std::fabs(x - 0.3), -0.9); },
                         0.0, 1.0, tight);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.best.evaluations > 0);
        CHECK(e.best.value > 0.0);
    }
}

TEST_CASE("improper integral of an inverse square") {
    const TailResult r = integrate_tail([](double t) { return 1.0 / (t * t); }, 1.0, kTol);
    REQUIRE_FALSE(r.divergent);
    CHECK(std::fabs(r.quad.value - 1.0) <= 1e-9);
}

TEST_CASE("harmonic tail is declared divergent") {
    const TailResult r = integrate_tail([](double t) { return 1.0 / t; }, 1.0, kTol);
    CHECK(r.divergent);
}

TEST_CASE("power tails converge exactly when the exponent exceeds one") {
    for (double p : {0.5, 1.0, 1.5, 2.0}) {
        const TailResult r = integrate_tail(
            [p](double t) { return std::pow(t, -p); }, 1.0, kTol);
        CHECK(r.divergent == (p <= 1.0));
        if (!r.divergent) {
            CHECK(std::fabs(r.quad.value - 1.0 / (p - 1.0)) <= 1e-8);
        }
    }
}

TEST_CASE("hyperbolic cosecant tail matches its closed form") {
    const TailResult r =
        integrate_tail([](double t) { return 1.0 / std::sinh(t); }, 1.0, kTol);
    REQUIRE_FALSE(r.divergent);
    const double expected = 2.0 * std::atanh(std::exp(-1.0));
    CHECK(std::fabs(r.quad.value - expected) <= 1e-10);
}
