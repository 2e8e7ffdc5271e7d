#include "fermirw/chart_integrals.hpp"

#include <algorithm>
#include <cmath>

namespace fermirw::numerics {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

void require_range(const ScaleFactorModel& model, double tau, double t_lo) {
    if (!(tau > 0.0) || !(t_lo >= 0.0) || !(t_lo < tau)) {
        throw std::domain_error("chart integral: requires 0 <= t_lo < tau");
    }
    if (!std::isfinite(model.a(tau))) {
        throw std::domain_error("chart integral: scale factor overflows at tau=" +
                                std::to_string(tau));
    }
}

} // namespace

double theta_lower(const ScaleFactorModel& model, double tau, double t_lo) {
    require_range(model, tau, t_lo);
    if (t_lo == 0.0) return 0.0;
    const double ratio = model.a(t_lo) / model.a(tau);
    return std::asin(std::clamp(ratio, 0.0, 1.0));
}

QuadResult integrate_chart(ChartKernel kernel, const ScaleFactorModel& model,
                           double tau, double t_lo, const Tolerances& tol) {
    require_range(model, tau, t_lo);
    if (kernel == ChartKernel::Chi && t_lo == 0.0) {
        throw std::domain_error(
            "chart integral: radial-coordinate kernel may diverge at t_lo = 0");
    }
    const double a_tau = model.a(tau);
    const double theta0 = theta_lower(model, tau, t_lo);
    if (theta0 >= kHalfPi) return {0.0, 0.0, 0};

    if (kernel == ChartKernel::Rho) {
        return integrate_smooth(
            [&](double theta) {
                const double s = std::sin(theta);
                return a_tau * s * model.bdot(a_tau * s);
            },
            theta0, kHalfPi, tol);
    }
    return integrate_smooth(
        [&](double theta) {
            const double s = std::sin(theta);
            return model.bdot(a_tau * s) / s;
        },
        theta0, kHalfPi, tol);
}

QuadResult integrate_bddot(const ScaleFactorModel& model, double tau,
                           double t_lo, const Tolerances& tol) {
    require_range(model, tau, t_lo);
    const double a_tau = model.a(tau);
    const double theta0 = theta_lower(model, tau, t_lo);
    if (theta0 >= kHalfPi) return {0.0, 0.0, 0};
    return integrate_smooth(
        [&](double theta) { return model.bddot(a_tau * std::sin(theta)); },
        theta0, kHalfPi, tol);
}

QuadResult integrate_hubble_deviation(const ScaleFactorModel& model, double tau,
                                      double t_lo, const Tolerances& tol) {
    require_range(model, tau, t_lo);
    if (t_lo == 0.0) {
        throw std::domain_error("hubble deviation integral: requires t_lo > 0");
    }
    const double a_tau = model.a(tau);
    const double a_lo = model.a(t_lo);
    const double theta0 = theta_lower(model, tau, t_lo);
    if (theta0 >= kHalfPi) return {0.0, 0.0, 0};
    return integrate_smooth(
        [&](double theta) {
            const double s = a_tau * std::sin(theta);
            return -model.bddot(s) * (s * s - a_lo * a_lo);
        },
        theta0, kHalfPi, tol);
}

} // namespace fermirw::numerics
