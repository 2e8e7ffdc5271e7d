#include "fermirw/chart.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fermirw/root_find.hpp"

namespace fermirw::chart {

using numerics::ChartKernel;
using numerics::QuadResult;

ChartContext::ChartContext(ScaleFactorModel model, int curvature_k,
                           numerics::Tolerances tol, double regularity_probe_max)
    : model_(std::move(model)), k_(curvature_k), tol_(tol) {
    tol_.validate();
    if (k_ != 0 && k_ != -1) {
        throw std::invalid_argument("ChartContext: curvature index k must be 0 or -1");
    }
    regularity_ = regularity_check(model_, regularity_probe_max, 128, tol_.tol_condition);
    if (!regularity_.is_regular) {
        std::ostringstream os;
        os << "ChartContext: scale factor " << model_.name()
           << " fails the regularity probe (big_bang_ok=" << regularity_.big_bang_ok
           << ", monotone_ok=" << regularity_.monotone_ok
           << ", max_condition=" << regularity_.max_condition_value << ")";
        throw std::invalid_argument(os.str());
    }
}

HorizonValue ChartContext::chi_horizon(double t0) const {
    if (!(t0 > 0.0)) {
        throw std::domain_error("chi_horizon: t0 must be positive");
    }
    if (std::isfinite(model_.t_max())) {
        throw std::domain_error(
            "chi_horizon: undefined for a range-limited (tabulated) scale factor");
    }
    {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        const auto it = horizon_memo_.find(t0);
        if (it != horizon_memo_.end()) return it->second;
    }
    const numerics::TailResult tail = numerics::integrate_tail(
        [this](double t) { return 1.0 / model_.a(t); }, t0, tol_);
    HorizonValue value;
    if (tail.divergent) {
        value = {false, 0.0, 0.0};
    } else {
        value = {true, tail.quad.value, tail.quad.abs_error_estimate};
    }
    std::lock_guard<std::mutex> lock(memo_mutex_);
    horizon_memo_.emplace(t0, value);
    return value;
}

QuadResult ChartContext::chi_t0_q(double t0, double tau) const {
    if (!(t0 > 0.0) || tau < t0) {
        throw std::domain_error("chi_t0: requires 0 < t0 <= tau");
    }
    if (tau == t0) return {0.0, 0.0, 0};
    return numerics::integrate_chart(ChartKernel::Chi, model_, tau, t0, tol_);
}

double ChartContext::chi_t0(double t0, double tau) const {
    return chi_t0_q(t0, tau).value;
}

QuadResult ChartContext::proper_length_q(double tau, double t0) const {
    if (!(tau > 0.0) || !(t0 >= 0.0) || t0 >= tau) {
        throw std::domain_error("proper_length: requires 0 <= t0 < tau");
    }
    return numerics::integrate_chart(ChartKernel::Rho, model_, tau, t0, tol_);
}

double ChartContext::proper_length(double tau, double t0) const {
    return proper_length_q(tau, t0).value;
}

QuadResult ChartContext::max_radius_q(double tau) const {
    if (!(tau > 0.0)) {
        throw std::domain_error("max_radius: tau must be positive");
    }
    {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        const auto it = radius_memo_.find(tau);
        if (it != radius_memo_.end()) return it->second;
    }
    const QuadResult result = proper_length_q(tau, 0.0);
    std::lock_guard<std::mutex> lock(memo_mutex_);
    radius_memo_.emplace(tau, result);
    return result;
}

double ChartContext::max_radius(double tau) const { return max_radius_q(tau).value; }

double ChartContext::time_at_sigma(double tau, double sigma) const {
    if (!(tau > 0.0) || !(sigma >= 1.0)) {
        throw std::domain_error("time_at_sigma: requires tau > 0 and sigma >= 1");
    }
    if (sigma == 1.0) return tau;
    return model_.b(model_.a(tau) / std::sqrt(sigma));
}

CurvaturePoint ChartContext::geodesic_point(double tau, double sigma) const {
    if (!(sigma >= 1.0)) {
        throw std::domain_error("geodesic_point: sigma must be >= 1");
    }
    if (sigma == 1.0) return {tau, 0.0, {}, {}};
    const double t = time_at_sigma(tau, sigma);
    const double chi = chi_t0(t, tau);
    return {t, chi, {}, {}};
}

SigmaParam ChartContext::sigma_from_rho(double tau, double rho) const {
    if (!(rho >= 0.0)) {
        throw std::domain_error("sigma_from_rho: rho must be non-negative");
    }
    if (rho == 0.0) return {1.0};
    const double rho_max = max_radius(tau);
    if (rho >= rho_max) {
        std::ostringstream os;
        os << "sigma_from_rho: rho=" << rho << " is outside the spaceslice (radius "
           << rho_max << " at tau=" << tau << ")";
        throw OutOfChartError(os.str());
    }
    const auto objective = [&](double sigma) {
        const double t0 = time_at_sigma(tau, sigma);
        if (t0 >= tau) return -rho;
        return proper_length(tau, t0) - rho;
    };
    const double sigma = numerics::find_root_monotone(objective, 1.0,
                                                      numerics::kOpenBracket, tol_);
    return {std::max(sigma, 1.0)};
}

FermiPoint ChartContext::to_fermi(const CurvaturePoint& p) const {
    if (!(p.t > 0.0) || !(p.chi >= 0.0)) {
        throw std::domain_error("to_fermi: requires t > 0 and chi >= 0");
    }
    if (p.chi == 0.0) return {p.t, 0.0, p.theta, p.phi};

    const bool range_limited = std::isfinite(model_.t_max());
    if (range_limited) {
        if (p.t >= model_.t_max()) {
            throw OutOfChartError(
                "to_fermi: point not reachable within the model's tabulated time range");
        }
    } else {
        const HorizonValue horizon = chi_horizon(p.t);
        if (horizon.finite && p.chi >= horizon.chi) {
            std::ostringstream os;
            os << "to_fermi: chi=" << p.chi << " is at or beyond the event horizon ("
               << horizon.chi << " at t=" << p.t << ")";
            throw BeyondHorizonError(os.str());
        }
    }
    const auto objective = [&](double tau) { return chi_t0(p.t, tau) - p.chi; };
    double tau = 0.0;
    try {
        tau = numerics::find_root_monotone(
            objective, p.t, range_limited ? model_.t_max() : numerics::kOpenBracket,
            tol_);
    } catch (const numerics::NoRootError&) {
        throw OutOfChartError(
            "to_fermi: point not reachable within the model's tabulated time range");
    }
    const double rho = proper_length(tau, p.t);
    return {tau, rho, p.theta, p.phi};
}

CurvaturePoint ChartContext::from_fermi(const FermiPoint& p) const {
    if (!(p.tau > 0.0)) {
        throw std::domain_error("from_fermi: tau must be positive");
    }
    if (p.rho == 0.0) return {p.tau, 0.0, p.theta, p.phi};
    const SigmaParam sigma = sigma_from_rho(p.tau, p.rho); // rejects rho >= radius
    CurvaturePoint out = geodesic_point(p.tau, sigma.sigma);
    out.theta = p.theta;
    out.phi = p.phi;
    return out;
}

InChart ChartContext::in_chart(const CurvaturePoint& p) const {
    if (!(p.t > 0.0) || !std::isfinite(p.t) || !std::isfinite(p.chi) || p.chi < 0.0) {
        return {false, 0.0};
    }
    if (std::isfinite(model_.t_max())) {
        // no horizon notion for a range-limited table; bounded by reachability
        if (p.t >= model_.t_max()) return {false, 0.0};
        const double reach = chi_t0(p.t, model_.t_max());
        return {p.chi < reach, reach - p.chi};
    }
    const HorizonValue horizon = chi_horizon(p.t);
    if (!horizon.finite) {
        return {true, std::numeric_limits<double>::infinity()};
    }
    return {p.chi < horizon.chi, horizon.chi - p.chi};
}

InChart ChartContext::in_chart(const FermiPoint& p) const {
    if (!(p.tau > 0.0) || !std::isfinite(p.tau) || !std::isfinite(p.rho) || p.rho < 0.0) {
        return {false, 0.0};
    }
    const double rho_max = max_radius(p.tau);
    return {p.rho < rho_max, rho_max - p.rho};
}

} // namespace fermirw::chart
