#include "fermirw/scale_factor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fermirw/root_find.hpp"

namespace fermirw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive_time(double t) {
    if (!(t > 0.0)) {
        throw std::domain_error("scale factor: t must be positive, got t=" +
                                std::to_string(t));
    }
}

// Fritsch-Carlson slopes for strictly increasing data: the interpolant is
// monotone on every segment.
std::vector<double> pchip_slopes(const std::vector<double>& t, const std::vector<double>& a) {
    const size_t n = t.size();
    std::vector<double> h(n - 1), delta(n - 1), d(n);
    for (size_t i = 0; i + 1 < n; ++i) {
        h[i] = t[i + 1] - t[i];
        delta[i] = (a[i + 1] - a[i]) / h[i];
    }
    for (size_t i = 1; i + 1 < n; ++i) {
        const double w1 = 2.0 * h[i] + h[i - 1];
        const double w2 = h[i] + 2.0 * h[i - 1];
        d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
    auto endpoint = [](double h0, double h1, double d0, double d1) {
        double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (s <= 0.0) s = 0.0;
        else if (s > 3.0 * d0) s = 3.0 * d0;
        return s;
    };
    if (n == 2) {
        d[0] = d[1] = delta[0];
    } else {
        d[0] = endpoint(h[0], h[1], delta[0], delta[1]);
        d[n - 1] = endpoint(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    }
    return d;
}

} // namespace

ScaleFactorModel ScaleFactorModel::power_law(double alpha) {
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("power_law: alpha must be positive");
    }
    ScaleFactorModel m;
    m.kind_ = ModelKind::PowerLaw;
    m.alpha_ = alpha;
    return m;
}

ScaleFactorModel ScaleFactorModel::lambda_fluid(double lambda, double gamma, double A) {
    if (!(lambda > 0.0) || !(A > 0.0) || !(gamma > 0.0 && gamma <= 2.0)) {
        throw std::invalid_argument(
            "lambda_fluid: requires lambda > 0, A > 0, gamma in (0, 2]");
    }
    ScaleFactorModel m;
    m.kind_ = ModelKind::LambdaFluid;
    m.lambda_ = lambda;
    m.gamma_ = gamma;
    m.amplitude_ = A;
    m.lf_c_ = 1.5 * std::sqrt(lambda / 3.0) * gamma;
    m.lf_m_ = 2.0 / (3.0 * gamma);
    return m;
}

ScaleFactorModel ScaleFactorModel::sinh_model() {
    ScaleFactorModel m;
    m.kind_ = ModelKind::Sinh;
    return m;
}

ScaleFactorModel ScaleFactorModel::log_model() {
    ScaleFactorModel m;
    m.kind_ = ModelKind::Log;
    return m;
}

ScaleFactorModel ScaleFactorModel::tabulated(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) {
        throw std::invalid_argument("tabulated: need at least two samples");
    }
    ScaleFactorModel m;
    m.kind_ = ModelKind::Tabulated;
    m.knots_t_.reserve(samples.size());
    m.knots_a_.reserve(samples.size());
    for (const auto& [t, a] : samples) {
        if (!m.knots_t_.empty() &&
            (t <= m.knots_t_.back() || a <= m.knots_a_.back())) {
            throw std::invalid_argument(
                "tabulated: samples must be strictly increasing in t and a");
        }
        m.knots_t_.push_back(t);
        m.knots_a_.push_back(a);
    }
    if (m.knots_t_.front() < 0.0) {
        throw std::invalid_argument("tabulated: samples must start at t >= 0");
    }
    m.knots_d_ = pchip_slopes(m.knots_t_, m.knots_a_);
    return m;
}

std::string ScaleFactorModel::name() const {
    std::ostringstream os;
    switch (kind_) {
    case ModelKind::PowerLaw: os << "power_law(alpha=" << alpha_ << ")"; break;
    case ModelKind::LambdaFluid:
        os << "lambda_fluid(lambda=" << lambda_ << ", gamma=" << gamma_
           << ", A=" << amplitude_ << ")";
        break;
    case ModelKind::Sinh: os << "sinh"; break;
    case ModelKind::Log: os << "log"; break;
    case ModelKind::Tabulated: os << "tabulated(n=" << knots_t_.size() << ")"; break;
    }
    return os.str();
}

double ScaleFactorModel::t_max() const {
    return kind_ == ModelKind::Tabulated ? knots_t_.back() : kInf;
}

ScaleFactorModel::Derivatives ScaleFactorModel::eval(double t) const {
    require_positive_time(t);
    switch (kind_) {
    case ModelKind::PowerLaw: {
        const double a = std::pow(t, alpha_);
        const double adot = alpha_ * std::pow(t, alpha_ - 1.0);
        const double addot = alpha_ * (alpha_ - 1.0) * std::pow(t, alpha_ - 2.0);
        return {a, adot, addot};
    }
    case ModelKind::LambdaFluid: {
        const double x = lf_c_ * t;
        const double sh = std::sinh(x), ch = std::cosh(x);
        const double a = amplitude_ * std::pow(sh, lf_m_);
        const double adot = amplitude_ * lf_m_ * lf_c_ * std::pow(sh, lf_m_ - 1.0) * ch;
        const double addot = amplitude_ * lf_m_ * lf_c_ * lf_c_ *
                             std::pow(sh, lf_m_ - 2.0) *
                             ((lf_m_ - 1.0) * ch * ch + sh * sh);
        return {a, adot, addot};
    }
    case ModelKind::Sinh:
        return {std::sinh(t), std::cosh(t), std::sinh(t)};
    case ModelKind::Log: {
        const double l = std::log1p(t);
        return {(t + 1.0) * l, l + 1.0, 1.0 / (t + 1.0)};
    }
    case ModelKind::Tabulated: {
        if (t > knots_t_.back() || t < knots_t_.front()) {
            throw std::out_of_range("tabulated: t=" + std::to_string(t) +
                                    " outside table range");
        }
        const auto it = std::upper_bound(knots_t_.begin(), knots_t_.end(), t);
        const size_t i = std::min<size_t>(knots_t_.size() - 2,
                                          it == knots_t_.begin() ? 0 : (it - knots_t_.begin() - 1));
        const double h = knots_t_[i + 1] - knots_t_[i];
        const double u = (t - knots_t_[i]) / h;
        const double a0 = knots_a_[i], a1 = knots_a_[i + 1];
        const double d0 = knots_d_[i] * h, d1 = knots_d_[i + 1] * h;
        // cubic Hermite in the local variable u
        const double c2 = 3.0 * (a1 - a0) - 2.0 * d0 - d1;
        const double c3 = 2.0 * (a0 - a1) + d0 + d1;
        const double a = a0 + u * (d0 + u * (c2 + u * c3));
        const double adot = (d0 + u * (2.0 * c2 + 3.0 * u * c3)) / h;
        const double addot = (2.0 * c2 + 6.0 * u * c3) / (h * h);
        return {a, adot, addot};
    }
    }
    throw std::logic_error("unreachable model kind");
}

double ScaleFactorModel::inverse_time(double s) const {
    if (!(s > 0.0)) {
        throw std::domain_error("inverse: s must be positive, got s=" + std::to_string(s));
    }
    switch (kind_) {
    case ModelKind::PowerLaw:
        return std::pow(s, 1.0 / alpha_);
    case ModelKind::LambdaFluid:
        return std::asinh(std::pow(s / amplitude_, 1.0 / lf_m_)) / lf_c_;
    case ModelKind::Sinh:
        return std::asinh(s);
    case ModelKind::Log: {
        // Solve y*log(y) = s for y = t+1 > 1. Starting above the root keeps
        // Newton on this convex function monotone.
        double y = 1.0 + s;
        for (int i = 0; i < 80; ++i) {
            const double ly = std::log(y);
            const double phi = y * ly - s;
            const double step = phi / (ly + 1.0);
            y -= step;
            if (std::fabs(step) <= 1e-16 * y) break;
        }
        return y - 1.0;
    }
    case ModelKind::Tabulated: {
        if (s < knots_a_.front() || s > knots_a_.back()) {
            throw std::domain_error("tabulated inverse: s=" + std::to_string(s) +
                                    " not attained by the table");
        }
        const auto it = std::upper_bound(knots_a_.begin(), knots_a_.end(), s);
        const size_t i = std::min<size_t>(knots_a_.size() - 2,
                                          it == knots_a_.begin() ? 0 : (it - knots_a_.begin() - 1));
        if (s == knots_a_[i]) return knots_t_[i];
        numerics::Tolerances tol;
        tol.root_rel = 1e-15;
        const double lo = std::max(knots_t_[i], std::numeric_limits<double>::min());
        return numerics::find_root_monotone(
            [&](double t) { return eval(t).a - s; }, lo, knots_t_[i + 1], tol);
    }
    }
    throw std::logic_error("unreachable model kind");
}

ScaleFactorModel::InverseDerivatives ScaleFactorModel::inverse(double s) const {
    const double t = inverse_time(s);
    const Derivatives d = eval(t);
    const double bdot = 1.0 / d.adot;
    const double bddot = -d.addot / (d.adot * d.adot * d.adot);
    return {t, bdot, bddot};
}

double ScaleFactorModel::bdot(double s) const { return inverse(s).bdot; }
double ScaleFactorModel::bddot(double s) const { return inverse(s).bddot; }

double ScaleFactorModel::hubble(double t) const {
    const Derivatives d = eval(t);
    return d.adot / d.a;
}

double ScaleFactorModel::deceleration(double t) const {
    const Derivatives d = eval(t);
    return -d.a * d.addot / (d.adot * d.adot);
}

double q_from_densities(double omega_m, double omega_r, double omega_lambda) {
    return 0.5 * (omega_m - 2.0 * omega_lambda + 2.0 * omega_r);
}

RegularityReport regularity_check(const ScaleFactorModel& model, double t_max,
                                  int n_probe, double tol_condition) {
    if (!(t_max > 0.0) || n_probe < 2) {
        throw std::invalid_argument("regularity_check: t_max > 0 and n_probe >= 2 required");
    }
    if (model.kind() == ModelKind::Tabulated) {
        t_max = std::min(t_max, model.t_max());
    }

    RegularityReport report;
    const double t_lo = t_max * 1e-8;
    const double ratio = std::pow(t_max / t_lo, 1.0 / (n_probe - 1));
    report.probe_grid.reserve(n_probe);
    for (int i = 0; i < n_probe; ++i) {
        report.probe_grid.push_back(t_lo * std::pow(ratio, i));
    }
    report.probe_grid.back() = t_max;

    // Big bang: a(0) = 0. Closed forms satisfy it by construction; tables
    // must carry a (0, 0) first sample.
    if (model.kind() == ModelKind::Tabulated) {
        report.big_bang_ok = model.knots_t().front() <= 1e-12 &&
                             std::fabs(model.knots_a().front()) <= 1e-12;
    } else {
        report.big_bang_ok = true;
    }

    report.monotone_ok = true;
    report.max_condition_value = -kInf;
    for (double t : report.probe_grid) {
        ScaleFactorModel::Derivatives d;
        try {
            d = model.eval(t);
        } catch (const std::exception&) {
            report.monotone_ok = false;
            continue;
        }
        if (!(d.adot > 0.0) || !std::isfinite(d.a) || !std::isfinite(d.adot)) {
            report.monotone_ok = false;
            continue;
        }
        const double condition = d.a * d.addot / (d.adot * d.adot);
        report.max_condition_value = std::max(report.max_condition_value, condition);
        if (condition > 1.0 + tol_condition) {
            report.condition_violations.emplace_back(t, condition);
        }
    }

    report.is_regular = report.big_bang_ok && report.monotone_ok &&
                        report.condition_violations.empty() &&
                        report.max_condition_value <= 1.0 + tol_condition;
    return report;
}

} // namespace fermirw
