#include "fermirw/quadrature.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace fermirw::numerics {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEstimate {
    double value;
    double error;
    double resabs;
};

PanelEstimate gk15(const std::function<double(double)>& f, double a, double b,
                   long& evaluations) {
    const double centr = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);

    auto eval = [&](double x) {
        const double y = f(x);
        ++evaluations;
        if (!std::isfinite(y)) {
            throw IntegrandError("integrate_smooth: non-finite integrand value at x=" +
                                 std::to_string(x));
        }
        return y;
    };

    double fv1[7], fv2[7];
    const double fc = eval(centr);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::fabs(resk);
    for (int j = 0; j < 7; ++j) {
        const double absc = hlgth * kXgk[j];
        fv1[j] = eval(centr - absc);
        fv2[j] = eval(centr + absc);
        const double fsum = fv1[j] + fv2[j];
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
        resk += kWgk[j] * fsum;
        resabs += kWgk[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
    }
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
    }

    const double result = resk * hlgth;
    resabs *= std::fabs(hlgth);
    resasc *= std::fabs(hlgth);
    double abserr = std::fabs((resk - resg) * hlgth);
    if (resasc != 0.0 && abserr != 0.0) {
        abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
    }
    const double uflow = DBL_MIN;
    const double epmach = DBL_EPSILON;
    if (resabs > uflow / (50.0 * epmach)) {
        abserr = std::max(epmach * 50.0 * resabs, abserr);
    }
    return {result, abserr, resabs};
}

struct Interval {
    double lo, hi, value, error;
    int depth;
    bool operator<(const Interval& other) const { return error < other.error; }
};

} // namespace

QuadResult integrate_smooth(const std::function<double(double)>& f, double lo,
                            double hi, const Tolerances& tol) {
    tol.validate();
    if (!(lo < hi)) {
        throw std::invalid_argument("integrate_smooth: requires lo < hi");
    }

    constexpr int kMaxIntervals = 4000;
    long evaluations = 0;

    const PanelEstimate first = gk15(f, lo, hi, evaluations);
    std::priority_queue<Interval> queue;
    queue.push({lo, hi, first.value, first.error, 0});
    std::vector<Interval> settled; // intervals at max depth, no longer split
    double total_value = first.value;
    double total_error = first.error;
    int intervals = 1;

    auto converged = [&] {
        return total_error <= std::max(tol.quad_abs, tol.quad_rel * std::fabs(total_value));
    };

    while (!converged()) {
        if (intervals >= kMaxIntervals || queue.empty()) {
            throw ConvergenceError("integrate_smooth: subdivision budget exhausted",
                                   {total_value, total_error, evaluations});
        }
        Interval worst = queue.top();
        queue.pop();
        if (worst.depth >= tol.max_subdivisions) {
            settled.push_back(worst);
            continue;
        }
        const double mid = 0.5 * (worst.lo + worst.hi);
        const PanelEstimate left = gk15(f, worst.lo, mid, evaluations);
        const PanelEstimate right = gk15(f, mid, worst.hi, evaluations);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        queue.push({worst.lo, mid, left.value, left.error, worst.depth + 1});
        queue.push({mid, worst.hi, right.value, right.error, worst.depth + 1});
        ++intervals;
    }

    // Re-sum panels left-to-right; cheaper than the incremental total drifting.
    std::vector<Interval> panels = std::move(settled);
    panels.reserve(panels.size() + queue.size());
    while (!queue.empty()) {
        panels.push_back(queue.top());
        queue.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    double value = 0.0, error = 0.0;
    for (const Interval& p : panels) {
        value += p.value;
        error += p.error;
    }
    return {value, error, evaluations};
}

TailResult integrate_tail(const std::function<double(double)>& f, double lo,
                          const Tolerances& tol) {
    tol.validate();
    if (!(lo > 0.0)) {
        throw std::invalid_argument("integrate_tail: requires lo > 0");
    }

    constexpr int kConfirmWindow = 8;
    constexpr int kMaxPanels = 1100;
    constexpr double kRangeCap = 1e290;

    Tolerances panel_tol = tol;
    panel_tol.quad_abs = tol.quad_abs / 8.0;

    double a = lo;
    double sum = 0.0;
    double err = 0.0;
    long evaluations = 0;
    double prev_panel = -1.0;
    double last_ratio = 0.0;
    int bad_ratio_count = 0;

    for (int j = 0; j < kMaxPanels; ++j) {
        const double b = a * tol.tail_probe_factor;
        if (b > kRangeCap) {
            return {true, {sum, err, evaluations}}; // not summable in double range
        }
        const QuadResult panel = integrate_smooth(f, a, b, panel_tol);
        evaluations += panel.evaluations;
        sum += panel.value;
        err += panel.abs_error_estimate;

        if (prev_panel > 0.0) {
            last_ratio = panel.value / prev_panel;
            if (last_ratio >= 1.0 - tol.quad_rel) {
                if (++bad_ratio_count >= kConfirmWindow) {
                    return {true, {sum, err, evaluations}};
                }
            } else {
                bad_ratio_count = 0;
            }
        }
        prev_panel = panel.value;

        if (std::fabs(panel.value) < tol.quad_abs) {
            // Geometric remainder bound from the observed decay.
            double remainder = std::fabs(panel.value);
            if (last_ratio > 0.0 && last_ratio < 0.9) {
                remainder = std::fabs(panel.value) * last_ratio / (1.0 - last_ratio);
            }
            return {false, {sum, err + remainder, evaluations}};
        }
        a = b;
    }
    return {true, {sum, err, evaluations}};
}

} // namespace fermirw::numerics
