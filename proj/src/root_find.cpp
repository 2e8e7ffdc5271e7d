#include "fermirw/root_find.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

namespace fermirw::numerics {

namespace {

double checked_eval(const std::function<double(double)>& f, double x) {
    const double y = f(x);
    if (std::isnan(y)) {
        throw IntegrandError("find_root_monotone: NaN function value at x=" +
                             std::to_string(x));
    }
    return y;
}

/// Classic Brent: inverse quadratic interpolation with bisection fallback.
/// Requires fa * fb <= 0 on entry.
double brent(const std::function<double(double)>& f, double a, double b,
             double fa, double fb, double rel_tol) {
    constexpr int kMaxIter = 200;
    double c = a, fc = fa;
    double d = b - a, e = d;

    for (int iter = 0; iter < kMaxIter; ++iter) {
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 =
            2.0 * DBL_EPSILON * std::fabs(b) + 0.5 * rel_tol * std::max(1.0, std::fabs(b));
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) return b;

        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::fabs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = checked_eval(f, b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    return b;
}

} // namespace

double find_root_monotone(const std::function<double(double)>& f, double lo,
                          double hi, const Tolerances& tol) {
    tol.validate();
    double fa = checked_eval(f, lo);
    if (fa == 0.0) return lo;

    double a = lo, b, fb;
    if (hi == kOpenBracket) {
        constexpr double kHiCap = 1e300;
        const double growth = tol.tail_probe_factor;
        b = (std::fabs(lo) > 0.0) ? lo * growth : 1.0;
        if (b <= a) b = a + 1.0;
        fb = checked_eval(f, b);
        while ((fb > 0.0) == (fa > 0.0)) {
            a = b;
            fa = fb;
            b *= growth;
            if (b > kHiCap) {
                throw NoRootError("find_root_monotone: no sign change within growth budget");
            }
            fb = checked_eval(f, b);
        }
    } else {
        if (!(lo < hi)) {
            throw std::invalid_argument("find_root_monotone: requires lo < hi");
        }
        b = hi;
        fb = checked_eval(f, b);
        if (fb == 0.0) return b;
        if ((fa > 0.0) == (fb > 0.0)) {
            throw NoRootError("find_root_monotone: bracket endpoints do not straddle zero");
        }
    }
    return brent(f, a, b, fa, fb, tol.root_rel);
}

} // namespace fermirw::numerics
