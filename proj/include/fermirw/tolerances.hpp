#pragma once

#include <stdexcept>
#include <string>

namespace fermirw::numerics {

/// Shared numerical knobs. Every routine in the library takes these by
/// const reference; defaults are tight enough for the verification suite.
struct Tolerances {
    double quad_rel = 1e-10;        // relative quadrature target
    double quad_abs = 1e-12;        // absolute quadrature floor
    double root_rel = 1e-12;        // relative bracket width for root finding
    double tol_condition = 1e-9;    // slack on the a*addot/adot^2 <= 1 test
    int max_subdivisions = 60;      // max bisection depth per interval
    double tail_probe_factor = 2.0; // growth factor for improper-integral panels

    void validate() const {
        if (quad_rel <= 0 || quad_abs <= 0 || root_rel <= 0 || tol_condition <= 0 ||
            max_subdivisions <= 0 || tail_probe_factor <= 1.0) {
            throw std::invalid_argument("Tolerances: all fields must be positive "
                                        "(tail_probe_factor > 1)");
        }
    }
};

struct QuadResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long evaluations = 0;
};

class IntegrandError : public std::runtime_error {
public:
    explicit IntegrandError(const std::string& what) : std::runtime_error(what) {}
};

/// Subdivision budget ran out before the tolerance was met. Carries the
/// best estimate so callers can decide whether it is still usable.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, QuadResult best_estimate)
        : std::runtime_error(what), best(best_estimate) {}
    QuadResult best;
};

class NoRootError : public std::runtime_error {
public:
    explicit NoRootError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fermirw::numerics
