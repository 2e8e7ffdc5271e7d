#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fermirw/tolerances.hpp"

namespace fermirw {

enum class ModelKind { PowerLaw, LambdaFluid, Sinh, Log, Tabulated };

/// Expansion history a(t) of a spatially homogeneous universe, with a big
/// bang at t = 0 (a(0) = 0) and a strictly increasing a. Immutable after
/// construction; all evaluation is const and thread-safe.
///
/// Closed-form kinds carry exact derivatives. The tabulated kind uses a
/// shape-preserving monotone cubic (so strict monotonicity survives
/// interpolation); its second derivative is the local cubic's and is only
/// piecewise continuous, which limits the accuracy of quantities built
/// from addot for tabulated data.
class ScaleFactorModel {
public:
    static ScaleFactorModel power_law(double alpha);
    static ScaleFactorModel lambda_fluid(double lambda, double gamma, double A = 1.0);
    static ScaleFactorModel sinh_model();
    static ScaleFactorModel log_model();
    static ScaleFactorModel tabulated(std::vector<std::pair<double, double>> samples);

    ModelKind kind() const { return kind_; }
    std::string name() const;

    struct Derivatives {
        double a, adot, addot;
    };
    /// a(t), adot(t), addot(t) for t > 0 (and t <= t_max for tabulated data).
    Derivatives eval(double t) const;
    double a(double t) const { return eval(t).a; }
    double adot(double t) const { return eval(t).adot; }

    struct InverseDerivatives {
        double b, bdot, bddot;
    };
    /// The inverse function b(s) (the unique t with a(t) = s) and its
    /// derivatives, obtained from the derivatives of a via
    ///   bdot = 1/adot(b),  bddot = -addot(b)/adot(b)^3,
    /// never by differencing b.
    InverseDerivatives inverse(double s) const;
    double b(double s) const { return inverse_time(s); }
    double bdot(double s) const;
    double bddot(double s) const;

    double hubble(double t) const;       // adot/a
    double deceleration(double t) const; // -a*addot/adot^2

    /// Upper end of the evaluable time range (infinity for closed forms).
    double t_max() const;

    // parameter accessors for serialization
    double alpha() const { return alpha_; }
    double lambda() const { return lambda_; }
    double gamma() const { return gamma_; }
    double amplitude() const { return amplitude_; }
    const std::vector<double>& knots_t() const { return knots_t_; }
    const std::vector<double>& knots_a() const { return knots_a_; }

private:
    ScaleFactorModel() = default;
    double inverse_time(double s) const;

    ModelKind kind_ = ModelKind::PowerLaw;
    double alpha_ = 1.0;                       // PowerLaw
    double lambda_ = 0.0, gamma_ = 0.0;        // LambdaFluid
    double amplitude_ = 1.0;                   // LambdaFluid A
    double lf_c_ = 0.0, lf_m_ = 0.0;           // cached sinh(c t)^m parameters
    std::vector<double> knots_t_, knots_a_, knots_d_; // Tabulated (d = slopes)
};

/// q = (Omega_M - 2*Omega_Lambda + 2*Omega_R) / 2.
double q_from_densities(double omega_m, double omega_r, double omega_lambda);

struct RegularityReport {
    bool is_regular = false;
    double max_condition_value = 0.0; // sup of a*addot/adot^2 over the grid
    std::vector<std::pair<double, double>> condition_violations; // (t, value)
    bool big_bang_ok = false;
    bool monotone_ok = false;
    std::vector<double> probe_grid;
};

/// Probes a*addot/adot^2 <= 1 on a log-spaced grid over (0, t_max], along
/// with the big-bang and monotonicity requirements. The grid is log-spaced
/// because the interesting behavior sits near t = 0.
RegularityReport regularity_check(const ScaleFactorModel& model, double t_max,
                                  int n_probe,
                                  double tol_condition = numerics::Tolerances{}.tol_condition);

} // namespace fermirw
