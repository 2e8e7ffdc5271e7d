#pragma once

#include <map>
#include <mutex>
#include <optional>

#include "fermirw/chart_integrals.hpp"
#include "fermirw/scale_factor.hpp"

namespace fermirw::chart {

/// (t, chi) with optional angular coordinates, t cosmological time.
struct CurvaturePoint {
    double t = 0.0;
    double chi = 0.0;
    std::optional<double> theta, phi;
};

/// (tau, rho) with optional angular coordinates, tau observer proper time,
/// rho proper distance along the orthogonal spacelike geodesic.
struct FermiPoint {
    double tau = 0.0;
    double rho = 0.0;
    std::optional<double> theta, phi;
};

/// Geodesic parameter sigma = (a(tau)/a(t))^2 >= 1; sigma == 1 on the
/// observer worldline.
struct SigmaParam {
    double sigma = 1.0;
};

struct HorizonValue {
    bool finite = false;
    double chi = 0.0;       // meaningful only when finite
    double abs_error = 0.0;
};

struct InChart {
    bool inside = false;
    double margin = 0.0; // distance to the boundary in the native coordinate
};

class OutOfChartError : public std::domain_error {
public:
    explicit OutOfChartError(const std::string& what) : std::domain_error(what) {}
};

class BeyondHorizonError : public OutOfChartError {
public:
    explicit BeyondHorizonError(const std::string& what) : OutOfChartError(what) {}
};

/// Immutable environment for the coordinate transforms of one comoving
/// observer: scale factor model, spatial curvature index k in {0, -1},
/// and tolerances. Horizon and spaceslice-radius values are memoized
/// (exact argument keys, mutex guarded) since every boundary test uses them.
///
/// Construction runs a regularity probe of the model and rejects scale
/// factors violating the admissibility condition.
class ChartContext {
public:
    ChartContext(ScaleFactorModel model, int curvature_k,
                 numerics::Tolerances tol = {}, double regularity_probe_max = 100.0);

    const ScaleFactorModel& model() const { return model_; }
    int curvature_k() const { return k_; }
    const numerics::Tolerances& tol() const { return tol_; }
    const RegularityReport& regularity() const { return regularity_; }

    /// Comoving radius of the event horizon at time t0 (improper integral
    /// of 1/a); not finite when light from arbitrarily far away eventually
    /// arrives.
    HorizonValue chi_horizon(double t0) const;

    /// chi-coordinate reached at cosmological time t0 by the spacelike
    /// geodesic orthogonal to the worldline at proper time tau. Zero at
    /// tau == t0, strictly increasing in tau, bounded by chi_horizon(t0).
    double chi_t0(double t0, double tau) const;
    numerics::QuadResult chi_t0_q(double t0, double tau) const;

    /// Proper length along the geodesic from the worldline at tau back to
    /// cosmological time t0; t0 == 0 gives the full spaceslice radius.
    double proper_length(double tau, double t0) const;
    numerics::QuadResult proper_length_q(double tau, double t0) const;

    /// Proper radius of the spaceslice at proper time tau (memoized).
    double max_radius(double tau) const;
    numerics::QuadResult max_radius_q(double tau) const;

    /// Point on the orthogonal spacelike geodesic at parameter sigma >= 1:
    /// t = b(a(tau)/sqrt(sigma)), chi from the radial-coordinate integral.
    CurvaturePoint geodesic_point(double tau, double sigma) const;

    /// Cosmological time at parameter sigma, t = b(a(tau)/sqrt(sigma)).
    double time_at_sigma(double tau, double sigma) const;

    /// Inverts the proper-length function rho_tau(sigma) (smooth, increasing)
    /// at fixed tau. Rejects rho >= max_radius(tau) before bracketing: the
    /// root does not exist beyond the boundary and the bracket search would
    /// run away.
    SigmaParam sigma_from_rho(double tau, double rho) const;

    /// Curvature -> Fermi coordinates. Defined strictly inside the horizon;
    /// solves chi_t0(t, tau) = chi for tau, then measures proper length.
    FermiPoint to_fermi(const CurvaturePoint& p) const;

    /// Fermi -> curvature coordinates; inverse of to_fermi on the open chart.
    CurvaturePoint from_fermi(const FermiPoint& p) const;

    /// Open-boundary membership tests with the distance to the boundary in
    /// the native radial coordinate.
    InChart in_chart(const CurvaturePoint& p) const;
    InChart in_chart(const FermiPoint& p) const;

private:
    ScaleFactorModel model_;
    int k_;
    numerics::Tolerances tol_;
    RegularityReport regularity_;

    mutable std::mutex memo_mutex_;
    mutable std::map<double, HorizonValue> horizon_memo_;
    mutable std::map<double, numerics::QuadResult> radius_memo_;
};

} // namespace fermirw::chart
