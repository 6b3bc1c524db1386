#pragma once

// Warped product metrics g = dt^2 + phi(t)^2 g_{S^{n-1}} over a finite
// radial interval [0, T], in arclength gauge.  The radial coordinate is
// named t throughout the library; every profile, grid, and report uses it.
//
// Three warp kinds are supported:
//   Round     phi(t) = sin(t) on [0, pi], the unit round sphere;
//   ModelSin  phi(t) = a*sin(b*t) on [0, pi/b];
//   Custom    phi from a sampled table spanning [0, T], evaluated by a
//             not-a-knot cubic spline (derivative columns honored if given).

#include <memory>
#include <string>
#include <vector>

#include "warpspec/radial_profile.hpp"

namespace warpspec {

enum class WarpKind { Round, ModelSin, Custom };

class WarpedMetric {
public:
    static WarpedMetric round_sphere(int n);
    static WarpedMetric model_sin(int n, double a, double b);
    // Table must span [0, T] with t.front() == 0; interior samples must be
    // positive.  Derivative columns, when present, are used for dphi/d2phi.
    static WarpedMetric custom(int n, RadialProfile warp);

    int dim() const { return n_; }
    double length() const { return T_; }
    WarpKind kind() const { return kind_; }

    double phi(double t) const;
    double dphi(double t) const;
    double d2phi(double t) const;

    // Scalar curvature of the warped product.  For sin warps the reduced
    // form (n-1) * (n b^2 + (n-2)(a^-2 - b^2)/sin^2(bt)) is used, which is
    // exact for the round sphere; Custom warps go through the general
    // expression in (phi, phi', phi'').  Throws std::domain_error when
    // phi(t) <= 0.
    double scalar_curvature(double t) const;

    // Mean curvature of the level sphere at t: (n-1) phi'/phi.
    double mean_curvature(double t) const;

    // Whether phi vanishes at both ends of [0, T].
    bool closes_at_ends() const;

    // ModelSin/Round parameters; throws std::logic_error for Custom warps.
    double sin_amplitude() const;
    double sin_frequency() const;

    // Sampled table for Custom warps, nullptr otherwise.
    const RadialProfile* table() const;

private:
    WarpedMetric() = default;

    struct CustomData {
        RadialProfile warp;
        ProfileInterp interp;
        explicit CustomData(RadialProfile w) : warp(std::move(w)), interp(warp) {}
    };

    int n_ = 3;
    double T_ = 0.0;
    WarpKind kind_ = WarpKind::Round;
    double a_ = 1.0, b_ = 1.0;
    std::shared_ptr<const CustomData> custom_;
};

struct CurvatureReport {
    std::vector<double> t;        // evaluation grid
    std::vector<double> R;        // scalar curvature samples
    std::vector<double> H;        // mean curvature samples
    double R_min = 0.0;
    double R_min_at = 0.0;
    double K_assumed = 1.0;       // sectional curvature of the sphere factor
    std::string note;
};

// Samples R and H over the given interior grid.  Every grid point must have
// phi > 0; violations raise std::domain_error.
CurvatureReport scalar_curvature_profile(const WarpedMetric& g,
                                         const std::vector<double>& grid);

// Radial Laplacian u'' + (n-1)(phi'/phi) u' evaluated on u's own grid,
// which must lie strictly inside (0, T).
RadialProfile radial_laplacian(const WarpedMetric& g, const RadialProfile& u);

struct DriftReport {
    double c1 = 0.0;          // fitted -c1/t coefficient near t = 0
    double c2 = 0.0;          // fitted +c2/(T-t) coefficient near t = T
    double residual1 = 0.0;   // rms fit residual, left window
    double residual2 = 0.0;   // rms fit residual, right window
    double expected = 0.0;    // 2(6-kappa)/(4-kappa) - (n-1)
    double window_lo = 0.0;   // left window [window_lo, window_hi]
    double window_hi = 0.0;
};

// Least-squares fit of the weighted-Laplacian drift
//   D(t) = Delta t - 2(6-kappa)/(4-kappa) * phi'/phi
// against {1/t, 1} near t = 0 and {1/(T-t), 1} near t = T, over windows
// [T/200, T/20] at each end.
DriftReport drift_asymptotics(const WarpedMetric& g, double kappa);

enum class Domination { Strict, Equal, No };

struct DominationReport {
    Domination verdict = Domination::No;
    double witness_t = 0.0;   // where the decisive margin was observed
    double margin = 0.0;      // phi1 - phi2 at the witness
    const char* name() const;  // "true_strict" | "true_equal" | "false"
};

// Pointwise comparison phi1 >= phi2 at equal arclength over [0, T2],
// requiring T1 >= T2.  Sampled on a dense interior grid.
DominationReport metric_dominates(const WarpedMetric& g1, const WarpedMetric& g2);

// Rebuilds arclength gauge for a metric w(t)^2 dt^2 + phi(t)^2 g_{S^{n-1}}
// given on a common grid: the result is a Custom warp over the arclength
// coordinate s(t) = integral of w.  Requires w >= 1 pointwise.
WarpedMetric normalize_arclength(int n, const RadialProfile& w,
                                 const RadialProfile& phi);

// Warp table CSV: header "t,phi[,phi_prime[,phi_second]]", one row per
// sample.  Reading accepts 2, 3, or 4 columns; writing emits every column
// the profile carries.  Parse failures raise std::invalid_argument.
RadialProfile read_warp_csv(const std::string& path);
void write_warp_csv(const std::string& path, const RadialProfile& warp);

// Dense table of a metric's warp with analytic derivative columns.
RadialProfile sample_warp(const WarpedMetric& g, std::size_t samples);

}  // namespace warpspec
