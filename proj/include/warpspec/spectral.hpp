#pragma once

// Radial eigenvalue problem -Delta u + (c R - mu) u = lambda u with the
// weighted measure phi^{n-1} dt, discretized by a conservative second-order
// finite-difference scheme on the truncated interval [eps, T - eps] with
// Dirichlet ends.  The discrete problem is a symmetric tridiagonal pencil
// (A, M) with diagonal mass M; its smallest eigenpair is found by Sturm
// sequence bisection followed by inverse iteration.  lambda_c runs a
// refinement schedule in (N, eps) and extrapolates.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "warpspec/closedform.hpp"
#include "warpspec/metric.hpp"

namespace warpspec {

// Raised when an iteration or a refinement schedule fails its convergence
// diagnostics; mapped to a dedicated process exit code by the CLI.
struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Discretization {
    int n = 3;              // ambient dimension
    int ell = 0;            // angular sector index
    double eps = 0.0;       // truncation, domain [eps, T - eps]
    double T = 0.0;
    double h = 0.0;         // node spacing
    std::vector<double> nodes;  // interior nodes, size N
    std::vector<double> diag;   // A diagonal
    std::vector<double> off;    // A off-diagonal (size N-1)
    std::vector<double> mass;   // M diagonal, strictly positive
    double anorm = 0.0;         // infinity norm of A
};

// Builds the sector-ell pencil.  mu, when given, must cover the truncated
// domain; it is splined onto the nodes and subtracted from the potential.
// kappa = 0 is rejected (the pointwise mode never reaches the pencil).
Discretization assemble(const WarpedMetric& g, const SpectralParams& p,
                        const RadialProfile* mu, int ell, int N, double eps);

struct LevelRecord {
    double eps = 0.0;
    int N = 0;
    double value = 0.0;
};

struct EigenSolution {
    double value = 0.0;            // best (extrapolated) eigenvalue estimate
    std::vector<double> nodes;     // finest grid
    std::vector<double> vec;       // eigenvector there, weighted-L2 normalized
    double residual = 0.0;         // ||A x - lambda M x||_2 at the finest level
    int sign_changes = 0;          // interior sign changes of vec

    // Refinement diagnostics.
    std::vector<LevelRecord> levels;
    double observed_order = 0.0;   // grid order where the level signal is strongest
    double extrapolated = 0.0;     // equals value
    double error_bar = 0.0;        // extrapolation correction magnitude
    double sector_gap = 0.0;       // eigenvalue(ell=1) - eigenvalue(ell=0)
};

// Smallest eigenpair of one assembled pencil.
EigenSolution first_eigen(const Discretization& d);

struct Schedule {
    std::vector<int> N_list;        // increasing, >= 3 entries
    std::vector<double> eps_list;   // decreasing, >= 1 entry
};

// Full refinement run for the radial sector.  Applies Richardson
// extrapolation in N at each eps, checks monotonicity across eps, Aitken
// extrapolates the eps sequence, and certifies the sector ordering
// eigenvalue(ell=1) > eigenvalue(ell=0).  Throws NumericalFailure when the
// observed convergence order or the monotone eps trend breaks down.
EigenSolution lambda_c(const WarpedMetric& g, const SpectralParams& p,
                       const RadialProfile* mu, const Schedule& schedule);

// Continuum Rayleigh quotient of a sampled trial profile:
//   integral (u'^2 + (cR - mu) u^2) phi^{n-1} dt / integral u^2 phi^{n-1} dt
// over u's own grid (compactly supported trial data).
double rayleigh_quotient(const WarpedMetric& g, const SpectralParams& p,
                         const RadialProfile* mu, const RadialProfile& u);

// Discrete pencil quotient x^T A x / x^T M x for a vector on d's nodes.
double discrete_quotient(const Discretization& d, const std::vector<double>& x);

// Max over an interior grid of |-Delta v + c R v - mu v| / max |mu v| for
// v = phi^{2/(4-kappa)} with mu from mu_profile.  Analytic warps evaluate
// the derivatives of v in closed form; sampled warps differentiate an
// independent spline of v so the residual decays at second order in the
// grid spacing.
double verify_eigen_mu(const WarpedMetric& g, double kappa,
                       std::size_t grid_points = 2001, double margin = 0.02);

// Infimum of scalar curvature: the kappa = 0 spectral constant.  Exact
// n(n-1) for the round sphere; closed-form minimum for sin warps
// (-infinity when the off-midpoint term is negative); dense sampling with
// end refinement for custom warps.
double scalar_inf(const WarpedMetric& g);

}  // namespace warpspec
