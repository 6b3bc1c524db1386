#pragma once

// Closed-form constants of the sin-warp model family and the algebraic /
// ODE identities that certify them.  Everything here is exact algebra
// evaluated in extended precision; no discretization is involved.
//
// Two sign conventions for the auxiliary function f coexist upstream:
// the cotangent form f = (2 a1 / n) cot(b t) is positive on the first half
// of the interval, while the warp-quotient form used by the 3-dimensional
// relation suite is f = -[2(6-kappa)/(3(4-kappa))] phi'/phi, its negative.
// f_cot and f_warp implement the first convention; xi_profile carries the
// second.  Both are verified against their own differential identities.

#include <array>
#include <optional>
#include <vector>

#include "warpspec/metric.hpp"
#include "warpspec/radial_profile.hpp"

namespace warpspec {

struct SpectralParams {
    double kappa = 1.0;   // inverse spectral weight, 0 <= kappa < 4
    double lambda = 6.0;  // target first eigenvalue, > 0

    void validate() const;  // throws std::invalid_argument on violation
};

struct ModelConstants {
    double a = 0.0;           // warp amplitude
    double b = 0.0;           // warp frequency, domain [0, pi/b]
    double a1 = 0.0;          // potential-shift amplitude
    double beta2 = 0.0;       // quadratic coefficient of the f-identity
    double lambda_exp = 0.0;  // eigenfunction exponent 2/(4-kappa)
    std::optional<double> alpha;  // 3-dimensional shift constant (n = 3 only)
};

// General-dimension constants.  kappa = 0 selects the pointwise mode:
// a = sqrt(n(n-1)/lambda) = 1/b, lambda_exp = 1/2, beta2 = 1, a1 = 0.
ModelConstants constants_nd(int n, const SpectralParams& p);

// 3-dimensional specialization evaluated through its own reduced formulas;
// agrees with constants_nd(3, p) to extended precision.
ModelConstants constants_3d(const SpectralParams& p);

// |beta2*a1^2 - beta2*a1*b - n(n-2)/(4a^2)|.
double beta2_residual(const ModelConstants& c, int n);

// Residuals of the two coupled constant equations
//   kappa(l+n-1) l b^2 + n(n-1) b^2 - kappa*lambda = 0
//   -kappa(l+n-2) l b^2 + (n-1)(n-2)(a^-2 - b^2)   = 0
// with l = lambda_exp.  Meaningful for kappa > 0.
std::array<double, 2> constant_system_residuals(const ModelConstants& c,
                                                const SpectralParams& p, int n);

// f(t) = (2 a1 / n) cot(b t).
double f_cot(double t, const ModelConstants& c, int n);

// Max residual over the grid of
//   kappa*lambda/4 + [n(n-1)/4] beta2 f^2 + [(n-1)/2] beta2 f'
//     - [(n-2)(n-1)/4] / (a^2 sin^2(b t)) = 0
// with f = f_cot, scaled pointwise by the largest participating term so the
// measure stays a round-off count near the singular ends.
double check_f_ode(const ModelConstants& c, const SpectralParams& p, int n,
                   const std::vector<double>& grid);

// f = [(4n-(n-1)kappa)/(n(4-kappa))] phi'/phi on the given grid (default:
// 2001 interior points).  Carries the derivative column.  Reproduces f_cot
// pointwise on sin-warp metrics.
RadialProfile f_warp(const WarpedMetric& g, double kappa,
                     std::vector<double> grid = {});

// Potential profile solving
//   kappa*mu/4 + [n(n-1)/4] beta2 f^2 + [(n-1)/2] beta2 f'
//     - [(n-2)(n-1)/4] phi^-2 = 0
// for mu, with f = f_warp and beta2 = beta2(n, kappa).  Constant equal to
// lambda on the matched model metric.  Rejects kappa = 0.  A log-concavity
// violation of phi on the grid is reported through the profile note.
RadialProfile mu_profile(const WarpedMetric& g, double kappa,
                         std::vector<double> grid = {});

// xi = [2(6-kappa)/(3(kappa-4))] phi'/phi with derivative column (n = 3).
RadialProfile xi_profile(const WarpedMetric& g, double kappa,
                         std::vector<double> grid = {});

// Max residual over the grid of
//   1 + (9/(4 alpha^2)) xi^2 - (3/(2 alpha^2)) xi' - 2 c lambda^-1 phi^-2
// on a 3-dimensional metric, with alpha from constants_3d.
double check_xi_ode(const WarpedMetric& g, const SpectralParams& p,
                    std::vector<double> grid = {});

}  // namespace warpspec
