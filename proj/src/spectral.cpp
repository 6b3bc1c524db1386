#include "warpspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace warpspec {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Number of pencil eigenvalues of (A, M) strictly below x, by the sign
// count of the LDL^T pivots of A - xM.
int sturm_count(const Discretization& d, double x) {
    const std::size_t N = d.diag.size();
    const double pivmin = 1e-290 * std::max(1.0, d.anorm);
    int count = 0;
    double piv = d.diag[0] - x * d.mass[0];
    if (std::abs(piv) < pivmin) piv = -pivmin;
    if (piv < 0.0) ++count;
    for (std::size_t i = 1; i < N; ++i) {
        piv = (d.diag[i] - x * d.mass[i]) - d.off[i - 1] * d.off[i - 1] / piv;
        if (std::abs(piv) < pivmin) piv = -pivmin;
        if (piv < 0.0) ++count;
    }
    return count;
}

// Solves (A - sigma M) y = rhs by tridiagonal LU with partial pivoting.
void shifted_solve(const Discretization& d, double sigma,
                   std::vector<double>& rhs) {
    const std::size_t N = d.diag.size();
    std::vector<double> dl(N, 0.0), dg(N), du(N, 0.0), du2(N, 0.0);
    for (std::size_t i = 0; i < N; ++i) {
        dg[i] = d.diag[i] - sigma * d.mass[i];
        if (i + 1 < N) {
            dl[i + 1] = d.off[i];
            du[i] = d.off[i];
        }
    }
    const double tiny = 1e-300;
    for (std::size_t i = 0; i + 1 < N; ++i) {
        if (std::abs(dl[i + 1]) > std::abs(dg[i])) {
            std::swap(dg[i], dl[i + 1]);
            std::swap(du[i], dg[i + 1]);
            std::swap(du2[i], du[i + 1]);
            std::swap(rhs[i], rhs[i + 1]);
        }
        if (std::abs(dg[i]) < tiny) dg[i] = tiny;
        const double w = dl[i + 1] / dg[i];
        dg[i + 1] -= w * du[i];
        du[i + 1] -= w * du2[i];
        rhs[i + 1] -= w * rhs[i];
    }
    if (std::abs(dg[N - 1]) < tiny) dg[N - 1] = tiny;
    rhs[N - 1] /= dg[N - 1];
    if (N >= 2) {
        rhs[N - 2] = (rhs[N - 2] - du[N - 2] * rhs[N - 1]) / dg[N - 2];
        for (std::size_t i = N - 2; i-- > 0;)
            rhs[i] = (rhs[i] - du[i] * rhs[i + 1] - du2[i] * rhs[i + 2]) / dg[i];
    }
}

void pencil_apply(const Discretization& d, const std::vector<double>& x,
                  std::vector<double>& ax, std::vector<double>& mx) {
    const std::size_t N = x.size();
    ax.resize(N);
    mx.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        double v = d.diag[i] * x[i];
        if (i > 0) v += d.off[i - 1] * x[i - 1];
        if (i + 1 < N) v += d.off[i] * x[i + 1];
        ax[i] = v;
        mx[i] = d.mass[i] * x[i];
    }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

Discretization assemble(const WarpedMetric& g, const SpectralParams& p,
                        const RadialProfile* mu, int ell, int N, double eps) {
    p.validate();
    if (p.kappa == 0.0)
        throw std::invalid_argument(
            "kappa = 0 is the pointwise mode; use scalar_inf, not the pencil");
    if (ell < 0) throw std::invalid_argument("sector index must be >= 0");
    if (N < 16) throw std::invalid_argument("pencil needs N >= 16");
    const double T = g.length();
    if (!(eps > 0.0 && eps < T / 4.0))
        throw std::invalid_argument("truncation must satisfy 0 < eps < T/4");

    const int n = g.dim();
    const double c = 1.0 / p.kappa;
    Discretization d;
    d.n = n;
    d.ell = ell;
    d.eps = eps;
    d.T = T;
    d.h = (T - 2.0 * eps) / (N + 1);
    d.nodes.resize(N);
    d.diag.resize(N);
    d.off.assign(N > 1 ? N - 1 : 0, 0.0);
    d.mass.resize(N);

    std::optional<ProfileInterp> imu;
    if (mu) {
        imu.emplace(*mu);
        if (imu->front() > eps + d.h || imu->back() < T - eps - d.h)
            throw std::invalid_argument("mu profile does not cover the solve domain");
    }

    auto weight = [&](double t) { return std::pow(g.phi(t), n - 1); };

    const double h2 = d.h * d.h;
    std::vector<double> whalf(N + 1);
    for (int i = 0; i <= N; ++i) whalf[i] = weight(eps + (i + 0.5) * d.h);
    for (int i = 1; i <= N; ++i) {
        const double t = eps + i * d.h;
        const double phi = g.phi(t);
        if (!(phi > 0.0))
            throw std::invalid_argument("warp not positive on the solve domain");
        double V = c * g.scalar_curvature(t);
        if (ell > 0) V += static_cast<double>(ell) * (ell + n - 2) / (phi * phi);
        if (imu) V -= imu->value(t);
        const double w = weight(t);
        d.nodes[i - 1] = t;
        d.mass[i - 1] = w;
        d.diag[i - 1] = (whalf[i - 1] + whalf[i]) / h2 + V * w;
        if (i < N) d.off[i - 1] = -whalf[i] / h2;
        if (!std::isfinite(d.diag[i - 1]) || !std::isfinite(w) || !(w > 0.0))
            throw std::invalid_argument("non-finite pencil coefficients");
    }
    double an = 0.0;
    const std::size_t sz = d.diag.size();
    for (std::size_t i = 0; i < sz; ++i) {
        double row = std::abs(d.diag[i]);
        if (i > 0) row += std::abs(d.off[i - 1]);
        if (i + 1 < sz) row += std::abs(d.off[i]);
        an = std::max(an, row);
    }
    d.anorm = an;
    return d;
}

EigenSolution first_eigen(const Discretization& d) {
    const std::size_t N = d.diag.size();
    if (N == 0) throw std::invalid_argument("empty discretization");

    // Gershgorin bracket for M^{-1/2} A M^{-1/2}.
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < N; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(d.off[i - 1]) / std::sqrt(d.mass[i - 1] * d.mass[i]);
        if (i + 1 < N) r += std::abs(d.off[i]) / std::sqrt(d.mass[i] * d.mass[i + 1]);
        const double center = d.diag[i] / d.mass[i];
        lo = std::min(lo, center - r);
        hi = std::max(hi, center + r);
    }

    const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
    const double tol = 1e-12 * scale;
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count(d, mid) >= 1)
            hi = mid;
        else
            lo = mid;
    }

    // Inverse iteration from the left bracket edge, where the shifted
    // pencil has no negative eigenvalue.
    std::vector<double> x(N);
    for (std::size_t i = 0; i < N; ++i)
        x[i] = std::sin(kPi * static_cast<double>(i + 1) / static_cast<double>(N + 1));
    std::vector<double> ax, mx;
    double lambda = 0.5 * (lo + hi);
    const double target = 1e-11 * std::max(1.0, d.anorm);
    bool converged = false;
    for (int it = 0; it < 8; ++it) {
        std::vector<double> y(N);
        for (std::size_t i = 0; i < N; ++i) y[i] = d.mass[i] * x[i];
        shifted_solve(d, lo, y);
        double norm2 = 0.0;
        for (std::size_t i = 0; i < N; ++i) norm2 += y[i] * y[i] * d.mass[i];
        const double s = 1.0 / std::sqrt(norm2);
        for (std::size_t i = 0; i < N; ++i) x[i] = y[i] * s;
        pencil_apply(d, x, ax, mx);
        lambda = dot(x, ax) / dot(x, mx);
        double rr = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double e = ax[i] - lambda * mx[i];
            rr += e * e;
        }
        if (std::sqrt(rr) <= target) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NumericalFailure("inverse iteration failed to reach its residual target");

    EigenSolution sol;
    sol.nodes = d.nodes;

    // Weighted-L2 normalization and a positive overall sign.
    double wnorm = 0.0;
    for (std::size_t i = 0; i < N; ++i) wnorm += x[i] * x[i] * d.mass[i];
    wnorm = std::sqrt(wnorm * d.h);
    std::size_t imax = 0;
    for (std::size_t i = 1; i < N; ++i)
        if (std::abs(x[i]) > std::abs(x[imax])) imax = i;
    const double sgn = x[imax] >= 0.0 ? 1.0 : -1.0;
    sol.vec.resize(N);
    for (std::size_t i = 0; i < N; ++i) sol.vec[i] = sgn * x[i] / wnorm;

    pencil_apply(d, sol.vec, ax, mx);
    double rr = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double e = ax[i] - lambda * mx[i];
        rr += e * e;
    }
    sol.residual = std::sqrt(rr);
    sol.value = lambda;
    sol.extrapolated = lambda;

    const double vmax = std::abs(sol.vec[imax]);
    int flips = 0;
    double prev = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double v = sol.vec[i];
        if (std::abs(v) <= 1e-10 * vmax) continue;
        if (prev != 0.0 && v * prev < 0.0) ++flips;
        prev = v;
    }
    sol.sign_changes = flips;
    return sol;
}

EigenSolution lambda_c(const WarpedMetric& g, const SpectralParams& p,
                       const RadialProfile* mu, const Schedule& schedule) {
    if (schedule.N_list.size() < 3)
        throw std::invalid_argument("schedule needs at least three grid levels");
    for (std::size_t i = 1; i < schedule.N_list.size(); ++i)
        if (schedule.N_list[i] <= schedule.N_list[i - 1])
            throw std::invalid_argument("grid levels must increase");
    if (schedule.eps_list.empty())
        throw std::invalid_argument("schedule needs at least one truncation level");
    for (std::size_t i = 1; i < schedule.eps_list.size(); ++i)
        if (schedule.eps_list[i] >= schedule.eps_list[i - 1])
            throw std::invalid_argument("truncation levels must decrease");

    EigenSolution best;
    std::vector<double> eps_values;  // N-extrapolated value per eps
    double order_report = 2.0, order_signal = -1.0, ncorr_fin = 0.0;

    for (std::size_t ei = 0; ei < schedule.eps_list.size(); ++ei) {
        const double eps = schedule.eps_list[ei];
        std::vector<double> lam, hh;
        EigenSolution fin;
        for (int N : schedule.N_list) {
            const Discretization d = assemble(g, p, mu, 0, N, eps);
            fin = first_eigen(d);
            lam.push_back(fin.value);
            hh.push_back(d.h);
            best.levels.push_back({eps, N, fin.value});
        }
        const std::size_t K = lam.size() - 1;
        const double scale = std::max(1.0, std::abs(lam[K]));
        const double r = hh[K - 1] / hh[K];
        const double d2 = lam[K] - lam[K - 1];
        const double d1 = lam[K - 1] - lam[K - 2];
        double extrap = lam[K] + d2 / (r * r - 1.0);
        double ncorr = std::abs(d2 / (r * r - 1.0));
        if (std::abs(d2) > 1e-13 * scale) {
            const double order = std::log(std::abs(d1 / d2)) / std::log(r);
            const bool clean = order > 1.2 && order < 3.2;
            // The leading error coefficient can cancel at an isolated
            // truncation level, pushing the measured order above the window
            // while the level differences are already negligible.  That is a
            // converged sequence, not a scheme failure, so it is admitted;
            // a high order with a large difference still aborts.
            const bool settled = order >= 3.2 && std::abs(d2) <= 1e-7 * scale;
            if (!clean && !settled)
                throw NumericalFailure(
                    "grid convergence order " + std::to_string(order) +
                    " is outside the trusted window [1.2, 3.2]");
            if (settled) {
                extrap = lam[K];
                ncorr = std::abs(d2);
            }
            if (std::abs(d2) > order_signal) {
                order_signal = std::abs(d2);
                order_report = order;
            }
        }
        eps_values.push_back(extrap);
        ncorr_fin = ncorr;
        if (ei + 1 == schedule.eps_list.size()) {
            best.nodes = std::move(fin.nodes);
            best.vec = std::move(fin.vec);
            best.residual = fin.residual;
            best.sign_changes = fin.sign_changes;
        }
    }

    // Smaller eps enlarges the Dirichlet domain, so values must not rise.
    for (std::size_t i = 1; i < eps_values.size(); ++i) {
        const double slack = 1e-6 * std::max(1.0, std::abs(eps_values[i]));
        if (eps_values[i] > eps_values[i - 1] + slack)
            throw NumericalFailure(
                "eigenvalue increased as the truncation shrank; no convergence");
    }

    double value = eps_values.back();
    double eps_corr = 0.0;
    const std::size_t M = eps_values.size();
    if (M >= 2) {
        const double dlast = eps_values[M - 1] - eps_values[M - 2];
        eps_corr = std::abs(dlast);
        if (M >= 3) {
            const double dprev = eps_values[M - 2] - eps_values[M - 3];
            const double denom = dlast - dprev;
            const double scale = std::max(1.0, std::abs(value));
            if (std::abs(denom) > 1e-14 * scale &&
                dlast * dprev > 0.0 && std::abs(dlast) < std::abs(dprev)) {
                const double aitken = eps_values[M - 1] - dlast * dlast / denom;
                eps_corr = std::abs(aitken - value);
                value = aitken;
            }
        }
    }

    best.value = value;
    best.extrapolated = value;
    best.observed_order = order_report;
    best.error_bar = ncorr_fin + eps_corr;

    // Sector ordering certificate at a moderate resolution.
    {
        const double eps = schedule.eps_list.back();
        const int N = schedule.N_list[schedule.N_list.size() >= 2 ? 1 : 0];
        const Discretization d1 = assemble(g, p, mu, 1, N, eps);
        const EigenSolution s1 = first_eigen(d1);
        best.sector_gap = s1.value - best.value;
        if (!(best.sector_gap > 0.0))
            throw NumericalFailure("sector ordering violated: ell=1 not above ell=0");
    }
    return best;
}

double rayleigh_quotient(const WarpedMetric& g, const SpectralParams& p,
                         const RadialProfile* mu, const RadialProfile& u) {
    p.validate();
    if (p.kappa == 0.0)
        throw std::invalid_argument("the pointwise mode has no Rayleigh quotient");
    u.validate();
    if (!(u.t.front() > 0.0 && u.t.back() < g.length()))
        throw std::invalid_argument("trial profile must be compactly supported in (0, T)");
    const double c = 1.0 / p.kappa;
    const int n = g.dim();
    ProfileInterp iu(u);
    std::optional<ProfileInterp> imu;
    if (mu) imu.emplace(*mu);

    const std::size_t m = u.size();
    std::vector<double> num(m), den(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double t = u.t[i];
        const double w = std::pow(g.phi(t), n - 1);
        const double uv = u.v[i];
        const double up = iu.deriv(t);
        double V = c * g.scalar_curvature(t);
        if (imu) V -= imu->value(t);
        num[i] = (up * up + V * uv * uv) * w;
        den[i] = uv * uv * w;
    }
    const CubicSpline snum(u.t, num), sden(u.t, den);
    const double D = sden.integral(u.t.front(), u.t.back());
    if (!(D > 0.0)) throw std::invalid_argument("trial profile has zero norm");
    return snum.integral(u.t.front(), u.t.back()) / D;
}

double discrete_quotient(const Discretization& d, const std::vector<double>& x) {
    if (x.size() != d.diag.size())
        throw std::invalid_argument("vector length does not match the pencil");
    std::vector<double> ax, mx;
    pencil_apply(d, x, ax, mx);
    const double den = dot(x, mx);
    if (!(den > 0.0)) throw std::invalid_argument("vector has zero mass norm");
    return dot(x, ax) / den;
}

double verify_eigen_mu(const WarpedMetric& g, double kappa,
                       std::size_t grid_points, double margin) {
    if (!(kappa > 0.0 && kappa < 4.0))
        throw std::invalid_argument("eigen-identity check needs kappa in (0, 4)");
    const int n = g.dim();
    const double c = 1.0 / kappa;
    const double lam = 2.0 / (4.0 - kappa);
    const auto grid = interior_grid(g.length(), grid_points, margin);
    const RadialProfile mu = mu_profile(g, kappa, grid);

    const bool analytic = g.kind() != WarpKind::Custom;
    const double h = grid[1] - grid[0];
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        const double phi = g.phi(t);
        const double v = std::pow(phi, lam);
        double vp, vpp;
        if (analytic) {
            const double dp = g.dphi(t), ddp = g.d2phi(t);
            vp = lam * std::pow(phi, lam - 1.0) * dp;
            vpp = lam * (lam - 1.0) * std::pow(phi, lam - 2.0) * dp * dp +
                  lam * std::pow(phi, lam - 1.0) * ddp;
        } else {
            const double vm = std::pow(g.phi(t - h), lam);
            const double vpl = std::pow(g.phi(t + h), lam);
            vp = (vpl - vm) / (2.0 * h);
            vpp = (vpl - 2.0 * v + vm) / (h * h);
        }
        const double lap = vpp + (n - 1) * g.dphi(t) / phi * vp;
        const double resid = -lap + c * g.scalar_curvature(t) * v - mu.v[i] * v;
        worst = std::max(worst, std::abs(resid));
        scale = std::max(scale, std::abs(mu.v[i] * v));
    }
    if (!(scale > 0.0)) throw std::invalid_argument("degenerate eigen-identity scale");
    return worst / scale;
}

double scalar_inf(const WarpedMetric& g) {
    const int n = g.dim();
    if (g.kind() == WarpKind::Round) return static_cast<double>(n) * (n - 1);
    if (g.kind() == WarpKind::ModelSin) {
        const double a = g.sin_amplitude(), b = g.sin_frequency();
        const double defect = 1.0 / (a * a) - b * b;
        // a defect within round-off of zero is the degenerate round family
        const double tol = 1e-14 * (1.0 / (a * a) + b * b);
        if (defect >= -tol)
            return (n - 1) * (n * b * b + (n - 2) * std::max(defect, 0.0));
        return -std::numeric_limits<double>::infinity();
    }
    const double T = g.length();
    std::vector<double> grid = interior_grid(T, 4001, 1e-3);
    for (int j = 1; j <= 20; ++j) {
        const double t = T * 1e-3 / std::pow(2.0, j);
        grid.push_back(t);
        grid.push_back(T - t);
    }
    double lo = std::numeric_limits<double>::infinity();
    const double floor = 1e-12;
    for (double t : grid) {
        if (!(g.phi(t) > floor)) continue;
        lo = std::min(lo, g.scalar_curvature(t));
    }
    return lo;
}

}  // namespace warpspec
