#include "warpspec/closedform.hpp"

#include <cmath>
#include <stdexcept>

namespace warpspec {

namespace {

std::vector<double> default_grid(const WarpedMetric& g, std::vector<double> grid) {
    if (grid.empty()) return interior_grid(g.length(), 2001, 0.005);
    return grid;
}

long double beta2_ld(int n, long double k) {
    return static_cast<long double>(n) / (n - 1) *
           (4.0L * (n - 1) - (n - 2) * k) / (4.0L * n - (n - 1) * k);
}

}  // namespace

void SpectralParams::validate() const {
    if (!(kappa >= 0.0 && kappa < 4.0))
        throw std::invalid_argument("kappa must lie in [0, 4)");
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
}

ModelConstants constants_nd(int n, const SpectralParams& p) {
    if (n < 3) throw std::invalid_argument("constants need n >= 3");
    p.validate();
    ModelConstants out;
    const long double k = p.kappa, L = p.lambda;
    if (p.kappa == 0.0) {
        const long double a2 = static_cast<long double>(n) * (n - 1) / L;
        out.a = static_cast<double>(sqrtl(a2));
        out.b = static_cast<double>(1.0L / sqrtl(a2));
        out.a1 = 0.0;
        out.beta2 = 1.0;
        out.lambda_exp = 0.5;
        if (n == 3) out.alpha = 0.0;
        return out;
    }
    const long double c = 1.0L / k;
    const long double d1 = 4.0L * (n - 2) - (n - 3) * k;   // > 0 for kappa < 4
    const long double d2 = 4.0L * (n - 1) - (n - 2) * k;   // > 0 for kappa < 4
    const long double d3 = 4.0L * c * (n - 1) - (n - 2);   // > 0 for kappa < 4
    const long double top = 4.0L * n * c - (n - 1);        // > 0 for kappa < 4
    out.a = static_cast<double>(
        sqrtl((n - 1) * (n - 2) * top / (L * d1)));
    out.b = static_cast<double>(sqrtl(L) * (4.0L - k) / sqrtl(top * d2));
    out.a1 = static_cast<double>(
        0.5L * sqrtl(L * (4.0L * n - (n - 1) * k) / d3));
    out.beta2 = static_cast<double>(beta2_ld(n, k));
    out.lambda_exp = static_cast<double>(2.0L / (4.0L - k));
    if (n == 3)
        out.alpha = static_cast<double>(
            sqrtl(L * (6.0L - k) / (2.0L * c * (8.0L - k))));
    return out;
}

ModelConstants constants_3d(const SpectralParams& p) {
    p.validate();
    ModelConstants out;
    const long double k = p.kappa, L = p.lambda;
    if (p.kappa == 0.0) return constants_nd(3, p);
    const long double c = 1.0L / k;
    out.a = static_cast<double>(sqrtl((6.0L * c - 1.0L) / L));
    out.b = static_cast<double>(
        sqrtl(L) * (4.0L - k) / sqrtl(2.0L * c * (6.0L - k) * (8.0L - k)));
    const long double alpha = sqrtl(L * (6.0L - k) / (2.0L * c * (8.0L - k)));
    out.a1 = static_cast<double>(alpha);
    out.alpha = static_cast<double>(alpha);
    out.beta2 = static_cast<double>(3.0L * (8.0L - k) / (4.0L * (6.0L - k)));
    out.lambda_exp = static_cast<double>(2.0L / (4.0L - k));
    return out;
}

double beta2_residual(const ModelConstants& c, int n) {
    const long double a = c.a, b = c.b, a1 = c.a1, b2 = c.beta2;
    return static_cast<double>(
        fabsl(b2 * a1 * a1 - b2 * a1 * b -
              static_cast<long double>(n) * (n - 2) / (4.0L * a * a)));
}

std::array<double, 2> constant_system_residuals(const ModelConstants& c,
                                                const SpectralParams& p, int n) {
    const long double k = p.kappa, L = p.lambda;
    const long double b2 = static_cast<long double>(c.b) * c.b;
    const long double a = c.a, l = c.lambda_exp;
    const long double r1 = k * (l + n - 1) * l * b2 +
                           static_cast<long double>(n) * (n - 1) * b2 - k * L;
    const long double r2 = -k * (l + n - 2) * l * b2 +
                           static_cast<long double>(n - 1) * (n - 2) *
                               (1.0L / (a * a) - b2);
    return {static_cast<double>(fabsl(r1)), static_cast<double>(fabsl(r2))};
}

double f_cot(double t, const ModelConstants& c, int n) {
    return 2.0 * c.a1 / n * (std::cos(c.b * t) / std::sin(c.b * t));
}

double check_f_ode(const ModelConstants& c, const SpectralParams& p, int n,
                   const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("f-ode check needs a grid");
    const long double k = p.kappa, L = p.lambda;
    const long double a = c.a, b = c.b, a1 = c.a1, b2 = c.beta2;
    long double worst = 0.0L;
    for (double t : grid) {
        const long double s = sinl(b * static_cast<long double>(t));
        const long double f = 2.0L * a1 / n * cosl(b * static_cast<long double>(t)) / s;
        const long double fp = -2.0L * a1 * b / n / (s * s);
        const long double t1 = k * L / 4.0L;
        const long double t2 =
            static_cast<long double>(n) * (n - 1) / 4.0L * b2 * f * f;
        const long double t3 = (n - 1) / 2.0L * b2 * fp;
        const long double t4 = static_cast<long double>(n - 2) * (n - 1) / 4.0L /
                               (a * a * s * s);
        const long double scale =
            fmaxl(1.0L, fmaxl(fmaxl(fabsl(t1), fabsl(t2)),
                              fmaxl(fabsl(t3), fabsl(t4))));
        worst = fmaxl(worst, fabsl(t1 + t2 + t3 - t4) / scale);
    }
    return static_cast<double>(worst);
}

RadialProfile f_warp(const WarpedMetric& g, double kappa,
                     std::vector<double> grid) {
    if (!(kappa >= 0.0 && kappa < 4.0))
        throw std::invalid_argument("kappa must lie in [0, 4)");
    const int n = g.dim();
    const double coef = (4.0 * n - (n - 1) * kappa) / (n * (4.0 - kappa));
    auto ts = default_grid(g, std::move(grid));
    RadialProfile out;
    out.label = "f";
    out.t = ts;
    out.v.reserve(ts.size());
    out.d1.reserve(ts.size());
    for (double t : ts) {
        const double p = g.phi(t), dp = g.dphi(t), ddp = g.d2phi(t);
        if (!(p > 0.0)) throw std::domain_error("f needs phi > 0 on the grid");
        const double q = dp / p;
        out.v.push_back(coef * q);
        out.d1.push_back(coef * (ddp / p - q * q));
    }
    return out;
}

RadialProfile mu_profile(const WarpedMetric& g, double kappa,
                         std::vector<double> grid) {
    if (!(kappa > 0.0 && kappa < 4.0))
        throw std::invalid_argument(
            "mu is defined for kappa in (0, 4); the pointwise mode has no mu");
    const int n = g.dim();
    const long double k = kappa;
    const long double b2 = beta2_ld(n, k);
    auto ts = default_grid(g, std::move(grid));
    RadialProfile out;
    out.label = "mu";
    out.t = ts;
    out.v.reserve(ts.size());
    bool log_concave = true;
    const double coef = (4.0 * n - (n - 1) * kappa) / (n * (4.0 - kappa));
    for (double t : ts) {
        const long double p = g.phi(t), dp = g.dphi(t), ddp = g.d2phi(t);
        if (!(p > 0.0)) throw std::domain_error("mu needs phi > 0 on the grid");
        const long double q = dp / p;
        const long double logcc = ddp / p - q * q;  // (log phi)''
        if (!(logcc < 1e-9L)) log_concave = false;
        const long double f = coef * q;
        const long double fp = coef * logcc;
        const long double mu =
            4.0L / k *
            (static_cast<long double>(n - 2) * (n - 1) / 4.0L / (p * p) -
             static_cast<long double>(n) * (n - 1) / 4.0L * b2 * f * f -
             (n - 1) / 2.0L * b2 * fp);
        out.v.push_back(static_cast<double>(mu));
    }
    if (!log_concave)
        out.note = "warning: warp is not log-concave on the evaluation grid";
    return out;
}

RadialProfile xi_profile(const WarpedMetric& g, double kappa,
                         std::vector<double> grid) {
    if (g.dim() != 3)
        throw std::invalid_argument("xi is defined for 3-dimensional metrics");
    if (!(kappa >= 0.0 && kappa < 4.0))
        throw std::invalid_argument("kappa must lie in [0, 4)");
    const double coef = 2.0 * (6.0 - kappa) / (3.0 * (kappa - 4.0));
    auto ts = default_grid(g, std::move(grid));
    RadialProfile out;
    out.label = "xi";
    out.t = ts;
    out.v.reserve(ts.size());
    out.d1.reserve(ts.size());
    for (double t : ts) {
        const double p = g.phi(t), dp = g.dphi(t), ddp = g.d2phi(t);
        if (!(p > 0.0)) throw std::domain_error("xi needs phi > 0 on the grid");
        const double q = dp / p;
        out.v.push_back(coef * q);
        out.d1.push_back(coef * (ddp / p - q * q));
    }
    return out;
}

double check_xi_ode(const WarpedMetric& g, const SpectralParams& p,
                    std::vector<double> grid) {
    if (g.dim() != 3)
        throw std::invalid_argument("xi ode is defined for 3-dimensional metrics");
    p.validate();
    if (p.kappa == 0.0)
        throw std::invalid_argument("xi ode needs kappa > 0");
    const ModelConstants c = constants_3d(p);
    const long double alpha2 =
        static_cast<long double>(*c.alpha) * (*c.alpha);
    const long double cc = 1.0L / static_cast<long double>(p.kappa);
    auto ts = default_grid(g, std::move(grid));
    const RadialProfile xi = xi_profile(g, p.kappa, ts);
    long double worst = 0.0L;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const long double phi = g.phi(ts[i]);
        const long double x = xi.v[i], xp = xi.d1[i];
        const long double r = 1.0L + 9.0L / (4.0L * alpha2) * x * x -
                              3.0L / (2.0L * alpha2) * xp -
                              2.0L * cc / (static_cast<long double>(p.lambda) * phi * phi);
        worst = fmaxl(worst, fabsl(r));
    }
    return static_cast<double>(worst);
}

}  // namespace warpspec
