#include "warpspec/metric.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "warpspec/numfmt.hpp"

namespace warpspec {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_dim(int n) {
    if (n < 3) throw std::invalid_argument("warped product dimension must be >= 3");
}

}  // namespace

WarpedMetric WarpedMetric::round_sphere(int n) {
    check_dim(n);
    WarpedMetric g;
    g.n_ = n;
    g.kind_ = WarpKind::Round;
    g.a_ = 1.0;
    g.b_ = 1.0;
    g.T_ = kPi;
    return g;
}

WarpedMetric WarpedMetric::model_sin(int n, double a, double b) {
    check_dim(n);
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("sin warp needs positive amplitude and frequency");
    WarpedMetric g;
    g.n_ = n;
    g.kind_ = WarpKind::ModelSin;
    g.a_ = a;
    g.b_ = b;
    g.T_ = kPi / b;
    return g;
}

WarpedMetric WarpedMetric::custom(int n, RadialProfile warp) {
    check_dim(n);
    warp.validate();
    const double T = warp.t.back();
    if (!(T > 0.0)) throw std::invalid_argument("warp table must end at T > 0");
    if (std::abs(warp.t.front()) > 1e-9 * T)
        throw std::invalid_argument("warp table must start at t = 0");
    for (std::size_t i = 0; i < warp.size(); ++i) {
        const double t = warp.t[i], p = warp.v[i];
        const bool at_end = t <= 1e-9 * T || t >= T * (1.0 - 1e-9);
        if (p < 0.0 || (!at_end && !(p > 0.0)))
            throw std::invalid_argument("warp must be positive on the interior");
    }
    WarpedMetric g;
    g.n_ = n;
    g.kind_ = WarpKind::Custom;
    g.T_ = T;
    g.custom_ = std::make_shared<const CustomData>(std::move(warp));
    return g;
}

double WarpedMetric::phi(double t) const {
    if (custom_) return custom_->interp.value(t);
    return a_ * std::sin(b_ * t);
}

double WarpedMetric::dphi(double t) const {
    if (custom_) return custom_->interp.deriv(t);
    return a_ * b_ * std::cos(b_ * t);
}

double WarpedMetric::d2phi(double t) const {
    if (custom_) return custom_->interp.deriv2(t);
    return -a_ * b_ * b_ * std::sin(b_ * t);
}

double WarpedMetric::scalar_curvature(double t) const {
    const int n = n_;
    if (kind_ != WarpKind::Custom) {
        const double s = std::sin(b_ * t);
        if (!(s > 0.0)) throw std::domain_error("scalar curvature needs phi > 0");
        const double defect = 1.0 / (a_ * a_) - b_ * b_;
        return (n - 1) * (n * b_ * b_ + (n - 2) * defect / (s * s));
    }
    const double p = phi(t);
    if (!(p > 0.0)) throw std::domain_error("scalar curvature needs phi > 0");
    const double dp = dphi(t), d2p = d2phi(t);
    return (n - 1) / (p * p) *
           ((n - 2) * (1.0 - dp * dp) - 2.0 * p * d2p);
}

double WarpedMetric::mean_curvature(double t) const {
    const double p = phi(t);
    if (!(p > 0.0)) throw std::domain_error("mean curvature needs phi > 0");
    return (n_ - 1) * dphi(t) / p;
}

bool WarpedMetric::closes_at_ends() const {
    if (kind_ != WarpKind::Custom) return true;
    const auto& w = custom_->warp;
    double peak = 0.0;
    for (double p : w.v) peak = std::max(peak, std::abs(p));
    return std::abs(w.v.front()) <= 1e-6 * peak && std::abs(w.v.back()) <= 1e-6 * peak;
}

double WarpedMetric::sin_amplitude() const {
    if (kind_ == WarpKind::Custom)
        throw std::logic_error("custom warp has no sin amplitude");
    return a_;
}

double WarpedMetric::sin_frequency() const {
    if (kind_ == WarpKind::Custom)
        throw std::logic_error("custom warp has no sin frequency");
    return b_;
}

const RadialProfile* WarpedMetric::table() const {
    return custom_ ? &custom_->warp : nullptr;
}

CurvatureReport scalar_curvature_profile(const WarpedMetric& g,
                                         const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("curvature grid is empty");
    CurvatureReport rep;
    rep.t = grid;
    rep.R.reserve(grid.size());
    rep.H.reserve(grid.size());
    rep.R_min = std::numeric_limits<double>::infinity();
    for (double t : grid) {
        const double R = g.scalar_curvature(t);
        rep.R.push_back(R);
        rep.H.push_back(g.mean_curvature(t));
        if (R < rep.R_min) {
            rep.R_min = R;
            rep.R_min_at = t;
        }
    }
    return rep;
}

RadialProfile radial_laplacian(const WarpedMetric& g, const RadialProfile& u) {
    u.validate();
    if (!(u.t.front() > 0.0) || !(u.t.back() < g.length()))
        throw std::invalid_argument("laplacian grid must lie strictly inside (0, T)");
    ProfileInterp iu(u);
    RadialProfile out;
    out.t = u.t;
    out.label = "laplacian";
    out.v.reserve(u.size());
    for (double t : u.t) {
        const double p = g.phi(t);
        if (!(p > 0.0)) throw std::domain_error("laplacian needs phi > 0");
        out.v.push_back(iu.deriv2(t) + (g.dim() - 1) * g.dphi(t) / p * iu.deriv(t));
    }
    return out;
}

namespace {

// Least squares of samples y against {1/x, 1}; returns (coef_invx, coef_1)
// and the rms residual.
struct InvFit {
    double c_inv = 0.0, c_const = 0.0, rms = 0.0;
};

InvFit fit_inverse(const std::vector<double>& x, const std::vector<double>& y) {
    double s11 = 0, s12 = 0, s22 = 0, r1 = 0, r2 = 0;
    const std::size_t m = x.size();
    for (std::size_t i = 0; i < m; ++i) {
        const double b1 = 1.0 / x[i], b2 = 1.0;
        s11 += b1 * b1;
        s12 += b1 * b2;
        s22 += b2 * b2;
        r1 += b1 * y[i];
        r2 += b2 * y[i];
    }
    const double det = s11 * s22 - s12 * s12;
    if (det == 0.0) throw std::runtime_error("degenerate drift fit window");
    InvFit f;
    f.c_inv = (r1 * s22 - r2 * s12) / det;
    f.c_const = (s11 * r2 - s12 * r1) / det;
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double e = y[i] - (f.c_inv / x[i] + f.c_const);
        acc += e * e;
    }
    f.rms = std::sqrt(acc / static_cast<double>(m));
    return f;
}

}  // namespace

DriftReport drift_asymptotics(const WarpedMetric& g, double kappa) {
    if (!(kappa >= 0.0 && kappa < 4.0))
        throw std::invalid_argument("kappa must lie in [0, 4)");
    const double T = g.length();
    const int n = g.dim();
    const double coef = (n - 1) - 2.0 * (6.0 - kappa) / (4.0 - kappa);
    const std::size_t m = 64;

    DriftReport rep;
    rep.expected = -coef;  // D ~ coef/t near 0, reported as -c1/t
    rep.window_lo = T / 200.0;
    rep.window_hi = T / 20.0;

    auto drift = [&](double t) { return coef * g.dphi(t) / g.phi(t); };

    {
        auto xs = linspace(rep.window_lo, rep.window_hi, m);
        std::vector<double> ys(m);
        for (std::size_t i = 0; i < m; ++i) ys[i] = drift(xs[i]);
        const InvFit f = fit_inverse(xs, ys);
        rep.c1 = -f.c_inv;
        rep.residual1 = f.rms;
    }
    {
        auto xs = linspace(rep.window_lo, rep.window_hi, m);
        std::vector<double> ys(m);
        for (std::size_t i = 0; i < m; ++i) ys[i] = drift(T - xs[i]);
        const InvFit f = fit_inverse(xs, ys);  // D ~ +c2/(T-t)
        rep.c2 = f.c_inv;
        rep.residual2 = f.rms;
    }
    return rep;
}

const char* DominationReport::name() const {
    switch (verdict) {
        case Domination::Strict: return "true_strict";
        case Domination::Equal: return "true_equal";
        default: return "false";
    }
}

DominationReport metric_dominates(const WarpedMetric& g1, const WarpedMetric& g2) {
    DominationReport rep;
    const double T2 = g2.length();
    double scale = std::max(1.0, std::max(std::abs(g1.phi(g1.length() / 2)),
                                          std::abs(g2.phi(T2 / 2))));
    const double tol = 1e-11 * scale;
    if (g1.length() < T2 * (1.0 - 1e-9)) {
        rep.verdict = Domination::No;
        rep.witness_t = g1.length();
        rep.margin = g1.length() - T2;
        return rep;
    }
    const auto grid = interior_grid(T2, 2001, 5e-4);
    double best = 0.0, best_t = grid.front();
    for (double t : grid) {
        const double d = g1.phi(t) - g2.phi(t);
        if (d < -tol) {
            rep.verdict = Domination::No;
            rep.witness_t = t;
            rep.margin = d;
            return rep;
        }
        if (d > best) {
            best = d;
            best_t = t;
        }
    }
    const bool longer = g1.length() > T2 * (1.0 + 1e-9);
    if (best > tol || longer) {
        rep.verdict = Domination::Strict;
        rep.witness_t = best_t;
        rep.margin = best;
    } else {
        rep.verdict = Domination::Equal;
        rep.witness_t = best_t;
        rep.margin = best;
    }
    return rep;
}

WarpedMetric normalize_arclength(int n, const RadialProfile& w,
                                 const RadialProfile& phi) {
    w.validate();
    phi.validate();
    if (w.t.size() != phi.t.size())
        throw std::invalid_argument("width and warp tables must share a grid");
    for (std::size_t i = 0; i < w.t.size(); ++i)
        if (w.t[i] != phi.t[i])
            throw std::invalid_argument("width and warp tables must share a grid");
    for (double x : w.v)
        if (!(x >= 1.0 - 1e-12))
            throw std::invalid_argument("width factor must satisfy w >= 1");

    CubicSpline sw(w.t, w.v);
    ProfileInterp iw(w), iphi(phi);
    const std::size_t m = w.t.size();

    RadialProfile out;
    out.label = phi.label.empty() ? "warp" : phi.label;
    out.t.resize(m);
    out.v.resize(m);
    out.d1.resize(m);
    out.d2.resize(m);
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (i > 0) s += sw.integral(w.t[i - 1], w.t[i]);
        const double tau = w.t[i];
        const double wv = iw.value(tau), wd = iw.deriv(tau);
        const double pd = iphi.deriv(tau), pdd = iphi.deriv2(tau);
        out.t[i] = s;
        out.v[i] = phi.v[i];
        out.d1[i] = pd / wv;
        out.d2[i] = (pdd * wv - pd * wd) / (wv * wv * wv);
    }
    out.t.front() = 0.0;
    return WarpedMetric::custom(n, std::move(out));
}

RadialProfile read_warp_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open warp table: " + path);
    std::string line;
    std::size_t ncols = 0;
    RadialProfile p;
    p.label = "warp";
    bool header = true;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto sv = trim(line);
        if (sv.empty()) continue;
        std::vector<std::string_view> cells;
        std::size_t pos = 0;
        while (true) {
            const auto c = sv.find(',', pos);
            cells.push_back(sv.substr(pos, c == std::string_view::npos
                                               ? std::string_view::npos
                                               : c - pos));
            if (c == std::string_view::npos) break;
            pos = c + 1;
        }
        if (header) {
            if (cells.size() < 2 || trim(cells[0]) != "t" || trim(cells[1]) != "phi")
                throw std::invalid_argument("warp table header must begin 't,phi'");
            ncols = cells.size();
            if (ncols > 4)
                throw std::invalid_argument("warp table has too many columns");
            header = false;
            continue;
        }
        if (cells.size() != ncols)
            throw std::invalid_argument("warp table row " + std::to_string(lineno) +
                                        " has wrong column count");
        double vals[4];
        for (std::size_t i = 0; i < ncols; ++i)
            if (!parse_double(cells[i], vals[i]))
                throw std::invalid_argument("warp table row " + std::to_string(lineno) +
                                            " is not numeric");
        p.t.push_back(vals[0]);
        p.v.push_back(vals[1]);
        if (ncols >= 3) p.d1.push_back(vals[2]);
        if (ncols >= 4) p.d2.push_back(vals[3]);
    }
    if (header) throw std::invalid_argument("warp table is empty: " + path);
    p.validate();
    return p;
}

void write_warp_csv(const std::string& path, const RadialProfile& warp) {
    warp.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write warp table: " + path);
    std::string hdr = "t,phi";
    if (warp.has_d1()) hdr += ",phi_prime";
    if (warp.has_d2()) hdr += ",phi_second";
    out << hdr << "\n";
    for (std::size_t i = 0; i < warp.size(); ++i) {
        out << fmt17(warp.t[i]) << ',' << fmt17(warp.v[i]);
        if (warp.has_d1()) out << ',' << fmt17(warp.d1[i]);
        if (warp.has_d2()) out << ',' << fmt17(warp.d2[i]);
        out << "\n";
    }
    if (!out) throw std::runtime_error("failed writing warp table: " + path);
}

RadialProfile sample_warp(const WarpedMetric& g, std::size_t samples) {
    if (samples < 9) throw std::invalid_argument("warp sampling needs >= 9 points");
    RadialProfile p;
    p.label = "warp";
    p.t = linspace(0.0, g.length(), samples);
    p.v.resize(samples);
    p.d1.resize(samples);
    p.d2.resize(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        p.v[i] = g.phi(p.t[i]);
        p.d1[i] = g.dphi(p.t[i]);
        p.d2[i] = g.d2phi(p.t[i]);
    }
    return p;
}

}  // namespace warpspec
