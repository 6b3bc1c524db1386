#include "warpspec/radial_profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace warpspec {

namespace {

// Solves a symmetric-structure tridiagonal system in place (Thomas
// algorithm).  lower[i] multiplies x[i-1] in row i, upper[i] multiplies
// x[i+1]; rows are 0..n-1.
void solve_tridiag(std::vector<double>& lower, std::vector<double>& diag,
                   std::vector<double>& upper, std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (diag[i - 1] == 0.0)
            throw std::runtime_error("tridiagonal solve hit a zero pivot");
        const double w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

void require_strictly_increasing(const std::vector<double>& x) {
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1]))
            throw std::invalid_argument("grid must be strictly increasing");
}

}  // namespace

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size() || x_.size() < 2)
        throw std::invalid_argument("spline needs at least two matching samples");
    require_strictly_increasing(x_);
    const std::size_t n = x_.size();
    m_.assign(n, 0.0);
    if (n == 2) return;  // linear interpolant, zero curvature

    if (n == 3) {
        // Unique parabola: constant second derivative.
        const double h0 = x_[1] - x_[0], h1 = x_[2] - x_[1];
        const double s0 = (y_[1] - y_[0]) / h0, s1 = (y_[2] - y_[1]) / h1;
        const double m = 2.0 * (s1 - s0) / (h0 + h1);
        m_.assign(n, m);
        return;
    }

    // Moment equations with not-a-knot closure folded into the first and
    // last interior rows, leaving a pure tridiagonal system for m_[1..n-2].
    const std::size_t k = n - 2;
    std::vector<double> lower(k, 0.0), diag(k, 0.0), upper(k, 0.0), rhs(k, 0.0);
    std::vector<double> h(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) h[i] = x_[i + 1] - x_[i];
    for (std::size_t i = 1; i <= k; ++i) {
        const double d0 = (y_[i] - y_[i - 1]) / h[i - 1];
        const double d1 = (y_[i + 1] - y_[i]) / h[i];
        lower[i - 1] = h[i - 1] / 6.0;
        diag[i - 1] = (h[i - 1] + h[i]) / 3.0;
        upper[i - 1] = h[i] / 6.0;
        rhs[i - 1] = d1 - d0;
    }
    // Not-a-knot at the left: m0 = m1 + (h0/h1)(m1 - m2).
    {
        const double r = h[0] / h[1];
        diag[0] += lower[0] * (1.0 + r);
        upper[0] += lower[0] * (-r);
        lower[0] = 0.0;
    }
    // Not-a-knot at the right: m_{n-1} = m_{n-2} + (h_{n-2}/h_{n-3})(m_{n-2} - m_{n-3}).
    {
        const double r = h[n - 2] / h[n - 3];
        diag[k - 1] += upper[k - 1] * (1.0 + r);
        lower[k - 1] += upper[k - 1] * (-r);
        upper[k - 1] = 0.0;
    }
    solve_tridiag(lower, diag, upper, rhs);
    for (std::size_t i = 1; i <= k; ++i) m_[i] = rhs[i - 1];
    m_[0] = m_[1] + (h[0] / h[1]) * (m_[1] - m_[2]);
    m_[n - 1] = m_[n - 2] + (h[n - 2] / h[n - 3]) * (m_[n - 2] - m_[n - 3]);
}

std::size_t CubicSpline::locate(double t) const {
    const double lo = x_.front(), hi = x_.back();
    const double slack = 1e-9 * (hi - lo);
    if (t < lo - slack || t > hi + slack)
        throw std::domain_error("spline evaluated outside its knot span");
    t = std::clamp(t, lo, hi);
    auto it = std::upper_bound(x_.begin(), x_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - x_.begin());
    if (i == 0) i = 1;
    if (i >= x_.size()) i = x_.size() - 1;
    return i - 1;
}

double CubicSpline::value(double t) const {
    const std::size_t i = locate(t);
    const double h = x_[i + 1] - x_[i];
    const double A = (x_[i + 1] - t) / h, B = (t - x_[i]) / h;
    return A * y_[i] + B * y_[i + 1] +
           ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::deriv(double t) const {
    const std::size_t i = locate(t);
    const double h = x_[i + 1] - x_[i];
    const double A = (x_[i + 1] - t) / h, B = (t - x_[i]) / h;
    return (y_[i + 1] - y_[i]) / h -
           (3.0 * A * A - 1.0) * h * m_[i] / 6.0 +
           (3.0 * B * B - 1.0) * h * m_[i + 1] / 6.0;
}

double CubicSpline::deriv2(double t) const {
    const std::size_t i = locate(t);
    const double h = x_[i + 1] - x_[i];
    const double A = (x_[i + 1] - t) / h, B = (t - x_[i]) / h;
    return A * m_[i] + B * m_[i + 1];
}

double CubicSpline::piece_integral(std::size_t i, double a, double b) const {
    // Antiderivative of the standard moment form on piece i, evaluated b - a.
    const double h = x_[i + 1] - x_[i];
    auto F = [&](double t) {
        const double A = (x_[i + 1] - t) / h, B = (t - x_[i]) / h;
        // d/dt A = -1/h, d/dt B = 1/h.
        const double quad = -A * A / 2.0 * h * y_[i] + B * B / 2.0 * h * y_[i + 1];
        const double cub = (-(A * A * A * A / 4.0 - A * A / 2.0) * m_[i] +
                            (B * B * B * B / 4.0 - B * B / 2.0) * m_[i + 1]) *
                           h * h * h / 6.0;
        return quad + cub;
    };
    return F(b) - F(a);
}

double CubicSpline::integral(double a, double b) const {
    if (a > b) return -integral(b, a);
    const std::size_t ia = locate(a), ib = locate(b);
    if (ia == ib) return piece_integral(ia, a, b);
    double acc = piece_integral(ia, a, x_[ia + 1]);
    for (std::size_t i = ia + 1; i < ib; ++i)
        acc += piece_integral(i, x_[i], x_[i + 1]);
    acc += piece_integral(ib, x_[ib], b);
    return acc;
}

void RadialProfile::validate() const {
    if (t.size() < 2) throw std::invalid_argument("profile needs at least two samples");
    if (v.size() != t.size())
        throw std::invalid_argument("profile value column length mismatch");
    if (!d1.empty() && d1.size() != t.size())
        throw std::invalid_argument("profile d1 column length mismatch");
    if (!d2.empty() && d2.size() != t.size())
        throw std::invalid_argument("profile d2 column length mismatch");
    require_strictly_increasing(t);
    for (double x : t)
        if (!std::isfinite(x)) throw std::invalid_argument("non-finite abscissa");
    for (double x : v)
        if (!std::isfinite(x)) throw std::invalid_argument("non-finite sample");
}

ProfileInterp::ProfileInterp(const RadialProfile& p) : sv_(p.t, p.v) {
    p.validate();
    if (p.has_d1()) sd1_.emplace(p.t, p.d1);
    if (p.has_d2()) sd2_.emplace(p.t, p.d2);
}

double ProfileInterp::deriv(double t) const {
    return sd1_ ? sd1_->value(t) : sv_.deriv(t);
}

double ProfileInterp::deriv2(double t) const {
    if (sd2_) return sd2_->value(t);
    if (sd1_) return sd1_->deriv(t);
    return sv_.deriv2(t);
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    if (count < 2) throw std::invalid_argument("linspace needs at least two points");
    std::vector<double> g(count);
    const double h = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) g[i] = lo + h * static_cast<double>(i);
    g.back() = hi;
    return g;
}

std::vector<double> interior_grid(double T, std::size_t count, double margin) {
    if (!(T > 0.0)) throw std::invalid_argument("domain length must be positive");
    if (!(margin > 0.0 && margin < 0.5))
        throw std::invalid_argument("margin must lie in (0, 1/2)");
    return linspace(T * margin, T * (1.0 - margin), count);
}

std::vector<double> cumulative_simpson(const std::vector<double>& x,
                                       const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 3 || y.size() != n)
        throw std::invalid_argument("cumulative_simpson needs matched grids, n >= 3");
    const double h = x[1] - x[0];
    std::vector<double> I(n, 0.0);
    for (std::size_t k = 1; k < n; ++k) {
        if (k % 2 == 0) {
            I[k] = I[k - 2] + h / 3.0 * (y[k - 2] + 4.0 * y[k - 1] + y[k]);
        } else if (k + 1 < n) {
            I[k] = I[k - 1] + h / 12.0 * (5.0 * y[k - 1] + 8.0 * y[k] - y[k + 1]);
        } else {
            I[k] = I[k - 1] + h / 12.0 * (-y[k - 2] + 8.0 * y[k - 1] + 5.0 * y[k]);
        }
    }
    return I;
}

}  // namespace warpspec
