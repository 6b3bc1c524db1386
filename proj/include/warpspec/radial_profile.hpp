#pragma once

// Sampled radial profiles and the cubic-spline machinery used to evaluate
// them between samples.  A profile is a table of values over a strictly
// increasing grid on the radial coordinate t, optionally carrying analytic
// first/second derivative columns.  When derivative columns are absent,
// derivatives come from a not-a-knot cubic spline of the value column.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace warpspec {

// Natural cubic interpolation with not-a-knot end conditions.  For fewer
// than four knots the spline degenerates to the unique interpolating
// polynomial.  Evaluation outside the knot span is refused.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y);

    double value(double t) const;
    double deriv(double t) const;
    double deriv2(double t) const;

    // Exact integral of the piecewise cubic over [a, b] within the knot span.
    double integral(double a, double b) const;

    double front() const { return x_.front(); }
    double back() const { return x_.back(); }
    bool empty() const { return x_.empty(); }

private:
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> m_;  // second derivatives at the knots

    std::size_t locate(double t) const;
    double piece_integral(std::size_t i, double a, double b) const;
};

struct RadialProfile {
    std::vector<double> t;   // strictly increasing sample abscissae
    std::vector<double> v;   // sampled values
    std::vector<double> d1;  // optional first derivative column (empty if absent)
    std::vector<double> d2;  // optional second derivative column
    std::string label;
    std::string note;        // free-form diagnostic remarks

    bool has_d1() const { return !d1.empty(); }
    bool has_d2() const { return !d2.empty(); }
    std::size_t size() const { return t.size(); }

    void validate() const;  // throws std::invalid_argument on malformed tables
};

// Spline-backed evaluator over a RadialProfile.  Derivative queries prefer
// the profile's analytic columns (splined themselves for off-grid points)
// over differentiating the value spline.
class ProfileInterp {
public:
    explicit ProfileInterp(const RadialProfile& p);

    double value(double t) const { return sv_.value(t); }
    double deriv(double t) const;
    double deriv2(double t) const;
    double front() const { return sv_.front(); }
    double back() const { return sv_.back(); }

private:
    CubicSpline sv_;
    std::optional<CubicSpline> sd1_;
    std::optional<CubicSpline> sd2_;
};

// count equally spaced points on [lo, hi] inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t count);

// Interior grid for a domain [0, T]: count points on [T*margin, T*(1-margin)].
std::vector<double> interior_grid(double T, std::size_t count, double margin = 0.005);

// Cumulative composite-Simpson antiderivative of samples y over a uniform
// grid x (n >= 3).  Returns I with I[0] = 0 and I[k] = integral up to x[k].
// Odd-index nodes use the half-interval Newton-Cotes closure.
std::vector<double> cumulative_simpson(const std::vector<double>& x,
                                       const std::vector<double>& y);

}  // namespace warpspec
