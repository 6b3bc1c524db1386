#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "warpspec/radial_profile.hpp"

using namespace warpspec;

TEST_CASE("cubic spline reproduces cubics exactly") {
    // not-a-knot is exact on polynomials up to degree three
    auto f = [](double x) { return ((2.0 * x - 1.0) * x + 3.0) * x - 0.5; };
    auto fp = [](double x) { return (6.0 * x - 2.0) * x + 3.0; };
    auto fpp = [](double x) { return 12.0 * x - 2.0; };
    std::vector<double> x = linspace(0.0, 2.0, 9);
    std::vector<double> y;
    for (double xi : x) y.push_back(f(xi));
    CubicSpline s(x, y);
    for (double t : {0.05, 0.33, 1.0, 1.47, 1.95}) {
        CHECK(s.value(t) == doctest::Approx(f(t)).epsilon(1e-13));
        CHECK(s.deriv(t) == doctest::Approx(fp(t)).epsilon(1e-12));
        CHECK(s.deriv2(t) == doctest::Approx(fpp(t)).epsilon(1e-11));
    }
    CHECK(s.integral(0.25, 1.75) == doctest::Approx(6.65625).epsilon(1e-13));
}

TEST_CASE("cubic spline interpolation error decays at fourth order") {
    auto err_at = [](std::size_t n) {
        std::vector<double> x = linspace(0.0, 3.0, n);
        std::vector<double> y;
        for (double xi : x) y.push_back(std::sin(xi));
        CubicSpline s(x, y);
        double worst = 0.0;
        for (double t = 0.01; t < 2.99; t += 0.0103)
            worst = std::max(worst, std::fabs(s.value(t) - std::sin(t)));
        return worst;
    };
    const double e1 = err_at(41);
    const double e2 = err_at(81);
    const double order = std::log2(e1 / e2);
    CHECK(order > 3.5);
    CHECK(order < 4.5);
}

TEST_CASE("spline refuses evaluation outside the knot span") {
    CubicSpline s(linspace(0.0, 1.0, 11),
                  std::vector<double>(11, 1.0));
    CHECK_THROWS_AS((void)s.value(-0.5), std::domain_error);
    CHECK_THROWS_AS((void)s.value(1.5), std::domain_error);
}

TEST_CASE("profile validation rejects malformed tables") {
    RadialProfile p;
    p.t = {0.0, 1.0, 0.5};
    p.v = {0.0, 1.0, 2.0};
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.t = {0.0, 0.5, 1.0};
    p.v = {0.0, 1.0};
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.v = {0.0, 1.0, 2.0};
    CHECK_NOTHROW(p.validate());
    p.d1 = {1.0};
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("profile interp prefers analytic derivative columns") {
    // value column is sin, derivative columns deliberately constant
    RadialProfile p;
    p.t = linspace(0.0, 1.0, 101);
    for (double t : p.t) {
        p.v.push_back(std::sin(t));
        p.d1.push_back(7.0);
        p.d2.push_back(-3.0);
    }
    ProfileInterp ip(p);
    CHECK(ip.value(0.5) == doctest::Approx(std::sin(0.5)).epsilon(1e-9));
    CHECK(ip.deriv(0.5) == doctest::Approx(7.0).epsilon(1e-12));
    CHECK(ip.deriv2(0.5) == doctest::Approx(-3.0).epsilon(1e-12));
}

TEST_CASE("interior grid stays inside the domain") {
    const auto g = interior_grid(2.0, 5, 0.01);
    CHECK(g.size() == 5);
    CHECK(g.front() == doctest::Approx(0.02));
    CHECK(g.back() == doctest::Approx(1.98));
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
}

TEST_CASE("cumulative simpson integrates smooth functions at high order") {
    const auto x = linspace(0.0, 1.0, 201);
    std::vector<double> y;
    for (double xi : x) y.push_back(std::exp(xi));
    const auto I = cumulative_simpson(x, y);
    REQUIRE(I.size() == x.size());
    CHECK(I.front() == 0.0);
    for (std::size_t k = 0; k < x.size(); ++k)
        CHECK(I[k] == doctest::Approx(std::exp(x[k]) - 1.0).epsilon(1e-10));
}
