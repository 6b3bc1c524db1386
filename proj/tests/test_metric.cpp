#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "warpspec/closedform.hpp"
#include "warpspec/metric.hpp"

using namespace warpspec;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("round sphere has constant scalar curvature n(n-1)") {
    for (int n : {3, 4, 7}) {
        const WarpedMetric g = WarpedMetric::round_sphere(n);
        CHECK(g.length() == doctest::Approx(kPi).epsilon(1e-15));
        CHECK(g.closes_at_ends());
        for (double t : {0.1, 1.0, kPi / 2, 2.9})
            CHECK(g.scalar_curvature(t) == double(n) * (n - 1));
    }
}

TEST_CASE("model warp curvature matches the midpoint reference") {
    // n = 3, kappa = 1, lambda = 6 model: R at the midpoint is 192/35
    const ModelConstants c = constants_nd(3, {1.0, 6.0});
    const WarpedMetric g = WarpedMetric::model_sin(3, c.a, c.b);
    CHECK(g.scalar_curvature(g.length() / 2) ==
          doctest::Approx(192.0 / 35.0).epsilon(1e-14));
}

TEST_CASE("scaling covariance: R scales inversely with the metric square") {
    // lambda^2 g has warp lambda*a*sin(b/lambda * t); R drops by lambda^-2
    const double a = 0.9, b = 1.1, s = 1.7;
    const WarpedMetric g1 = WarpedMetric::model_sin(4, a, b);
    const WarpedMetric g2 = WarpedMetric::model_sin(4, s * a, b / s);
    for (double t : {0.3, 0.9, 1.8}) {
        CHECK(g2.scalar_curvature(s * t) ==
              doctest::Approx(g1.scalar_curvature(t) / (s * s)).epsilon(1e-13));
        CHECK(g2.mean_curvature(s * t) ==
              doctest::Approx(g1.mean_curvature(t) / s).epsilon(1e-13));
    }
}

TEST_CASE("custom warp reproduces the analytic curvature of its source") {
    const WarpedMetric model = WarpedMetric::model_sin(3, 1.2, 0.8);
    const WarpedMetric cust = WarpedMetric::custom(3, sample_warp(model, 2001));
    CHECK(cust.kind() == WarpKind::Custom);
    CHECK(cust.length() == doctest::Approx(model.length()).epsilon(1e-12));
    for (double t : {0.2, 1.0, 2.0, 3.5}) {
        CHECK(cust.phi(t) == doctest::Approx(model.phi(t)).epsilon(1e-12));
        CHECK(cust.scalar_curvature(t) ==
              doctest::Approx(model.scalar_curvature(t)).epsilon(1e-9));
    }
}

TEST_CASE("curvature profile locates the model minimum at the midpoint") {
    const ModelConstants c = constants_nd(3, {1.0, 6.0});
    const WarpedMetric g = WarpedMetric::model_sin(3, c.a, c.b);
    const auto rep = scalar_curvature_profile(g, interior_grid(g.length(), 901, 0.01));
    CHECK(rep.R_min == doctest::Approx(192.0 / 35.0).epsilon(1e-6));
    CHECK(rep.R_min_at == doctest::Approx(g.length() / 2).epsilon(1e-2));
    CHECK(rep.K_assumed == 1.0);
    REQUIRE(rep.R.size() == rep.t.size());
    REQUIRE(rep.H.size() == rep.t.size());
}

TEST_CASE("radial laplacian kills constants and reproduces separable modes") {
    const WarpedMetric g = WarpedMetric::round_sphere(3);
    RadialProfile u;
    u.t = interior_grid(g.length(), 501, 0.01);
    u.v.assign(u.t.size(), 3.25);
    u.d1.assign(u.t.size(), 0.0);
    u.d2.assign(u.t.size(), 0.0);
    const RadialProfile lap0 = radial_laplacian(g, u);
    for (double v : lap0.v) CHECK(std::fabs(v) < 1e-12);

    // cos(t) is the first nontrivial radial eigenfunction on the 3-sphere:
    // Delta cos = -n cos with n = 3
    RadialProfile w;
    w.t = u.t;
    for (double t : w.t) {
        w.v.push_back(std::cos(t));
        w.d1.push_back(-std::sin(t));
        w.d2.push_back(-std::cos(t));
    }
    const RadialProfile lap = radial_laplacian(g, w);
    for (std::size_t i = 0; i < lap.size(); ++i)
        CHECK(lap.v[i] == doctest::Approx(-3.0 * w.v[i]).epsilon(1e-11));
}

TEST_CASE("domination comparison: reflexive, strict, and false cases") {
    const WarpedMetric g = WarpedMetric::model_sin(3, 1.0, 1.0);
    CHECK(std::string(metric_dominates(g, g).name()) == "true_equal");

    const WarpedMetric big = WarpedMetric::model_sin(3, 1.05, 1.0);
    const auto strict = metric_dominates(big, g);
    CHECK(std::string(strict.name()) == "true_strict");
    CHECK(strict.margin > 0.0);

    const auto fails = metric_dominates(g, big);
    CHECK(std::string(fails.name()) == "false");
    CHECK(fails.margin < 0.0);

    // longer domain with pointwise domination over the shared range
    const WarpedMetric longer = WarpedMetric::model_sin(3, 1.0, 0.9);
    // phi_long(t) = sin(0.9 t) vs phi(t) = sin(t): sin(0.9 t) < sin(t)
    // on the first half, so this direction must fail
    CHECK(std::string(metric_dominates(longer, g).name()) == "false");
}

TEST_CASE("drift coefficients land on the closed form within one percent") {
    for (double kappa : {0.0, 0.5, 1.0, 2.0, 3.0}) {
        CAPTURE(kappa);
        const ModelConstants c = constants_nd(3, {kappa, 6.0});
        const WarpedMetric g = WarpedMetric::model_sin(3, c.a, c.b);
        const DriftReport rep = drift_asymptotics(g, kappa);
        CHECK(rep.expected == doctest::Approx(4.0 / (4.0 - kappa)).epsilon(1e-13));
        CHECK(std::fabs(rep.c1 - rep.expected) <= 0.01 * std::fabs(rep.expected));
        CHECK(std::fabs(rep.c2 - rep.expected) <= 0.01 * std::fabs(rep.expected));
    }
}

TEST_CASE("arclength normalization with unit lapse is the identity") {
    const WarpedMetric model = WarpedMetric::model_sin(3, 1.1, 0.9);
    const RadialProfile tab = sample_warp(model, 2001);
    RadialProfile w;
    w.t = tab.t;
    w.v.assign(w.t.size(), 1.0);
    w.d1.assign(w.t.size(), 0.0);
    w.d2.assign(w.t.size(), 0.0);
    const WarpedMetric out = normalize_arclength(3, w, tab);
    CHECK(out.length() == doctest::Approx(model.length()).epsilon(1e-12));
    for (double t : {0.25, 1.0, 2.5})
        CHECK(out.phi(t) == doctest::Approx(model.phi(t)).epsilon(1e-11));
}

TEST_CASE("arclength normalization stretches the domain by the lapse") {
    const WarpedMetric model = WarpedMetric::model_sin(3, 1.1, 0.9);
    const RadialProfile tab = sample_warp(model, 2001);
    const double e = 0.05;
    RadialProfile w;
    w.t = tab.t;
    w.v.assign(w.t.size(), 1.0 + e);
    w.d1.assign(w.t.size(), 0.0);
    w.d2.assign(w.t.size(), 0.0);
    const WarpedMetric out = normalize_arclength(3, w, tab);
    CHECK(out.length() == doctest::Approx((1.0 + e) * model.length()).epsilon(1e-12));
    // warp value at stretched arclength equals the original one
    for (double t : {0.3, 1.4, 2.2})
        CHECK(out.phi((1.0 + e) * t) == doctest::Approx(model.phi(t)).epsilon(1e-10));
    CHECK_THROWS_AS((void)[&] {
        RadialProfile bad = w;
        bad.v.assign(bad.v.size(), 0.5);  // lapse below one shrinks: rejected
        return normalize_arclength(3, bad, tab);
    }(), std::invalid_argument);
}

TEST_CASE("warp table round trips through CSV") {
    const WarpedMetric model = WarpedMetric::model_sin(4, 0.8, 1.3);
    RadialProfile tab = sample_warp(model, 257);
    const std::string path = "/tmp/warpspec_test_table.csv";
    write_warp_csv(path, tab);
    const RadialProfile back = read_warp_csv(path);
    REQUIRE(back.size() == tab.size());
    REQUIRE(back.has_d1());
    REQUIRE(back.has_d2());
    for (std::size_t i = 0; i < tab.size(); ++i) {
        CHECK(back.t[i] == tab.t[i]);  // 17-digit round trip is exact
        CHECK(back.v[i] == tab.v[i]);
        CHECK(back.d1[i] == tab.d1[i]);
        CHECK(back.d2[i] == tab.d2[i]);
    }
    std::remove(path.c_str());
}

TEST_CASE("warp table reader rejects malformed input") {
    const std::string path = "/tmp/warpspec_bad_table.csv";
    auto write_file = [&](const char* text) {
        std::FILE* f = std::fopen(path.c_str(), "w");
        REQUIRE(f);
        std::fputs(text, f);
        std::fclose(f);
    };
    write_file("x,phi\n0,0\n1,1\n");
    CHECK_THROWS_AS((void)read_warp_csv(path), std::invalid_argument);
    write_file("t,phi\n0,0\n1,abc\n");
    CHECK_THROWS_AS((void)read_warp_csv(path), std::invalid_argument);
    write_file("t,phi\n0,0\n");
    CHECK_THROWS_AS((void)read_warp_csv(path), std::invalid_argument);
    write_file("t,phi\n0.5,1\n1,1\n2,1\n");  // grid must start at zero
    CHECK_THROWS_AS((void)WarpedMetric::custom(3, read_warp_csv(path)),
                    std::invalid_argument);
    std::remove(path.c_str());
}

TEST_CASE("custom warp rejects nonpositive interior samples") {
    RadialProfile tab;
    tab.t = linspace(0.0, 2.0, 101);
    for (double t : tab.t) tab.v.push_back(std::sin(kPi * t / 2.0) - 0.2);
    CHECK_THROWS_AS((void)WarpedMetric::custom(3, tab), std::invalid_argument);
}

TEST_CASE("dimension validation") {
    CHECK_THROWS_AS((void)WarpedMetric::round_sphere(2), std::invalid_argument);
    CHECK_THROWS_AS((void)WarpedMetric::model_sin(1, 1.0, 1.0),
                    std::invalid_argument);
}
