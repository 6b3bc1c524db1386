#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "warpspec/closedform.hpp"
#include "warpspec/harmonic.hpp"
#include "warpspec/metric.hpp"

using namespace warpspec;

namespace {

WarpedMetric model3(double kappa, double lambda) {
    const ModelConstants c = constants_3d({kappa, lambda});
    return WarpedMetric::model_sin(3, c.a, c.b);
}

}  // namespace

TEST_CASE("harmonic profile runs from -1 to 1 and is antisymmetric") {
    const WarpedMetric g = model3(1.0, 6.0);
    const HarmonicProfile prof = harmonic_profile(g, 1.0);
    const std::size_t m = prof.t.size();
    REQUIRE(m >= 129);
    CHECK(std::fabs(prof.u.front() + 1.0) < 1e-3);
    CHECK(std::fabs(prof.u.back() - 1.0) < 1e-3);
    for (std::size_t k = 1; k < m; ++k) CHECK(prof.u[k] > prof.u[k - 1]);
    for (std::size_t k = 0; k < m; ++k)
        CHECK(std::fabs(prof.u[k] + prof.u[m - 1 - k]) < 1e-10);
    CHECK(prof.exponent == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("gradient amplitude ratio between midpoint and quarter point") {
    // |grad u| = c1 phi^{4/(4-kappa)}; at kappa = 1 the midpoint-to-quarter
    // ratio is (1/sin(pi/4))^{4/3} = 2^{2/3}
    const WarpedMetric g = model3(1.0, 6.0);
    const HarmonicProfile prof = harmonic_profile(g, 1.0);
    const double T = g.length();
    const double ratio = prof.grad(g, T / 2.0) / prof.grad(g, T / 4.0);
    CHECK(ratio == doctest::Approx(1.5874010519681994748).epsilon(1e-13));

    // sampled column agrees with the closed-form gradient
    for (std::size_t k = 0; k < prof.t.size(); k += 211)
        CHECK(prof.du[k] ==
              doctest::Approx(prof.grad(g, prof.t[k])).epsilon(1e-12));
}

TEST_CASE("harmonic profile validates its inputs") {
    const WarpedMetric g = model3(1.0, 6.0);
    CHECK_THROWS_AS((void)harmonic_profile(g, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)harmonic_profile(g, 4.2), std::invalid_argument);
    CHECK_THROWS_AS((void)harmonic_profile(g, 1.0, 128), std::invalid_argument);
    CHECK_THROWS_AS((void)harmonic_profile(g, 1.0, 64), std::invalid_argument);
    CHECK_THROWS_AS(
        (void)harmonic_profile(WarpedMetric::round_sphere(4), 1.0),
        std::invalid_argument);

    // a warp with a convex log bump is rejected
    RadialProfile tab;
    tab.t = linspace(0.0, 2.0, 801);
    for (double t : tab.t)
        tab.v.push_back(1.0 + 0.3 * std::sin(3.14159265358979323846 * t));
    const WarpedMetric bump = WarpedMetric::custom(3, tab);
    CHECK_THROWS_AS((void)harmonic_profile(bump, 1.0), std::invalid_argument);
}

TEST_CASE("relation chain closes on the matched model") {
    for (double kappa : {0.5, 1.0, 2.0}) {
        CAPTURE(kappa);
        const WarpedMetric g = model3(kappa, 6.0);
        const ModelRelationReport rep = check_model_relations(g, kappa, 6.0);
        CHECK(rep.all_pass());
        for (const auto& item : rep.items) {
            CAPTURE(item.name);
            if (item.gating) CHECK(item.residual <= item.threshold);
        }
        const RelationCheck* verbatim = rep.find("item3_mu_relation_verbatim");
        REQUIRE(verbatim != nullptr);
        CHECK_FALSE(verbatim->gating);
        CHECK(verbatim->residual > 0.1);  // the one-denominator variant breaks
        CHECK(verbatim->pass);
    }
}

TEST_CASE("verbatim variant is reported undefined at its pole") {
    const WarpedMetric g = model3(3.0, 6.0);
    const ModelRelationReport rep = check_model_relations(g, 3.0, 6.0);
    const RelationCheck* verbatim = rep.find("item3_mu_relation_verbatim");
    REQUIRE(verbatim != nullptr);
    CHECK(std::isinf(verbatim->residual));
    CHECK(verbatim->pass);  // still counts as detecting the broken variant
    CHECK(rep.all_pass());
}

TEST_CASE("relation chain accepts a sampled potential") {
    const WarpedMetric g = model3(1.0, 6.0);
    const RadialProfile mu = mu_profile(g, 1.0);
    const ModelRelationReport rep = check_model_relations(g, 1.0, mu);
    CHECK(rep.all_pass());
}

TEST_CASE("relation chain rejects wrong dimensions") {
    const WarpedMetric g = WarpedMetric::round_sphere(4);
    CHECK_THROWS_AS((void)check_model_relations(g, 1.0, 6.0),
                    std::invalid_argument);
}
