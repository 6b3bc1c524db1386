#pragma once

// Radial harmonic-with-drift profile on 3-dimensional warped metrics and
// the identity chain tying it to the warp: the gradient obeys
// |grad u| = c1 * phi^{4/(4-kappa)}, u runs from -1 to +1 across the
// interval, and a family of pointwise relations links u, f, mu, the mean
// curvature, and the scalar curvature.  Relation 3 exists in two readings
// that differ in one denominator; both are evaluated and reported, with
// only the corrected one gating.

#include <optional>
#include <string>
#include <vector>

#include "warpspec/metric.hpp"
#include "warpspec/radial_profile.hpp"

namespace warpspec {

struct HarmonicProfile {
    std::vector<double> t;   // uniform interior grid
    std::vector<double> u;   // profile, -1 at the left end to +1 at the right
    std::vector<double> du;  // |grad u| = u' > 0 on the interior
    double c1 = 0.0;         // gradient amplitude
    double kappa = 0.0;
    double exponent = 0.0;   // 4/(4-kappa)

    // u' at arbitrary interior points through the closed form c1 * phi^exponent.
    double grad(const WarpedMetric& g, double at) const;
};

// Builds the profile on [delta, T-delta] with delta = T/(samples-1)/2
// rounded into the uniform grid; samples must be odd and >= 129.  Requires
// n = 3, kappa in (0, 4), and a log-concave warp.
HarmonicProfile harmonic_profile(const WarpedMetric& g, double kappa,
                                 std::size_t samples = 4001);

struct RelationCheck {
    std::string name;
    double residual = 0.0;
    double threshold = 0.0;
    bool pass = false;
    bool gating = true;  // informational rows (the verbatim variant) do not gate
};

struct ModelRelationReport {
    std::vector<RelationCheck> items;
    bool all_pass() const;  // over gating rows only
    const RelationCheck* find(const std::string& name) const;
};

// Evaluates the relation chain with the constant potential mu = lambda
// (the matched-model case).  The metric must be 3-dimensional.
ModelRelationReport check_model_relations(const WarpedMetric& g, double kappa,
                                          double lambda);

// Same chain with a sampled potential profile.
ModelRelationReport check_model_relations(const WarpedMetric& g, double kappa,
                                          const RadialProfile& mu);

}  // namespace warpspec
