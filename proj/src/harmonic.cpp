#include "warpspec/harmonic.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "warpspec/closedform.hpp"

namespace warpspec {

namespace {

void require_3d_params(const WarpedMetric& g, double kappa) {
    if (g.dim() != 3)
        throw std::invalid_argument("harmonic profiles need a 3-dimensional metric");
    if (!(kappa > 0.0 && kappa < 4.0))
        throw std::invalid_argument("harmonic profiles need kappa in (0, 4)");
}

}  // namespace

double HarmonicProfile::grad(const WarpedMetric& g, double at) const {
    return c1 * std::pow(g.phi(at), exponent);
}

HarmonicProfile harmonic_profile(const WarpedMetric& g, double kappa,
                                 std::size_t samples) {
    require_3d_params(g, kappa);
    if (samples < 129 || samples % 2 == 0)
        throw std::invalid_argument("profile sampling needs an odd count >= 129");
    const double T = g.length();
    const double p = 4.0 / (4.0 - kappa);
    const double h = T / static_cast<double>(samples);
    const double delta = 0.5 * h;

    HarmonicProfile out;
    out.kappa = kappa;
    out.exponent = p;
    out.t.resize(samples);
    out.du.resize(samples);
    std::vector<double> y(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double t = delta + h * static_cast<double>(k);
        out.t[k] = t;
        const double phi = g.phi(t);
        if (!(phi > 0.0))
            throw std::invalid_argument("warp must be positive on the interior");
        const double q = g.dphi(t) / phi;
        if (!(g.d2phi(t) / phi - q * q < 1e-9))
            throw std::invalid_argument("warp must be log-concave");
        y[k] = std::pow(phi, p);
    }

    const std::vector<double> I = cumulative_simpson(out.t, y);
    // End corrections from the leading power behavior phi ~ const * t.
    const double head = y.front() * delta / (p + 1.0);
    const double tail = y.back() * delta / (p + 1.0);
    const double total = head + I.back() + tail;
    if (!(total > 0.0)) throw std::invalid_argument("degenerate profile quadrature");
    out.c1 = 2.0 / total;

    out.u.resize(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        out.u[k] = -1.0 + out.c1 * (head + I[k]);
        out.du[k] = out.c1 * y[k];
    }
    return out;
}

bool ModelRelationReport::all_pass() const {
    for (const auto& it : items)
        if (it.gating && !it.pass) return false;
    return true;
}

const RelationCheck* ModelRelationReport::find(const std::string& name) const {
    for (const auto& it : items)
        if (it.name == name) return &it;
    return nullptr;
}

namespace {

ModelRelationReport relations_impl(const WarpedMetric& g, double kappa,
                                   const std::function<double(double)>& mu,
                                   const ModelConstants* consts) {
    require_3d_params(g, kappa);
    const double c = 1.0 / kappa;
    const double coef = 2.0 * (6.0 - kappa) / (3.0 * (4.0 - kappa));
    const double p = 4.0 / (4.0 - kappa);
    const double qe = 2.0 / (4.0 - kappa);
    const double Ac = 9.0 * (8.0 - kappa) / (2.0 * (6.0 - kappa));
    const double B = 3.0 * (8.0 - kappa) / (6.0 - kappa);
    const bool verbatim_defined = std::abs(3.0 - kappa) > 1e-9;
    const double Av =
        verbatim_defined ? 9.0 * (8.0 - kappa) / (2.0 * (3.0 - kappa)) : 0.0;

    const HarmonicProfile prof = harmonic_profile(g, kappa, 16001);
    const CubicSpline sdu(prof.t, prof.du);
    const double c1 = prof.c1;
    const double sc1 = std::sqrt(c1);

    const auto grid = interior_grid(g.length(), 2001, 0.005);
    double r1 = 0, r2 = 0, r3 = 0, r3v = 0, r4 = 0, r5 = 0, r6 = 0;
    double rh33 = 0, rmean = 0, rsy = 0, rl = 0;
    const bool model_match =
        consts && g.kind() != WarpKind::Custom &&
        std::abs(g.sin_amplitude() - consts->a) < 1e-9 &&
        std::abs(g.sin_frequency() - consts->b) < 1e-9;

    for (double t : grid) {
        const double phi = g.phi(t), dp = g.dphi(t), ddp = g.d2phi(t);
        const double q = dp / phi;
        const double logcc = ddp / phi - q * q;
        const double f = -coef * q;
        const double fp = -coef * logcc;
        const double m = mu(t);
        const double R = g.scalar_curvature(t);

        const double up = c1 * std::pow(phi, p);
        const double upp = c1 * p * std::pow(phi, p - 1.0) * dp;
        const double lap_u = upp + 2.0 * q * up;

        const double w = sc1 * std::pow(phi, qe);
        const double wp = sc1 * qe * std::pow(phi, qe - 1.0) * dp;
        const double wpp = sc1 * (qe * (qe - 1.0) * std::pow(phi, qe - 2.0) * dp * dp +
                                  qe * std::pow(phi, qe - 1.0) * ddp);
        const double lap_w = wpp + 2.0 * q * wp;

        if (model_match) {
            r1 = std::max(r1, std::abs(f + f_cot(t, *consts, 3)));
        } else {
            const double xi = 2.0 * (6.0 - kappa) / (3.0 * (kappa - 4.0)) * q;
            r1 = std::max(r1, std::abs(f - xi));
        }
        r2 = std::max(r2, std::abs(lap_u + 3.0 * f * up));
        r3 = std::max(r3, std::abs(kappa * m + Ac * f * f - B * fp - 2.0 / (phi * phi)));
        if (verbatim_defined)
            r3v = std::max(r3v,
                           std::abs(kappa * m + Av * f * f - B * fp - 2.0 / (phi * phi)));
        r4 = std::max(r4, std::abs(wp + 3.0 / (6.0 - kappa) * f * w));
        const double eig = -lap_w + c * R * w - m * w;
        r5 = std::max(r5, std::abs(eig));
        r6 = std::max(r6, std::abs(sdu.value(t) / (c1 * std::pow(phi, p)) - 1.0));
        rh33 = std::max(rh33, std::abs(upp + 6.0 / (6.0 - kappa) * f * up));
        rmean = std::max(rmean, std::abs((3.0 * kappa - 12.0) / (6.0 - kappa) * f -
                                         2.0 * q));
        const double H = 2.0 * q, Hp = 2.0 * logcc;
        const double K = 1.0;
        rsy = std::max(rsy,
                       std::abs(R - (2.0 * K / (phi * phi) - 2.0 * Hp - 1.5 * H * H)));
        const double Lw = eig - 2.0 * c * (K - 1.0) / (phi * phi) * w;
        rl = std::max(rl, std::abs(Lw));
    }
    if (!verbatim_defined) r3v = std::numeric_limits<double>::infinity();

    ModelRelationReport rep;
    const double thr = 1e-8;
    auto add = [&](const char* name, double r, double threshold, bool gating,
                   bool pass) {
        rep.items.push_back({name, r, threshold, pass, gating});
    };
    add("item1_f_definition", r1, thr, true, r1 <= thr);
    add("item2_spacetime_harmonic", r2, thr, true, r2 <= thr);
    add("item3_mu_relation", r3, thr, true, r3 <= thr);
    add("item3_mu_relation_verbatim", r3v, 0.1, false, r3v > 0.1);
    add("item4_gradient_identity", r4, thr, true, r4 <= thr);
    add("item5_eigen_equation", r5, thr, true, r5 <= thr);
    add("item6_profile_exponent", r6, thr, true, r6 <= thr);
    add("hessian_33", rh33, thr, true, rh33 <= thr);
    add("mean_curvature", rmean, thr, true, rmean <= thr);
    add("schoen_yau_rewrite", rsy, thr, true, rsy <= thr);
    add("l_operator", rl, thr, true, rl <= thr);
    return rep;
}

}  // namespace

ModelRelationReport check_model_relations(const WarpedMetric& g, double kappa,
                                          double lambda) {
    const SpectralParams p{kappa, lambda};
    p.validate();
    const ModelConstants consts = constants_3d(p);
    return relations_impl(
        g, kappa, [lambda](double) { return lambda; }, &consts);
}

ModelRelationReport check_model_relations(const WarpedMetric& g, double kappa,
                                          const RadialProfile& mu) {
    ProfileInterp imu(mu);
    return relations_impl(
        g, kappa, [&imu](double t) { return imu.value(t); }, nullptr);
}

}  // namespace warpspec
