// Acceptance gate: one line per criterion, nonzero exit when any fails.
// argv[1] is the path to the command-line binary used by the subprocess
// checks; the numerical criteria run the library in-process.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "warpspec/closedform.hpp"
#include "warpspec/harmonic.hpp"
#include "warpspec/metric.hpp"
#include "warpspec/numfmt.hpp"
#include "warpspec/report.hpp"
#include "warpspec/spectral.hpp"

using namespace warpspec;

namespace {

constexpr double kPi = 3.14159265358979323846;

int g_failures = 0;

void report(int idx, const std::string& name, bool pass,
            const std::string& detail) {
    std::printf("%s criterion %d (%s): %s\n", pass ? "PASS" : "FAIL", idx,
                name.c_str(), detail.c_str());
    if (!pass) ++g_failures;
}

WarpedMetric model_for(int n, double kappa, double lambda) {
    const ModelConstants c = constants_nd(n, {kappa, lambda});
    return WarpedMetric::model_sin(n, c.a, c.b);
}

int run_cli(const std::string& cmd) {
    const int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    if (WIFEXITED(rc)) return WEXITSTATUS(rc);
    return -1;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// pulls the first numeric value following "<key>": in our own JSON output
bool json_number(const std::string& text, const std::string& key, double& out) {
    const std::string needle = "\"" + key + "\": ";
    const auto pos = text.find(needle);
    if (pos == std::string::npos) return false;
    auto end = text.find_first_of(",\n", pos + needle.size());
    if (end == std::string::npos) return false;
    return parse_double(
        std::string(text, pos + needle.size(), end - pos - needle.size()), out);
}

// --- criterion 1: closed-form constants across the parameter lattice ------

void criterion_constants() {
    const auto start = std::chrono::steady_clock::now();
    double worst_res = 0.0, worst_n3 = 0.0;
    const double kappas[] = {0.1, 0.5, 1.0, 2.0, 3.0, 3.9};
    for (int n = 3; n <= 8; ++n) {
        const double lambdas[] = {0.5, 1.0, 6.0, double(n) * (n - 1)};
        for (double k : kappas)
            for (double lam : lambdas) {
                SpectralParams p{k, lam};
                const ModelConstants c = constants_nd(n, p);
                worst_res = std::max(worst_res, beta2_residual(c, n));
                const auto rs = constant_system_residuals(c, p, n);
                worst_res = std::max({worst_res, rs[0], rs[1]});
                if (n == 3) {
                    const ModelConstants c3 = constants_3d(p);
                    worst_n3 = std::max(
                        {worst_n3, std::fabs(c3.a - c.a), std::fabs(c3.b - c.b),
                         std::fabs(c3.a1 - c.a1), std::fabs(c3.beta2 - c.beta2),
                         std::fabs(c3.lambda_exp - c.lambda_exp),
                         std::fabs(*c3.alpha - c.a1)});
                }
            }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const bool pass = worst_res < 1e-12 && worst_n3 < 1e-14 && secs < 1.0;
    report(1, "closed-form constants",
           pass,
           "max residual " + fmt17(worst_res) + ", max n=3 gap " +
               fmt17(worst_n3) + ", " + fmt17(secs) + " s");
}

// --- criteria 2 and 7: eigenvalue runs over twelve parameter combos -------

void criterion_eigen_runs() {
    const struct {
        int n;
        double kappa, lambda;
    } combos[] = {
        {3, 0.5, 6.0}, {3, 1.0, 6.0},  {3, 2.0, 6.0},  {4, 0.5, 12.0},
        {4, 1.0, 1.0}, {4, 2.0, 12.0}, {5, 0.5, 20.0}, {5, 1.0, 20.0},
        {5, 2.0, 1.0}, {6, 0.5, 30.0}, {6, 1.0, 30.0}, {6, 2.0, 30.0},
    };
    double worst_rel = 0.0, worst_l2 = 0.0, min_gap = 1e300;
    double order_lo = 1e300, order_hi = -1e300;
    bool ok = true;
    std::string note;
    for (const auto& cb : combos) {
        const ModelConstants c = constants_nd(cb.n, {cb.kappa, cb.lambda});
        const WarpedMetric g = WarpedMetric::model_sin(cb.n, c.a, c.b);
        const SpectralParams p{cb.kappa, cb.lambda};
        const double T = g.length();
        const Schedule sched{{512, 1024, 2048},
                             {T / 50.0, T / 100.0, T / 200.0}};
        EigenSolution sol;
        try {
            sol = lambda_c(g, p, nullptr, sched);
        } catch (const std::exception& e) {
            ok = false;
            note = std::string("run failed: ") + e.what();
            break;
        }
        worst_rel =
            std::max(worst_rel, std::fabs(sol.value - cb.lambda) / cb.lambda);
        order_lo = std::min(order_lo, sol.observed_order);
        order_hi = std::max(order_hi, sol.observed_order);
        min_gap = std::min(min_gap, sol.sector_gap);

        // finest-level profile against the closed form sin(bt)^m
        const double h = sol.nodes[1] - sol.nodes[0];
        std::vector<double> u(sol.nodes.size());
        double unorm = 0.0, vnorm = 0.0;
        std::vector<double> mass(sol.nodes.size());
        for (std::size_t i = 0; i < sol.nodes.size(); ++i) {
            mass[i] = std::pow(g.phi(sol.nodes[i]), cb.n - 1) * h;
            u[i] = std::pow(std::sin(c.b * sol.nodes[i]), c.lambda_exp);
            unorm += u[i] * u[i] * mass[i];
            vnorm += sol.vec[i] * sol.vec[i] * mass[i];
        }
        double dist2 = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double d = sol.vec[i] / std::sqrt(vnorm) -
                             u[i] / std::sqrt(unorm);
            dist2 += d * d * mass[i];
        }
        worst_l2 = std::max(worst_l2, std::sqrt(dist2));
    }
    const bool pass2 = ok && worst_rel <= 1e-3 && order_lo >= 1.7 &&
                       order_hi <= 2.3 && worst_l2 <= 1e-3;
    report(2, "eigenvalue reproduction",
           pass2,
           ok ? "12 combos, max rel err " + fmt17(worst_rel) + ", orders [" +
                    fmt17(order_lo) + ", " + fmt17(order_hi) +
                    "], max profile L2 " + fmt17(worst_l2)
              : note);
    report(7, "sector ordering margin", ok && min_gap > 0.1,
           ok ? "min gap " + fmt17(min_gap) : note);
}

// --- criterion 3: eigen identity on analytic and sampled warps ------------

void criterion_eigen_identity() {
    double worst = 0.0;
    for (int n = 3; n <= 6; ++n)
        for (double k : {0.5, 1.0, 2.0}) {
            const double lam = 2.0 * n;
            worst = std::max(worst, verify_eigen_mu(model_for(n, k, lam), k));
        }

    RadialProfile tab;
    tab.t = linspace(0.0, kPi, 4001);
    for (double t : tab.t) {
        const double s = std::sin(t), s3 = std::sin(3.0 * t);
        tab.v.push_back(s + 0.05 * s3);
        tab.d1.push_back(std::cos(t) + 0.15 * std::cos(3.0 * t));
        tab.d2.push_back(-s - 0.45 * s3);
    }
    const WarpedMetric cust = WarpedMetric::custom(3, tab);
    const double r1 = verify_eigen_mu(cust, 1.0, 201, 0.02);
    const double r2 = verify_eigen_mu(cust, 1.0, 401, 0.02);
    const double r3 = verify_eigen_mu(cust, 1.0, 801, 0.02);
    const double o1 = std::log2(r1 / r2), o2 = std::log2(r2 / r3);
    const bool pass = worst < 1e-8 && o1 > 1.7 && o1 < 2.3 && o2 > 1.7 &&
                      o2 < 2.3;
    report(3, "eigen identity", pass,
           "analytic max " + fmt17(worst) + ", sampled orders " + fmt17(o1) +
               " / " + fmt17(o2));
}

// --- criterion 4: relation chain -------------------------------------------

void criterion_relations() {
    bool pass = true;
    double worst = 0.0, min_verbatim = 1e300;
    for (double k : {0.5, 1.0, 2.0}) {
        const WarpedMetric g = model_for(3, k, 6.0);
        const ModelRelationReport rep = check_model_relations(g, k, 6.0);
        for (const auto& item : rep.items) {
            if (item.gating) {
                worst = std::max(worst, item.residual);
                if (!(item.residual <= 1e-8)) pass = false;
            } else {
                min_verbatim = std::min(min_verbatim, item.residual);
                if (!(item.residual > 0.1)) pass = false;
            }
        }
    }
    report(4, "model relation chain", pass,
           "max gating residual " + fmt17(worst) + ", min variant residual " +
               fmt17(min_verbatim));
}

// --- criterion 5: weighted-laplacian drift ---------------------------------

void criterion_drift() {
    bool pass = true;
    double worst = 0.0;
    for (double k : {0.0, 0.5, 1.0, 2.0, 3.0}) {
        const WarpedMetric g = model_for(3, k, 6.0);
        const DriftReport rep = drift_asymptotics(g, k);
        const double want = 4.0 / (4.0 - k);
        const double rel = std::max(std::fabs(rep.c1 - want),
                                    std::fabs(rep.c2 - want)) /
                           want;
        worst = std::max(worst, rel);
        if (!(rel <= 0.01)) pass = false;
    }
    report(5, "drift coefficients", pass, "max rel dev " + fmt17(worst));
}

// --- criterion 6: rigidity sweep -------------------------------------------

void criterion_sweep() {
    RunConfig cfg;
    cfg.command = "rigidity-sweep";
    cfg.n = 3;
    cfg.kappa = 1.0;
    cfg.lambda = 6.0;
    cfg.amplitudes = {0.0, 0.01, 0.05, 0.1};
    ReportBundle b;
    try {
        b = cmd_rigidity_sweep(cfg);
    } catch (const std::exception& e) {
        report(6, "rigidity sweep", false, std::string("run failed: ") + e.what());
        return;
    }
    bool pass = true;
    std::string why;
    for (const auto& v : b.verdicts)
        if (!v.pass) {
            pass = false;
            why += v.name + " ";
        }

    // independently computed eigenvalues for the enlarged metrics
    const double expect[] = {6.0, 5.9322101165878635734, 5.6755394656763170823,
                             5.3825259262697814757};
    double worst_rel = 0.0;
    for (std::size_t i = 0; i < b.csv_rows.size(); ++i) {
        const std::string& row = b.csv_rows[i];
        // epsilon,dominates,lambda_c,gap,err
        std::vector<std::string> cells;
        std::size_t pos = 0;
        while (true) {
            const auto c = row.find(',', pos);
            cells.push_back(row.substr(
                pos, c == std::string::npos ? std::string::npos : c - pos));
            if (c == std::string::npos) break;
            pos = c + 1;
        }
        double lc = 0.0;
        if (cells.size() != 5 || !parse_double(cells[2], lc)) {
            pass = false;
            why += "bad row ";
            break;
        }
        worst_rel = std::max(worst_rel, std::fabs(lc - expect[i]) / 6.0);
    }
    if (worst_rel > 1e-3) {
        pass = false;
        why += "reference mismatch ";
    }
    report(6, "rigidity sweep", pass,
           pass ? "verdicts clean, max rel dev from references " +
                      fmt17(worst_rel)
                : "failed: " + why);
}

// --- criterion 8: curvature infimum ----------------------------------------

void criterion_scalar_inf() {
    bool pass = true;
    for (int n = 3; n <= 8; ++n)
        if (scalar_inf(WarpedMetric::round_sphere(n)) != double(n) * (n - 1))
            pass = false;
    const double model = scalar_inf(model_for(3, 1.0, 6.0));
    const double want = 192.0 / 35.0;
    if (!(std::fabs(model - want) <= 1e-10)) pass = false;
    report(8, "curvature infimum", pass,
           "round exact, model dev " + fmt17(std::fabs(model - want)));
}

// --- criterion 9: command-line behavior ------------------------------------

void criterion_cli(const std::string& cli) {
    bool pass = true;
    std::string why;
    const std::string dir = "/tmp/warpspec_acceptance";
    (void)run_cli("mkdir -p " + dir);

    // byte-identical repeated runs
    const std::string o1 = dir + "/c1.json", o2 = dir + "/c2.json";
    if (run_cli(cli + " constants --n 5 --kappa 2 --lambda 20 --out " + o1) != 0 ||
        run_cli(cli + " constants --n 5 --kappa 2 --lambda 20 --out " + o2) != 0) {
        pass = false;
        why += "constants run failed; ";
    } else if (slurp(o1) != slurp(o2) || slurp(o1).empty()) {
        pass = false;
        why += "output not byte-stable; ";
    }

    // malformed configuration must exit 2
    const std::string badcfg = dir + "/bad.cfg";
    {
        std::ofstream f(badcfg);
        f << "no_such_key = 1\n";
    }
    if (run_cli(cli + " constants --config " + badcfg + " >/dev/null 2>&1") != 2) {
        pass = false;
        why += "bad config exit code; ";
    }

    // a noisy warp table must abort with the numerical exit code
    const std::string noisy = dir + "/noisy.csv";
    {
        std::ofstream f(noisy);
        f << "t,phi\n";
        const auto ts = linspace(0.0, kPi, 2001);
        for (std::size_t k = 0; k < ts.size(); ++k) {
            const double wiggle = 1.0 + 1e-3 * (k % 2 == 0 ? 1.0 : -1.0);
            f << fmt17(ts[k]) << "," << fmt17(std::sin(ts[k]) * wiggle) << "\n";
        }
    }
    if (run_cli(cli + " lambda-c --metric file:" + noisy +
                " >/dev/null 2>&1") != 3) {
        pass = false;
        why += "noisy table exit code; ";
    }

    // emitted model table round trips through an eigenvalue run
    const std::string tab = dir + "/model.csv";
    const std::string j1 = dir + "/file_run.json", j2 = dir + "/model_run.json";
    if (run_cli(cli + " emit-model --samples 4001 --out " + tab +
                " >/dev/null") != 0 ||
        run_cli(cli + " lambda-c --metric file:" + tab + " --out " + j1) != 0 ||
        run_cli(cli + " lambda-c --out " + j2) != 0) {
        pass = false;
        why += "round trip runs failed; ";
    } else {
        double v1 = 0.0, v2 = 0.0;
        if (!json_number(slurp(j1), "lambda_c", v1) ||
            !json_number(slurp(j2), "lambda_c", v2) ||
            std::fabs(v1 - v2) / 6.0 > 1e-6) {
            pass = false;
            why += "round trip mismatch; ";
        }
    }
    report(9, "command-line behavior", pass, pass ? "all checks" : why);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <path-to-cli>\n", argv[0]);
        return 2;
    }
    criterion_constants();
    criterion_eigen_runs();
    criterion_eigen_identity();
    criterion_relations();
    criterion_drift();
    criterion_sweep();
    criterion_scalar_inf();
    criterion_cli(argv[1]);
    if (g_failures == 0) {
        std::puts("all criteria passed");
        return 0;
    }
    std::printf("%d criteria failed\n", g_failures);
    return 1;
}
