// Command-line front end.  Exit codes: 0 success, 1 a verdict failed,
// 2 invalid input, 3 a numerical run failed its convergence diagnostics.

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "warpspec/numfmt.hpp"
#include "warpspec/report.hpp"
#include "warpspec/spectral.hpp"

namespace {

struct SubOptions {
    CLI::App* sub = nullptr;
    std::map<std::string, CLI::Option*> opts;  // config-file key -> option
};

}  // namespace

int main(int argc, char** argv) {
    using warpspec::RunConfig;

    CLI::App app{
        "Spectral constants of warped product metrics: closed-form model "
        "constants, eigenvalue refinement runs, identity suites, and "
        "rigidity sweeps."};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    std::string schedule_spec;
    std::string amplitudes_spec;
    std::vector<std::string> tol_specs;

    const struct {
        const char* name;
        const char* help;
    } kSubs[] = {
        {"constants", "Closed-form model constants and their residual checks"},
        {"lambda-c", "First spectral constant via a refinement schedule"},
        {"verify",
         "Identity suites: closed-form, f-ode, xi-ode, mu, model-relations, "
         "eigenfunction, drift, all"},
        {"rigidity-sweep",
         "Eigenvalue gap under metric enlargement (angular-scale or stretch)"},
        {"mu-profile", "Potential profile of a warp"},
        {"emit-model", "Write the model warp table as CSV"},
    };

    std::vector<SubOptions> subs;
    for (const auto& s : kSubs) {
        SubOptions so;
        so.sub = app.add_subcommand(s.name, s.help);
        so.opts["n"] = so.sub->add_option("--n", cfg.n, "Ambient dimension, >= 3");
        so.opts["kappa"] = so.sub->add_option(
            "--kappa", cfg.kappa, "Inverse spectral weight, in [0, 4)");
        so.opts["lambda"] = so.sub->add_option(
            "--lambda", cfg.lambda, "Target first eigenvalue, > 0");
        so.opts["metric"] = so.sub->add_option(
            "--metric", cfg.metric, "model | round | file:PATH (warp table CSV)");
        so.opts["mu"] =
            so.sub->add_option("--mu", cfg.mu, "Potential shift: model");
        so.opts["schedule"] = so.sub->add_option(
            "--schedule", schedule_spec,
            "Refinement schedule 'N1,N2,...;e1,e2,...' with eps entries "
            "T/<div> or absolute");
        so.opts["suite"] =
            so.sub->add_option("--suite", cfg.suite, "verify: suite selector");
        so.opts["sweep"] = so.sub->add_option(
            "--sweep", cfg.sweep, "rigidity-sweep: angular-scale | stretch");
        so.opts["amplitudes"] = so.sub->add_option(
            "--amplitudes", amplitudes_spec,
            "rigidity-sweep: comma-separated enlargement amplitudes");
        so.opts["samples"] = so.sub->add_option(
            "--samples", cfg.samples, "Table / profile sample count");
        so.opts["out"] = so.sub->add_option(
            "--out", cfg.out,
            "Output path (emit-model: the table; otherwise the report)");
        so.opts["format"] =
            so.sub->add_option("--format", cfg.format, "json | csv");
        so.sub->add_option("--config", config_path,
                           "Config file, 'key = value' per line");
        so.sub
            ->add_option("--tol", tol_specs,
                         "Verdict threshold override name=value (repeatable)")
            ->type_size(1);
        subs.push_back(std::move(so));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const SubOptions* active = nullptr;
        for (const auto& so : subs)
            if (so.sub->parsed()) active = &so;
        if (!active) throw std::invalid_argument("no subcommand given");
        cfg.command = active->sub->get_name();

        std::set<std::string> fixed;
        for (const auto& [key, opt] : active->opts)
            if (opt->count() > 0) fixed.insert(key);

        if (!config_path.empty()) apply_config_file(cfg, config_path, fixed);
        if (!schedule_spec.empty()) warpspec::parse_schedule_spec(schedule_spec, cfg);
        if (!amplitudes_spec.empty())
            cfg.amplitudes = warpspec::parse_double_list(amplitudes_spec);
        for (const auto& spec : tol_specs) {
            const auto eq = spec.find('=');
            double v = 0.0;
            if (eq == std::string::npos || eq == 0 ||
                !warpspec::parse_double(spec.substr(eq + 1), v))
                throw std::invalid_argument("bad --tol entry (want name=value): " +
                                            spec);
            cfg.tol[spec.substr(0, eq)] = v;
        }
        if (cfg.format != "json" && cfg.format != "csv")
            throw std::invalid_argument("unknown format '" + cfg.format +
                                        "' (json, csv)");

        const warpspec::ReportBundle bundle = warpspec::run_command(cfg);
        const std::string text = cfg.format == "json"
                                     ? warpspec::bundle_to_json(bundle)
                                     : warpspec::bundle_to_csv(bundle);
        if (cfg.command != "emit-model" && !cfg.out.empty()) {
            std::ofstream out(cfg.out, std::ios::binary);
            if (!out) throw std::invalid_argument("cannot open " + cfg.out);
            out << text;
        } else {
            std::fwrite(text.data(), 1, text.size(), stdout);
        }
        return warpspec::bundle_exit_code(bundle);
    } catch (const warpspec::NumericalFailure& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
