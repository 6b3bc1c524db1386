#pragma once

// Run configuration, machine-readable report bundles, and the command
// entry points shared by the command-line binary and the test suites.
// Bundles serialize to JSON with insertion-ordered keys and 17-significant-
// digit floats, so identical configurations produce byte-identical output.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "warpspec/spectral.hpp"

namespace warpspec {

class Json {
public:
    Json() = default;
    static Json boolean(bool v);
    static Json integer(long long v);
    static Json num(double v);
    static Json str(std::string v);
    static Json arr();
    static Json obj();

    Json& push(Json v);                   // array append
    Json& set(std::string key, Json v);   // object append (insertion order kept)
    std::string dump(int indent = 2) const;

private:
    enum class Kind { Null, Bool, Int, Num, Str, Arr, Obj };
    Kind kind_ = Kind::Null;
    bool b_ = false;
    long long i_ = 0;
    double d_ = 0.0;
    std::string s_;
    std::vector<Json> items_;
    std::vector<std::pair<std::string, Json>> fields_;

    void write(std::string& out, int indent, int depth) const;
};

struct Verdict {
    std::string name;
    bool pass = false;
    double threshold = 0.0;
    double measured = 0.0;
};

struct RunConfig {
    std::string command;
    int n = 3;
    double kappa = 1.0;
    double lambda = 6.0;
    std::string metric = "model";  // model | round | file:PATH
    std::string mu;                // "" | model
    std::vector<int> schedule_N = {256, 512, 1024};
    std::vector<std::string> schedule_eps = {"T/50", "T/100", "T/200"};
    std::string suite;                    // verify
    std::string sweep = "angular-scale";  // rigidity-sweep: angular-scale | stretch
    std::vector<double> amplitudes = {0.0, 0.01, 0.05, 0.1};
    std::string out;            // output path; empty = stdout
    std::string format = "json";
    long long samples = 2001;   // table/profile emission density
    std::map<std::string, double> tol;  // verdict threshold overrides

    // Threshold lookup honoring overrides.
    double thr(const std::string& name, double fallback) const;
};

struct ReportBundle {
    Json config = Json::obj();
    Json results = Json::obj();
    Json diagnostics = Json::obj();
    std::vector<Verdict> verdicts;

    // Plot-ready rows for commands with a CSV form (sweeps, profiles).
    std::string csv_header;
    std::vector<std::string> csv_rows;
};

std::string bundle_to_json(const ReportBundle& b);
std::string bundle_to_csv(const ReportBundle& b);  // throws if no CSV form
int bundle_exit_code(const ReportBundle& b);       // 0 pass, 1 any verdict failed

ReportBundle cmd_constants(const RunConfig& cfg);
ReportBundle cmd_lambda_c(const RunConfig& cfg);
ReportBundle cmd_verify(const RunConfig& cfg);
ReportBundle cmd_rigidity_sweep(const RunConfig& cfg);
ReportBundle cmd_mu_profile(const RunConfig& cfg);
ReportBundle cmd_emit_model(const RunConfig& cfg);
ReportBundle run_command(const RunConfig& cfg);

// `key = value` per line, '#' comments, flat namespace.  Keys already fixed
// on the command line are kept; unknown keys raise std::invalid_argument.
void apply_config_file(RunConfig& cfg, const std::string& path,
                       const std::set<std::string>& fixed_keys);

// "256,512,1024;T/50,T/100,T/200" — grid levels, then truncation levels
// (each either T/<divisor> or an absolute length).
void parse_schedule_spec(const std::string& spec, RunConfig& cfg);
Schedule resolve_schedule(const RunConfig& cfg, double T);

// Comma-separated double list ("0,0.01,0.05,0.1").
std::vector<double> parse_double_list(const std::string& spec);

}  // namespace warpspec
