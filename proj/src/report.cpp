#include "warpspec/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "warpspec/numfmt.hpp"

namespace warpspec {

Json Json::boolean(bool v) {
    Json j;
    j.kind_ = Kind::Bool;
    j.b_ = v;
    return j;
}

Json Json::integer(long long v) {
    Json j;
    j.kind_ = Kind::Int;
    j.i_ = v;
    return j;
}

Json Json::num(double v) {
    Json j;
    j.kind_ = Kind::Num;
    j.d_ = v;
    return j;
}

Json Json::str(std::string v) {
    Json j;
    j.kind_ = Kind::Str;
    j.s_ = std::move(v);
    return j;
}

Json Json::arr() {
    Json j;
    j.kind_ = Kind::Arr;
    return j;
}

Json Json::obj() {
    Json j;
    j.kind_ = Kind::Obj;
    return j;
}

Json& Json::push(Json v) {
    if (kind_ != Kind::Arr) throw std::logic_error("push on a non-array json value");
    items_.push_back(std::move(v));
    return *this;
}

Json& Json::set(std::string key, Json v) {
    if (kind_ != Kind::Obj) throw std::logic_error("set on a non-object json value");
    fields_.emplace_back(std::move(key), std::move(v));
    return *this;
}

namespace {

void escape_into(std::string& out, const std::string& s) {
    out += '"';
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    out += '"';
}

}  // namespace

void Json::write(std::string& out, int indent, int depth) const {
    const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    switch (kind_) {
        case Kind::Null: out += "null"; break;
        case Kind::Bool: out += b_ ? "true" : "false"; break;
        case Kind::Int: out += fmt_int(i_); break;
        case Kind::Num:
            if (std::isfinite(d_))
                out += fmt17(d_);
            else
                escape_into(out, fmt17(d_));  // JSON has no inf/nan literals
            break;
        case Kind::Str: escape_into(out, s_); break;
        case Kind::Arr:
            if (items_.empty()) {
                out += "[]";
                break;
            }
            out += "[\n";
            for (std::size_t i = 0; i < items_.size(); ++i) {
                out += pad_in;
                items_[i].write(out, indent, depth + 1);
                if (i + 1 < items_.size()) out += ',';
                out += '\n';
            }
            out += pad + "]";
            break;
        case Kind::Obj:
            if (fields_.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            for (std::size_t i = 0; i < fields_.size(); ++i) {
                out += pad_in;
                escape_into(out, fields_[i].first);
                out += ": ";
                fields_[i].second.write(out, indent, depth + 1);
                if (i + 1 < fields_.size()) out += ',';
                out += '\n';
            }
            out += pad + "}";
            break;
    }
}

std::string Json::dump(int indent) const {
    std::string out;
    write(out, indent, 0);
    return out;
}

double RunConfig::thr(const std::string& name, double fallback) const {
    const auto it = tol.find(name);
    return it == tol.end() ? fallback : it->second;
}

std::string bundle_to_json(const ReportBundle& b) {
    Json root = Json::obj();
    root.set("config", b.config);
    root.set("results", b.results);
    root.set("diagnostics", b.diagnostics);
    Json vs = Json::arr();
    for (const auto& v : b.verdicts) {
        Json jv = Json::obj();
        jv.set("name", Json::str(v.name));
        jv.set("pass", Json::boolean(v.pass));
        jv.set("threshold", Json::num(v.threshold));
        jv.set("measured", Json::num(v.measured));
        vs.push(std::move(jv));
    }
    root.set("verdicts", std::move(vs));
    return root.dump() + "\n";
}

std::string bundle_to_csv(const ReportBundle& b) {
    if (b.csv_header.empty())
        throw std::invalid_argument("this command has no CSV representation");
    std::string out = b.csv_header + "\n";
    for (const auto& r : b.csv_rows) out += r + "\n";
    return out;
}

int bundle_exit_code(const ReportBundle& b) {
    for (const auto& v : b.verdicts)
        if (!v.pass) return 1;
    return 0;
}

void parse_schedule_spec(const std::string& spec, RunConfig& cfg) {
    const auto semi = spec.find(';');
    if (semi == std::string::npos)
        throw std::invalid_argument(
            "schedule must be '<N,...>;<eps,...>' with eps entries T/<div> or absolute");
    const std::string npart = spec.substr(0, semi);
    const std::string epart = spec.substr(semi + 1);

    std::vector<int> Ns;
    std::size_t pos = 0;
    while (pos <= npart.size()) {
        const auto c = npart.find(',', pos);
        const std::string tok(trim(npart.substr(
            pos, c == std::string::npos ? std::string::npos : c - pos)));
        long long v = 0;
        if (!parse_int(tok, v) || v < 16)
            throw std::invalid_argument("bad grid level in schedule: " + tok);
        Ns.push_back(static_cast<int>(v));
        if (c == std::string::npos) break;
        pos = c + 1;
    }
    std::vector<std::string> eps;
    pos = 0;
    while (pos <= epart.size()) {
        const auto c = epart.find(',', pos);
        const std::string tok(trim(epart.substr(
            pos, c == std::string::npos ? std::string::npos : c - pos)));
        double v = 0.0;
        if (tok.rfind("T/", 0) == 0) {
            if (!parse_double(tok.substr(2), v) || !(v > 4.0))
                throw std::invalid_argument("bad truncation divisor in schedule: " + tok);
        } else if (!parse_double(tok, v) || !(v > 0.0)) {
            throw std::invalid_argument("bad truncation level in schedule: " + tok);
        }
        eps.push_back(tok);
        if (c == std::string::npos) break;
        pos = c + 1;
    }
    if (Ns.size() < 3)
        throw std::invalid_argument("schedule needs at least three grid levels");
    if (eps.empty())
        throw std::invalid_argument("schedule needs at least one truncation level");
    cfg.schedule_N = std::move(Ns);
    cfg.schedule_eps = std::move(eps);
}

Schedule resolve_schedule(const RunConfig& cfg, double T) {
    Schedule s;
    s.N_list = cfg.schedule_N;
    for (const auto& tok : cfg.schedule_eps) {
        double v = 0.0;
        if (tok.rfind("T/", 0) == 0) {
            parse_double(tok.substr(2), v);
            s.eps_list.push_back(T / v);
        } else {
            parse_double(tok, v);
            s.eps_list.push_back(v);
        }
    }
    return s;
}

std::vector<double> parse_double_list(const std::string& spec) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        const auto c = spec.find(',', pos);
        const std::string tok(trim(spec.substr(
            pos, c == std::string::npos ? std::string::npos : c - pos)));
        double v = 0.0;
        if (!parse_double(tok, v))
            throw std::invalid_argument("bad numeric list entry: " + tok);
        out.push_back(v);
        if (c == std::string::npos) break;
        pos = c + 1;
    }
    if (out.empty()) throw std::invalid_argument("empty numeric list");
    return out;
}

void apply_config_file(RunConfig& cfg, const std::string& path,
                       const std::set<std::string>& fixed_keys) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto sv = trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        const auto eq = sv.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        " is not 'key = value'");
        const std::string key(trim(sv.substr(0, eq)));
        const std::string val(trim(sv.substr(eq + 1)));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        " has an empty key");
        if (fixed_keys.count(key)) continue;

        auto want_double = [&](double& slot) {
            if (!parse_double(val, slot))
                throw std::invalid_argument("config key '" + key +
                                            "' needs a numeric value");
        };
        if (key == "n") {
            long long v = 0;
            if (!parse_int(val, v))
                throw std::invalid_argument("config key 'n' needs an integer");
            cfg.n = static_cast<int>(v);
        } else if (key == "kappa") {
            want_double(cfg.kappa);
        } else if (key == "lambda") {
            want_double(cfg.lambda);
        } else if (key == "metric") {
            cfg.metric = val;
        } else if (key == "mu") {
            cfg.mu = val;
        } else if (key == "schedule") {
            parse_schedule_spec(val, cfg);
        } else if (key == "suite") {
            cfg.suite = val;
        } else if (key == "sweep") {
            cfg.sweep = val;
        } else if (key == "amplitudes") {
            cfg.amplitudes = parse_double_list(val);
        } else if (key == "out") {
            cfg.out = val;
        } else if (key == "format") {
            cfg.format = val;
        } else if (key == "samples") {
            long long v = 0;
            if (!parse_int(val, v))
                throw std::invalid_argument("config key 'samples' needs an integer");
            cfg.samples = v;
        } else if (key.rfind("tol.", 0) == 0 && key.size() > 4) {
            double v = 0.0;
            if (!parse_double(val, v))
                throw std::invalid_argument("config key '" + key +
                                            "' needs a numeric value");
            cfg.tol[key.substr(4)] = v;
        } else {
            throw std::invalid_argument("unknown config key: " + key);
        }
    }
}

}  // namespace warpspec
