#include "hns/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "hns/errors.hpp"
#include "hns/trace_io.hpp"

namespace hns {

namespace {

struct RawValue {
    std::string text;
    int line = 0;
    bool used = false;
};

using Section = std::map<std::string, RawValue>;
using Sections = std::map<std::string, Section>;

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\'')))
        return s.substr(1, s.size() - 2);
    return s;
}

Sections tokenize(const std::string& text) {
    Sections out;
    std::string current; // keys before any [section] are an error
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("unterminated section header", lineno);
            current = trim(line.substr(1, line.size() - 2));
            if (current.empty()) throw ConfigError("empty section name", lineno);
            out[current]; // create even if empty
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected `key = value`", lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", lineno);
        if (value.empty()) throw ConfigError("empty value for key '" + key + "'", lineno);
        if (current.empty())
            throw ConfigError("key '" + key + "' appears before any [section]", lineno);
        auto& sec = out[current];
        if (sec.count(key))
            throw ConfigError("duplicate key '" + key + "'", lineno);
        sec[key] = RawValue{value, lineno, false};
        }
    return out;
}

class SectionReader {
public:
    SectionReader(Sections& all, const std::string& name) : name_(name) {
        auto it = all.find(name);
        sec_ = it == all.end() ? nullptr : &it->second;
    }

    bool present() const { return sec_ != nullptr; }

    std::optional<std::string> raw(const std::string& key) {
        if (!sec_) return std::nullopt;
        auto it = sec_->find(key);
        if (it == sec_->end()) return std::nullopt;
        it->second.used = true;
        last_line_ = it->second.line;
        return unquote(it->second.text);
    }

    int last_line() const { return last_line_; }

    double number(const std::string& key, double fallback) {
        auto v = raw(key);
        if (!v) return fallback;
        return parse_number(*v, key);
    }

    double required_number(const std::string& key) {
        auto v = raw(key);
        if (!v)
            throw ConfigError("[" + name_ + "] is missing required key '" + key + "'");
        return parse_number(*v, key);
    }

    long integer(const std::string& key, long fallback) {
        auto v = raw(key);
        if (!v) return fallback;
        const double d = parse_number(*v, key);
        const long l = static_cast<long>(std::llround(d));
        if (static_cast<double>(l) != d)
            throw ConfigError("key '" + key + "' must be an integer, got '" + *v + "'",
                              last_line_);
        return l;
    }

    std::string text(const std::string& key, const std::string& fallback) {
        auto v = raw(key);
        return v ? *v : fallback;
    }

    bool flag(const std::string& key, bool fallback) {
        auto v = raw(key);
        if (!v) return fallback;
        if (*v == "on" || *v == "true" || *v == "1") return true;
        if (*v == "off" || *v == "false" || *v == "0") return false;
        throw ConfigError("key '" + key + "' must be on/off, got '" + *v + "'", last_line_);
    }

    void check_all_used() const {
        if (!sec_) return;
        for (const auto& [key, val] : *sec_)
            if (!val.used)
                throw ConfigError("unknown key '" + key + "' in [" + name_ + "]", val.line);
    }

private:
    double parse_number(const std::string& v, const std::string& key) {
        char* end = nullptr;
        const double d = std::strtod(v.c_str(), &end);
        if (end == v.c_str() || *end != '\0' || !std::isfinite(d))
            throw ConfigError("key '" + key + "' must be a number, got '" + v + "'", last_line_);
        return d;
    }

    const std::string name_;
    Section* sec_ = nullptr;
    int last_line_ = 0;
};

std::array<double, 3> parse_vec3(const std::string& s, const std::string& key, int line) {
    std::array<double, 3> out{0.0, 0.0, 0.0};
    std::istringstream in(s);
    std::string tok;
    int i = 0;
    while (std::getline(in, tok, ',')) {
        if (i >= 3) throw ConfigError("key '" + key + "' takes at most 3 components", line);
        char* end = nullptr;
        out[static_cast<std::size_t>(i)] = std::strtod(trim(tok).c_str(), &end);
        if (end == trim(tok).c_str())
            throw ConfigError("key '" + key + "' has a bad component '" + tok + "'", line);
        ++i;
    }
    if (i < 2) throw ConfigError("key '" + key + "' needs at least 2 components", line);
    return out;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

DissipationSymbol symbol_from_spec(const std::string& spec, int d) {
    const std::size_t colon = spec.find(':');
    const std::string family = spec.substr(0, colon);
    const std::string param =
        colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto need_param = [&]() {
        if (param.empty())
            throw std::invalid_argument("symbol '" + family + "' needs a parameter");
        char* end = nullptr;
        const double v = std::strtod(param.c_str(), &end);
        if (end == param.c_str() || *end != '\0')
            throw std::invalid_argument("bad symbol parameter '" + param + "'");
        return v;
    };
    if (family == "zero") return symbol_zero(d);
    if (family == "navier_stokes") return symbol_navier_stokes(d);
    if (family == "hyper") return symbol_hyper(need_param(), d);
    if (family == "critical") return symbol_critical(d);
    if (family == "log_supercritical") return symbol_log_supercritical(d);
    throw std::invalid_argument("unknown symbol family '" + family + "'");
}

GrowthFunction growth_from_spec(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    const std::string family = spec.substr(0, colon);
    double param = 0.0;
    if (colon != std::string::npos) {
        const std::string p = spec.substr(colon + 1);
        char* end = nullptr;
        param = std::strtod(p.c_str(), &end);
        if (end == p.c_str() || *end != '\0')
            throw std::invalid_argument("bad growth parameter '" + p + "'");
    }
    return growth_from_family(family, param);
}

SpectralField InitialSpec::build(const WavenumberLattice& lat, std::uint64_t seed) const {
    if (kind == "taylor_green_2d") return taylor_green_2d(lat, amplitude);
    if (kind == "single_mode") {
        std::array<double, 3> amp = direction;
        for (auto& v : amp) v *= amplitude;
        return single_mode(lat, mode, amp);
    }
    if (kind == "random_band") return random_band(lat, kmin, kmax, amplitude, seed);
    if (kind == "bump_approx") return bump_approx(lat, amplitude, width * lat.period());
    throw std::invalid_argument("unknown initial-data kind '" + kind + "'");
}

namespace {

RunSpec build_run(Sections& sections) {
    SectionReader run(sections, "run");
    RunSpec spec;
    SimConfig& cfg = spec.sim;

    cfg.d = static_cast<int>(run.integer("d", 3));
    cfg.n = static_cast<int>(run.integer("n", 32));
    cfg.period = run.number("period", 2.0 * M_PI);
    cfg.dt = run.required_number("dt");
    cfg.t_end = run.required_number("t_end");
    cfg.k = static_cast<int>(run.integer("k", 2));
    cfg.record_every = static_cast<int>(run.integer("record_every", 1));
    cfg.blowup_threshold = run.number("blowup_threshold", 1e12);
    cfg.nonlinearity = run.flag("nonlinearity", true);
    spec.seed = static_cast<std::uint64_t>(run.integer("seed", 0));

    const std::string sym = run.text("symbol", "");
    if (sym.empty()) throw ConfigError("[run] is missing required key 'symbol'");
    try {
        cfg.symbol = symbol_from_spec(sym, cfg.d);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what(), run.last_line());
    }

    const std::string dealias = run.text("dealias", "two_thirds");
    if (dealias == "two_thirds")
        cfg.dealias = DealiasRule::TwoThirds;
    else if (dealias == "none")
        cfg.dealias = DealiasRule::None;
    else
        throw ConfigError("dealias must be two_thirds or none, got '" + dealias + "'",
                          run.last_line());

    const std::string growth = run.text("g", "log_quarter");
    try {
        cfg.ratio_growth = growth_from_spec(growth);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what(), run.last_line());
    }

    SectionReader init(sections, "initial");
    spec.initial.kind = init.text("kind", cfg.d == 2 ? "taylor_green_2d" : "random_band");
    spec.initial.amplitude = init.number("amplitude", 1.0);
    spec.initial.kmin = init.number("kmin", 1.0);
    spec.initial.kmax = init.number("kmax", 2.5);
    spec.initial.width = init.number("width", 0.125);
    {
        auto v = init.raw("mode");
        if (v) {
            const auto m = parse_vec3(*v, "mode", init.last_line());
            for (int i = 0; i < 3; ++i) {
                spec.initial.mode[static_cast<std::size_t>(i)] =
                    static_cast<int>(std::llround(m[static_cast<std::size_t>(i)]));
                if (spec.initial.mode[static_cast<std::size_t>(i)] !=
                    m[static_cast<std::size_t>(i)])
                    throw ConfigError("mode components must be integers", init.last_line());
            }
        }
        auto dir = init.raw("direction");
        if (dir) spec.initial.direction = parse_vec3(*dir, "direction", init.last_line());
    }
    const bool known =
        spec.initial.kind == "taylor_green_2d" || spec.initial.kind == "single_mode" ||
        spec.initial.kind == "random_band" || spec.initial.kind == "bump_approx";
    if (!known)
        throw ConfigError("unknown initial kind '" + spec.initial.kind + "'");

    run.check_all_used();
    init.check_all_used();
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return spec;
}

ComparisonProblem build_gronwall(Sections& sections) {
    SectionReader gr(sections, "gronwall");
    ComparisonProblem prob;
    prob.C = gr.number("C", 1.0);
    prob.q = static_cast<int>(gr.integer("q", 4));
    prob.E0 = gr.number("E0", 1.0);
    prob.t_end = gr.number("t_end", 1.0);
    try {
        prob.g = growth_from_spec(gr.text("g", "log_quarter"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what(), gr.last_line());
    }
    const std::string forcing = gr.text("forcing", "none");
    try {
        if (forcing == "none")
            prob.forcing = Forcing::zero();
        else if (forcing.rfind("const:", 0) == 0)
            prob.forcing = Forcing::constant(std::strtod(forcing.c_str() + 6, nullptr));
        else if (forcing.rfind("trace:", 0) == 0)
            prob.forcing = Forcing::from_trace(read_trace(forcing.substr(6)));
        else
            throw std::invalid_argument(
                "forcing must be none, const:<value> or trace:<path>, got '" + forcing + "'");
        prob.forcing_spec = forcing;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what(), gr.last_line());
    }
    gr.check_all_used();
    try {
        prob.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return prob;
}

EnvelopeSpec build_envelope(Sections& sections) {
    SectionReader env(sections, "envelope");
    EnvelopeSpec spec;
    spec.trace_path = env.text("trace", "");
    if (spec.trace_path.empty())
        throw ConfigError("[envelope] is missing required key 'trace'");
    spec.q = static_cast<int>(env.integer("q", 4));
    try {
        spec.g = growth_from_spec(env.text("g", "log_quarter"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what(), env.last_line());
    }
    const std::string c = env.text("C", "auto");
    if (c != "auto") {
        char* end = nullptr;
        const double v = std::strtod(c.c_str(), &end);
        if (end == c.c_str() || *end != '\0' || !(v >= 0.0))
            throw ConfigError("C must be 'auto' or a number >= 0, got '" + c + "'",
                              env.last_line());
        spec.C = v;
    }
    env.check_all_used();
    return spec;
}

void canonical_kv(std::ostringstream& out, const std::string& key, const std::string& value) {
    out << key << " = " << value << "\n";
}

std::string canonicalize(const ParsedConfig& pc) {
    // sorted sections, sorted keys, fully resolved values: the hash input
    std::ostringstream out;
    if (pc.envelope) {
        const auto& e = *pc.envelope;
        out << "[envelope]\n";
        canonical_kv(out, "C", e.C ? fmt_double(*e.C) : "auto");
        canonical_kv(out, "g", "\"" + e.g.name() + "\"");
        canonical_kv(out, "q", std::to_string(e.q));
        canonical_kv(out, "trace", "\"" + e.trace_path + "\"");
    }
    if (pc.gronwall) {
        const auto& g = *pc.gronwall;
        out << "[gronwall]\n";
        canonical_kv(out, "C", fmt_double(g.C));
        canonical_kv(out, "E0", fmt_double(g.E0));
        canonical_kv(out, "forcing", "\"" + g.forcing_spec + "\"");
        canonical_kv(out, "g", "\"" + g.g.name() + "\"");
        canonical_kv(out, "q", std::to_string(g.q));
        canonical_kv(out, "t_end", fmt_double(g.t_end));
    }
    if (pc.run) {
        const auto& r = *pc.run;
        out << "[initial]\n";
        canonical_kv(out, "amplitude", fmt_double(r.initial.amplitude));
        if (r.initial.kind == "single_mode") {
            canonical_kv(out, "direction",
                         fmt_double(r.initial.direction[0]) + "," +
                             fmt_double(r.initial.direction[1]) + "," +
                             fmt_double(r.initial.direction[2]));
        }
        canonical_kv(out, "kind", "\"" + r.initial.kind + "\"");
        if (r.initial.kind == "random_band") {
            canonical_kv(out, "kmax", fmt_double(r.initial.kmax));
            canonical_kv(out, "kmin", fmt_double(r.initial.kmin));
        }
        if (r.initial.kind == "single_mode") {
            canonical_kv(out, "mode",
                         std::to_string(r.initial.mode[0]) + "," +
                             std::to_string(r.initial.mode[1]) + "," +
                             std::to_string(r.initial.mode[2]));
        }
        if (r.initial.kind == "bump_approx")
            canonical_kv(out, "width", fmt_double(r.initial.width));
        out << "[run]\n";
        canonical_kv(out, "blowup_threshold", fmt_double(r.sim.blowup_threshold));
        canonical_kv(out, "d", std::to_string(r.sim.d));
        canonical_kv(out, "dealias",
                     r.sim.dealias == DealiasRule::TwoThirds ? "\"two_thirds\"" : "\"none\"");
        canonical_kv(out, "dt", fmt_double(r.sim.dt));
        canonical_kv(out, "g", "\"" + r.sim.ratio_growth.name() + "\"");
        canonical_kv(out, "k", std::to_string(r.sim.k));
        canonical_kv(out, "n", std::to_string(r.sim.n));
        canonical_kv(out, "nonlinearity", r.sim.nonlinearity ? "on" : "off");
        canonical_kv(out, "period", fmt_double(r.sim.period));
        canonical_kv(out, "record_every", std::to_string(r.sim.record_every));
        canonical_kv(out, "seed", std::to_string(r.seed));
        canonical_kv(out, "symbol", "\"" + r.sim.symbol.name() + "\"");
        canonical_kv(out, "t_end", fmt_double(r.sim.t_end));
    }
    return out.str();
}

} // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string ParsedConfig::hash_hex() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

ParsedConfig parse_config(const std::string& text) {
    Sections sections = tokenize(text);
    for (const auto& [name, _] : sections)
        if (name != "run" && name != "initial" && name != "gronwall" && name != "envelope")
            throw ConfigError("unknown section [" + name + "]");

    ParsedConfig pc;
    if (sections.count("run") || sections.count("initial")) {
        if (!sections.count("run"))
            throw ConfigError("[initial] given without a [run] section");
        pc.run = build_run(sections);
    }
    if (sections.count("gronwall")) pc.gronwall = build_gronwall(sections);
    if (sections.count("envelope")) pc.envelope = build_envelope(sections);
    if (!pc.run && !pc.gronwall && !pc.envelope)
        throw ConfigError("config has no [run], [gronwall] or [envelope] section");

    pc.canonical_text = canonicalize(pc);
    pc.hash = fnv1a64(pc.canonical_text);
    return pc;
}

ParsedConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void refresh_canonical(ParsedConfig& pc) {
    pc.canonical_text = canonicalize(pc);
    pc.hash = fnv1a64(pc.canonical_text);
}

} // namespace hns
