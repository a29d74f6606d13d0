#include "qring/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace qring {

const KSweepSpec& RunConfig::require_k_sweep() const {
    if (!k_sweep)
        throw config_error("missing k sweep: provide [sweep] k_min/k_max/points "
                           "or --k-min/--k-max/--points");
    return *k_sweep;
}

const FluxSweepSpec& RunConfig::require_flux_sweep() const {
    if (!flux_sweep)
        throw config_error("missing flux sweep: provide [sweep] flux_min/flux_max/"
                           "points/k or --flux-min/--flux-max/--points/--k");
    return *flux_sweep;
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct IniValue {
    std::string text;
    int line = 0;
};

using Section = std::map<std::string, IniValue>;
using IniFile = std::map<std::string, Section>;

IniFile parse_ini(std::istream& in, const std::string& name) {
    IniFile out;
    std::string section;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw config_error(name + ":" + std::to_string(lineno) +
                                   ": malformed section header '" + t + "'");
            section = trim(t.substr(1, t.size() - 2));
            out[section];
            continue;
        }
        const size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw config_error(name + ":" + std::to_string(lineno) +
                               ": expected 'key = value', got '" + t + "'");
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        if (key.empty())
            throw config_error(name + ":" + std::to_string(lineno) + ": empty key");
        out[section][key] = IniValue{val, lineno};
    }
    return out;
}

}  // namespace

double parse_scalar(const std::string& text) {
    std::string t = trim(text);
    double factor = 1.0;
    if (t.size() >= 2 && t.substr(t.size() - 2) == "pi") {
        std::string head = trim(t.substr(0, t.size() - 2));
        if (head.empty() || head.back() != '*')
            throw config_error("expected '<number>*pi', got '" + text + "'");
        head.pop_back();
        t = trim(head);
        factor = M_PI;
    }
    if (t.empty()) throw config_error("empty numeric value");
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size())
        throw config_error("not a number: '" + text + "'");
    return v * factor;
}

namespace {

double numeric_value(const std::string& file, const std::string& section,
                     const std::string& key, const IniValue& v) {
    try {
        return parse_scalar(v.text);
    } catch (const config_error&) {
        throw config_error(file + ":" + std::to_string(v.line) + ": value for '" +
                           section + "." + key + "' is not numeric: '" + v.text + "'");
    }
}

std::optional<double> lookup(const IniFile& ini, const std::string& file,
                             const std::string& section, const std::string& key) {
    auto s = ini.find(section);
    if (s == ini.end()) return std::nullopt;
    auto k = s->second.find(key);
    if (k == s->second.end()) return std::nullopt;
    return numeric_value(file, section, key, k->second);
}

double require(const IniFile& ini, const std::string& file, const std::string& section,
               const std::string& key) {
    auto v = lookup(ini, file, section, key);
    if (!v)
        throw config_error(file + ": missing required key '" + key + "' in [" +
                           section + "]");
    return *v;
}

NodeParams read_node(const IniFile& ini, const std::string& file,
                     const std::string& section, bool need_xi) {
    NodeParams p;
    p.theta[0] = require(ini, file, section, "theta1");
    p.theta[1] = require(ini, file, section, "theta2");
    p.theta[2] = require(ini, file, section, "theta3");
    p.alpha = require(ini, file, section, "alpha");
    p.beta = require(ini, file, section, "beta");
    p.gamma = require(ini, file, section, "gamma");
    p.delta = require(ini, file, section, "delta");
    p.a = require(ini, file, section, "a");
    p.b = require(ini, file, section, "b");
    p.L0 = require(ini, file, section, "L0");
    if (need_xi) p.xi = require(ini, file, section, "xi");
    return p;
}

}  // namespace

RunConfig parse_config_stream(std::istream& in, const std::string& name,
                              const CliOverrides& o) {
    const IniFile ini = parse_ini(in, name);

    const std::optional<double> d =
        o.d ? o.d : lookup(ini, name, "ring", "d");
    if (d && !(*d > 0.0)) throw config_error("ring arm length d must be positive");

    NodeParams node_I = read_node(ini, name, "node_I", !d.has_value());
    NodeParams node_II;
    if (o.symmetric) {
        node_II = node_I;
        node_II.xi = 0.0;
        if (auto xi = lookup(ini, name, "node_II", "xi")) node_II.xi = *xi;
    } else {
        node_II = read_node(ini, name, "node_II", !d.has_value());
    }
    if (d) {
        node_I.xi = *d;
        node_II.xi = 0.0;
    }

    RunConfig cfg{RingSystem(node_I, node_II)};

    auto pick = [&](const std::optional<double>& flag, const char* key) {
        return flag ? flag : lookup(ini, name, "sweep", key);
    };
    const auto k_min = pick(o.k_min, "k_min");
    const auto k_max = pick(o.k_max, "k_max");
    const auto fx_min = pick(o.flux_min, "flux_min");
    const auto fx_max = pick(o.flux_max, "flux_max");
    const auto k_fixed = pick(o.k, "k");
    std::optional<int> points = o.points;
    if (!points) {
        if (auto p = lookup(ini, name, "sweep", "points"))
            points = static_cast<int>(*p);
    }

    if (k_min || k_max) {
        if (!(k_min && k_max && points))
            throw config_error("k sweep needs k_min, k_max and points");
        if (!(*k_min > 0.0) || !(*k_max > 0.0))
            throw config_error("k must be positive");
        if (!(*k_min < *k_max)) throw config_error("sweep bounds must be ordered");
        if (*points < 2) throw config_error("sweep needs points >= 2");
        cfg.k_sweep = KSweepSpec{*k_min, *k_max, *points};
    }
    if (fx_min || fx_max) {
        if (!(fx_min && fx_max && points && k_fixed))
            throw config_error("flux sweep needs flux_min, flux_max, points and k");
        if (!(*k_fixed > 0.0)) throw config_error("k must be positive");
        if (!(*fx_min < *fx_max)) throw config_error("sweep bounds must be ordered");
        if (*points < 2) throw config_error("sweep needs points >= 2");
        cfg.flux_sweep = FluxSweepSpec{*fx_min, *fx_max, *points, *k_fixed};
    }
    if (k_fixed) {
        if (!(*k_fixed > 0.0)) throw config_error("k must be positive");
        cfg.k_single = *k_fixed;
    }

    if (o.output) cfg.output_path = *o.output;
    std::string fmt;
    if (o.format) {
        fmt = *o.format;
    } else if (auto s = ini.find("sweep"); s != ini.end()) {
        if (auto f = s->second.find("format"); f != s->second.end()) fmt = f->second.text;
    }
    if (!fmt.empty()) {
        if (fmt == "csv")
            cfg.format = OutputFormat::csv;
        else if (fmt == "json")
            cfg.format = OutputFormat::json;
        else
            throw config_error("unknown output format '" + fmt + "' (csv or json)");
    }
    if (cfg.output_path.empty()) {
        if (auto s = ini.find("sweep"); s != ini.end())
            if (auto f = s->second.find("output"); f != s->second.end())
                cfg.output_path = f->second.text;
    }
    if (o.seed) cfg.seed = *o.seed;
    return cfg;
}

RunConfig parse_config(const std::string& path, const CliOverrides& overrides) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    return parse_config_stream(in, path, overrides);
}

}  // namespace qring
