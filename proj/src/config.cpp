#include "catspec/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "catspec/errors.hpp"

namespace catspec {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || trim(end).size() != 0)
        throw ConfigError("config key '" + key + "': not a number: '" + v + "'");
    return x;
}

}  // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_string(os.str());
}

Config Config::parse_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        cfg.kv_[key] = value;
    }
    return cfg;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto it = kv_.find(key);
    return it == kv_.end() ? fallback : parse_double(key, it->second);
}

int Config::get_int(const std::string& key, int fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    const double x = parse_double(key, it->second);
    const int n = static_cast<int>(x);
    if (static_cast<double>(n) != x)
        throw ConfigError("config key '" + key + "': expected an integer, got '" + it->second + "'");
    return n;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    const std::string& v = it->second;
    if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "off" || v == "no") return false;
    throw ConfigError("config key '" + key + "': expected a boolean, got '" + v + "'");
}

std::vector<double> Config::get_double_list(const std::string& key,
                                            const std::vector<double>& fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    std::vector<double> out;
    std::istringstream in(it->second);
    std::string tok;
    while (in >> tok) out.push_back(parse_double(key, tok));
    return out;
}

double Config::require_double(const std::string& key) const {
    if (!has(key)) throw ConfigError("missing required config key '" + key + "'");
    return get_double(key, 0.0);
}

int Config::require_int(const std::string& key) const {
    if (!has(key)) throw ConfigError("missing required config key '" + key + "'");
    return get_int(key, 0);
}

std::string Config::resolved_text() const {
    std::ostringstream os;
    for (const auto& [k, v] : kv_) os << k << " = " << v << "\n";
    return os.str();
}

ModelParams params_from_config(const Config& cfg, bool tilde_default) {
    ModelParams p;
    p.n_atoms = cfg.get_int("n_atoms", 1000);
    p.u0 = cfg.get_double("u0", 0.0);
    p.u1 = cfg.get_double("u1", 0.0);
    p.tilde_rescale = cfg.get_bool("tilde_rescale", tilde_default);

    const bool has_lam = cfg.has("lambda");
    const bool has_Lam = cfg.has("Lambda");
    if (has_lam && has_Lam)
        throw ConfigError("config sets both 'lambda' and 'Lambda'; give exactly one");
    if (has_Lam) {
        const auto conv =
            lambda_convention_from_string(cfg.get_string("Lambda_convention", "two_mode"));
        p.lambda = 0.0;
        p.validate();
        try {
            p.lambda = lambda_from_Lambda(p, cfg.get_double("Lambda", 0.0), conv);
        } catch (const std::domain_error& e) {
            throw ConfigError(std::string("cannot resolve Lambda: ") + e.what());
        }
    } else {
        p.lambda = cfg.get_double("lambda", 0.0);
    }
    p.validate();
    return p;
}

}  // namespace catspec
