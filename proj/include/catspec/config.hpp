// config.hpp — flat key-value run configuration ("key = value" lines, '#' comments)
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "catspec/params.hpp"

namespace catspec {

class Config {
  public:
    Config() = default;

    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& key) const { return kv_.count(key) != 0; }
    void set(const std::string& key, const std::string& value) { kv_[key] = value; }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    // whitespace-separated list; an empty value is a valid empty list
    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& fallback) const;

    // required variants throw ConfigError when the key is absent
    double require_double(const std::string& key) const;
    int require_int(const std::string& key) const;

    // canonical "key = value\n" lines, sorted by key
    std::string resolved_text() const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

  private:
    std::map<std::string, std::string> kv_;
};

// Builds ModelParams from config keys n_atoms,u0,u1,lambda,Lambda,
// Lambda_convention,tilde_rescale. Exactly one of lambda/Lambda may be given;
// when Lambda is given the coupling is resolved through lambda_from_Lambda.
// `tilde_default` supplies the module-appropriate default for tilde_rescale.
ModelParams params_from_config(const Config& cfg, bool tilde_default);

}  // namespace catspec
