// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#include "celldisc/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace celldisc {

double ExperimentConfig::noise_variance() const {
  return sigma_n2 ? *sigma_n2 : thermal_noise_variance(temperature_k, bandwidth_hz);
}

int ExperimentConfig::resolved_calibration_trials() const {
  return calibration_trials > 0 ? calibration_trials : static_cast<int>(std::ceil(100.0 / target_pf));
}

NetworkConfig ExperimentConfig::network() const {
  NetworkConfig net;
  net.n_bs = n_bs;
  net.active = active_bs;
  net.los = los_bs;
  net.n_r = n_r;
  net.n_t = n_t;
  net.d_over_lambda = d_over_lambda;
  net.path_loss.carrier_ghz = carrier_ghz;
  net.path_loss.exponent_los = exponent_los;
  net.path_loss.exponent_nlos = exponent_nlos;
  net.path_loss.max_paths = max_paths;
  net.path_loss.power_decay = power_decay;
  return net;
}

SchemeParams ExperimentConfig::scheme_params(const SchemeEntry& entry, int n_rf_override) const {
  SchemeParams p = entry.params;
  p.n_t = n_t;
  p.n_r = n_r;
  p.n_bs = n_bs;
  p.n_rf = n_rf_override > 0 ? n_rf_override : n_rf;
  p.rho = rho;
  return p;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw Error(ErrorCode::ConfigError, "line " + std::to_string(line) + ": " + what);
}

template <class T>
T parse_number(const std::string& v, int line) {
  T out{};
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) fail(line, "bad number '" + v + "'");
  return out;
}

template <class T>
std::vector<T> parse_list(const std::string& v, int line) {
  std::vector<T> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number<T>(trim(item), line));
  if (out.empty()) fail(line, "empty list");
  return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, int)>;

const std::map<std::string, Setter>& global_keys() {
  static const std::map<std::string, Setter> keys = {
      {"seed", [](auto& c, auto& v, int l) { c.seed = parse_number<std::uint64_t>(v, l); }},
      {"trials", [](auto& c, auto& v, int l) { c.trials = parse_number<int>(v, l); }},
      {"r_grid", [](auto& c, auto& v, int l) { c.r_grid = parse_list<double>(v, l); }},
      {"target_pf", [](auto& c, auto& v, int l) { c.target_pf = parse_number<double>(v, l); }},
      {"rho", [](auto& c, auto& v, int l) { c.rho = parse_number<double>(v, l); }},
      {"n_t", [](auto& c, auto& v, int l) { c.n_t = parse_number<int>(v, l); }},
      {"n_r", [](auto& c, auto& v, int l) { c.n_r = parse_number<int>(v, l); }},
      {"n_bs", [](auto& c, auto& v, int l) { c.n_bs = parse_number<int>(v, l); }},
      {"n_rf", [](auto& c, auto& v, int l) { c.n_rf = parse_number<int>(v, l); }},
      {"n_rf_grid", [](auto& c, auto& v, int l) { c.n_rf_grid = parse_list<int>(v, l); }},
      {"channel",
       [](auto& c, auto& v, int l) {
         if (v == "ideal") c.channel = ChannelMode::Ideal;
         else if (v == "geometric") c.channel = ChannelMode::Geometric;
         else fail(l, "channel must be ideal or geometric");
       }},
      {"criterion",
       [](auto& c, auto& v, int l) {
         if (v == "any_bs") c.criterion = Criterion::AnyBs;
         else if (v == "strongest_bs") c.criterion = Criterion::StrongestBs;
         else fail(l, "criterion must be any_bs or strongest_bs");
       }},
      {"threshold_rule",
       [](auto& c, auto& v, int l) {
         if (v == "null_cfar") c.threshold_rule = ThresholdRule::NullCfar;
         else if (v == "relative_max") c.threshold_rule = ThresholdRule::RelativeMax;
         else fail(l, "threshold_rule must be null_cfar or relative_max");
       }},
      {"calibration_trials", [](auto& c, auto& v, int l) { c.calibration_trials = parse_number<int>(v, l); }},
      {"temperature_k", [](auto& c, auto& v, int l) { c.temperature_k = parse_number<double>(v, l); }},
      {"bandwidth_hz", [](auto& c, auto& v, int l) { c.bandwidth_hz = parse_number<double>(v, l); }},
      {"sigma_n2", [](auto& c, auto& v, int l) { c.sigma_n2 = parse_number<double>(v, l); }},
      {"gain_alpha", [](auto& c, auto& v, int l) { c.gain_alpha = parse_number<double>(v, l); }},
      {"paths", [](auto& c, auto& v, int l) { c.paths = parse_list<int>(v, l); }},
      {"active_bs", [](auto& c, auto& v, int l) { c.active_bs = parse_number<int>(v, l); }},
      {"los_bs", [](auto& c, auto& v, int l) { c.los_bs = parse_number<int>(v, l); }},
      {"carrier_ghz", [](auto& c, auto& v, int l) { c.carrier_ghz = parse_number<double>(v, l); }},
      {"exponent_los", [](auto& c, auto& v, int l) { c.exponent_los = parse_number<double>(v, l); }},
      {"exponent_nlos", [](auto& c, auto& v, int l) { c.exponent_nlos = parse_number<double>(v, l); }},
      {"max_paths", [](auto& c, auto& v, int l) { c.max_paths = parse_number<int>(v, l); }},
      {"power_decay", [](auto& c, auto& v, int l) { c.power_decay = parse_number<double>(v, l); }},
      {"d_over_lambda", [](auto& c, auto& v, int l) { c.d_over_lambda = parse_number<double>(v, l); }},
      {"rbf_draws", [](auto& c, auto& v, int l) { c.rbf_draws = parse_number<int>(v, l); }},
      {"threads", [](auto& c, auto& v, int l) { c.threads = parse_number<int>(v, l); }},
  };
  return keys;
}

void set_scheme_key(SchemeEntry& s, const std::string& key, const std::string& v, int line) {
  if (key == "type") {
    const auto scheme = parse_scheme(v);
    if (!scheme) fail(line, "unknown scheme type '" + v + "'");
    s.scheme = *scheme;
  } else if (key == "u") {
    s.params.u = parse_number<int>(v, line);
  } else if (key == "beta_t") {
    s.params.beta_t = parse_number<int>(v, line);
  } else if (key == "beta_r") {
    s.params.beta_r = parse_number<int>(v, line);
  } else {
    fail(line, "unknown scheme key '" + key + "'");
  }
}

void validate(const ExperimentConfig& c) {
  auto check = [](bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::ConfigError, what);
  };
  check(c.trials > 0, "trials must be positive");
  check(c.target_pf > 0.0 && c.target_pf < 1.0, "target_pf must lie in (0, 1)");
  check(c.rho > 0.0, "rho must be positive");
  check(c.n_t >= 1 && c.n_r >= 1 && c.n_bs >= 1 && c.n_rf >= 1, "array sizes and counts must be positive");
  for (int n : c.n_rf_grid) check(n >= 1, "n_rf_grid entries must be positive");
  check(!c.r_grid.empty(), "r_grid is empty");
  for (double r : c.r_grid) check(r > 0.0, "r_grid entries must be positive");
  check(c.calibration_trials >= 0, "calibration_trials must be non-negative");
  check(c.temperature_k >= 0.0 && c.bandwidth_hz >= 0.0, "noise parameters must be non-negative");
  check(!c.sigma_n2 || *c.sigma_n2 >= 0.0, "sigma_n2 must be non-negative");
  check(c.gain_alpha > 0.0 && c.gain_alpha <= 1.0, "gain_alpha must lie in (0, 1]");
  for (int k : c.paths) check(k >= 1, "paths entries must be positive");
  check(static_cast<int>(c.paths.size()) <= c.n_bs, "more ideal-mode BSs than n_bs");
  check(c.active_bs >= 1 && c.active_bs <= c.n_bs, "active_bs must lie in [1, n_bs]");
  check(c.los_bs >= 0 && c.los_bs <= c.active_bs, "los_bs must lie in [0, active_bs]");
  check(c.max_paths >= 1, "max_paths must be positive");
  check(c.d_over_lambda > 0.0, "d_over_lambda must be positive");
  check(c.rbf_draws >= 1, "rbf_draws must be positive");
  check(c.threads >= 0, "threads must be non-negative");
  std::set<std::string> labels;
  for (const auto& s : c.schemes) {
    check(labels.insert(s.label).second, "duplicate scheme section " + s.label);
    check(s.params.u >= 0 && s.params.beta_t >= 1 && s.params.beta_r >= 1, "bad parameters in scheme " + s.label);
  }
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  bool in_scheme = false;
  std::set<std::string> seen_global;
  std::set<std::string> seen_scheme;
  bool type_given = false;
  std::string raw;
  int line = 0;
  auto close_scheme = [&] {
    if (in_scheme && !type_given) {
      const auto scheme = parse_scheme(cfg.schemes.back().label);
      if (!scheme)
        throw Error(ErrorCode::ConfigError, "scheme section '" + cfg.schemes.back().label + "' needs a type");
      cfg.schemes.back().scheme = *scheme;
    }
  };
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') fail(line, "unterminated section header");
      const std::string name = trim(text.substr(1, text.size() - 2));
      close_scheme();
      if (name == "experiment") {
        in_scheme = false;
      } else if (name.rfind("scheme", 0) == 0 && name.size() > 6 && (name[6] == ' ' || name[6] == '\t')) {
        SchemeEntry entry;
        entry.label = trim(name.substr(6));
        cfg.schemes.push_back(entry);
        in_scheme = true;
        type_given = false;
        seen_scheme.clear();
      } else {
        fail(line, "unknown section [" + name + "]");
      }
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) fail(line, "expected key = value");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty() || value.empty()) fail(line, "empty key or value");
    if (in_scheme) {
      if (!seen_scheme.insert(key).second) fail(line, "duplicate key '" + key + "'");
      set_scheme_key(cfg.schemes.back(), key, value, line);
      if (key == "type") type_given = true;
    } else {
      const auto it = global_keys().find(key);
      if (it == global_keys().end()) fail(line, "unknown key '" + key + "'");
      if (!seen_global.insert(key).second) fail(line, "duplicate key '" + key + "'");
      it->second(cfg, value, line);
    }
  }
  close_scheme();
  validate(cfg);
  return cfg;
}

ExperimentConfig parse_config_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open config file " + path);
  return parse_config(in);
}

namespace {

std::string exact(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ",";
    if constexpr (std::is_floating_point_v<T>) out += exact(v[k]);
    else out += std::to_string(v[k]);
  }
  return out;
}

}  // namespace

std::string canonical_text(const ExperimentConfig& c) {
  std::ostringstream o;
  o << "seed=" << c.seed << "\n"
    << "trials=" << c.trials << "\n"
    << "r_grid=" << join(c.r_grid) << "\n"
    << "target_pf=" << exact(c.target_pf) << "\n"
    << "rho=" << exact(c.rho) << "\n"
    << "n_t=" << c.n_t << "\nn_r=" << c.n_r << "\nn_bs=" << c.n_bs << "\nn_rf=" << c.n_rf << "\n"
    << "n_rf_grid=" << join(c.n_rf_grid) << "\n"
    << "channel=" << (c.channel == ChannelMode::Ideal ? "ideal" : "geometric") << "\n"
    << "criterion=" << (c.criterion == Criterion::AnyBs ? "any_bs" : "strongest_bs") << "\n"
    << "threshold_rule=" << (c.threshold_rule == ThresholdRule::NullCfar ? "null_cfar" : "relative_max") << "\n"
    << "calibration_trials=" << c.resolved_calibration_trials() << "\n"
    << "noise_variance=" << exact(c.noise_variance()) << "\n"
    << "gain_alpha=" << exact(c.gain_alpha) << "\n"
    << "paths=" << join(c.paths) << "\n"
    << "active_bs=" << c.active_bs << "\nlos_bs=" << c.los_bs << "\n"
    << "carrier_ghz=" << exact(c.carrier_ghz) << "\n"
    << "exponent_los=" << exact(c.exponent_los) << "\nexponent_nlos=" << exact(c.exponent_nlos) << "\n"
    << "max_paths=" << c.max_paths << "\npower_decay=" << exact(c.power_decay) << "\n"
    << "d_over_lambda=" << exact(c.d_over_lambda) << "\n"
    << "rbf_draws=" << c.rbf_draws << "\n";
  for (const auto& s : c.schemes)
    o << "[scheme " << s.label << "] type=" << scheme_tag(s.scheme) << " u=" << s.params.u
      << " beta_t=" << s.params.beta_t << " beta_r=" << s.params.beta_r << "\n";
  return o.str();
}

std::string config_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical_text(cfg)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace celldisc
