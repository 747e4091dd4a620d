#include "nsas/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "nsas/error.hpp"
#include "nsas/series_csv.hpp"
#include "nsas/symbol.hpp"

namespace nsas {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  // Allows "pi" multiples such as 100pi or 200*pi for box lengths.
  std::string s = v;
  double factor = 1.0;
  for (const char* suffix : {"*pi", "pi"}) {
    const std::string suf = suffix;
    if (s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0) {
      s = s.substr(0, s.size() - suf.size());
      factor = std::numbers::pi;
      if (s.empty()) s = "1";
      break;
    }
  }
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': '" + v + "' is not a number");
  }
  if (used != s.size()) throw ConfigError("key '" + key + "': '" + v + "' is not a number");
  return d * factor;
}

std::int64_t to_int(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d != std::floor(d) || std::abs(d) > 9e15) throw ConfigError("key '" + key + "': '" + v + "' is not an integer");
  return std::int64_t(d);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : v) {
    if (c == ',' || c == 'x' || c == 'X') {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("key '" + key + "': '" + v + "' is not a boolean");
}

}  // namespace

ExperimentKind parse_experiment(const std::string& text) {
  static const std::map<std::string, ExperimentKind> names = {
      {"theorem1", ExperimentKind::theorem1},         {"theorem2", ExperimentKind::theorem2},
      {"theorem3", ExperimentKind::theorem3},         {"linear_lemma21", ExperimentKind::linear_lemma21},
      {"profile_only", ExperimentKind::profile_only}, {"symbol_sweep", ExperimentKind::symbol_sweep},
      {"solver_gates", ExperimentKind::solver_gates}};
  const auto it = names.find(text);
  if (it == names.end()) throw ConfigError("unknown experiment '" + text + "'");
  return it->second;
}

std::string experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::theorem1:
      return "theorem1";
    case ExperimentKind::theorem2:
      return "theorem2";
    case ExperimentKind::theorem3:
      return "theorem3";
    case ExperimentKind::linear_lemma21:
      return "linear_lemma21";
    case ExperimentKind::profile_only:
      return "profile_only";
    case ExperimentKind::symbol_sweep:
      return "symbol_sweep";
    case ExperimentKind::solver_gates:
      return "solver_gates";
  }
  return "?";
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  std::map<std::string, int> seen;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
    if (seen[key]++) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");

    try {
      if (key.rfind("threshold.", 0) == 0) {
        c.thresholds[key.substr(10)] = to_double(key, val);
      } else if (key.rfind("window.", 0) == 0) {
        const auto parts = split_list(val);
        if (parts.size() != 2) throw ConfigError("key '" + key + "': window needs start,end");
        c.windows[key.substr(7)] = {to_double(key, parts[0]), to_double(key, parts[1])};
      } else if (key == "experiment") {
        c.experiment = parse_experiment(val);
      } else if (key == "ell") {
        c.ell = int(to_int(key, val));
      } else if (key == "resolution") {
        const auto parts = split_list(val);
        if (parts.size() != 3) throw ConfigError("resolution needs three entries");
        for (int a = 0; a < 3; ++a) c.resolution[a] = int(to_int(key, parts[a]));
      } else if (key == "box_length") {
        c.box_length = to_double(key, val);
      } else if (key == "nu1") {
        c.nu1 = to_double(key, val);
      } else if (key == "nu2") {
        c.nu2 = to_double(key, val);
      } else if (key == "pressure_law") {
        c.law = PressureLaw::parse(val);
      } else if (key == "pressure_remainder") {
        if (val == "taylor")
          c.remainder = PressureRemainder::taylor;
        else if (val == "squared")
          c.remainder = PressureRemainder::squared;
        else
          throw ConfigError("pressure_remainder must be taylor or squared");
      } else if (key == "epsilon") {
        c.epsilon = to_double(key, val);
      } else if (key == "seed") {
        const auto s = to_int(key, val);
        if (s < 0) throw ConfigError("seed must be non-negative");
        c.seed = std::uint64_t(s);
      } else if (key == "dt") {
        c.dt = to_double(key, val);
      } else if (key == "t_end") {
        c.t_end = to_double(key, val);
      } else if (key == "r0_sq") {
        c.r0_sq = to_double(key, val);
      } else if (key == "diagnostics_stride") {
        c.diagnostics_stride = to_int(key, val);
      } else if (key == "checkpoint_stride") {
        c.checkpoint_stride = to_int(key, val);
      } else if (key == "band") {
        c.band = int(to_int(key, val));
      } else if (key == "envelope_width") {
        c.envelope_width = to_double(key, val);
      } else if (key == "scheme") {
        c.scheme = parse_scheme(val);
      } else if (key == "dealias") {
        c.dealias = to_bool(key, val);
      } else if (key == "p_max") {
        c.p_max = to_double(key, val);
      } else if (key == "samples") {
        c.samples = int(to_int(key, val));
      } else if (key == "sample_interval") {
        c.sample_interval = to_double(key, val);
      } else if (key == "out_dir") {
        c.out_dir = val;
      } else {
        throw ConfigError("unknown key '" + key + "'");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

DomainSpec ExperimentConfig::domain() const { return DomainSpec::make(ell, resolution, box_length); }

FluidParams ExperimentConfig::fluid() const { return FluidParams::make(nu1, nu2, law, remainder); }

double ExperimentConfig::effective_r0_sq() const {
  return r0_sq > 0.0 ? r0_sq : default_r0_sq(linear());
}

double ExperimentConfig::threshold(const std::string& name, double fallback) const {
  const auto it = thresholds.find(name);
  return it == thresholds.end() ? fallback : it->second;
}

std::pair<double, double> ExperimentConfig::window(const std::string& name,
                                                   std::pair<double, double> fallback) const {
  const auto it = windows.find(name);
  return it == windows.end() ? fallback : it->second;
}

std::string ExperimentConfig::canonical() const {
  std::map<std::string, std::string> kv;
  auto num = [](double v) { return format_csv_value(v); };
  kv["experiment"] = experiment_name(experiment);
  kv["ell"] = std::to_string(ell);
  kv["resolution"] = std::to_string(resolution[0]) + "," + std::to_string(resolution[1]) + "," +
                     std::to_string(resolution[2]);
  kv["box_length"] = num(box_length);
  kv["nu1"] = num(nu1);
  kv["nu2"] = num(nu2);
  kv["pressure_law"] = law.name();
  kv["pressure_remainder"] = remainder == PressureRemainder::taylor ? "taylor" : "squared";
  kv["epsilon"] = num(epsilon);
  kv["seed"] = std::to_string(seed);
  kv["dt"] = num(dt);
  kv["t_end"] = num(t_end);
  kv["r0_sq"] = num(r0_sq);
  kv["diagnostics_stride"] = std::to_string(diagnostics_stride);
  kv["checkpoint_stride"] = std::to_string(checkpoint_stride);
  kv["band"] = std::to_string(band);
  kv["envelope_width"] = num(envelope_width);
  kv["scheme"] = scheme_name(scheme);
  kv["dealias"] = dealias ? "true" : "false";
  kv["p_max"] = num(p_max);
  kv["samples"] = std::to_string(samples);
  kv["sample_interval"] = num(sample_interval);
  for (const auto& [k, v] : thresholds) kv["threshold." + k] = num(v);
  for (const auto& [k, v] : windows) kv["window." + k] = num(v.first) + "," + num(v.second);
  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  if (ell < 1 || ell > 3) fail("ell must be 1, 2 or 3");
  const int expected = experiment == ExperimentKind::theorem1 ? 1
                       : experiment == ExperimentKind::theorem2 ? 2
                       : experiment == ExperimentKind::theorem3 ? 3
                                                                : 0;
  if (expected && ell != expected)
    fail(experiment_name(experiment) + " requires ell = " + std::to_string(expected) + ", got " + std::to_string(ell));
  if (experiment == ExperimentKind::profile_only && ell == 3) fail("profile_only requires ell = 1 or 2");
  for (int r : resolution)
    if (r < 4 || r % 2) fail("resolution entries must be even and at least 4");
  if (!(box_length > 0.0)) fail("box_length must be positive");
  if (!(epsilon > 0.0)) fail("epsilon must be positive");
  if (dt < 0.0) fail("dt must be positive (or 0 for the default)");
  if (diagnostics_stride < 1) fail("diagnostics_stride must be at least 1");
  if (checkpoint_stride < 0) fail("checkpoint_stride must be non-negative");
  if (band < 0) fail("band must be non-negative");
  if (!(envelope_width > 0.0)) fail("envelope_width must be positive");
  if (r0_sq < 0.0) fail("r0_sq must be positive (or 0 for the default)");
  if (!(p_max > 0.0) || samples < 2) fail("p_max must be positive and samples at least 2");
  if (!(sample_interval > 0.0)) fail("sample_interval must be positive");
  try {
    domain().validate();
    fluid().validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  for (const auto& [k, w] : windows)
    if (!(w.second > w.first)) fail("window." + k + " must have start < end");
}

}  // namespace nsas
