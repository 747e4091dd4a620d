#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>

#include "nsas/domain.hpp"
#include "nsas/solver.hpp"

namespace nsas {

enum class ExperimentKind { theorem1, theorem2, theorem3, linear_lemma21, profile_only, symbol_sweep, solver_gates };

ExperimentKind parse_experiment(const std::string& text);
std::string experiment_name(ExperimentKind kind);

/// Flat `key = value` configuration, one entry per line, '#' starts a comment.
///
/// Thresholds are written `threshold.<name> = value` and fit windows
/// `window.<name> = start,end`.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::theorem1;
  int ell = 1;
  std::array<int, 3> resolution{8, 128, 128};
  double box_length = 100.0 * kTwoPi;
  double nu1 = 1.0;
  double nu2 = 1.0;
  PressureLaw law = PressureLaw::quadratic();
  PressureRemainder remainder = PressureRemainder::taylor;
  double epsilon = 1e-2;
  std::uint64_t seed = 1;
  /// 0 selects 0.8 dt_max.
  double dt = 0.0;
  /// Negative selects the experiment default.
  double t_end = -1.0;
  /// 0 selects 0.9 min{1, gamma^2/(nu1+nu2)^2}.
  double r0_sq = 0.0;
  std::int64_t diagnostics_stride = 10;
  std::int64_t checkpoint_stride = 0;
  int band = 2;
  double envelope_width = 2.5;
  TimeScheme scheme = TimeScheme::etdrk2;
  bool dealias = true;
  /// symbol_sweep range and sample count.
  double p_max = 1e4;
  int samples = 2000;
  /// Spacing of semigroup samples in linear_lemma21.
  double sample_interval = 1.0;
  std::map<std::string, double> thresholds;
  std::map<std::string, std::pair<double, double>> windows;
  std::filesystem::path out_dir;

  DomainSpec domain() const;
  FluidParams fluid() const;
  LinearCoefficients linear() const { return {nu1, nu2, fluid().gamma}; }
  double effective_r0_sq() const;
  double threshold(const std::string& name, double fallback) const;
  /// Config window if present, otherwise `fallback`.
  std::pair<double, double> window(const std::string& name, std::pair<double, double> fallback) const;
  bool has_window(const std::string& name) const { return windows.count(name) > 0; }

  /// Sorted `key = value` lines with every field spelled out; hashed into stamps.
  std::string canonical() const;

  /// Range checks and experiment/ell consistency.  Throws ConfigError.
  void validate() const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace nsas
