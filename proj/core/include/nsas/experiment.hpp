#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "nsas/config.hpp"
#include "nsas/decay_fit.hpp"
#include "nsas/state.hpp"

namespace nsas {

struct CriterionResult {
  std::string name;
  bool pass = false;
  double value = 0.0;
  /// Human-readable target, e.g. "[-0.65, -0.35]" or "<= 0.01".
  std::string target;
  std::string detail;
};

enum class VerdictStatus { pass, fail, error };
std::string status_name(VerdictStatus s);

struct ExperimentReport {
  ExperimentKind kind = ExperimentKind::theorem1;
  VerdictStatus status = VerdictStatus::pass;
  std::vector<CriterionResult> criteria;
  std::string error_phase;
  std::string error_message;
  double wall_seconds = 0.0;

  /// PASS when every criterion passes, FAIL otherwise; ERROR is set by run_experiment.
  void finalize();
  const CriterionResult* find(const std::string& name) const;
};

/// 0 PASS, 1 FAIL, 2 ERROR.
int exit_code(const ExperimentReport& r);

/// Rows of the full-system series (kNsSeriesColumns) and of the profile
/// series (kProfileSeriesColumns) kept in memory.
struct SimulationOutput {
  std::vector<std::vector<double>> rows;
  std::vector<std::vector<double>> profile_rows;
  double dt = 0.0;
  double t_end = 0.0;
  double horizon = 0.0;
  double periodic_volume = 0.0;
  /// Largest |mean phi(t) - mean phi(0)| over the samples.
  double mean_phi_drift = 0.0;
  /// Largest |mean m(t) - mean m(0)| over the samples.
  double mean_m_drift = 0.0;
  /// Spectral gap of the constant background given by the initial mean (ell = 3).
  double a0 = 0.0;
};

/// Full system from the configured initial data.  For ell < 3 the matching
/// profile system runs in lockstep from the torus average of u0.  Writes
/// series.csv (and profile_series.csv for ell < 3) and checkpoints into
/// out_dir when it is non-empty.
SimulationOutput simulate(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

/// Profile system alone from the torus average of the configured initial
/// data; writes series.csv with kProfileSeriesColumns.
SimulationOutput simulate_profile(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

/// Default end time: the wrap horizon for ell < 3, 20 for ell = 3.
double default_t_end(const ExperimentConfig& cfg);

/// Runs the configured experiment, writing series, verdict.txt and stamp.json
/// into out_dir.  Module errors are caught and reported as ERROR with the
/// phase that failed.
ExperimentReport run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
                                std::ostream* log = nullptr);

void write_verdict(const std::filesystem::path& path, const ExperimentReport& report);
ExperimentReport read_verdict(const std::filesystem::path& path);

/// Fit helper shared by experiments and the command line.
DecayFit fit_column(const std::vector<double>& t, const std::vector<double>& v, const std::string& label,
                    DecayModel model, std::pair<double, double> window);

}  // namespace nsas

namespace nsas {

/// Rows (p, Re lambda1, Re lambda+, Im lambda+, Re lambda-, Im lambda-, discriminant)
/// for `samples` log-spaced p in [p_max * 1e-8, p_max].
std::vector<std::vector<double>> symbol_sweep_rows(const LinearCoefficients& coeffs, double p_max, int samples);
inline const std::vector<std::string> kSymbolColumns = {"p",        "re_lambda1", "re_lambda_plus", "im_lambda_plus",
                                                        "re_lambda_minus", "im_lambda_minus", "discriminant"};

}  // namespace nsas
