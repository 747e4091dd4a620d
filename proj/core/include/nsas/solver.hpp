#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <vector>

#include "nsas/matrix_exp.hpp"
#include "nsas/state.hpp"

namespace nsas {

enum class TimeScheme { etd2, etdrk2 };

TimeScheme parse_scheme(const std::string& text);
std::string scheme_name(TimeScheme scheme);

struct SolverConfig {
  /// Zero selects 0.8 dt_max for the initial state.
  double dt = 0.0;
  double t_end = 0.0;
  bool dealias = true;
  TimeScheme scheme = TimeScheme::etdrk2;
  /// Zero disables checkpoints.
  std::int64_t checkpoint_stride = 0;
  std::int64_t diagnostics_stride = 1;
  std::filesystem::path checkpoint_dir;
};

/// 0.5 / ((gamma + m_sup) |q|_max), the acoustic/advective restriction.
double dt_max(const Grid& grid, const FluidParams& params, double m_sup);
double dt_max(const StateField& u);

using SourceFn = std::function<ComponentSpectra(const ComponentSpectra&)>;

/// Second-order exponential integrator for d/dt u + L u = N(u) with the
/// Fourier symbol of L applied exactly per mode.
///
/// etdrk2:  a = E u + h phi1 N(u),  u+ = a + h phi2 (N(a) - N(u))
/// etd2:    u+ = E u + h (phi1 + phi2) N_n - h phi2 N_{n-1}  (first step etdrk2)
///
/// with E = exp(-hL), phi_k = phi_k(-hL).  Only modes inside the dealiasing
/// band (or every non-Nyquist mode when dealiasing is off) are evolved; the
/// others are held at zero.
class EtdIntegrator {
 public:
  EtdIntegrator(const Grid& grid, const LinearCoefficients& coeffs, double dt, TimeScheme scheme, bool dealias);

  void advance(ComponentSpectra& u, const SourceFn& source);
  void reset_history() { has_previous_ = false; }
  double dt() const noexcept { return dt_; }
  std::size_t active_modes() const noexcept { return active_.size(); }
  const Grid& grid() const noexcept { return grid_; }

 private:
  Grid grid_;
  double dt_;
  TimeScheme scheme_;
  std::vector<std::size_t> active_;
  std::vector<Matrix4c> e_, hphi1_, hphi2_;
  ComponentSpectra previous_;
  bool has_previous_ = false;
};

/// Spectral right-hand side of the nonlinear system restricted to one grid.
SourceFn navier_stokes_source(const Grid& grid, const FluidParams& params, bool dealias);

/// Called with the current state and its step index.
using DiagnosticSink = std::function<void(const StateField&, std::int64_t)>;

/// Drives the full system from u0.time to the absolute time cfg.t_end in
/// ceil((t_end - u0.time) / dt) steps, dt
/// shrunk so that the run ends exactly at t_end.
class Solver {
 public:
  Solver(const StateField& u0, const SolverConfig& cfg);

  void advance();
  StateField state() const;
  const ComponentSpectra& spectra() const noexcept { return u_hat_; }
  double time() const noexcept { return time_; }
  std::int64_t steps() const noexcept { return steps_; }
  std::int64_t total_steps() const noexcept { return total_steps_; }
  double dt() const noexcept { return integrator_.dt(); }

 private:
  Grid grid_;
  FluidParams params_;
  SolverConfig cfg_;
  std::int64_t total_steps_;
  EtdIntegrator integrator_;
  SourceFn source_;
  ComponentSpectra u_hat_;
  double time_;
  std::int64_t steps_ = 0;
};

/// One step of size cfg.dt (etdrk2 regardless of cfg.scheme, which needs history).
StateField step(const StateField& u, const SolverConfig& cfg);

/// Steps to cfg.t_end, calling `sink` at step 0, every diagnostics_stride
/// steps and at the final step, and writing checkpoints at checkpoint_stride.
StateField run(const StateField& u0, const SolverConfig& cfg, const DiagnosticSink& sink = {});

/// Integer step count and exact step for a horizon.
std::pair<std::int64_t, double> plan_steps(double t_end, double dt);

}  // namespace nsas
