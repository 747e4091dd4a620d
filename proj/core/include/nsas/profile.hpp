#pragma once

#include <array>
#include <vector>

#include "nsas/solver.hpp"
#include "nsas/state.hpp"

namespace nsas {

/// eta = (sigma, w1, w2, w3) on a reduced grid.  For ell = 1 the transverse
/// part is w' = (w2, w3); for ell = 2 it is w3 alone.
struct ProfileState {
  Grid grid;
  RealArray sigma;
  std::array<RealArray, 3> w;
  double time = 0.0;
  FluidParams params;

  /// Reads (phi_bar, m_bar) as (sigma, w); the grid must be reduced.
  static ProfileState from_state(const StateField& reduced);
  StateField to_state() const;
};

/// Profile right-hand side on the reduced grid of an ell-periodic domain:
/// -L_hat(0, xi) eta + B(eta) with
///   B_sigma = 0,  B_{w_i} = -sum_j d_j (w_i w_j) - alpha d_i (sigma^2).
/// Products are dealiased.
ComponentSpectra profile_source(const Grid& grid, const FluidParams& params, const ComponentSpectra& eta_hat);
ComponentSpectra profile_rhs_spectral(const Grid& grid, const FluidParams& params, const ComponentSpectra& eta_hat);

/// Two-dimensional system (ell = 1).  Throws ShapeError on other grids.
ProfileState profile_rhs_2d(const ProfileState& eta);
/// One-dimensional system (ell = 2).  Throws ShapeError on other grids.
ProfileState profile_rhs_1d(const ProfileState& eta);

/// b(eta) with B = Div' b, stored as b[c][j] for component c and axis j:
/// b[1 + i][j] = -w_i w_j - alpha sigma^2 delta_ij over the open axes j.
struct ProfileFlux {
  std::array<std::array<RealArray, 3>, 4> b;
};
ProfileFlux profile_nonlinearity_flux(const ProfileState& eta);
/// Div' b, for checking against the nonlinear part of the right-hand side.
std::array<RealArray, 4> profile_flux_divergence(const Grid& grid, const ProfileFlux& flux);

struct EnergyRecord {
  double t = 0.0;
  double eta_H2_sq = 0.0;
  double accumulated_dissipation = 0.0;
  double N_t = 0.0;
};

/// ||d_t eta||_{H^1}^2 + ||d_y w||_{H^2}^2 + ||d_y sigma||_{H^1}^2 with d_t eta
/// taken from the right-hand side.
double dissipation_integrand(const Grid& grid, const FluidParams& params, const ComponentSpectra& eta_hat);

/// N(t) = ||eta||_{H^2}^2 + trapezoid integral of the dissipation integrand.
class EnergyAccumulator {
 public:
  const EnergyRecord& add(const Grid& grid, const FluidParams& params, const ComponentSpectra& eta_hat, double t);
  const std::vector<EnergyRecord>& records() const noexcept { return records_; }

 private:
  std::vector<EnergyRecord> records_;
  double last_integrand_ = 0.0;
};

std::vector<EnergyRecord> energy_N(const std::vector<ProfileState>& trajectory);

/// Running sup of (1+t)^{1/2}||eta|| + (1+t)||d_y eta|| (or the 1/4, 3/4
/// weights when `tilde` holds).
std::vector<double> decay_functional_M0(const std::vector<ProfileState>& trajectory, bool tilde = false);

/// Exponential integrator for the profile system; same schemes as the full solver.
class ProfileSolver {
 public:
  ProfileSolver(const StateField& eta0, const SolverConfig& cfg);

  void advance();
  StateField state() const;
  const ComponentSpectra& spectra() const noexcept { return eta_hat_; }
  double time() const noexcept { return time_; }
  std::int64_t steps() const noexcept { return steps_; }
  std::int64_t total_steps() const noexcept { return total_steps_; }
  double dt() const noexcept { return integrator_.dt(); }

 private:
  Grid grid_;
  FluidParams params_;
  double t_end_;
  std::int64_t total_steps_;
  EtdIntegrator integrator_;
  SourceFn source_;
  ComponentSpectra eta_hat_;
  double time_;
  std::int64_t steps_ = 0;
};

/// Runs the profile system to cfg.t_end, with the same sampling contract as run().
StateField profile_run(const StateField& eta0, const SolverConfig& cfg, const DiagnosticSink& sink = {});

}  // namespace nsas
