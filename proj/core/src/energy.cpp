#include <cmath>

#include "nsas/diagnostics.hpp"
#include "nsas/profile.hpp"
#include "nsas/spectral.hpp"

namespace nsas {

double dissipation_integrand(const Grid& grid, const FluidParams& params, const ComponentSpectra& eta_hat) {
  const ComponentSpectra dt = profile_rhs_spectral(grid, params, eta_hat);
  double sum = 0.0;
  grid.for_each_mode([&](std::size_t idx, const std::array<double, 3>& q, double w, const auto&) {
    const double p = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
    double e_dt = 0.0, e_w = 0.0;
    for (int c = 0; c < kComponents; ++c) e_dt += std::norm(dt[c][idx]);
    for (int c = 1; c < kComponents; ++c) e_w += std::norm(eta_hat[c][idx]);
    sum += w * ((1.0 + p) * e_dt + (1.0 + p) * (1.0 + p) * p * e_w + (1.0 + p) * p * std::norm(eta_hat[0][idx]));
  });
  return sum / grid.volume();
}

const EnergyRecord& EnergyAccumulator::add(const Grid& grid, const FluidParams& params,
                                           const ComponentSpectra& eta_hat, double t) {
  const double h2 = state_sobolev_norm(grid, eta_hat, 2);
  const double integrand = dissipation_integrand(grid, params, eta_hat);
  EnergyRecord r;
  r.t = t;
  r.eta_H2_sq = h2 * h2;
  if (!records_.empty()) {
    const EnergyRecord& prev = records_.back();
    r.accumulated_dissipation = prev.accumulated_dissipation + 0.5 * (t - prev.t) * (integrand + last_integrand_);
  }
  r.N_t = r.eta_H2_sq + r.accumulated_dissipation;
  last_integrand_ = integrand;
  records_.push_back(r);
  return records_.back();
}

std::vector<EnergyRecord> energy_N(const std::vector<ProfileState>& trajectory) {
  EnergyAccumulator acc;
  for (const auto& eta : trajectory) {
    const StateField s = eta.to_state();
    acc.add(s.grid, s.params, s.spectra(), s.time);
  }
  return acc.records();
}

std::vector<double> decay_functional_M0(const std::vector<ProfileState>& trajectory, bool tilde) {
  SupFunctionalTracker tracker(tilde ? SupKind::M0_tilde : SupKind::M0);
  std::vector<double> out;
  for (const auto& eta : trajectory) {
    const StateField s = eta.to_state();
    const auto norms = derivative_norms(s.grid, s.spectra());
    out.push_back(tracker.update(s.time, norms[0], norms[1]));
  }
  return out;
}

}  // namespace nsas
