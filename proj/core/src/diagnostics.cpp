#include "nsas/diagnostics.hpp"

#include <cmath>

#include "nsas/error.hpp"
#include "nsas/spectral.hpp"

namespace nsas {

std::array<double, 5> derivative_norms(const Grid& grid, const ComponentSpectra& spectra) {
  std::array<double, 5> sums{};
  grid.for_each_mode([&](std::size_t idx, const std::array<double, 3>& q, double w, const auto&) {
    double e = 0.0;
    for (const auto& c : spectra) e += std::norm(c[idx]);
    if (e == 0.0) return;
    const double p = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
    double pk = 1.0;
    for (int k = 0; k < 5; ++k, pk *= p) sums[k] += w * pk * e;
  });
  std::array<double, 5> out;
  for (int k = 0; k < 5; ++k) out[k] = std::sqrt(sums[k] / grid.volume());
  return out;
}

std::vector<double> record_norms(const StateField& u, const std::vector<int>& orders) {
  for (int k : orders)
    if (k < 0 || k > 4) throw ParameterError("record_norms: derivative order must lie in 0..4");
  const auto all = derivative_norms(u.grid, u.spectra());
  std::vector<double> out;
  for (int k : orders) out.push_back(all[k]);
  return out;
}

double state_sobolev_norm(const Grid& grid, const ComponentSpectra& spectra, int s) {
  double sq = 0.0;
  for (const auto& c : spectra) {
    const double h = sobolev_norm_spectral(grid, c, s);
    sq += h * h;
  }
  return std::sqrt(sq);
}

namespace {

bool is_torus_mean(const Grid& grid, const std::array<int, 3>& j) {
  for (int a = 0; a < grid.ell(); ++a)
    if (grid.signed_index(a, j[a]) != 0) return false;
  return true;
}

}  // namespace

AverageSplitNorms split_average_norms(const Grid& grid, const ComponentSpectra& spectra) {
  AverageSplitNorms r;
  double l2 = 0.0, d1 = 0.0;
  grid.for_each_mode([&](std::size_t idx, const std::array<double, 3>& q, double w, const std::array<int, 3>& j) {
    if (is_torus_mean(grid, j)) return;
    double e = 0.0;
    for (const auto& c : spectra) e += std::norm(c[idx]);
    l2 += w * e;
    d1 += w * (q[0] * q[0] + q[1] * q[1] + q[2] * q[2]) * e;
  });
  r.l2_tilde = std::sqrt(l2 / grid.volume());
  r.d1_tilde = std::sqrt(d1 / grid.volume());
  r.h1_tilde = std::sqrt((l2 + d1) / grid.volume());
  for (int c = 0; c < kComponents; ++c) r.ubar_spectra[c] = torus_average_spectrum(grid, spectra[c]);
  return r;
}

AverageComparison compare_to_average(const StateField& u) {
  if (u.grid.is_reduced()) throw ShapeError("compare_to_average needs a full grid");
  const auto spectra = u.spectra();
  const auto split = split_average_norms(u.grid, spectra);
  AverageComparison r;
  const Grid red = u.grid.reduced();
  r.ubar = StateField::from_spectra(red, split.ubar_spectra, u.params, u.time);
  r.tilde = StateField::zeros(u.grid, u.params, u.time);
  for (int c = 0; c < kComponents; ++c) {
    const RealArray lifted = lift_to_full(u.grid, r.ubar.u[c]);
    for (std::size_t i = 0; i < lifted.size(); ++i) r.tilde.u[c][i] = u.u[c][i] - lifted[i];
  }
  r.tilde_norms = {split.l2_tilde, split.d1_tilde};
  r.tilde_h1 = split.h1_tilde;
  return r;
}

ProfileDifference profile_difference(const StateField& ubar, const StateField& eta) {
  if (!(ubar.grid == eta.grid)) throw AlignmentError("profile comparison: grids differ");
  const double scale = std::max({1.0, std::abs(ubar.time), std::abs(eta.time)});
  if (std::abs(ubar.time - eta.time) > 1e-9 * scale)
    throw AlignmentError("profile comparison: timestamps differ (" + std::to_string(ubar.time) + " vs " +
                         std::to_string(eta.time) + ")");
  ComponentSpectra diff;
  for (int c = 0; c < kComponents; ++c) {
    RealArray d(ubar.u[c].size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = ubar.u[c][i] - eta.u[c][i];
    diff[c] = forward_transform(ubar.grid, d);
  }
  return {ubar.time, state_sobolev_norm(ubar.grid, diff, 0), state_sobolev_norm(ubar.grid, diff, 1)};
}

std::vector<ProfileDifference> compare_to_profile(const std::vector<StateField>& ubar,
                                                  const std::vector<StateField>& eta) {
  if (ubar.size() != eta.size()) throw AlignmentError("profile comparison: series lengths differ");
  std::vector<ProfileDifference> out;
  out.reserve(ubar.size());
  for (std::size_t i = 0; i < ubar.size(); ++i) out.push_back(profile_difference(ubar[i], eta[i]));
  return out;
}

double full_profile_distance(double l2_tilde, double l2_ubar_minus_eta, double periodic_volume) {
  return std::sqrt(l2_tilde * l2_tilde + periodic_volume * l2_ubar_minus_eta * l2_ubar_minus_eta);
}

std::string sup_kind_name(SupKind kind) {
  switch (kind) {
    case SupKind::M:
      return "M";
    case SupKind::M1:
      return "M1";
    case SupKind::M0:
      return "M0";
    case SupKind::M0_tilde:
      return "M0_tilde";
    case SupKind::M2:
      return "M2";
    case SupKind::N1:
      return "N1";
  }
  return "?";
}

SupFunctionalTracker::SupFunctionalTracker(SupKind kind, double a0) : kind_(kind), a0_(a0) {}

double SupFunctionalTracker::weighted(double t, double a, double b) const {
  const double s = 1.0 + t;
  switch (kind_) {
    case SupKind::M:
    case SupKind::M0:
      return std::sqrt(s) * a + s * b;
    case SupKind::M1:
    case SupKind::M0_tilde:
      return std::pow(s, 0.25) * a + std::pow(s, 0.75) * b;
    case SupKind::M2:
      return std::exp(a0_ * t) * a;
    case SupKind::N1:
      return s * a;
  }
  return 0.0;
}

double SupFunctionalTracker::update(double t, double a, double b) {
  running_sup_ = std::max(running_sup_, weighted(t, a, b));
  history_.emplace_back(t, running_sup_);
  return running_sup_;
}

}  // namespace nsas
