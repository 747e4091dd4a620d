#pragma once

#include <array>
#include <string>
#include <vector>

#include "nsas/state.hpp"

namespace nsas {

/// ||d^k u||_{L^2} for k = 0..4 over all four components, with
/// ||d^k u||^2 = (1/V) sum_q |q|^{2k} |u_hat(q)|^2.
std::array<double, 5> derivative_norms(const Grid& grid, const ComponentSpectra& spectra);

/// Selected entries of derivative_norms; throws ParameterError for k outside 0..4.
std::vector<double> record_norms(const StateField& u, const std::vector<int>& orders);

/// ||u||_{H^s} of the whole state.
double state_sobolev_norm(const Grid& grid, const ComponentSpectra& spectra, int s);

/// Split u = u_bar + u_tilde with u_bar the torus average.
struct AverageComparison {
  /// Lives on grid.reduced().
  StateField ubar;
  /// u - u_bar on the full grid; no k = 0 content.
  StateField tilde;
  /// ||d^k u_tilde||_{L^2}, k = 0, 1.
  std::array<double, 2> tilde_norms{};
  /// ||u_tilde||_{H^1}.
  double tilde_h1 = 0.0;
};
AverageComparison compare_to_average(const StateField& u);

/// The same norms straight from spectra, without building fields.
struct AverageSplitNorms {
  double l2_tilde = 0.0;
  double d1_tilde = 0.0;
  double h1_tilde = 0.0;
  ComponentSpectra ubar_spectra;
};
AverageSplitNorms split_average_norms(const Grid& grid, const ComponentSpectra& spectra);

struct ProfileDifference {
  double t = 0.0;
  double l2 = 0.0;
  double h1 = 0.0;
};

/// ||u_bar - eta|| on the reduced grid.  Throws AlignmentError on a grid or
/// time mismatch (times compared to 1e-9 relative).
ProfileDifference profile_difference(const StateField& ubar, const StateField& eta);
std::vector<ProfileDifference> compare_to_profile(const std::vector<StateField>& ubar,
                                                  const std::vector<StateField>& eta);

/// ||u - eta||_{L^2(Omega)}^2 = ||u_tilde||^2 + |T^ell| ||u_bar - eta||^2.
double full_profile_distance(double l2_tilde, double l2_ubar_minus_eta, double periodic_volume);

enum class SupKind { M, M1, M0, M0_tilde, M2, N1 };
std::string sup_kind_name(SupKind kind);

/// Running supremum of a weighted norm combination:
///   M, M0:        (1+t)^{1/2} a + (1+t) b
///   M1, M0_tilde: (1+t)^{1/4} a + (1+t)^{3/4} b
///   M2:           exp(a0 t) a
///   N1:           (1+t) a
class SupFunctionalTracker {
 public:
  explicit SupFunctionalTracker(SupKind kind, double a0 = 0.0);

  /// Returns the updated running supremum.
  double update(double t, double a, double b = 0.0);
  double weighted(double t, double a, double b = 0.0) const;

  SupKind kind() const noexcept { return kind_; }
  double value() const noexcept { return running_sup_; }
  const std::vector<std::pair<double, double>>& history() const noexcept { return history_; }

 private:
  SupKind kind_;
  double a0_;
  double running_sup_ = 0.0;
  std::vector<std::pair<double, double>> history_;
};

}  // namespace nsas
