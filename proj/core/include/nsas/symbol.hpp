#pragma once

#include <array>
#include <complex>
#include <span>

#include "nsas/domain.hpp"
#include "nsas/matrix_exp.hpp"

namespace nsas {

/// Full wavevector q = (k, xi): the first `ell` entries are torus wavenumbers k,
/// the rest are continuous-direction wavenumbers xi.
struct FrequencyVector {
  std::array<double, 3> q{};
  int ell = 1;

  static FrequencyVector from_parts(std::span<const double> k, std::span<const double> xi);

  std::span<const double> k() const { return {q.data(), std::size_t(ell)}; }
  std::span<const double> xi() const { return {q.data() + ell, std::size_t(3 - ell)}; }
  double p() const { return q[0] * q[0] + q[1] * q[1] + q[2] * q[2]; }
  double magnitude() const;
};

/// Fourier symbol of the linearised operator: d/dt u_hat + L_hat(q) u_hat = 0.
///
///   [ 0        i gamma q^T                   ]
///   [ i gamma q   nu1 |q|^2 I3 + nu2 q q^T   ]
struct SymbolMatrix {
  Matrix4c entries;
  FrequencyVector freq;
  LinearCoefficients coeffs;
};

SymbolMatrix assemble_symbol(const FrequencyVector& freq, const LinearCoefficients& coeffs);
Matrix4c symbol_entries(const std::array<double, 3>& q, const LinearCoefficients& coeffs);

/// Eigenvalues of L_hat at |q|^2 = p: the viscous pair nu1 p (twice) and the
/// acoustic pair ((nu1+nu2) p +- sqrt((nu1+nu2)^2 p^2 - 4 gamma^2 p)) / 2.
struct EigenSet {
  std::complex<double> lambda1;
  std::complex<double> lambda2;
  std::complex<double> lambda_plus;
  std::complex<double> lambda_minus;
  double p = 0.0;

  std::array<std::complex<double>, 4> values() const { return {lambda1, lambda2, lambda_plus, lambda_minus}; }
  double discriminant(const LinearCoefficients& c) const;
};

/// Closed forms.  When the discriminant is negative lambda_plus carries the
/// non-negative imaginary part; when positive lambda_minus is evaluated as
/// gamma^2 p / lambda_plus to avoid cancellation.
EigenSet symbol_eigenvalues(double p, const LinearCoefficients& coeffs);

/// Upper end of the admissible window for r0^2: min{1, gamma^2/(nu1+nu2)^2}.
double r0_sq_limit(const LinearCoefficients& coeffs);
/// 0.9 of the admissible limit.
double default_r0_sq(const LinearCoefficients& coeffs);

struct GapReport {
  /// a = min{nu1 r0^2, gamma^2 / (2 (nu1 + nu2))}.
  double a = 0.0;
  double r0_sq = 0.0;
  /// min over sampled p in [r0^2, p_max] of the smallest eigenvalue real part.
  double sampled_min_re = 0.0;
  /// sampled_min_re >= a (1 - 1e-9).  Fails for nu2 < nu1 near p = r0^2.
  bool min_form_holds = false;
};

/// Throws ParameterError when r0^2 is outside (0, r0_sq_limit).
GapReport spectral_gap(double r0_sq, const LinearCoefficients& coeffs, double p_max = 1e4,
                       int samples = 20000);

/// Constant background (phi_bar, m_bar) for the fully periodic case.
struct Background {
  double phi = 0.0;
  std::array<double, 3> m{};
};

/// Symbol of the system linearised about a constant background on T^3.
struct PerturbedSymbol {
  Matrix4c entries;
  std::array<int, 3> k{};
  Background background;
  /// c = p'((phi_bar + gamma)/gamma).
  double c = 0.0;
};

PerturbedSymbol assemble_perturbed_symbol(const std::array<int, 3>& k, const Background& bg,
                                          const FluidParams& params);

/// Closed-form eigenvalues of the perturbed symbol, ordered (lambda1, lambda2,
/// lambda_plus, lambda_minus).
std::array<std::complex<double>, 4> perturbed_eigenvalues(const std::array<int, 3>& k, const Background& bg,
                                                          const FluidParams& params);

struct PerturbedGap {
  double a0 = 0.0;
  std::array<int, 3> argmin{};
  /// True when the infimum is the large-|k| limit rather than a lattice point.
  bool asymptotic = false;
};

/// Infimum of min Re lambda over nonzero lattice k: the minimum over
/// 0 < |k|_inf <= k_max combined with the large-|k| limit c / (r (nu1 + nu2))
/// of Re lambda_minus.  Throws StabilityError when some Re lambda <= 0 (naming
/// the offending k) or when the outer shell is still decreasing below that limit.
PerturbedGap perturbed_gap(const Background& bg, const FluidParams& params, int k_max = 16);

}  // namespace nsas
