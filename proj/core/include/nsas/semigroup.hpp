#pragma once

#include "nsas/matrix_exp.hpp"
#include "nsas/state.hpp"
#include "nsas/symbol.hpp"

namespace nsas {

/// exp(-t L_hat(q)) by scaling and squaring.
Matrix4c propagator(const std::array<double, 3>& q, const LinearCoefficients& coeffs, double t);

/// Exact linear evolution U(t) u0, mode by mode.  Modes whose four
/// coefficients all vanish are skipped.  Throws ParameterError for t < 0.
StateField semigroup_apply(double t, const StateField& u0);
ComponentSpectra semigroup_apply_spectral(const Grid& grid, const LinearCoefficients& coeffs, double t,
                                          const ComponentSpectra& spectra);

/// Sharp split at |q| = r0: low keeps |q| <= r0, high keeps the rest.
struct FrequencySplit {
  StateField low;
  StateField high;
};
FrequencySplit frequency_split(const StateField& u, double r0);

struct SpectraSplit {
  ComponentSpectra low;
  ComponentSpectra high;
};
SpectraSplit split_spectra(const Grid& grid, const ComponentSpectra& spectra, double r0);

}  // namespace nsas
