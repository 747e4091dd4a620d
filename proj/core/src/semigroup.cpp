#include "nsas/semigroup.hpp"

#include "nsas/error.hpp"

namespace nsas {

Matrix4c propagator(const std::array<double, 3>& q, const LinearCoefficients& coeffs, double t) {
  return expm(Matrix4c(-t * symbol_entries(q, coeffs)));
}

ComponentSpectra semigroup_apply_spectral(const Grid& grid, const LinearCoefficients& coeffs, double t,
                                          const ComponentSpectra& spectra) {
  if (!(t >= 0.0)) throw ParameterError("semigroup_apply: t must be non-negative");
  for (const auto& s : spectra)
    if (s.size() != grid.modes()) throw ShapeError("semigroup_apply: spectrum size mismatch");
  ComponentSpectra out;
  for (auto& s : out) s.assign(grid.modes(), Complex(0.0));
  const auto n = std::ptrdiff_t(grid.modes());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t idx = 0; idx < n; ++idx) {
    const auto i = std::size_t(idx);
    Vector4c v;
    bool any = false;
    for (int c = 0; c < kComponents; ++c) {
      v(c) = spectra[c][i];
      any = any || v(c) != Complex(0.0);
    }
    if (!any) continue;
    if (t > 0.0) v = propagator(grid.mode_wavevector(i), coeffs, t) * v;
    for (int c = 0; c < kComponents; ++c) out[c][i] = v(c);
  }
  return out;
}

StateField semigroup_apply(double t, const StateField& u0) {
  if (!(t >= 0.0)) throw ParameterError("semigroup_apply: t must be non-negative");
  const auto out = semigroup_apply_spectral(u0.grid, u0.params.linear(), t, u0.spectra());
  return StateField::from_spectra(u0.grid, out, u0.params, u0.time + t);
}

SpectraSplit split_spectra(const Grid& grid, const ComponentSpectra& spectra, double r0) {
  SpectraSplit s{spectra, spectra};
  const double r0_sq = r0 * r0;
  grid.for_each_mode([&](std::size_t idx, const std::array<double, 3>& q, double, const auto&) {
    const double p = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
    auto& zeroed = p <= r0_sq ? s.high : s.low;
    for (auto& c : zeroed) c[idx] = 0.0;
  });
  return s;
}

FrequencySplit frequency_split(const StateField& u, double r0) {
  if (!(r0 > 0.0)) throw ParameterError("frequency_split: r0 must be positive");
  const auto parts = split_spectra(u.grid, u.spectra(), r0);
  return {StateField::from_spectra(u.grid, parts.low, u.params, u.time),
          StateField::from_spectra(u.grid, parts.high, u.params, u.time)};
}

}  // namespace nsas
