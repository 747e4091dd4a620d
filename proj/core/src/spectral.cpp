#include "nsas/spectral.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "nsas/error.hpp"

namespace nsas {

void apply_derivative(const Grid& grid, std::span<Complex> spectrum, int axis, int order) {
  if (axis < 0 || axis > 2) throw ParameterError("derivative axis must be 0, 1 or 2");
  if (order < 1) throw ParameterError("derivative order must be at least 1");
  if (spectrum.size() != grid.modes()) throw ShapeError("apply_derivative: spectrum size does not match grid");
  const auto& ss = grid.spectral_shape();
  std::size_t idx = 0;
  for (int j2 = 0; j2 < ss[2]; ++j2)
    for (int j1 = 0; j1 < ss[1]; ++j1)
      for (int j0 = 0; j0 < ss[0]; ++j0, ++idx) {
        if (grid.has_nyquist(j0, j1, j2)) {
          spectrum[idx] = 0.0;
          continue;
        }
        const int j = axis == 0 ? j0 : (axis == 1 ? j1 : j2);
        const Complex iq(0.0, grid.wavenumber(axis, j));
        Complex factor = 1.0;
        for (int o = 0; o < order; ++o) factor *= iq;
        spectrum[idx] *= factor;
      }
}

RealArray spectral_derivative(const Grid& grid, std::span<const double> field, int axis, int order) {
  ComplexArray s = forward_transform(grid, field);
  apply_derivative(grid, s, axis, order);
  return inverse_transform(grid, s);
}

RealArray torus_average(const Grid& grid, std::span<const double> field) {
  if (field.size() != grid.points()) throw ShapeError("torus_average: field size does not match grid");
  if (grid.is_reduced()) return RealArray(field.begin(), field.end());
  const Grid red = grid.reduced();
  const auto& n = grid.shape();
  const int ell = grid.ell();
  RealArray out(red.points(), 0.0);
  std::vector<int> counts(red.points(), 0);
  for (int i2 = 0; i2 < n[2]; ++i2)
    for (int i1 = 0; i1 < n[1]; ++i1)
      for (int i0 = 0; i0 < n[0]; ++i0) {
        const int r0 = ell > 0 ? 0 : i0;
        const int r1 = ell > 1 ? 0 : i1;
        const int r2 = ell > 2 ? 0 : i2;
        out[red.index(r0, r1, r2)] += field[grid.index(i0, i1, i2)];
      }
  double per = 1.0;
  for (int a = 0; a < ell; ++a) per *= double(n[a]);
  for (auto& v : out) v /= per;
  return out;
}

RealArray lift_to_full(const Grid& grid, std::span<const double> reduced_field) {
  const Grid red = grid.reduced();
  if (reduced_field.size() != red.points()) throw ShapeError("lift_to_full: reduced field size does not match");
  const auto& n = grid.shape();
  const int ell = grid.ell();
  RealArray out(grid.points());
  for (int i2 = 0; i2 < n[2]; ++i2)
    for (int i1 = 0; i1 < n[1]; ++i1)
      for (int i0 = 0; i0 < n[0]; ++i0)
        out[grid.index(i0, i1, i2)] =
            reduced_field[red.index(ell > 0 ? 0 : i0, ell > 1 ? 0 : i1, ell > 2 ? 0 : i2)];
  return out;
}

ComplexArray torus_average_spectrum(const Grid& grid, std::span<const Complex> spectrum) {
  if (spectrum.size() != grid.modes()) throw ShapeError("torus_average_spectrum: size mismatch");
  const Grid red = grid.reduced();
  const auto& rs = red.spectral_shape();
  const double per = grid.periodic_volume();
  ComplexArray out(red.modes());
  for (int j2 = 0; j2 < rs[2]; ++j2)
    for (int j1 = 0; j1 < rs[1]; ++j1)
      for (int j0 = 0; j0 < rs[0]; ++j0)
        out[red.spectral_index(j0, j1, j2)] = spectrum[grid.spectral_index(j0, j1, j2)] / per;
  return out;
}

ComplexArray lift_spectrum(const Grid& grid, std::span<const Complex> reduced_spectrum) {
  const Grid red = grid.reduced();
  if (reduced_spectrum.size() != red.modes()) throw ShapeError("lift_spectrum: size mismatch");
  const auto& rs = red.spectral_shape();
  const double per = grid.periodic_volume();
  ComplexArray out(grid.modes(), Complex(0.0));
  for (int j2 = 0; j2 < rs[2]; ++j2)
    for (int j1 = 0; j1 < rs[1]; ++j1)
      for (int j0 = 0; j0 < rs[0]; ++j0)
        out[grid.spectral_index(j0, j1, j2)] = reduced_spectrum[red.spectral_index(j0, j1, j2)] * per;
  return out;
}

double lebesgue_norm(const Grid& grid, std::span<const double> field, double exponent) {
  if (field.size() != grid.points()) throw ShapeError("lebesgue_norm: field size does not match grid");
  if (std::isinf(exponent) && exponent > 0) {
    double m = 0.0;
    for (double v : field) m = std::max(m, std::abs(v));
    return m;
  }
  static constexpr double kSupported[] = {1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 10.0 / 3.0};
  const bool ok = std::any_of(std::begin(kSupported), std::end(kSupported),
                              [&](double e) { return std::abs(e - exponent) < 1e-12; });
  if (!ok) throw ParameterError("unsupported Lebesgue exponent");
  double sum = 0.0;
  if (exponent == 2.0) {
    for (double v : field) sum += v * v;
    return std::sqrt(sum * grid.cell_volume());
  }
  for (double v : field) sum += std::pow(std::abs(v), exponent);
  return std::pow(sum * grid.cell_volume(), 1.0 / exponent);
}

double sobolev_norm_spectral(const Grid& grid, std::span<const Complex> spectrum, int s) {
  if (s < 0 || s > 4) throw ParameterError("Sobolev order must be in 0..4");
  if (spectrum.size() != grid.modes()) throw ShapeError("sobolev_norm: spectrum size does not match grid");
  return std::sqrt(weighted_energy(grid, spectrum, [s](double p) { return std::pow(1.0 + p, s); }));
}

double sobolev_norm(const Grid& grid, std::span<const double> field, int s) {
  if (s < 0 || s > 4) throw ParameterError("Sobolev order must be in 0..4");
  return sobolev_norm_spectral(grid, forward_transform(grid, field), s);
}

void dealias(const Grid& grid, std::span<Complex> spectrum) {
  const auto& ss = grid.spectral_shape();
  std::size_t idx = 0;
  for (int j2 = 0; j2 < ss[2]; ++j2)
    for (int j1 = 0; j1 < ss[1]; ++j1)
      for (int j0 = 0; j0 < ss[0]; ++j0, ++idx)
        if (!grid.in_dealias_band(j0, j1, j2)) spectrum[idx] = 0.0;
}

void drop_nyquist(const Grid& grid, std::span<Complex> spectrum) {
  const auto& ss = grid.spectral_shape();
  std::size_t idx = 0;
  for (int j2 = 0; j2 < ss[2]; ++j2)
    for (int j1 = 0; j1 < ss[1]; ++j1)
      for (int j0 = 0; j0 < ss[0]; ++j0, ++idx)
        if (grid.has_nyquist(j0, j1, j2)) spectrum[idx] = 0.0;
}

ComplexArray resample_spectrum(const Grid& from, std::span<const Complex> spectrum, const Grid& to) {
  if (from.lengths() != to.lengths() || from.ell() != to.ell() || from.is_reduced() != to.is_reduced())
    throw ShapeError("resample_spectrum: grids must share lengths and layout");
  if (spectrum.size() != from.modes()) throw ShapeError("resample_spectrum: spectrum size mismatch");
  const auto& fs = from.shape();
  auto source_index = [&](int axis, int n) -> int {
    const int N = fs[axis];
    if (2 * std::abs(n) >= N && !(N == 1 && n == 0)) return -1;
    if (axis == 0) return n >= 0 ? n : -1;
    return n >= 0 ? n : n + N;
  };
  ComplexArray out(to.modes(), Complex(0.0));
  const auto& ts = to.spectral_shape();
  std::size_t idx = 0;
  for (int j2 = 0; j2 < ts[2]; ++j2)
    for (int j1 = 0; j1 < ts[1]; ++j1)
      for (int j0 = 0; j0 < ts[0]; ++j0, ++idx) {
        if (to.has_nyquist(j0, j1, j2)) continue;
        const int s0 = source_index(0, to.signed_index(0, j0));
        const int s1 = source_index(1, to.signed_index(1, j1));
        const int s2 = source_index(2, to.signed_index(2, j2));
        if (s0 < 0 || s1 < 0 || s2 < 0) continue;
        out[idx] = spectrum[from.spectral_index(s0, s1, s2)];
      }
  return out;
}

}  // namespace nsas
