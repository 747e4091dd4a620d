#pragma once

#include <cmath>
#include <span>

#include "nsas/fft.hpp"
#include "nsas/grid.hpp"

namespace nsas {

/// d^order/dz_axis^order of a real field (axis is 0-based).  Nyquist modes are
/// discarded, so the result is exact for band-limited fields.
RealArray spectral_derivative(const Grid& grid, std::span<const double> field, int axis, int order);

/// In-place multiplication by (i q_axis)^order, Nyquist modes zeroed.
void apply_derivative(const Grid& grid, std::span<Complex> spectrum, int axis, int order);

/// Mean over the periodic coordinates; the result lives on grid.reduced().
RealArray torus_average(const Grid& grid, std::span<const double> field);
/// Spectral form of torus_average: the k = 0 slice divided by the torus volume.
ComplexArray torus_average_spectrum(const Grid& grid, std::span<const Complex> spectrum);
/// Extends a reduced-grid field to the full grid, constant along x.
RealArray lift_to_full(const Grid& grid, std::span<const double> reduced_field);
/// Spectral form of lift_to_full.
ComplexArray lift_spectrum(const Grid& grid, std::span<const Complex> reduced_spectrum);

/// Rectangle-rule L^p norm.  Supported exponents: 1, 2, 3, 4, 5, 6, 10/3 and
/// infinity (grid maximum).
double lebesgue_norm(const Grid& grid, std::span<const double> field, double exponent);

/// (sum_q (1 + |q|^2)^s |u_hat(q)|^2 / V)^(1/2), s in 0..4.
double sobolev_norm(const Grid& grid, std::span<const double> field, int s);
double sobolev_norm_spectral(const Grid& grid, std::span<const Complex> spectrum, int s);

/// (1/V) sum_q w(|q|^2) |u_hat(q)|^2 with Hermitian multiplicities, summed in
/// storage order.
template <class Weight>
double weighted_energy(const Grid& grid, std::span<const Complex> spectrum, Weight&& weight) {
  double sum = 0.0;
  grid.for_each_mode([&](std::size_t idx, const std::array<double, 3>& q, double mult, const auto&) {
    const double p = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
    sum += mult * weight(p) * std::norm(spectrum[idx]);
  });
  return sum / grid.volume();
}

/// Zeroes every mode outside the 2/3-rule band (this also removes Nyquist).
void dealias(const Grid& grid, std::span<Complex> spectrum);
/// Zeroes Nyquist modes only.
void drop_nyquist(const Grid& grid, std::span<Complex> spectrum);

/// Copies lattice coefficients between grids over the same lengths (zero
/// padding or truncation).  Nyquist modes of the source are dropped.
ComplexArray resample_spectrum(const Grid& from, std::span<const Complex> spectrum, const Grid& to);

}  // namespace nsas
