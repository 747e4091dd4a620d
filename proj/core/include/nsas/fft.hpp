#pragma once

#include <complex>
#include <span>
#include <vector>

#include "nsas/grid.hpp"

namespace nsas {

using Complex = std::complex<double>;
using RealArray = std::vector<double>;
using ComplexArray = std::vector<Complex>;

/// Continuum-normalised transform: u_hat(q) = (V/N) sum_z u(z) exp(-i q.z),
/// which approximates the integral over the domain.  A constant c maps to c*V
/// at q = 0.
ComplexArray forward_transform(const Grid& grid, std::span<const double> field);
void forward_transform(const Grid& grid, std::span<const double> field, std::span<Complex> out);

/// Inverse of forward_transform: u(z) = (1/V) sum_q u_hat(q) exp(i q.z).
RealArray inverse_transform(const Grid& grid, std::span<const Complex> spectrum);
void inverse_transform(const Grid& grid, std::span<const Complex> spectrum, std::span<double> out);

}  // namespace nsas
