#pragma once

#include <array>
#include <functional>

#include "nsas/state.hpp"

namespace nsas {

/// Nonlinear terms refuse states with 1 + phi/gamma below this.
inline constexpr double kVacuumMargin = 0.1;

/// F(phi) = (phi/gamma)^2 int_0^1 w(theta) p''(1 + theta phi/gamma) dtheta,
/// closed form for the built-in laws (power series near phi = 0).
double pressure_remainder_F(const FluidParams& params, double phi);

/// The same integral by 16-node Gauss-Legendre quadrature for an arbitrary p''.
double pressure_remainder_quadrature(const std::function<double(double)>& p2, PressureRemainder weight,
                                     double gamma, double phi);

/// Nodes and weights of the 16-point Gauss-Legendre rule on [0, 1].
const std::array<std::pair<double, double>, 16>& gauss_legendre_16();

/// Spectrum of the full nonlinear source (0, G1, G2, G3) from a state
/// spectrum.  The output is dealiased when `dealias_output` holds, otherwise
/// only Nyquist modes are removed.  Throws StateError near vacuum.
ComponentSpectra nonlinear_source(const Grid& grid, const FluidParams& params, const ComponentSpectra& u_hat,
                                  bool dealias_output = true);

/// G(phi, m) = -Div(r m (x) m) - nu1 Lap(s m) - nu2 grad Div(s m) - grad F(phi)
/// with r = gamma/(phi + gamma), s = phi/(phi + gamma), evaluated on the grid.
std::array<RealArray, 3> nonlinearity_G(const StateField& u, bool dealias_output = true);

/// G = Div(Gt) + grad g with (Div Gt)_i = sum_j d_j Gt_ij.
struct FluxDecomposition {
  /// Gt_ij stored at index 3 i + j: -r m_i m_j - nu1 d_j(s m_i).
  std::array<RealArray, 9> tensor;
  /// -nu2 Div(s m) - F(phi).
  RealArray scalar;

  /// sum_ij ||Gt_ij||_L1 and ||g||_L1.
  std::pair<double, double> l1_norms(const Grid& grid) const;
};
FluxDecomposition flux_decomposition(const StateField& u);

/// Div(Gt) + grad g, spectrally.
std::array<RealArray, 3> reassemble_flux(const Grid& grid, const FluxDecomposition& flux);

}  // namespace nsas
