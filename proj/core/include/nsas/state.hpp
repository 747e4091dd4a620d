#pragma once

#include <array>
#include <filesystem>

#include "nsas/domain.hpp"
#include "nsas/fft.hpp"
#include "nsas/grid.hpp"

namespace nsas {

/// Number of unknowns: phi and the three momentum components.
inline constexpr int kComponents = 4;

using ComponentFields = std::array<RealArray, kComponents>;
using ComponentSpectra = std::array<ComplexArray, kComponents>;

/// u = (phi, m1, m2, m3) on a grid, phi = gamma (rho - 1).
///
/// The same type carries reduced (torus-averaged) states, in which case
/// `grid.is_reduced()` holds.
struct StateField {
  Grid grid;
  ComponentFields u;
  double time = 0.0;
  FluidParams params;

  static StateField zeros(const Grid& grid, const FluidParams& params, double time = 0.0);

  RealArray& phi() { return u[0]; }
  const RealArray& phi() const { return u[0]; }
  RealArray& m(int i) { return u[1 + i]; }
  const RealArray& m(int i) const { return u[1 + i]; }

  ComponentSpectra spectra() const;
  static StateField from_spectra(const Grid& grid, const ComponentSpectra& spectra,
                                 const FluidParams& params, double time);

  /// Throws StateError on non-finite values.
  void check_finite() const;
  /// min over the grid of 1 + phi/gamma.
  double min_density() const;
  /// Throws StateError when min density falls below `margin`.
  void check_vacuum(double margin) const;
};

/// Binary checkpoint: "NSAS" magic, u32 version, u32 ell, 3 x u32 resolution,
/// 3 x f64 lengths, f64 time, 4 x f64 (nu1, nu2, gamma, alpha), then phi, m1,
/// m2, m3 as little-endian f64 arrays with z1 fastest.
void write_checkpoint(const std::filesystem::path& path, const StateField& state);
StateField read_checkpoint(const std::filesystem::path& path);

inline constexpr std::uint32_t kCheckpointVersion = 1;

}  // namespace nsas
