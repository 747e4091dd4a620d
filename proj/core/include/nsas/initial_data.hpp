#pragma once

#include <cstdint>

#include "nsas/state.hpp"

namespace nsas {

struct InitialDataSpec {
  std::uint64_t seed = 1;
  double epsilon = 1e-2;
  /// Random coefficients are drawn for lattice indices |n| <= band on every axis.
  int band = 2;
  /// Width w of the envelope exp(-|y|^2 / (2 w^2)) along the open axes.
  double envelope_width = 2.5;
};

/// ||u||_{H^4} + ||u||_{L^1}, with the pointwise Euclidean norm inside L^1.
double h4_l1_norm(const StateField& u);

/// Seeded band-limited random field times a Gaussian envelope in the open
/// directions, dealiased and rescaled so that h4_l1_norm equals epsilon.
/// Bit-identical for equal inputs on every platform.
StateField make_initial_data(const DomainSpec& domain, const FluidParams& params, const InitialDataSpec& spec);

/// Moves a state to another grid over the same lengths through its spectrum.
StateField resample_state(const StateField& u, const Grid& to);

}  // namespace nsas
