#pragma once

#include <cmath>
#include <random>

#include "nsas/fft.hpp"
#include "nsas/grid.hpp"
#include "nsas/spectral.hpp"
#include "nsas/state.hpp"

namespace nsas::test {

/// Samples f(z0, z1, z2) at the grid points.
template <class F>
RealArray sample(const Grid& g, F&& f) {
  RealArray out(g.points());
  const auto& s = g.shape();
  for (int i2 = 0; i2 < s[2]; ++i2)
    for (int i1 = 0; i1 < s[1]; ++i1)
      for (int i0 = 0; i0 < s[0]; ++i0)
        out[g.index(i0, i1, i2)] = f(g.coordinate(0, i0), g.coordinate(1, i1), g.coordinate(2, i2));
  return out;
}

/// Uniform white noise on [-amp, amp] at every grid point.
inline RealArray noise(const Grid& g, std::uint64_t seed, double amp = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-amp, amp);
  RealArray out(g.points());
  for (double& v : out) v = u(rng);
  return out;
}

/// Noise with Nyquist modes removed, so spectral identities hold exactly.
inline RealArray band_limited_noise(const Grid& g, std::uint64_t seed, double amp = 1.0) {
  ComplexArray s = forward_transform(g, noise(g, seed, amp));
  drop_nyquist(g, s);
  return inverse_transform(g, s);
}

/// Noise restricted to the 2/3 band.
inline RealArray dealiased_noise(const Grid& g, std::uint64_t seed, double amp = 1.0) {
  ComplexArray s = forward_transform(g, noise(g, seed, amp));
  dealias(g, s);
  return inverse_transform(g, s);
}

inline double max_abs_diff(const RealArray& a, const RealArray& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const RealArray& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

inline double l2(const RealArray& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

inline StateField random_state(const Grid& g, const FluidParams& params, std::uint64_t seed, double amp) {
  StateField u = StateField::zeros(g, params);
  for (int c = 0; c < kComponents; ++c) u.u[c] = dealiased_noise(g, seed + 17 * c, amp);
  return u;
}

}  // namespace nsas::test
