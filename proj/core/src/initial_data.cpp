#include "nsas/initial_data.hpp"

#include <cmath>
#include <random>

#include "nsas/error.hpp"
#include "nsas/spectral.hpp"

namespace nsas {

double h4_l1_norm(const StateField& u) {
  double h4_sq = 0.0;
  for (const auto& c : u.u) {
    const double h = sobolev_norm(u.grid, c, 4);
    h4_sq += h * h;
  }
  RealArray magnitude(u.grid.points());
  for (std::size_t i = 0; i < magnitude.size(); ++i) {
    double s = 0.0;
    for (const auto& c : u.u) s += c[i] * c[i];
    magnitude[i] = std::sqrt(s);
  }
  return std::sqrt(h4_sq) + lebesgue_norm(u.grid, magnitude, 1.0);
}

StateField make_initial_data(const DomainSpec& domain, const FluidParams& params, const InitialDataSpec& spec) {
  domain.validate();
  if (!(spec.epsilon > 0.0)) throw ParameterError("initial data amplitude must be positive");
  if (!(spec.envelope_width > 0.0)) throw ParameterError("envelope width must be positive");
  const Grid grid(domain);
  for (int a = 0; a < 3; ++a)
    if (spec.band < 0 || spec.band > grid.dealias_cutoff(a))
      throw ParameterError("band must lie within the dealiased lattice on every axis");

  // mt19937_64 is fully specified by the standard; the conversion to [-1, 1)
  // avoids implementation-defined distributions.
  std::mt19937_64 rng(spec.seed);
  auto uniform = [&rng] { return 2.0 * double(rng() >> 11) * 0x1.0p-53 - 1.0; };

  StateField u = StateField::zeros(grid, params);
  for (int c = 0; c < kComponents; ++c) {
    ComplexArray coeffs(grid.modes(), Complex(0.0));
    grid.for_each_mode([&](std::size_t idx, const auto&, double, const std::array<int, 3>& j) {
      for (int a = 0; a < 3; ++a)
        if (std::abs(grid.signed_index(a, j[a])) > spec.band) return;
      const double re = uniform();
      const double im = uniform();
      coeffs[idx] = Complex(re, im) * grid.volume();
    });
    u.u[c] = inverse_transform(grid, coeffs);
  }

  const double inv_two_w_sq = 1.0 / (2.0 * spec.envelope_width * spec.envelope_width);
  for (int i2 = 0; i2 < grid.shape()[2]; ++i2)
    for (int i1 = 0; i1 < grid.shape()[1]; ++i1)
      for (int i0 = 0; i0 < grid.shape()[0]; ++i0) {
        double r_sq = 0.0;
        const int idx[3] = {i0, i1, i2};
        for (int a = domain.ell; a < 3; ++a) {
          const double y = grid.coordinate(a, idx[a]);
          r_sq += y * y;
        }
        const double env = std::exp(-r_sq * inv_two_w_sq);
        const std::size_t k = grid.index(i0, i1, i2);
        for (auto& c : u.u) c[k] *= env;
      }

  auto spectra = u.spectra();
  for (auto& s : spectra) dealias(grid, s);
  u = StateField::from_spectra(grid, spectra, params, 0.0);
  const double scale = spec.epsilon / h4_l1_norm(u);
  for (auto& c : u.u)
    for (double& v : c) v *= scale;
  u.check_vacuum(0.1);
  return u;
}

StateField resample_state(const StateField& u, const Grid& to) {
  ComponentSpectra out;
  const auto in = u.spectra();
  for (int c = 0; c < kComponents; ++c) out[c] = resample_spectrum(u.grid, in[c], to);
  return StateField::from_spectra(to, out, u.params, u.time);
}

}  // namespace nsas
