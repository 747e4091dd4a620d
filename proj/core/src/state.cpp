#include "nsas/state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nsas/error.hpp"

namespace nsas {

StateField StateField::zeros(const Grid& grid, const FluidParams& params, double time) {
  StateField s;
  s.grid = grid;
  s.params = params;
  s.time = time;
  for (auto& c : s.u) c.assign(grid.points(), 0.0);
  return s;
}

ComponentSpectra StateField::spectra() const {
  ComponentSpectra out;
  for (int c = 0; c < kComponents; ++c) out[c] = forward_transform(grid, u[c]);
  return out;
}

StateField StateField::from_spectra(const Grid& grid, const ComponentSpectra& spectra,
                                    const FluidParams& params, double time) {
  StateField s;
  s.grid = grid;
  s.params = params;
  s.time = time;
  for (int c = 0; c < kComponents; ++c) s.u[c] = inverse_transform(grid, spectra[c]);
  return s;
}

void StateField::check_finite() const {
  for (const auto& c : u)
    for (double v : c)
      if (!std::isfinite(v)) throw StateError("state contains non-finite values");
}

double StateField::min_density() const {
  double mn = std::numeric_limits<double>::infinity();
  for (double v : u[0]) mn = std::min(mn, v);
  return 1.0 + mn / params.gamma;
}

void StateField::check_vacuum(double margin) const {
  const double rho = min_density();
  if (!(rho >= margin)) {
    std::ostringstream os;
    os << "vacuum proximity: min density 1 + phi/gamma = " << rho << " below margin " << margin;
    throw StateError(os.str());
  }
}

}  // namespace nsas
