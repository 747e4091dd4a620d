#include "nsas/grid.hpp"

#include <cmath>
#include <cstdlib>

namespace nsas {

Grid::Grid(const DomainSpec& spec) : spec_(spec) {
  spec_.validate();
  shape_ = spec_.resolution;
  build();
}

Grid Grid::reduced() const {
  Grid g;
  g.spec_ = spec_;
  g.reduced_ = true;
  g.shape_ = spec_.resolution;
  for (int a = 0; a < spec_.ell; ++a) g.shape_[a] = 1;
  g.build();
  return g;
}

void Grid::build() {
  sshape_ = {shape_[0] / 2 + 1, shape_[1], shape_[2]};
  volume_ = 1.0;
  for (int a = 0; a < 3; ++a)
    if (!collapsed(a)) volume_ *= spec_.lengths[a];
  for (int a = 0; a < 3; ++a) {
    const int n = shape_[a];
    const int stored = sshape_[a];
    signed_[a].resize(stored);
    wavenumbers_[a].resize(stored);
    for (int j = 0; j < stored; ++j) {
      const int s = (a == 0 || j <= n / 2) ? j : j - n;
      signed_[a][j] = s;
      wavenumbers_[a][j] = kTwoPi * double(s) / spec_.lengths[a];
    }
  }
}

double Grid::periodic_volume() const noexcept {
  double v = 1.0;
  for (int a = 0; a < spec_.ell; ++a) v *= spec_.lengths[a];
  return v;
}

double Grid::mode_weight(int j0) const noexcept {
  if (j0 == 0) return 1.0;
  if (shape_[0] % 2 == 0 && 2 * j0 == shape_[0]) return 1.0;
  return 2.0;
}

bool Grid::in_dealias_band(int j0, int j1, int j2) const noexcept {
  return std::abs(signed_[0][j0]) <= dealias_cutoff(0) && std::abs(signed_[1][j1]) <= dealias_cutoff(1) &&
         std::abs(signed_[2][j2]) <= dealias_cutoff(2);
}

double Grid::coordinate(int axis, int i) const noexcept {
  const double h = spec_.lengths[axis] / double(shape_[axis]);
  if (axis < spec_.ell) return h * double(i);
  return -0.5 * spec_.lengths[axis] + h * double(i);
}

double Grid::max_wavenumber() const noexcept {
  double s = 0.0;
  for (int a = 0; a < 3; ++a) {
    const double k = kTwoPi * double(shape_[a] / 2) / spec_.lengths[a];
    s += k * k;
  }
  return std::sqrt(s);
}

std::array<int, 3> Grid::mode_indices(std::size_t idx) const noexcept {
  const int j0 = int(idx % std::size_t(sshape_[0]));
  idx /= std::size_t(sshape_[0]);
  const int j1 = int(idx % std::size_t(sshape_[1]));
  const int j2 = int(idx / std::size_t(sshape_[1]));
  return {j0, j1, j2};
}

std::array<double, 3> Grid::mode_wavevector(std::size_t idx) const noexcept {
  const auto j = mode_indices(idx);
  return {wavenumbers_[0][j[0]], wavenumbers_[1][j[1]], wavenumbers_[2][j[2]]};
}

}  // namespace nsas
