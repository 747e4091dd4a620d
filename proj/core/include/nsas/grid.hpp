#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "nsas/domain.hpp"

namespace nsas {

/// Uniform grid plus its Fourier lattice.
///
/// Physical arrays have `points()` entries, z1 fastest.  Spectral arrays use the
/// real-to-complex layout: axis 0 keeps n0/2+1 non-negative indices, the other
/// axes keep all n indices in FFT order, axis 0 fastest.  A reduced grid has its
/// periodic axes collapsed to a single point and represents functions of y only.
class Grid {
 public:
  Grid() = default;
  explicit Grid(const DomainSpec& spec);

  /// Grid on which torus averages live (periodic axes collapsed).
  Grid reduced() const;

  const DomainSpec& spec() const noexcept { return spec_; }
  int ell() const noexcept { return spec_.ell; }
  bool is_reduced() const noexcept { return reduced_; }
  bool collapsed(int axis) const noexcept { return reduced_ && axis < spec_.ell; }
  const std::array<int, 3>& shape() const noexcept { return shape_; }
  const std::array<double, 3>& lengths() const noexcept { return spec_.lengths; }
  const std::array<int, 3>& spectral_shape() const noexcept { return sshape_; }

  std::size_t points() const noexcept {
    return std::size_t(shape_[0]) * std::size_t(shape_[1]) * std::size_t(shape_[2]);
  }
  std::size_t modes() const noexcept {
    return std::size_t(sshape_[0]) * std::size_t(sshape_[1]) * std::size_t(sshape_[2]);
  }

  /// Measure of the represented domain (open axes only when reduced).
  double volume() const noexcept { return volume_; }
  double cell_volume() const noexcept { return volume_ / double(points()); }
  /// (2 pi)^ell for the default lengths.
  double periodic_volume() const noexcept;

  std::size_t index(int i0, int i1, int i2) const noexcept {
    return std::size_t(i0) + std::size_t(shape_[0]) * (std::size_t(i1) + std::size_t(shape_[1]) * std::size_t(i2));
  }
  std::size_t spectral_index(int j0, int j1, int j2) const noexcept {
    return std::size_t(j0) + std::size_t(sshape_[0]) * (std::size_t(j1) + std::size_t(sshape_[1]) * std::size_t(j2));
  }

  /// Signed lattice index n for storage index j on `axis`.
  int signed_index(int axis, int j) const noexcept { return signed_[axis][j]; }
  /// 2 pi n / L_axis.
  double wavenumber(int axis, int j) const noexcept { return wavenumbers_[axis][j]; }
  bool is_nyquist(int axis, int j) const noexcept {
    return shape_[axis] > 1 && 2 * signed_[axis][j] == shape_[axis];
  }
  /// Hermitian multiplicity of an axis-0 storage index in real-to-complex layout.
  double mode_weight(int j0) const noexcept;
  /// Largest retained |n| per axis under the 2/3 rule.
  int dealias_cutoff(int axis) const noexcept { return (shape_[axis] - 1) / 3; }
  bool in_dealias_band(int j0, int j1, int j2) const noexcept;
  bool has_nyquist(int j0, int j1, int j2) const noexcept {
    return is_nyquist(0, j0) || is_nyquist(1, j1) || is_nyquist(2, j2);
  }

  /// Grid coordinate: periodic axes start at 0, open axes are centred on 0.
  double coordinate(int axis, int i) const noexcept;
  /// max |q| over the stored lattice.
  double max_wavenumber() const noexcept;

  /// Calls f(spectral_index, q, weight, j) for every stored mode, in storage order.
  template <class F>
  void for_each_mode(F&& f) const {
    std::size_t idx = 0;
    for (int j2 = 0; j2 < sshape_[2]; ++j2)
      for (int j1 = 0; j1 < sshape_[1]; ++j1)
        for (int j0 = 0; j0 < sshape_[0]; ++j0, ++idx) {
          const std::array<double, 3> q{wavenumbers_[0][j0], wavenumbers_[1][j1], wavenumbers_[2][j2]};
          f(idx, q, mode_weight(j0), std::array<int, 3>{j0, j1, j2});
        }
  }

  std::array<double, 3> mode_wavevector(std::size_t idx) const noexcept;
  std::array<int, 3> mode_indices(std::size_t idx) const noexcept;

  bool operator==(const Grid& other) const noexcept {
    return reduced_ == other.reduced_ && shape_ == other.shape_ && spec_.ell == other.spec_.ell &&
           spec_.lengths == other.spec_.lengths;
  }

 private:
  DomainSpec spec_{};
  bool reduced_ = false;
  std::array<int, 3> shape_{};
  std::array<int, 3> sshape_{};
  double volume_ = 0.0;
  std::array<std::vector<int>, 3> signed_;
  std::array<std::vector<double>, 3> wavenumbers_;

  void build();
};

}  // namespace nsas
