#include "nsas/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>

#include "nsas/error.hpp"

namespace nsas {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

// Plans are created once per shape and shared.  FFTW planning is not
// thread-safe, execution with the new-array interface is.  FFTW_ESTIMATE keeps
// the chosen algorithm independent of timing, so results are reproducible.
const PlanPair& plans_for(const std::array<int, 3>& shape) {
  static std::mutex mutex;
  static std::map<std::array<int, 3>, PlanPair> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(shape);
  if (it != cache.end()) return it->second;

  const int n0 = shape[0], n1 = shape[1], n2 = shape[2];
  const std::size_t real_size = std::size_t(n0) * n1 * n2;
  const std::size_t complex_size = std::size_t(n0 / 2 + 1) * n1 * n2;
  double* r = fftw_alloc_real(real_size);
  fftw_complex* c = fftw_alloc_complex(complex_size);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  PlanPair p;
  p.forward = fftw_plan_dft_r2c_3d(n2, n1, n0, r, c, flags);
  p.backward = fftw_plan_dft_c2r_3d(n2, n1, n0, c, r, flags);
  fftw_free(r);
  fftw_free(c);
  if (!p.forward || !p.backward) throw Error("FFTW failed to create a plan");
  return cache.emplace(shape, p).first->second;
}

}  // namespace

void forward_transform(const Grid& grid, std::span<const double> field, std::span<Complex> out) {
  if (field.size() != grid.points()) throw ShapeError("forward_transform: field size does not match grid");
  if (out.size() != grid.modes()) throw ShapeError("forward_transform: spectrum size does not match grid");
  const auto& p = plans_for(grid.shape());
  fftw_execute_dft_r2c(p.forward, const_cast<double*>(field.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = grid.cell_volume();
  for (auto& v : out) v *= scale;
}

ComplexArray forward_transform(const Grid& grid, std::span<const double> field) {
  ComplexArray out(grid.modes());
  forward_transform(grid, field, out);
  return out;
}

void inverse_transform(const Grid& grid, std::span<const Complex> spectrum, std::span<double> out) {
  if (spectrum.size() != grid.modes()) throw ShapeError("inverse_transform: spectrum size does not match grid");
  if (out.size() != grid.points()) throw ShapeError("inverse_transform: field size does not match grid");
  const auto& p = plans_for(grid.shape());
  // c2r overwrites its input.
  ComplexArray scratch(spectrum.begin(), spectrum.end());
  fftw_execute_dft_c2r(p.backward, reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
  const double scale = 1.0 / grid.volume();
  for (auto& v : out) v *= scale;
}

RealArray inverse_transform(const Grid& grid, std::span<const Complex> spectrum) {
  RealArray out(grid.points());
  inverse_transform(grid, spectrum, out);
  return out;
}

}  // namespace nsas
