#include <bit>
#include <cstring>
#include <fstream>

#include "nsas/error.hpp"
#include "nsas/state.hpp"

namespace nsas {
namespace {

template <class T>
void put_le(std::ostream& os, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  os.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T get_le(std::istream& is) {
  unsigned char bytes[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(bytes), sizeof(T))) throw IoError("checkpoint truncated");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

// Only (nu1, nu2, gamma, alpha) are stored.  Every supported law is
// p = rho^kappa with kappa = gamma^2 and alpha = (kappa - 1)/2.
PressureLaw law_from_header(double gamma, double alpha) {
  const double kappa = gamma * gamma;
  if (std::abs(alpha - 0.5 * (kappa - 1.0)) > 1e-12)
    throw IoError("checkpoint parameters do not correspond to a power pressure law");
  if (std::abs(kappa - 2.0) < 1e-14) return PressureLaw::quadratic();
  return PressureLaw::adiabatic(kappa);
}

}  // namespace

void write_checkpoint(const std::filesystem::path& path, const StateField& state) {
  if (state.grid.is_reduced()) throw ShapeError("checkpoints hold full-domain states only");
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open checkpoint for writing: " + path.string());
  os.write("NSAS", 4);
  put_le<std::uint32_t>(os, kCheckpointVersion);
  put_le<std::uint32_t>(os, std::uint32_t(state.grid.ell()));
  for (int a = 0; a < 3; ++a) put_le<std::uint32_t>(os, std::uint32_t(state.grid.shape()[a]));
  for (int a = 0; a < 3; ++a) put_le<double>(os, state.grid.lengths()[a]);
  put_le<double>(os, state.time);
  put_le<double>(os, state.params.nu1);
  put_le<double>(os, state.params.nu2);
  put_le<double>(os, state.params.gamma);
  put_le<double>(os, state.params.alpha);
  for (const auto& c : state.u)
    for (double v : c) put_le<double>(os, v);
  if (!os) throw IoError("failed writing checkpoint: " + path.string());
}

StateField read_checkpoint(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open checkpoint: " + path.string());
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "NSAS", 4) != 0) throw IoError("not an NSAS checkpoint");
  if (get_le<std::uint32_t>(is) != kCheckpointVersion) throw IoError("unsupported checkpoint version");
  DomainSpec spec;
  spec.ell = int(get_le<std::uint32_t>(is));
  for (int a = 0; a < 3; ++a) spec.resolution[a] = int(get_le<std::uint32_t>(is));
  for (int a = 0; a < 3; ++a) spec.lengths[a] = get_le<double>(is);
  spec.validate();
  const double time = get_le<double>(is);
  const double nu1 = get_le<double>(is);
  const double nu2 = get_le<double>(is);
  const double gamma = get_le<double>(is);
  const double alpha = get_le<double>(is);
  FluidParams params = FluidParams::make(nu1, nu2, law_from_header(gamma, alpha));
  StateField s = StateField::zeros(Grid(spec), params, time);
  for (auto& c : s.u)
    for (double& v : c) v = get_le<double>(is);
  return s;
}

}  // namespace nsas
