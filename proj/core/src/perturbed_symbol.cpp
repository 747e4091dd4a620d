#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nsas/error.hpp"
#include "nsas/symbol.hpp"

namespace nsas {
namespace {

using namespace std::complex_literals;

double background_scale(const Background& bg, const FluidParams& params) {
  const double s = bg.phi + params.gamma;
  if (!(s > 0.0)) throw StabilityError("background density must be positive (phi_bar > -gamma)");
  return s;
}

std::string format_k(const std::array<int, 3>& k) {
  std::ostringstream os;
  os << "(" << k[0] << ", " << k[1] << ", " << k[2] << ")";
  return os.str();
}

}  // namespace

PerturbedSymbol assemble_perturbed_symbol(const std::array<int, 3>& k, const Background& bg,
                                          const FluidParams& params) {
  const double s = background_scale(bg, params);
  const double g = params.gamma;
  const double r = g / s;
  const double c = params.law.d1(s / g);
  const std::array<double, 3> kv{double(k[0]), double(k[1]), double(k[2])};
  const double kk = kv[0] * kv[0] + kv[1] * kv[1] + kv[2] * kv[2];
  const double mk = bg.m[0] * kv[0] + bg.m[1] * kv[1] + bg.m[2] * kv[2];

  Matrix4c a = Matrix4c::Zero();
  for (int i = 0; i < 3; ++i) {
    a(0, 1 + i) = 1i * g * kv[i];
    a(1 + i, 0) = -1i * g / (s * s) * mk * bg.m[i] + 1i * (c / g) * kv[i] -
                  params.nu1 * g * kk / (s * s) * bg.m[i] - params.nu2 * g / (s * s) * mk * kv[i];
    for (int j = 0; j < 3; ++j)
      a(1 + i, 1 + j) = 1i * r * bg.m[i] * kv[j] + r * params.nu2 * kv[i] * kv[j];
    a(1 + i, 1 + i) += 1i * r * mk + r * params.nu1 * kk;
  }
  return {a, k, bg, c};
}

std::array<std::complex<double>, 4> perturbed_eigenvalues(const std::array<int, 3>& k, const Background& bg,
                                                          const FluidParams& params) {
  const double s = background_scale(bg, params);
  const double r = params.gamma / s;
  const double c = params.law.d1(s / params.gamma);
  const double kk = double(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
  const double mk = bg.m[0] * k[0] + bg.m[1] * k[1] + bg.m[2] * k[2];
  const double nu = params.nu1 + params.nu2;

  const std::complex<double> visc = r * (params.nu1 * kk + 1i * mk);
  const std::complex<double> b = r * (nu * kk + 2.0 * 1i * mk);
  const double disc = r * r * nu * nu * kk * kk - 4.0 * c * kk;
  std::complex<double> plus, minus;
  if (disc < 0.0) {
    const std::complex<double> root = 1i * std::sqrt(-disc);
    plus = 0.5 * (b + root);
    minus = 0.5 * (b - root);
  } else {
    // lambda_plus * lambda_minus = (b^2 - disc) / 4, evaluated without cancellation.
    const std::complex<double> prod = c * kk - r * r * mk * mk + 1i * r * r * nu * kk * mk;
    plus = 0.5 * (b + std::sqrt(disc));
    minus = std::abs(plus) > 0.0 ? prod / plus : std::complex<double>(0.0);
  }
  return {visc, visc, plus, minus};
}

PerturbedGap perturbed_gap(const Background& bg, const FluidParams& params, int k_max) {
  if (k_max < 2) throw ParameterError("perturbed_gap: k_max must be at least 2");
  PerturbedGap gap;
  gap.a0 = std::numeric_limits<double>::infinity();
  double outer = std::numeric_limits<double>::infinity();
  double inner = std::numeric_limits<double>::infinity();
  for (int k2 = -k_max; k2 <= k_max; ++k2)
    for (int k1 = -k_max; k1 <= k_max; ++k1)
      for (int k0 = -k_max; k0 <= k_max; ++k0) {
        const std::array<int, 3> k{k0, k1, k2};
        if (k0 == 0 && k1 == 0 && k2 == 0) continue;
        double m = std::numeric_limits<double>::infinity();
        for (const auto& v : perturbed_eigenvalues(k, bg, params)) m = std::min(m, v.real());
        if (!(m > 0.0))
          throw StabilityError("background too large: Re lambda = " + std::to_string(m) + " at k = " + format_k(k));
        if (m < gap.a0) {
          gap.a0 = m;
          gap.argmin = k;
        }
        const int shell = std::max({std::abs(k0), std::abs(k1), std::abs(k2)});
        if (shell == k_max) outer = std::min(outer, m);
        if (shell == k_max - 1) inner = std::min(inner, m);
      }
  // Re lambda_minus tends to c / (r (nu1 + nu2)) as |k| grows, from above when m_bar = 0.
  const double s = background_scale(bg, params);
  const double limit = params.law.d1(s / params.gamma) * s / (params.gamma * (params.nu1 + params.nu2));
  if (outer < inner && outer < limit * (1.0 - 1e-12))
    throw StabilityError("gap scan still decreasing below the large-|k| limit; increase k_max");
  if (limit < gap.a0) {
    gap.a0 = limit;
    gap.asymptotic = true;
  }
  return gap;
}

}  // namespace nsas
