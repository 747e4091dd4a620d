#include "nsas/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nsas/error.hpp"

namespace nsas {

using namespace std::complex_literals;

FrequencyVector FrequencyVector::from_parts(std::span<const double> k, std::span<const double> xi) {
  if (k.size() < 1 || k.size() > 3 || k.size() + xi.size() != 3)
    throw ShapeError("frequency vector needs ell torus and 3 - ell open components");
  FrequencyVector f;
  f.ell = int(k.size());
  std::copy(k.begin(), k.end(), f.q.begin());
  std::copy(xi.begin(), xi.end(), f.q.begin() + f.ell);
  return f;
}

double FrequencyVector::magnitude() const { return std::sqrt(p()); }

Matrix4c symbol_entries(const std::array<double, 3>& q, const LinearCoefficients& c) {
  const double p = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
  Matrix4c l = Matrix4c::Zero();
  for (int i = 0; i < 3; ++i) {
    l(0, 1 + i) = 1i * c.gamma * q[i];
    l(1 + i, 0) = 1i * c.gamma * q[i];
    for (int j = 0; j < 3; ++j) l(1 + i, 1 + j) = c.nu2 * q[i] * q[j];
    l(1 + i, 1 + i) += c.nu1 * p;
  }
  return l;
}

SymbolMatrix assemble_symbol(const FrequencyVector& freq, const LinearCoefficients& coeffs) {
  return {symbol_entries(freq.q, coeffs), freq, coeffs};
}

double EigenSet::discriminant(const LinearCoefficients& c) const {
  const double b = (c.nu1 + c.nu2) * p;
  return b * b - 4.0 * c.gamma * c.gamma * p;
}

EigenSet symbol_eigenvalues(double p, const LinearCoefficients& c) {
  if (p < 0.0 || !std::isfinite(p)) throw ParameterError("symbol_eigenvalues: p must be non-negative");
  EigenSet e;
  e.p = p;
  e.lambda1 = e.lambda2 = c.nu1 * p;
  const double b = (c.nu1 + c.nu2) * p;
  const double prod = c.gamma * c.gamma * p;
  const double disc = b * b - 4.0 * prod;
  if (disc < 0.0) {
    const double im = 0.5 * std::sqrt(-disc);
    e.lambda_plus = {0.5 * b, im};
    e.lambda_minus = {0.5 * b, -im};
  } else {
    const double plus = 0.5 * (b + std::sqrt(disc));
    e.lambda_plus = plus;
    e.lambda_minus = plus > 0.0 ? prod / plus : 0.0;
  }
  return e;
}

double r0_sq_limit(const LinearCoefficients& c) {
  const double s = c.nu1 + c.nu2;
  return std::min(1.0, c.gamma * c.gamma / (s * s));
}

double default_r0_sq(const LinearCoefficients& c) { return 0.9 * r0_sq_limit(c); }

GapReport spectral_gap(double r0_sq, const LinearCoefficients& c, double p_max, int samples) {
  c.validate();
  const double limit = r0_sq_limit(c);
  if (!(r0_sq > 0.0) || !(r0_sq < limit))
    throw ParameterError("r0^2 must lie in (0, min{1, gamma^2/(nu1+nu2)^2})");
  GapReport r;
  r.r0_sq = r0_sq;
  r.a = std::min(c.nu1 * r0_sq, c.gamma * c.gamma / (2.0 * (c.nu1 + c.nu2)));

  auto min_re = [&](double p) {
    const auto e = symbol_eigenvalues(p, c);
    double m = std::numeric_limits<double>::infinity();
    for (const auto& v : e.values()) m = std::min(m, v.real());
    return m;
  };
  double smallest = std::min(min_re(r0_sq), min_re(p_max));
  const double ratio = std::log(p_max / r0_sq);
  for (int i = 1; i < samples; ++i) smallest = std::min(smallest, min_re(r0_sq * std::exp(ratio * i / samples)));
  const double s = c.nu1 + c.nu2;
  const double locus = 4.0 * c.gamma * c.gamma / (s * s);
  if (locus >= r0_sq && locus <= p_max) smallest = std::min(smallest, min_re(locus));
  r.sampled_min_re = smallest;
  r.min_form_holds = smallest >= r.a * (1.0 - 1e-9);
  return r;
}

}  // namespace nsas
