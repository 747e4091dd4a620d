#include "nsas/nonlinearity.hpp"

#include <cmath>
#include <sstream>

#include "nsas/error.hpp"
#include "nsas/spectral.hpp"

namespace nsas {
namespace {

using namespace std::complex_literals;

double power_law_remainder(double kappa, PressureRemainder weight, double x) {
  if (std::abs(x) < 0.25) {
    // x^2 sum_n a_n x^n with a_n = p^(n+2)(1) int_0^1 w(theta) theta^n / n! dtheta.
    const bool taylor = weight == PressureRemainder::taylor;
    double a = taylor ? 0.5 * kappa * (kappa - 1.0) : kappa * (kappa - 1.0) / 3.0;
    double xn = 1.0;
    double sum = 0.0;
    for (int n = 0; n < 80 && a != 0.0; ++n) {
      const double term = a * xn;
      sum += term;
      if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
      a *= (kappa - n - 2.0) / (taylor ? n + 3.0 : n + 4.0);
      xn *= x;
    }
    return x * x * sum;
  }
  const double rho = 1.0 + x;
  if (weight == PressureRemainder::taylor) return std::pow(rho, kappa) - 1.0 - kappa * x;
  return -kappa * x - 2.0 + 2.0 * (std::pow(rho, kappa + 1.0) - 1.0) / ((kappa + 1.0) * x);
}

void require_density(const Grid& grid, std::span<const double> phi, double gamma) {
  double mn = phi.empty() ? 0.0 : phi[0];
  for (double v : phi) mn = std::min(mn, v);
  const double rho = 1.0 + mn / gamma;
  if (!(rho >= kVacuumMargin)) {
    std::ostringstream os;
    os << "vacuum proximity: min density " << rho << " below " << kVacuumMargin << " on a grid of "
       << grid.points() << " points";
    throw StateError(os.str());
  }
}

/// Physical-space ingredients: r m_i m_j (6), s m_i (3), F (1).
struct Products {
  std::array<RealArray, 6> rmm;
  std::array<RealArray, 3> sm;
  RealArray f;
};

constexpr int kPair[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};

Products pointwise_products(const Grid& grid, const FluidParams& params, const ComponentFields& u) {
  require_density(grid, u[0], params.gamma);
  const std::size_t n = grid.points();
  Products p;
  for (auto& a : p.rmm) a.resize(n);
  for (auto& a : p.sm) a.resize(n);
  p.f.resize(n);
  const double g = params.gamma;
  for (std::size_t i = 0; i < n; ++i) {
    const double phi = u[0][i];
    const double r = g / (phi + g);
    const double s = phi / (phi + g);
    const double m[3] = {u[1][i], u[2][i], u[3][i]};
    for (int a = 0; a < 3; ++a) {
      p.sm[a][i] = s * m[a];
      for (int b = a; b < 3; ++b) p.rmm[kPair[a][b]][i] = r * m[a] * m[b];
    }
    p.f[i] = pressure_remainder_F(params, phi);
  }
  return p;
}

}  // namespace

const std::array<std::pair<double, double>, 16>& gauss_legendre_16() {
  static const auto table = [] {
    std::array<std::pair<double, double>, 16> t{};
    constexpr int n = 16;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        const double p = std::legendre(n, x);
        dp = n * (x * p - std::legendre(n - 1, x)) / (x * x - 1.0);
        const double dx = p / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      dp = n * (x * std::legendre(n, x) - std::legendre(n - 1, x)) / (x * x - 1.0);
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      t[i] = {0.5 * (1.0 - x), 0.5 * w};
    }
    return t;
  }();
  return table;
}

double pressure_remainder_quadrature(const std::function<double(double)>& p2, PressureRemainder weight,
                                     double gamma, double phi) {
  const double x = phi / gamma;
  double sum = 0.0;
  for (const auto& [theta, w] : gauss_legendre_16()) {
    const double one_minus = 1.0 - theta;
    const double wt = weight == PressureRemainder::taylor ? one_minus : one_minus * one_minus;
    sum += w * wt * p2(1.0 + theta * x);
  }
  return x * x * sum;
}

double pressure_remainder_F(const FluidParams& params, double phi) {
  const double x = phi / params.gamma;
  if (params.law.kind == PressureLawKind::quadratic)
    return params.remainder == PressureRemainder::taylor ? x * x : 2.0 / 3.0 * x * x;
  return power_law_remainder(params.law.kappa, params.remainder, x);
}

ComponentSpectra nonlinear_source(const Grid& grid, const FluidParams& params, const ComponentSpectra& u_hat,
                                  bool dealias_output) {
  ComponentFields u;
  for (int c = 0; c < kComponents; ++c) {
    if (u_hat[c].size() != grid.modes()) throw ShapeError("nonlinear_source: spectrum size mismatch");
    u[c] = inverse_transform(grid, u_hat[c]);
  }
  const Products pr = pointwise_products(grid, params, u);
  std::array<ComplexArray, 6> rmm;
  std::array<ComplexArray, 3> sm;
  for (int a = 0; a < 6; ++a) rmm[a] = forward_transform(grid, pr.rmm[a]);
  for (int a = 0; a < 3; ++a) sm[a] = forward_transform(grid, pr.sm[a]);
  const ComplexArray f = forward_transform(grid, pr.f);

  ComponentSpectra out;
  for (auto& c : out) c.assign(grid.modes(), Complex(0.0));
  grid.for_each_mode([&](std::size_t idx, const std::array<double, 3>& q, double, const std::array<int, 3>& j) {
    if (dealias_output ? !grid.in_dealias_band(j[0], j[1], j[2]) : grid.has_nyquist(j[0], j[1], j[2])) return;
    const double p = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
    const Complex qsm = q[0] * sm[0][idx] + q[1] * sm[1][idx] + q[2] * sm[2][idx];
    for (int a = 0; a < 3; ++a) {
      Complex div = 0.0;
      for (int b = 0; b < 3; ++b) div += q[b] * rmm[kPair[a][b]][idx];
      out[1 + a][idx] = -1i * div + params.nu1 * p * sm[a][idx] + params.nu2 * q[a] * qsm - 1i * q[a] * f[idx];
    }
  });
  return out;
}

std::array<RealArray, 3> nonlinearity_G(const StateField& u, bool dealias_output) {
  const auto out = nonlinear_source(u.grid, u.params, u.spectra(), dealias_output);
  return {inverse_transform(u.grid, out[1]), inverse_transform(u.grid, out[2]), inverse_transform(u.grid, out[3])};
}

FluxDecomposition flux_decomposition(const StateField& u) {
  const Grid& grid = u.grid;
  const Products pr = pointwise_products(grid, u.params, u.u);
  FluxDecomposition fd;
  std::array<ComplexArray, 3> sm;
  for (int a = 0; a < 3; ++a) sm[a] = forward_transform(grid, pr.sm[a]);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      ComplexArray d = sm[a];
      apply_derivative(grid, d, b, 1);
      RealArray grad = inverse_transform(grid, d);
      RealArray& t = fd.tensor[3 * a + b];
      t.resize(grid.points());
      for (std::size_t i = 0; i < t.size(); ++i) t[i] = -pr.rmm[kPair[a][b]][i] - u.params.nu1 * grad[i];
    }
  ComplexArray div(grid.modes(), Complex(0.0));
  for (int b = 0; b < 3; ++b) {
    ComplexArray d = sm[b];
    apply_derivative(grid, d, b, 1);
    for (std::size_t i = 0; i < div.size(); ++i) div[i] += d[i];
  }
  const RealArray divr = inverse_transform(grid, div);
  fd.scalar.resize(grid.points());
  for (std::size_t i = 0; i < divr.size(); ++i) fd.scalar[i] = -u.params.nu2 * divr[i] - pr.f[i];
  return fd;
}

std::pair<double, double> FluxDecomposition::l1_norms(const Grid& grid) const {
  double t = 0.0;
  for (const auto& c : tensor) t += lebesgue_norm(grid, c, 1.0);
  return {t, lebesgue_norm(grid, scalar, 1.0)};
}

std::array<RealArray, 3> reassemble_flux(const Grid& grid, const FluxDecomposition& flux) {
  std::array<RealArray, 3> out;
  const ComplexArray g = forward_transform(grid, flux.scalar);
  for (int a = 0; a < 3; ++a) {
    ComplexArray acc = g;
    apply_derivative(grid, acc, a, 1);
    for (int b = 0; b < 3; ++b) {
      ComplexArray t = forward_transform(grid, flux.tensor[3 * a + b]);
      apply_derivative(grid, t, b, 1);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += t[i];
    }
    out[a] = inverse_transform(grid, acc);
  }
  return out;
}

}  // namespace nsas
