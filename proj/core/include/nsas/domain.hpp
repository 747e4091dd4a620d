#pragma once

#include <array>
#include <numbers>
#include <string>

namespace nsas {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Discrete stand-in for T^ell x R^(3-ell).
///
/// Axes 0..ell-1 are periodic (length 2*pi by default); the remaining axes are
/// unbounded directions truncated to periodic boxes of length L.  Storage is
/// row-major with axis 0 (z1) fastest.
struct DomainSpec {
  int ell = 1;
  std::array<double, 3> lengths{kTwoPi, kTwoPi, kTwoPi};
  std::array<int, 3> resolution{8, 8, 8};

  /// Periodic axes get 2*pi, open axes get box_length.
  static DomainSpec make(int ell, std::array<int, 3> resolution, double box_length);

  bool is_periodic(int axis) const noexcept { return axis < ell; }

  /// Horizon L_min / (2 (gamma + 1)) beyond which sound has wrapped around the
  /// truncated box.  Infinite when ell = 3.
  double wrap_horizon(double gamma) const;

  void validate() const;
};

enum class PressureLawKind { quadratic, adiabatic };

/// p(rho) = rho^2 or p(rho) = rho^kappa.
struct PressureLaw {
  PressureLawKind kind = PressureLawKind::quadratic;
  double kappa = 2.0;

  static PressureLaw quadratic() { return {PressureLawKind::quadratic, 2.0}; }
  static PressureLaw adiabatic(double kappa) { return {PressureLawKind::adiabatic, kappa}; }

  double pressure(double rho) const;
  double d1(double rho) const;
  double d2(double rho) const;

  std::string name() const;
  /// Accepts "quadratic", "adiabatic:<kappa>" or "adiabatic(<kappa>)".
  static PressureLaw parse(const std::string& text);
};

/// Weight used in the pressure remainder F(phi) = (phi/gamma)^2 int_0^1 w(theta) p''(1 + theta phi/gamma) dtheta.
///
/// `taylor` uses w = 1 - theta, the exact second-order Taylor remainder of p.
/// `squared` uses w = (1 - theta)^2.
enum class PressureRemainder { taylor, squared };

/// Linear coefficients entering the Fourier symbol.
struct LinearCoefficients {
  double nu1 = 1.0;
  double nu2 = 1.0;
  double gamma = 1.0;

  void validate() const;
};

struct FluidParams {
  double nu1 = 1.0;
  double nu2 = 1.0;
  double gamma = std::numbers::sqrt2;
  double alpha = 0.5;
  PressureLaw law = PressureLaw::quadratic();
  PressureRemainder remainder = PressureRemainder::taylor;

  /// gamma and alpha derived from the law: gamma^2 = p'(1), alpha = p''(1) / (2 gamma^2).
  static FluidParams make(double nu1, double nu2, PressureLaw law,
                          PressureRemainder remainder = PressureRemainder::taylor);

  LinearCoefficients linear() const { return {nu1, nu2, gamma}; }

  /// Consistency of gamma/alpha with the law and viscosity admissibility.
  void validate() const;
  /// Nonlinear and profile runs additionally require alpha > 0.
  void require_positive_alpha() const;
};

}  // namespace nsas
