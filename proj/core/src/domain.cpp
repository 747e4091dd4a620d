#include "nsas/domain.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "nsas/error.hpp"

namespace nsas {

DomainSpec DomainSpec::make(int ell, std::array<int, 3> resolution, double box_length) {
  DomainSpec d;
  d.ell = ell;
  d.resolution = resolution;
  for (int a = 0; a < 3; ++a) d.lengths[a] = a < ell ? kTwoPi : box_length;
  d.validate();
  return d;
}

double DomainSpec::wrap_horizon(double gamma) const {
  double shortest = std::numeric_limits<double>::infinity();
  for (int a = ell; a < 3; ++a) shortest = std::min(shortest, lengths[a]);
  return shortest / (2.0 * (gamma + 1.0));
}

void DomainSpec::validate() const {
  if (ell < 1 || ell > 3) throw ParameterError("ell must be 1, 2 or 3");
  for (int a = 0; a < 3; ++a) {
    if (!(lengths[a] > 0.0) || !std::isfinite(lengths[a]))
      throw ParameterError("domain lengths must be positive");
    if (resolution[a] < 4 || resolution[a] % 2 != 0)
      throw ParameterError("resolution must be even and at least 4 on every axis");
  }
}

double PressureLaw::pressure(double rho) const {
  return kind == PressureLawKind::quadratic ? rho * rho : std::pow(rho, kappa);
}

double PressureLaw::d1(double rho) const {
  return kind == PressureLawKind::quadratic ? 2.0 * rho : kappa * std::pow(rho, kappa - 1.0);
}

double PressureLaw::d2(double rho) const {
  return kind == PressureLawKind::quadratic
             ? 2.0
             : kappa * (kappa - 1.0) * std::pow(rho, kappa - 2.0);
}

std::string PressureLaw::name() const {
  if (kind == PressureLawKind::quadratic) return "quadratic";
  std::ostringstream os;
  os.precision(17);
  os << "adiabatic:" << kappa;
  return os.str();
}

PressureLaw PressureLaw::parse(const std::string& text) {
  if (text == "quadratic") return quadratic();
  const std::string prefix = "adiabatic";
  if (text.rfind(prefix, 0) == 0) {
    std::string rest = text.substr(prefix.size());
    if (!rest.empty() && (rest.front() == ':' || rest.front() == '(')) rest.erase(0, 1);
    if (!rest.empty() && rest.back() == ')') rest.pop_back();
    try {
      std::size_t used = 0;
      double kappa = std::stod(rest, &used);
      if (used == rest.size() && kappa > 0.0) return adiabatic(kappa);
    } catch (const std::exception&) {
    }
  }
  throw ParameterError("unknown pressure law '" + text + "'");
}

void LinearCoefficients::validate() const {
  if (!(nu1 > 0.0)) throw ParameterError("nu1 must be positive");
  if (!(nu2 >= 0.0)) throw ParameterError("nu2 must be non-negative");
  if (!(gamma > 0.0)) throw ParameterError("gamma must be positive");
}

FluidParams FluidParams::make(double nu1, double nu2, PressureLaw law,
                              PressureRemainder remainder) {
  FluidParams p;
  p.nu1 = nu1;
  p.nu2 = nu2;
  p.law = law;
  p.remainder = remainder;
  p.gamma = std::sqrt(law.d1(1.0));
  p.alpha = law.d2(1.0) / (2.0 * p.gamma * p.gamma);
  p.validate();
  return p;
}

void FluidParams::validate() const {
  linear().validate();
  if (nu2 < nu1 / 3.0 - 1e-15)
    throw ParameterError("viscosity admissibility requires 2/3 mu + mu' >= 0, i.e. nu2 >= nu1/3");
  if (std::abs(gamma * gamma - law.d1(1.0)) > 1e-12)
    throw ParameterError("gamma^2 does not match p'(1) of the pressure law");
  if (std::abs(alpha - law.d2(1.0) / (2.0 * gamma * gamma)) > 1e-12)
    throw ParameterError("alpha does not match p''(1)/(2 gamma^2) of the pressure law");
}

void FluidParams::require_positive_alpha() const {
  if (!(alpha > 0.0))
    throw ParameterError("pressure law gives alpha = p''(1)/(2 gamma^2) <= 0; nonlinear runs require alpha > 0");
}

}  // namespace nsas
