#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "helpers.hpp"
#include "nsas/error.hpp"
#include "nsas/initial_data.hpp"
#include "nsas/nonlinearity.hpp"
#include "nsas/semigroup.hpp"
#include "nsas/solver.hpp"
#include "nsas/symbol.hpp"

namespace nsas {
namespace {

FluidParams quadratic(PressureRemainder w = PressureRemainder::taylor) {
  return FluidParams::make(1.0, 1.0, PressureLaw::quadratic(), w);
}

double rel_distance(const StateField& a, const StateField& b) {
  double num = 0.0, den = 0.0;
  for (int c = 0; c < kComponents; ++c)
    for (std::size_t i = 0; i < a.u[c].size(); ++i) {
      num += (a.u[c][i] - b.u[c][i]) * (a.u[c][i] - b.u[c][i]);
      den += b.u[c][i] * b.u[c][i];
    }
  return std::sqrt(num / den);
}

TEST(PressureRemainder, QuadraticLawClosedForms) {
  // p = rho^2: p(1+x) - p(1) - p'(1) x = x^2, and the squared weight gives (2/3) x^2.
  const auto taylor = quadratic();
  const auto squared = quadratic(PressureRemainder::squared);
  for (double phi : {-0.5, -0.01, 0.0, 0.3, 1.2}) {
    const double x = phi / taylor.gamma;
    EXPECT_NEAR(pressure_remainder_F(taylor, phi), x * x, 1e-15);
    EXPECT_NEAR(pressure_remainder_F(squared, phi), phi * phi / 3.0, 1e-15);
  }
}

TEST(PressureRemainder, AdiabaticTaylorMatchesDirectExpansion) {
  for (double kappa : {1.4, 3.0, 5.0 / 3.0}) {
    const auto p = FluidParams::make(1.0, 1.0, PressureLaw::adiabatic(kappa));
    for (double x : {-0.6, -0.3, 0.2, 0.4, 1.5}) {
      const double phi = x * p.gamma;
      const double direct = std::pow(1.0 + x, kappa) - 1.0 - kappa * x;
      EXPECT_NEAR(pressure_remainder_F(p, phi), direct, 1e-13 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST(PressureRemainder, ClosedFormsMatchQuadrature) {
  for (double kappa : {1.4, 2.0, 3.0, 5.0 / 3.0})
    for (auto w : {PressureRemainder::taylor, PressureRemainder::squared}) {
      const auto p = FluidParams::make(1.0, 1.0, PressureLaw::adiabatic(kappa), w);
      const auto p2 = [kappa](double rho) { return kappa * (kappa - 1.0) * std::pow(rho, kappa - 2.0); };
      for (double x = -0.8; x <= 0.8; x += 0.01) {
        const double phi = x * p.gamma;
        const double closed = pressure_remainder_F(p, phi);
        const double quad = pressure_remainder_quadrature(p2, w, p.gamma, phi);
        EXPECT_NEAR(closed, quad, 1e-12 * std::max(1e-3, std::abs(quad))) << kappa << " " << x;
      }
    }
}

TEST(PressureRemainder, GaussLegendreIntegratesPolynomialsExactly) {
  // Degree 31 is the exactness limit of the 16-point rule.
  double sum = 0.0, wsum = 0.0;
  for (const auto& [x, w] : gauss_legendre_16()) {
    sum += w * std::pow(x, 31);
    wsum += w;
  }
  EXPECT_NEAR(wsum, 1.0, 1e-15);
  EXPECT_NEAR(sum, 1.0 / 32.0, 1e-15);
}

class NonlinearityTest : public ::testing::Test {
 protected:
  Grid g{DomainSpec::make(1, {12, 24, 24}, 20.0)};
};

TEST_F(NonlinearityTest, ZeroStateGivesZero) {
  const StateField u = StateField::zeros(g, quadratic());
  for (const auto& c : nonlinearity_G(u)) EXPECT_EQ(test::max_abs(c), 0.0);
  const auto flux = flux_decomposition(u);
  for (const auto& t : flux.tensor) EXPECT_EQ(test::max_abs(t), 0.0);
  EXPECT_EQ(test::max_abs(flux.scalar), 0.0);
}

TEST_F(NonlinearityTest, PurePressureTermIsGradientOfPhiSquaredOverThree) {
  StateField u = StateField::zeros(g, quadratic(PressureRemainder::squared));
  // Restrict phi to the half band so phi^2 is resolved without aliasing.
  ComplexArray s = forward_transform(g, test::noise(g, 31, 0.2));
  g.for_each_mode([&](std::size_t idx, const auto&, double, const std::array<int, 3>& j) {
    for (int a = 0; a < 3; ++a)
      if (2 * std::abs(g.signed_index(a, j[a])) >= g.shape()[a] / 2) s[idx] = 0.0;
  });
  u.phi() = inverse_transform(g, s);
  RealArray f(g.points());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = u.phi()[i] * u.phi()[i] / 3.0;
  const auto G = nonlinearity_G(u, false);
  for (int a = 0; a < 3; ++a) {
    RealArray expected = spectral_derivative(g, f, a, 1);
    for (double& v : expected) v = -v;
    EXPECT_LT(test::max_abs_diff(G[a], expected), 1e-10);
  }
}

TEST_F(NonlinearityTest, QuadraticScalingAtSmallAmplitude) {
  const FluidParams p = quadratic();
  const StateField base = test::random_state(g, p, 3, 1.0);
  std::vector<double> ratios;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    StateField u = base;
    for (auto& c : u.u)
      for (double& v : c) v *= eps;
    double n = 0.0;
    for (const auto& c : nonlinearity_G(u)) n += std::pow(lebesgue_norm(g, c, 2.0), 2);
    ratios.push_back(std::sqrt(n) / (eps * eps));
  }
  EXPECT_NEAR(ratios[1] / ratios[0], 1.0, 0.05);
  EXPECT_NEAR(ratios[2] / ratios[1], 1.0, 0.005);
}

TEST_F(NonlinearityTest, FluxReassemblesToSource) {
  const StateField u = test::random_state(g, quadratic(), 8, 0.05);
  const auto G = nonlinearity_G(u, false);
  const auto flux = flux_decomposition(u);
  const auto back = reassemble_flux(g, flux);
  for (int a = 0; a < 3; ++a) EXPECT_LT(test::max_abs_diff(G[a], back[a]), 1e-10);
  const auto [tensor_l1, scalar_l1] = flux.l1_norms(g);
  EXPECT_TRUE(std::isfinite(tensor_l1) && tensor_l1 > 0.0);
  EXPECT_TRUE(std::isfinite(scalar_l1) && scalar_l1 > 0.0);
}

TEST_F(NonlinearityTest, VacuumGuard) {
  StateField u = StateField::zeros(g, quadratic());
  u.phi()[5] = -0.95 * u.params.gamma;
  EXPECT_THROW(nonlinearity_G(u), StateError);
}

TEST(InitialData, DeterministicNormalisedAndPositive) {
  const DomainSpec d = DomainSpec::make(1, {8, 32, 32}, 40.0);
  const FluidParams p = quadratic();
  const InitialDataSpec spec{42, 0.01, 2, 2.5};
  const StateField a = make_initial_data(d, p, spec);
  const StateField b = make_initial_data(d, p, spec);
  for (int c = 0; c < kComponents; ++c) EXPECT_EQ(a.u[c], b.u[c]);
  EXPECT_NEAR(h4_l1_norm(a), 0.01, 1e-10);
  EXPECT_GT(a.min_density(), 0.0);
  const StateField big = make_initial_data(d, p, {42, 0.1, 2, 2.5});
  EXPECT_GT(big.min_density(), 0.0);
  const StateField other = make_initial_data(d, p, {43, 0.01, 2, 2.5});
  EXPECT_NE(other.u[0], a.u[0]);
}

TEST(InitialData, BandMustFitDealiasCutoff) {
  EXPECT_THROW(make_initial_data(DomainSpec::make(1, {8, 32, 32}, 40.0), quadratic(), {1, 0.01, 3, 2.5}),
               ParameterError);
}

TEST(InitialData, H4L1NormOfKnownField) {
  // u = (c, 0, 0, 0): ||u||_{H^4} = |c| V^{1/2}, ||u||_{L^1} = |c| V.
  const Grid g(DomainSpec::make(1, {8, 8, 8}, 5.0));
  StateField u = StateField::zeros(g, quadratic());
  u.phi().assign(g.points(), -0.25);
  EXPECT_NEAR(h4_l1_norm(u), 0.25 * (std::sqrt(g.volume()) + g.volume()), 1e-11);
}

class SolverTest : public ::testing::Test {
 protected:
  DomainSpec d3 = DomainSpec::make(3, {16, 16, 16}, kTwoPi);
  FluidParams p = quadratic();
};

TEST_F(SolverTest, ZeroStateStaysZero) {
  const StateField z = StateField::zeros(Grid(d3), p);
  SolverConfig cfg;
  cfg.dt = 0.01;
  const StateField out = step(z, cfg);
  for (const auto& c : out.u) EXPECT_EQ(test::max_abs(c), 0.0);
  EXPECT_DOUBLE_EQ(out.time, 0.01);
}

TEST_F(SolverTest, EndTimeEqualToStartReturnsInput) {
  const StateField u0 = make_initial_data(d3, p, {1, 1e-2, 2, 1.0});
  SolverConfig cfg;
  cfg.t_end = 0.0;
  const StateField out = run(u0, cfg);
  for (int c = 0; c < kComponents; ++c) EXPECT_EQ(out.u[c], u0.u[c]);
}

TEST_F(SolverTest, RejectsStepAboveStabilityBound) {
  const StateField u0 = make_initial_data(d3, p, {1, 1e-2, 2, 1.0});
  SolverConfig cfg;
  cfg.dt = 2.0 * dt_max(u0);
  cfg.t_end = 1.0;
  EXPECT_THROW(Solver(u0, cfg), ParameterError);
}

TEST_F(SolverTest, LinearRegimeMatchesSemigroup) {
  const StateField u0 = make_initial_data(d3, p, {5, 1e-8, 2, 1.0});
  SolverConfig cfg;
  const StateField one = step(u0, cfg);
  EXPECT_LE(rel_distance(one, semigroup_apply(one.time, u0)), 1e-12);
}

TEST_F(SolverTest, DeviationFromSemigroupIsQuadraticInAmplitude) {
  std::vector<double> dev;
  for (double eps : {1e-2, 1e-3}) {
    const StateField u0 = make_initial_data(d3, p, {5, eps, 2, 1.0});
    SolverConfig cfg;
    cfg.dt = 0.02;
    const StateField one = step(u0, cfg);
    dev.push_back(rel_distance(one, semigroup_apply(one.time, u0)));
  }
  // Relative deviation is linear in the amplitude.
  EXPECT_NEAR(dev[0] / dev[1], 10.0, 0.5);
}

TEST_F(SolverTest, EtdStepExactForConstantForcing) {
  // d/dt u + L u = f has u(h) = E u0 + L^{-1} (I - E) f per mode.
  const Grid g(DomainSpec::make(1, {8, 8, 8}, 12.0));
  const LinearCoefficients c = p.linear();
  ComponentSpectra u, f;
  for (int k = 0; k < kComponents; ++k) {
    u[k] = forward_transform(g, test::dealiased_noise(g, 70 + k));
    f[k] = forward_transform(g, test::dealiased_noise(g, 80 + k));
  }
  const ComponentSpectra u0 = u;
  for (TimeScheme scheme : {TimeScheme::etdrk2, TimeScheme::etd2}) {
    u = u0;
    const double h = 0.05;
    EtdIntegrator integ(g, c, h, scheme, true);
    integ.advance(u, [&](const ComponentSpectra&) { return f; });
    integ.advance(u, [&](const ComponentSpectra&) { return f; });
    double worst = 0.0;
    g.for_each_mode([&](std::size_t idx, const std::array<double, 3>& q, double, const std::array<int, 3>& j) {
      if (!g.in_dealias_band(j[0], j[1], j[2])) return;
      const Matrix4c l = symbol_entries(q, c);
      Vector4c x, fv;
      for (int k = 0; k < 4; ++k) {
        x(k) = u0[k][idx];
        fv(k) = f[k][idx];
      }
      const double t = 2 * h;
      const Matrix4c e = (-t * l).exp();
      Vector4c exact;
      if (q[0] == 0 && q[1] == 0 && q[2] == 0) exact = x + t * fv;
      else exact = e * x + l.partialPivLu().solve((Matrix4c::Identity() - e) * fv);
      for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(exact(k) - u[k][idx]));
    });
    EXPECT_LT(worst, 1e-11) << scheme_name(scheme);
  }
}

TEST_F(SolverTest, SecondOrderSelfConvergence) {
  const StateField u0 = make_initial_data(d3, p, {1, 50.0, 2, 1.0});
  for (TimeScheme scheme : {TimeScheme::etdrk2, TimeScheme::etd2}) {
    std::vector<StateField> out;
    for (double dt : {1e-2, 5e-3, 2.5e-3}) {
      SolverConfig cfg;
      cfg.dt = dt;
      cfg.t_end = 0.5;
      cfg.scheme = scheme;
      out.push_back(run(u0, cfg));
    }
    const double ratio = rel_distance(out[0], out[1]) / rel_distance(out[1], out[2]);
    EXPECT_GE(ratio, 4.0 / 1.5) << scheme_name(scheme);
    EXPECT_LE(ratio, 4.0 * 1.5) << scheme_name(scheme);
  }
}

TEST_F(SolverTest, MeanDensityConservedOverTenThousandSteps) {
  const DomainSpec small = DomainSpec::make(3, {8, 8, 8}, kTwoPi);
  const StateField u0 = make_initial_data(small, p, {9, 1e-1, 2, 1.0});
  SolverConfig cfg;
  cfg.dt = 0.8 * dt_max(u0);
  cfg.t_end = 1e4 * cfg.dt;
  cfg.diagnostics_stride = 500;
  const double mean0 = torus_average(u0.grid, u0.phi())[0];
  double worst = 0.0;
  std::int64_t calls = 0;
  const StateField end = run(u0, cfg, [&](const StateField& s, std::int64_t) {
    worst = std::max(worst, std::abs(torus_average(s.grid, s.phi())[0] - mean0));
    ++calls;
  });
  EXPECT_LE(worst, 1e-12);
  EXPECT_EQ(calls, 10000 / 500 + 1);
  EXPECT_NEAR(end.time, cfg.t_end, 1e-9);
}

TEST_F(SolverTest, PlanStepsEndsExactly) {
  const auto [n, h] = plan_steps(1.0, 0.3);
  EXPECT_EQ(n, 4);
  EXPECT_DOUBLE_EQ(h, 0.25);
  const auto [m, k] = plan_steps(1.0, 0.25);
  EXPECT_EQ(m, 4);
  EXPECT_DOUBLE_EQ(k, 0.25);
}

TEST_F(SolverTest, CheckpointRoundTripIsBitExact) {
  const StateField u0 = make_initial_data(d3, p, {2, 1e-2, 2, 1.0});
  const auto dir = std::filesystem::temp_directory_path() / "nsas_ckpt_test";
  std::filesystem::create_directories(dir);
  write_checkpoint(dir / "a.bin", u0);
  const StateField back = read_checkpoint(dir / "a.bin");
  for (int c = 0; c < kComponents; ++c) EXPECT_EQ(back.u[c], u0.u[c]);
  EXPECT_EQ(back.grid, u0.grid);
  EXPECT_DOUBLE_EQ(back.params.gamma, u0.params.gamma);
  SolverConfig cfg;
  cfg.dt = 0.01;
  cfg.t_end = 0.05;
  cfg.checkpoint_stride = 2;
  cfg.checkpoint_dir = dir;
  run(u0, cfg);
  EXPECT_TRUE(std::filesystem::exists(dir / "checkpoint_00000002.bin"));
  EXPECT_TRUE(std::filesystem::exists(dir / "checkpoint_00000004.bin"));
  std::filesystem::remove_all(dir);
}

TEST_F(SolverTest, ReducedGridRejected) {
  const Grid red = Grid(DomainSpec::make(1, {8, 8, 8}, 10.0)).reduced();
  SolverConfig cfg;
  cfg.t_end = 1.0;
  EXPECT_THROW(Solver(StateField::zeros(red, p), cfg), ShapeError);
}

}  // namespace
}  // namespace nsas
