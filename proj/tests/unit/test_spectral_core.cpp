#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "helpers.hpp"
#include "nsas/domain.hpp"
#include "nsas/error.hpp"

namespace nsas {
namespace {

using test::sample;
constexpr double kPi = std::numbers::pi;

Grid grid(int ell, std::array<int, 3> n, double box) { return Grid(DomainSpec::make(ell, n, box)); }

TEST(DomainSpec, RejectsOddOrTinyResolution) {
  EXPECT_THROW(DomainSpec::make(1, {8, 7, 8}, 10.0).validate(), ParameterError);
  EXPECT_THROW(DomainSpec::make(1, {2, 8, 8}, 10.0).validate(), ParameterError);
  EXPECT_THROW(DomainSpec::make(0, {8, 8, 8}, 10.0).validate(), ParameterError);
  EXPECT_THROW(DomainSpec::make(1, {8, 8, 8}, -1.0).validate(), ParameterError);
  EXPECT_NO_THROW(DomainSpec::make(2, {4, 4, 16}, 10.0).validate());
}

TEST(DomainSpec, PeriodicAxesGetTwoPi) {
  const auto d = DomainSpec::make(2, {8, 8, 16}, 50.0);
  EXPECT_DOUBLE_EQ(d.lengths[0], 2 * kPi);
  EXPECT_DOUBLE_EQ(d.lengths[1], 2 * kPi);
  EXPECT_DOUBLE_EQ(d.lengths[2], 50.0);
  EXPECT_DOUBLE_EQ(d.wrap_horizon(1.0), 50.0 / 4.0);
  EXPECT_TRUE(std::isinf(DomainSpec::make(3, {8, 8, 8}, 1.0).wrap_horizon(1.0)));
}

TEST(FluidParams, QuadraticLawDerivedConstants) {
  const auto p = FluidParams::make(1.0, 1.0, PressureLaw::quadratic());
  EXPECT_NEAR(p.gamma * p.gamma, 2.0, 1e-12);
  EXPECT_NEAR(p.alpha, 0.5, 1e-12);
  EXPECT_NO_THROW(p.validate());
}

TEST(FluidParams, AdiabaticLawDerivedConstants) {
  // p = rho^1.4: p'(1) = 1.4, p''(1) = 1.4 * 0.4.
  const auto p = FluidParams::make(1.0, 1.0, PressureLaw::adiabatic(1.4));
  EXPECT_NEAR(p.gamma * p.gamma, 1.4, 1e-12);
  EXPECT_NEAR(p.alpha, 1.4 * 0.4 / (2 * 1.4), 1e-12);
}

TEST(FluidParams, ViscosityAdmissibility) {
  EXPECT_THROW(FluidParams::make(1.0, 0.2, PressureLaw::quadratic()).validate(), ParameterError);
  EXPECT_NO_THROW(FluidParams::make(3.0, 1.0, PressureLaw::quadratic()).validate());
  EXPECT_THROW(FluidParams::make(0.0, 1.0, PressureLaw::quadratic()).validate(), ParameterError);
  FluidParams bad = FluidParams::make(1.0, 1.0, PressureLaw::quadratic());
  bad.gamma = 1.3;
  EXPECT_THROW(bad.validate(), ParameterError);
}

TEST(FluidParams, PressureLawParsing) {
  EXPECT_EQ(PressureLaw::parse("quadratic").kind, PressureLawKind::quadratic);
  EXPECT_DOUBLE_EQ(PressureLaw::parse("adiabatic:1.4").kappa, 1.4);
  EXPECT_DOUBLE_EQ(PressureLaw::parse("adiabatic(3)").kappa, 3.0);
  EXPECT_THROW(PressureLaw::parse("stiffened"), Error);
}

TEST(ForwardTransform, ConstantMapsToVolumeTimesValue) {
  const Grid g = grid(1, {8, 12, 16}, 30.0);
  const auto s = forward_transform(g, RealArray(g.points(), 2.5));
  EXPECT_NEAR(s[0].real(), 2.5 * g.volume(), 1e-10 * g.volume());
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_LT(std::abs(s[i]), 1e-10 * g.volume());
}

TEST(ForwardTransform, SineHasSingleStoredPair) {
  const Grid g = grid(1, {8, 8, 8}, 2 * kPi);
  const auto s = forward_transform(g, sample(g, [](double x, double, double) { return std::sin(x); }));
  int nonzero = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (std::abs(s[i]) > 1e-9) {
      ++nonzero;
      EXPECT_EQ(g.mode_indices(i), (std::array<int, 3>{1, 0, 0}));
      // sin = (e^{ix} - e^{-ix}) / 2i: coefficient -iV/2, its conjugate partner implied.
      EXPECT_NEAR(s[i].real(), 0.0, 1e-12 * g.volume());
      EXPECT_NEAR(s[i].imag(), -0.5 * g.volume(), 1e-12 * g.volume());
    }
  EXPECT_EQ(nonzero, 1);
  EXPECT_DOUBLE_EQ(g.mode_weight(1), 2.0);
}

TEST(ForwardTransform, MatchesDirectSum) {
  const Grid g = grid(1, {4, 6, 8}, 9.0);
  const RealArray f = test::noise(g, 3);
  const auto s = forward_transform(g, f);
  const auto& sh = g.shape();
  double worst = 0.0;
  for (std::size_t idx = 0; idx < s.size(); ++idx) {
    const auto q = g.mode_wavevector(idx);
    std::complex<double> acc = 0.0;
    for (int i2 = 0; i2 < sh[2]; ++i2)
      for (int i1 = 0; i1 < sh[1]; ++i1)
        for (int i0 = 0; i0 < sh[0]; ++i0) {
          // Positions measured from the first grid point on every axis.
          const double phase = q[0] * i0 * g.lengths()[0] / sh[0] + q[1] * i1 * g.lengths()[1] / sh[1] +
                               q[2] * i2 * g.lengths()[2] / sh[2];
          acc += f[g.index(i0, i1, i2)] * std::exp(std::complex<double>(0.0, -phase));
        }
    acc *= g.cell_volume();
    worst = std::max(worst, std::abs(acc - s[idx]));
  }
  EXPECT_LT(worst, 1e-12 * g.volume());
}

TEST(ForwardTransform, HermitianSymmetryOnSelfConjugatePlane) {
  const Grid g = grid(2, {8, 6, 10}, 12.0);
  const auto s = forward_transform(g, test::noise(g, 5));
  const auto& ss = g.spectral_shape();
  double worst = 0.0;
  for (int j2 = 0; j2 < ss[2]; ++j2)
    for (int j1 = 0; j1 < ss[1]; ++j1) {
      const int m1 = (ss[1] - j1) % ss[1], m2 = (ss[2] - j2) % ss[2];
      worst = std::max(worst, std::abs(s[g.spectral_index(0, j1, j2)] - std::conj(s[g.spectral_index(0, m1, m2)])));
    }
  EXPECT_LT(worst, 1e-12 * g.volume());
}

TEST(ForwardTransform, RoundTripAndParseval) {
  for (int ell = 1; ell <= 3; ++ell) {
    const Grid g = grid(ell, {8, 16, 12}, 25.0);
    const RealArray f = test::noise(g, 11 + ell);
    const RealArray back = inverse_transform(g, forward_transform(g, f));
    EXPECT_LT(test::l2(RealArray([&] {
                RealArray d(f.size());
                for (std::size_t i = 0; i < f.size(); ++i) d[i] = back[i] - f[i];
                return d;
              }())) / test::l2(f),
              1e-12);
    const RealArray b = test::band_limited_noise(g, 21 + ell);
    const double l2 = lebesgue_norm(g, b, 2.0);
    EXPECT_NEAR(sobolev_norm(g, b, 0), l2, 1e-12 * l2);
  }
}

TEST(SpectralDerivative, SineToCosine) {
  const Grid g = grid(1, {16, 8, 8}, 10.0);
  const auto d = spectral_derivative(g, sample(g, [](double x, double, double) { return std::sin(x); }), 0, 1);
  EXPECT_LT(test::max_abs_diff(d, sample(g, [](double x, double, double) { return std::cos(x); })), 1e-12);
}

TEST(SpectralDerivative, ConstantGivesZero) {
  const Grid g = grid(1, {8, 8, 8}, 10.0);
  for (int axis = 0; axis < 3; ++axis)
    EXPECT_LT(test::max_abs(spectral_derivative(g, RealArray(g.points(), 3.0), axis, 1)), 1e-12);
}

TEST(SpectralDerivative, GaussianSecondDerivative) {
  const Grid g = grid(1, {4, 4, 128}, 40.0);
  const auto f = sample(g, [](double, double, double y) { return std::exp(-y * y); });
  const auto d = spectral_derivative(g, f, 2, 2);
  const auto exact = sample(g, [](double, double, double y) { return (4 * y * y - 2) * std::exp(-y * y); });
  double worst = 0.0;
  for (int i2 = 0; i2 < 128; ++i2) {
    if (std::abs(g.coordinate(2, i2)) > 15.0) continue;
    const std::size_t k = g.index(0, 0, i2);
    worst = std::max(worst, std::abs(d[k] - exact[k]));
  }
  EXPECT_LT(worst, 1e-8);
}

TEST(TorusAverage, ConstantAndSine) {
  const Grid g = grid(1, {8, 16, 16}, 20.0);
  const auto c = torus_average(g, RealArray(g.points(), 1.75));
  for (double v : c) EXPECT_NEAR(v, 1.75, 1e-14);
  const auto s = torus_average(g, sample(g, [](double x, double y, double z) {
                                 return std::sin(x) * std::exp(-0.1 * (y * y + z * z));
                               }));
  EXPECT_LT(test::max_abs(s), 1e-14);
}

TEST(TorusAverage, MatchesDirectQuadrature) {
  const Grid g = grid(1, {8, 16, 16}, 20.0);
  auto h = [](double y, double z) { return std::exp(-0.05 * (y * y + 2 * z * z)) * (1 + 0.3 * y); };
  const RealArray f = sample(g, [&](double x, double y, double z) { return (2 + std::cos(x)) * h(y, z); });
  const RealArray avg = torus_average(g, f);
  const Grid r = g.reduced();
  ASSERT_EQ(avg.size(), r.points());
  double worst = 0.0;
  for (int i2 = 0; i2 < 16; ++i2)
    for (int i1 = 0; i1 < 16; ++i1) {
      double sum = 0.0;
      for (int i0 = 0; i0 < 8; ++i0) sum += f[g.index(i0, i1, i2)];
      const double direct = sum / 8.0;
      worst = std::max(worst, std::abs(avg[r.index(0, i1, i2)] - direct));
      worst = std::max(worst, std::abs(avg[r.index(0, i1, i2)] - 2 * h(g.coordinate(1, i1), g.coordinate(2, i2))));
    }
  EXPECT_LT(worst, 1e-12);
}

TEST(TorusAverage, IdempotentAndCommutesWithOpenDerivative) {
  for (int ell = 1; ell <= 2; ++ell) {
    const Grid g = grid(ell, {8, 8, 32}, 30.0);
    const RealArray f = test::band_limited_noise(g, 40 + ell);
    const RealArray avg = torus_average(g, f);
    const RealArray again = torus_average(g, lift_to_full(g, avg));
    EXPECT_LT(test::max_abs_diff(avg, again), 1e-13);
    const int axis = 2;
    const RealArray lhs = spectral_derivative(g.reduced(), avg, axis, 1);
    const RealArray rhs = torus_average(g, spectral_derivative(g, f, axis, 1));
    EXPECT_LT(test::max_abs_diff(lhs, rhs), 1e-12);
  }
}

TEST(LebesgueNorm, ConstantAndSupremum) {
  const Grid g = grid(1, {8, 8, 8}, 20.0);
  EXPECT_NEAR(lebesgue_norm(g, RealArray(g.points(), -3.0), 2.0), 3.0 * std::sqrt(g.volume()),
              1e-12 * std::sqrt(g.volume()));
  EXPECT_NEAR(lebesgue_norm(g, RealArray(g.points(), 2.0), 1.0), 2.0 * g.volume(), 1e-10);
  const Grid fine = grid(1, {64, 4, 4}, 20.0);
  const double sup = lebesgue_norm(fine, sample(fine, [](double x, double, double) { return std::sin(x); }),
                                   std::numeric_limits<double>::infinity());
  EXPECT_NEAR(sup, 1.0, 1e-3);
  EXPECT_THROW(lebesgue_norm(g, RealArray(g.points(), 1.0), 2.5), ParameterError);
}

TEST(SobolevNorm, SingleModeWeight) {
  // f = cos(2 z1): ||f||_{L2}^2 = V/2, (1 + 4)^s weighting.
  const Grid g = grid(1, {16, 8, 8}, 6.0);
  const RealArray f = sample(g, [](double x, double, double) { return std::cos(2 * x); });
  for (int s = 0; s <= 4; ++s)
    EXPECT_NEAR(sobolev_norm(g, f, s), std::sqrt(g.volume() / 2 * std::pow(5.0, s)),
                1e-12 * std::sqrt(g.volume()) * std::pow(5.0, s / 2.0));
  EXPECT_THROW(sobolev_norm(g, f, 5), ParameterError);
}

TEST(Dealias, KeepsOnlyTwoThirdsBand) {
  const Grid g = grid(1, {12, 12, 12}, 10.0);
  ComplexArray s = forward_transform(g, test::noise(g, 9));
  dealias(g, s);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto j = g.mode_indices(i);
    const bool keep = std::abs(g.signed_index(0, j[0])) <= 3 && std::abs(g.signed_index(1, j[1])) <= 3 &&
                      std::abs(g.signed_index(2, j[2])) <= 3;
    if (!keep) EXPECT_EQ(s[i], Complex(0.0));
    else EXPECT_NE(s[i], Complex(0.0));
  }
}

TEST(ResampleSpectrum, PadThenTruncateIsIdentity) {
  const Grid coarse = grid(1, {8, 16, 16}, 30.0);
  const Grid fine = grid(1, {16, 32, 32}, 30.0);
  const RealArray f = test::band_limited_noise(coarse, 2);
  const ComplexArray s = forward_transform(coarse, f);
  const ComplexArray up = resample_spectrum(coarse, s, fine);
  const RealArray ff = inverse_transform(fine, up);
  EXPECT_NEAR(lebesgue_norm(fine, ff, 2.0), lebesgue_norm(coarse, f, 2.0), 1e-12 * lebesgue_norm(coarse, f, 2.0));
  const RealArray back = inverse_transform(coarse, resample_spectrum(fine, up, coarse));
  EXPECT_LT(test::max_abs_diff(back, f), 1e-13);
}

TEST(GagliardoNirenberg, PlumbingOnPlanarGrid) {
  // ||f||_{L4} <= C ||f||_{L2}^{1/2} ||grad f||_{L2}^{1/2} in two dimensions.
  const Grid g = grid(1, {8, 48, 48}, 40.0);
  const Grid r = g.reduced();
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    ComplexArray s = forward_transform(r, test::noise(r, 1000 + trial));
    dealias(r, s);
    const RealArray f = inverse_transform(r, s);
    const RealArray fy = spectral_derivative(r, f, 1, 1), fz = spectral_derivative(r, f, 2, 1);
    RealArray grad(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) grad[i] = std::hypot(fy[i], fz[i]);
    const double ratio = lebesgue_norm(r, f, 4.0) /
                         (std::sqrt(lebesgue_norm(r, f, 2.0)) * std::sqrt(lebesgue_norm(r, grad, 2.0)));
    worst = std::max(worst, ratio);
  }
  EXPECT_LE(worst, 10.0);
}

}  // namespace
}  // namespace nsas
