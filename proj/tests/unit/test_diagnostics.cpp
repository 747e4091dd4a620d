#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "helpers.hpp"
#include "nsas/decay_fit.hpp"
#include "nsas/diagnostics.hpp"
#include "nsas/error.hpp"

namespace nsas {
namespace {

const FluidParams kParams = FluidParams::make(1.0, 1.0, PressureLaw::quadratic());

TEST(RecordNorms, SingleModeDerivatives) {
  // phi = cos(2 y1) on a 2pi box: ||d^k phi||^2 = 4^k V / 2.
  const Grid g(DomainSpec::make(1, {8, 16, 16}, kTwoPi));
  StateField u = StateField::zeros(g, kParams);
  u.phi() = test::sample(g, [](double, double y1, double) { return std::cos(2 * y1); });
  const auto n = record_norms(u, {0, 1, 2, 3, 4});
  ASSERT_EQ(n.size(), 5u);
  const double base = std::sqrt(g.volume() / 2.0);
  for (int k = 0; k <= 4; ++k) EXPECT_NEAR(n[k], std::pow(2.0, k) * base, 1e-12 * std::pow(2.0, k) * base);
  EXPECT_THROW(record_norms(u, {5}), ParameterError);
  EXPECT_THROW(record_norms(u, {-1}), ParameterError);
}

TEST(RecordNorms, ZeroField) {
  const Grid g(DomainSpec::make(1, {8, 16, 16}, 20.0));
  for (double v : record_norms(StateField::zeros(g, kParams), {0, 1, 2})) EXPECT_EQ(v, 0.0);
}

TEST(CompareToAverage, TorusIndependentFieldHasNoFluctuation) {
  const Grid g(DomainSpec::make(1, {8, 32, 32}, 30.0));
  StateField u = StateField::zeros(g, kParams);
  u.phi() = test::sample(g, [](double, double y1, double y2) { return std::exp(-(y1 * y1 + y2 * y2) / 8); });
  u.m(1) = test::sample(g, [](double, double y1, double) { return std::sin(y1 / 3); });
  const auto c = compare_to_average(u);
  EXPECT_TRUE(c.ubar.grid.is_reduced());
  EXPECT_LT(c.tilde_norms[0], 1e-14);
  EXPECT_LT(c.tilde_h1, 1e-14);
}

TEST(CompareToAverage, OscillatingFactorAveragesAway) {
  // u = sin(x) g(y): u_bar = 0 and ||u_tilde|| = ||u||.
  const Grid g(DomainSpec::make(1, {16, 32, 32}, 30.0));
  StateField u = StateField::zeros(g, kParams);
  u.m(0) = test::sample(g, [](double x, double y1, double y2) {
    return std::sin(x) * std::exp(-(y1 * y1 + y2 * y2) / 10);
  });
  const auto c = compare_to_average(u);
  for (const auto& comp : c.ubar.u) EXPECT_LT(test::max_abs(comp), 1e-15);
  EXPECT_NEAR(c.tilde_norms[0], record_norms(u, {0})[0], 1e-13);
}

TEST(CompareToAverage, SplitIsOrthogonal) {
  const Grid g(DomainSpec::make(1, {8, 16, 16}, 12.0));
  const StateField u = test::random_state(g, kParams, 21, 0.1);
  const auto c = compare_to_average(u);
  const double total = record_norms(u, {0})[0];
  const double bar = derivative_norms(c.ubar.grid, c.ubar.spectra())[0];
  // The reduced norm integrates over the open axes only; the torus contributes its measure.
  const double torus = kTwoPi;
  EXPECT_NEAR(total * total, c.tilde_norms[0] * c.tilde_norms[0] + torus * bar * bar, 1e-12 * total * total);

  const auto s = split_average_norms(g, u.spectra());
  EXPECT_NEAR(s.l2_tilde, c.tilde_norms[0], 1e-14);
  EXPECT_NEAR(s.d1_tilde, c.tilde_norms[1], 1e-14);
  EXPECT_NEAR(s.h1_tilde, c.tilde_h1, 1e-14);
}

TEST(CompareToProfile, IdenticalAndMismatched) {
  const Grid red = Grid(DomainSpec::make(1, {8, 16, 16}, 12.0)).reduced();
  StateField a = test::random_state(red, kParams, 4, 0.1);
  a.time = 3.0;
  const auto same = compare_to_profile({a}, {a});
  ASSERT_EQ(same.size(), 1u);
  EXPECT_EQ(same[0].l2, 0.0);
  EXPECT_EQ(same[0].h1, 0.0);
  EXPECT_DOUBLE_EQ(same[0].t, 3.0);

  StateField later = a;
  later.time = 3.1;
  EXPECT_THROW(profile_difference(a, later), AlignmentError);
  const Grid other = Grid(DomainSpec::make(1, {8, 32, 16}, 12.0)).reduced();
  StateField b = StateField::zeros(other, kParams, 3.0);
  EXPECT_THROW(profile_difference(a, b), AlignmentError);
  EXPECT_THROW(compare_to_profile({a, a}, {a}), AlignmentError);

  StateField shifted = a;
  for (double& v : shifted.phi()) v += 0.5;
  EXPECT_NEAR(profile_difference(a, shifted).l2, 0.5 * std::sqrt(red.volume()), 1e-12);
}

TEST(CompareToProfile, FullDistanceCombinesParts) {
  EXPECT_DOUBLE_EQ(full_profile_distance(3.0, 2.0, 4.0), 5.0);
  EXPECT_EQ(full_profile_distance(0.0, 0.0, 1.0), 0.0);
}

TEST(SupTracker, WeightsAndRunningSupremum) {
  SupFunctionalTracker m(SupKind::M);
  EXPECT_DOUBLE_EQ(m.weighted(3.0, 1.0, 1.0), 2.0 + 4.0);
  EXPECT_DOUBLE_EQ(m.update(3.0, 1.0, 1.0), 6.0);
  EXPECT_DOUBLE_EQ(m.update(8.0, 0.1, 0.1), 6.0);
  EXPECT_DOUBLE_EQ(m.update(15.0, 1.0, 1.0), 20.0);
  EXPECT_EQ(m.history().size(), 3u);

  SupFunctionalTracker m1(SupKind::M1);
  EXPECT_NEAR(m1.weighted(15.0, 1.0, 1.0), 2.0 + 8.0, 1e-14);
  SupFunctionalTracker m2(SupKind::M2, 0.5);
  EXPECT_NEAR(m2.weighted(2.0, 3.0), 3.0 * std::exp(1.0), 1e-14);
  SupFunctionalTracker n1(SupKind::N1);
  EXPECT_DOUBLE_EQ(n1.weighted(4.0, 2.0), 10.0);
  EXPECT_EQ(sup_kind_name(SupKind::M0_tilde), "M0_tilde");
}

std::vector<double> grid_times(double a, double b, int n) {
  std::vector<double> t;
  for (int i = 0; i < n; ++i) t.push_back(a + (b - a) * i / (n - 1));
  return t;
}

DecaySeries synthetic(const std::vector<double>& t, double (*f)(double)) {
  std::vector<double> v;
  for (double s : t) v.push_back(f(s));
  return DecaySeries::make(t, v, "synthetic");
}

TEST(DecayFit, PowerLawRecovered) {
  const auto s = synthetic(grid_times(0, 200, 401), [](double t) { return 3.0 * std::pow(1 + t, -0.5); });
  const auto f = fit_decay(s, DecayModel::power, {10, 200});
  EXPECT_NEAR(f.exponent_or_rate, -0.5, 1e-10);
  EXPECT_NEAR(f.amplitude, 3.0, 1e-9);
  EXPECT_LT(f.residual_rms, 1e-12);
  EXPECT_EQ(f.samples, 381u);
}

TEST(DecayFit, ExponentialRateRecovered) {
  const auto s = synthetic(grid_times(0, 50, 201), [](double t) { return std::exp(-0.2 * t); });
  EXPECT_NEAR(fit_decay(s, DecayModel::exponential, {0, 50}).exponent_or_rate, 0.2, 1e-10);
}

TEST(DecayFit, LogFactorSeparatesModels) {
  const auto s = synthetic(grid_times(0, 100, 1001),
                           [](double t) { return std::pow(1 + t, -0.75) * std::log(2 + t); });
  EXPECT_NEAR(fit_decay(s, DecayModel::power_log, {10, 100}).exponent_or_rate, -0.75, 1e-6);
  const double plain = fit_decay(s, DecayModel::power, {10, 100}).exponent_or_rate;
  // The local log-log slope of the pure power fit runs from -0.381 at t = 10 to -0.536 at t = 100.
  EXPECT_GT(plain, -0.536);
  EXPECT_LT(plain, -0.381);
}

TEST(DecayFit, TooFewSamplesAndBadInput) {
  const auto s = synthetic(grid_times(0, 10, 11), [](double t) { return 1.0 / (1 + t); });
  EXPECT_THROW(fit_decay(s, DecayModel::power, {5, 10}), DataError);
  EXPECT_THROW(DecaySeries::make({0, 1, 1}, {1, 1, 1}, "x"), DataError);
  EXPECT_THROW(DecaySeries::make({0, 1}, {1, std::numeric_limits<double>::quiet_NaN()}, "x"), DataError);
  EXPECT_THROW(DecaySeries::make({0, 1}, {1}, "x"), DataError);
  EXPECT_EQ(parse_decay_model("exp"), DecayModel::exponential);
  EXPECT_EQ(parse_decay_model("power_log"), DecayModel::power_log);
  EXPECT_THROW(parse_decay_model("linear"), std::exception);
}

TEST(DecayFit, FloorDropsTinySamples) {
  std::vector<double> t = grid_times(0, 30, 31), v;
  for (double s : t) v.push_back(s < 20 ? std::pow(1 + s, -1.0) : 0.0);
  const auto s = DecaySeries::make(t, v, "floor");
  EXPECT_EQ(s.dropped, 11u);
  EXPECT_EQ(s.times.size(), 20u);
  const auto f = fit_decay(s, DecayModel::power, {0, 30});
  EXPECT_EQ(f.dropped, 11u);
  EXPECT_NEAR(f.exponent_or_rate, -1.0, 1e-10);
}

TEST(DecayFit, TransientDetectionAndDefaultWindow) {
  const auto pure = synthetic(grid_times(0, 100, 401), [](double t) { return std::pow(1 + t, -0.5); });
  EXPECT_EQ(detect_transient(pure), 0.0);
  const auto w = default_fit_window(pure, 100.0);
  EXPECT_DOUBLE_EQ(w.first, 10.0);
  EXPECT_DOUBLE_EQ(w.second, 90.0);

  // An exponential head bends the log-log curve until it dies out near t = 10.
  const auto bent = synthetic(grid_times(0, 200, 801),
                              [](double t) { return std::pow(1 + t, -0.5) + 5.0 * std::exp(-t); });
  const double tr = detect_transient(bent);
  EXPECT_GT(tr, 2.0);
  EXPECT_LT(tr, 20.0);
  EXPECT_DOUBLE_EQ(default_fit_window(bent, 200.0).first, std::max(10.0, 5.0 * tr));
}

}  // namespace
}  // namespace nsas
