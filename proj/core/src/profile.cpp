#include "nsas/profile.hpp"

#include <cmath>

#include "nsas/error.hpp"
#include "nsas/spectral.hpp"
#include "nsas/symbol.hpp"

namespace nsas {
namespace {

using namespace std::complex_literals;

constexpr int kPair[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};

void require_profile_grid(const Grid& grid, int ell) {
  if (!grid.is_reduced()) throw ShapeError("profile fields live on a reduced grid");
  if (ell > 0 && grid.ell() != ell)
    throw ShapeError("profile system expects ell = " + std::to_string(ell) + ", got " + std::to_string(grid.ell()));
}

void require_sizes(const Grid& grid, const ComponentSpectra& s) {
  for (const auto& c : s)
    if (c.size() != grid.modes()) throw ShapeError("profile spectrum size mismatch");
}

ComponentSpectra to_spectra(const ProfileState& eta) {
  ComponentSpectra s;
  s[0] = forward_transform(eta.grid, eta.sigma);
  for (int i = 0; i < 3; ++i) s[1 + i] = forward_transform(eta.grid, eta.w[i]);
  return s;
}

ProfileState from_spectra(const ProfileState& like, const ComponentSpectra& s) {
  ProfileState out;
  out.grid = like.grid;
  out.params = like.params;
  out.time = like.time;
  out.sigma = inverse_transform(like.grid, s[0]);
  for (int i = 0; i < 3; ++i) out.w[i] = inverse_transform(like.grid, s[1 + i]);
  return out;
}

}  // namespace

ProfileState ProfileState::from_state(const StateField& reduced) {
  require_profile_grid(reduced.grid, 0);
  ProfileState p;
  p.grid = reduced.grid;
  p.params = reduced.params;
  p.time = reduced.time;
  p.sigma = reduced.u[0];
  for (int i = 0; i < 3; ++i) p.w[i] = reduced.u[1 + i];
  return p;
}

StateField ProfileState::to_state() const {
  StateField s;
  s.grid = grid;
  s.params = params;
  s.time = time;
  s.u = {sigma, w[0], w[1], w[2]};
  return s;
}

ComponentSpectra profile_source(const Grid& grid, const FluidParams& params, const ComponentSpectra& eta_hat) {
  require_profile_grid(grid, 0);
  require_sizes(grid, eta_hat);
  ComponentFields eta;
  for (int c = 0; c < kComponents; ++c) eta[c] = inverse_transform(grid, eta_hat[c]);
  const std::size_t n = grid.points();
  std::array<RealArray, 6> ww;
  for (auto& a : ww) a.resize(n);
  RealArray sig2(n);
  for (std::size_t i = 0; i < n; ++i) {
    sig2[i] = eta[0][i] * eta[0][i];
    for (int a = 0; a < 3; ++a)
      for (int b = a; b < 3; ++b) ww[kPair[a][b]][i] = eta[1 + a][i] * eta[1 + b][i];
  }
  std::array<ComplexArray, 6> wwh;
  for (int a = 0; a < 6; ++a) wwh[a] = forward_transform(grid, ww[a]);
  const ComplexArray s2 = forward_transform(grid, sig2);

  ComponentSpectra out;
  for (auto& c : out) c.assign(grid.modes(), Complex(0.0));
  grid.for_each_mode([&](std::size_t idx, const std::array<double, 3>& q, double, const std::array<int, 3>& j) {
    if (!grid.in_dealias_band(j[0], j[1], j[2])) return;
    for (int a = 0; a < 3; ++a) {
      Complex div = 0.0;
      for (int b = 0; b < 3; ++b) div += q[b] * wwh[kPair[a][b]][idx];
      out[1 + a][idx] = -1i * div - 1i * params.alpha * q[a] * s2[idx];
    }
  });
  return out;
}

ComponentSpectra profile_rhs_spectral(const Grid& grid, const FluidParams& params, const ComponentSpectra& eta_hat) {
  ComponentSpectra out = profile_source(grid, params, eta_hat);
  const LinearCoefficients lin = params.linear();
  grid.for_each_mode([&](std::size_t idx, const std::array<double, 3>& q, double, const std::array<int, 3>& j) {
    if (grid.has_nyquist(j[0], j[1], j[2])) {
      for (auto& c : out) c[idx] = 0.0;
      return;
    }
    const Matrix4c l = symbol_entries(q, lin);
    const Vector4c v(eta_hat[0][idx], eta_hat[1][idx], eta_hat[2][idx], eta_hat[3][idx]);
    const Vector4c lv = l * v;
    for (int c = 0; c < kComponents; ++c) out[c][idx] -= lv(c);
  });
  return out;
}

ProfileState profile_rhs_2d(const ProfileState& eta) {
  require_profile_grid(eta.grid, 1);
  ProfileState r = from_spectra(eta, profile_rhs_spectral(eta.grid, eta.params, to_spectra(eta)));
  return r;
}

ProfileState profile_rhs_1d(const ProfileState& eta) {
  require_profile_grid(eta.grid, 2);
  return from_spectra(eta, profile_rhs_spectral(eta.grid, eta.params, to_spectra(eta)));
}

ProfileFlux profile_nonlinearity_flux(const ProfileState& eta) {
  require_profile_grid(eta.grid, 0);
  const std::size_t n = eta.grid.points();
  for (const auto* f : {&eta.sigma, &eta.w[0], &eta.w[1], &eta.w[2]})
    if (f->size() != n) throw ShapeError("profile field size mismatch");
  ProfileFlux flux;
  for (auto& row : flux.b)
    for (auto& e : row) e.assign(n, 0.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (eta.grid.collapsed(j)) continue;
      RealArray& e = flux.b[1 + i][j];
      for (std::size_t k = 0; k < n; ++k) {
        e[k] = -eta.w[i][k] * eta.w[j][k];
        if (i == j) e[k] -= eta.params.alpha * eta.sigma[k] * eta.sigma[k];
      }
    }
  return flux;
}

std::array<RealArray, 4> profile_flux_divergence(const Grid& grid, const ProfileFlux& flux) {
  std::array<RealArray, 4> out;
  for (int c = 0; c < 4; ++c) {
    ComplexArray acc(grid.modes(), Complex(0.0));
    for (int j = 0; j < 3; ++j) {
      if (grid.collapsed(j)) continue;
      ComplexArray t = forward_transform(grid, flux.b[c][j]);
      apply_derivative(grid, t, j, 1);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += t[i];
    }
    out[c] = inverse_transform(grid, acc);
  }
  return out;
}

ProfileSolver::ProfileSolver(const StateField& eta0, const SolverConfig& cfg)
    : grid_(eta0.grid),
      params_(eta0.params),
      t_end_(cfg.t_end),
      total_steps_(plan_steps(cfg.t_end - eta0.time, cfg.dt > 0.0 ? cfg.dt : 0.8 * dt_max(eta0)).first),
      integrator_(eta0.grid, eta0.params.linear(),
                  plan_steps(cfg.t_end - eta0.time, cfg.dt > 0.0 ? cfg.dt : 0.8 * dt_max(eta0)).second, cfg.scheme,
                  true),
      source_([g = eta0.grid, p = eta0.params](const ComponentSpectra& s) { return profile_source(g, p, s); }),
      eta_hat_(eta0.spectra()),
      time_(eta0.time) {
  require_profile_grid(grid_, 0);
  params_.require_positive_alpha();
  eta0.check_finite();
}

void ProfileSolver::advance() {
  integrator_.advance(eta_hat_, source_);
  ++steps_;
  for (const auto& c : eta_hat_)
    for (const auto& v : c)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw DivergenceError("profile solver produced non-finite values at step " + std::to_string(steps_), steps_);
  time_ = steps_ == total_steps_ ? t_end_ : time_ + integrator_.dt();
}

StateField ProfileSolver::state() const { return StateField::from_spectra(grid_, eta_hat_, params_, time_); }

StateField profile_run(const StateField& eta0, const SolverConfig& cfg, const DiagnosticSink& sink) {
  if (cfg.t_end == eta0.time) {
    if (sink) sink(eta0, 0);
    return eta0;
  }
  ProfileSolver solver(eta0, cfg);
  const std::int64_t stride = std::max<std::int64_t>(1, cfg.diagnostics_stride);
  if (sink) sink(eta0, 0);
  while (solver.steps() < solver.total_steps()) {
    solver.advance();
    const std::int64_t n = solver.steps();
    if (sink && (n % stride == 0 || n == solver.total_steps())) sink(solver.state(), n);
  }
  return solver.state();
}

}  // namespace nsas
