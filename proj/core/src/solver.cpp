#include "nsas/solver.hpp"

#include <cmath>
#include <cstdio>

#include "nsas/error.hpp"
#include "nsas/nonlinearity.hpp"
#include "nsas/spectral.hpp"
#include "nsas/symbol.hpp"

namespace nsas {

TimeScheme parse_scheme(const std::string& text) {
  if (text == "etd2" || text == "ETD2") return TimeScheme::etd2;
  if (text == "etdrk2" || text == "ETD-RK2" || text == "etd-rk2") return TimeScheme::etdrk2;
  throw ParameterError("unknown time scheme '" + text + "'");
}

std::string scheme_name(TimeScheme scheme) { return scheme == TimeScheme::etd2 ? "etd2" : "etdrk2"; }

double dt_max(const Grid& grid, const FluidParams& params, double m_sup) {
  const double q = grid.max_wavenumber();
  if (!(q > 0.0)) throw ParameterError("dt_max: grid has no nonzero wavenumber");
  return 0.5 / ((params.gamma + m_sup) * q);
}

double dt_max(const StateField& u) {
  double m_sup = 0.0;
  for (std::size_t i = 0; i < u.grid.points(); ++i) {
    const double m = std::sqrt(u.u[1][i] * u.u[1][i] + u.u[2][i] * u.u[2][i] + u.u[3][i] * u.u[3][i]);
    m_sup = std::max(m_sup, m);
  }
  return dt_max(u.grid, u.params, m_sup);
}

std::pair<std::int64_t, double> plan_steps(double t_end, double dt) {
  if (!(dt > 0.0)) throw ParameterError("dt must be positive");
  if (!(t_end >= 0.0)) throw ParameterError("t_end must be non-negative");
  if (t_end == 0.0) return {0, dt};
  const auto n = std::int64_t(std::ceil(t_end / dt * (1.0 - 1e-12)));
  return {n, t_end / double(n)};
}

EtdIntegrator::EtdIntegrator(const Grid& grid, const LinearCoefficients& coeffs, double dt, TimeScheme scheme,
                             bool dealias)
    : grid_(grid), dt_(dt), scheme_(scheme) {
  if (!(dt > 0.0)) throw ParameterError("EtdIntegrator: dt must be positive");
  grid.for_each_mode([&](std::size_t idx, const auto&, double, const std::array<int, 3>& j) {
    const bool keep = dealias ? grid.in_dealias_band(j[0], j[1], j[2]) : !grid.has_nyquist(j[0], j[1], j[2]);
    if (keep) active_.push_back(idx);
  });
  const auto n = std::ptrdiff_t(active_.size());
  e_.resize(active_.size());
  hphi1_.resize(active_.size());
  hphi2_.resize(active_.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto q = grid.mode_wavevector(active_[std::size_t(k)]);
    if (q[0] == 0.0 && q[1] == 0.0 && q[2] == 0.0) {
      e_[k] = Matrix4c::Identity();
      hphi1_[k] = dt * Matrix4c::Identity();
      hphi2_[k] = 0.5 * dt * Matrix4c::Identity();
      continue;
    }
    const PhiFunctions f = phi_functions(Matrix4c(-dt * symbol_entries(q, coeffs)));
    e_[k] = f.e;
    hphi1_[k] = dt * f.phi1;
    hphi2_[k] = dt * f.phi2;
  }
}

namespace {

Vector4c gather(const ComponentSpectra& s, std::size_t i) {
  return Vector4c(s[0][i], s[1][i], s[2][i], s[3][i]);
}

void scatter(ComponentSpectra& s, std::size_t i, const Vector4c& v) {
  for (int c = 0; c < kComponents; ++c) s[c][i] = v(c);
}

void project(ComponentSpectra& u, const std::vector<std::size_t>& active, std::size_t modes) {
  std::vector<char> mask(modes, 0);
  for (auto i : active) mask[i] = 1;
  for (auto& c : u)
    for (std::size_t i = 0; i < modes; ++i)
      if (!mask[i]) c[i] = 0.0;
}

}  // namespace

void EtdIntegrator::advance(ComponentSpectra& u, const SourceFn& source) {
  for (const auto& c : u)
    if (c.size() != grid_.modes()) throw ShapeError("EtdIntegrator: spectrum size mismatch");
  const auto n = std::ptrdiff_t(active_.size());
  const ComponentSpectra n0 = source(u);

  if (scheme_ == TimeScheme::etd2 && has_previous_) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      const std::size_t i = active_[std::size_t(k)];
      const Vector4c cur = gather(n0, i);
      const Vector4c v = e_[k] * gather(u, i) + (hphi1_[k] + hphi2_[k]) * cur - hphi2_[k] * gather(previous_, i);
      scatter(u, i, v);
    }
    previous_ = n0;
    project(u, active_, grid_.modes());
    return;
  }

  ComponentSpectra a = u;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const std::size_t i = active_[std::size_t(k)];
    scatter(a, i, Vector4c(e_[k] * gather(u, i) + hphi1_[k] * gather(n0, i)));
  }
  project(a, active_, grid_.modes());
  const ComponentSpectra n1 = source(a);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const std::size_t i = active_[std::size_t(k)];
    scatter(a, i, Vector4c(gather(a, i) + hphi2_[k] * (gather(n1, i) - gather(n0, i))));
  }
  u = std::move(a);
  if (scheme_ == TimeScheme::etd2) {
    previous_ = n0;
    has_previous_ = true;
  }
}

SourceFn navier_stokes_source(const Grid& grid, const FluidParams& params, bool dealias) {
  return [grid, params, dealias](const ComponentSpectra& u) { return nonlinear_source(grid, params, u, dealias); };
}

namespace {

double resolve_dt(const StateField& u0, const SolverConfig& cfg) {
  if (cfg.dt > 0.0) return cfg.dt;
  if (cfg.dt < 0.0) throw ParameterError("dt must be positive (or 0 for the default)");
  return 0.8 * dt_max(u0);
}

void check_finite(const ComponentSpectra& u, std::int64_t step) {
  for (const auto& c : u)
    for (const auto& v : c)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw DivergenceError("non-finite values after step " + std::to_string(step), step);
}

}  // namespace

Solver::Solver(const StateField& u0, const SolverConfig& cfg)
    : grid_(u0.grid),
      params_(u0.params),
      cfg_(cfg),
      total_steps_(plan_steps(cfg.t_end - u0.time, resolve_dt(u0, cfg)).first),
      integrator_(u0.grid, u0.params.linear(), plan_steps(cfg.t_end - u0.time, resolve_dt(u0, cfg)).second, cfg.scheme,
                  cfg.dealias),
      source_(navier_stokes_source(u0.grid, u0.params, cfg.dealias)),
      u_hat_(u0.spectra()),
      time_(u0.time) {
  if (grid_.is_reduced()) throw ShapeError("the nonlinear solver needs a full grid");
  params_.require_positive_alpha();
  const double requested = resolve_dt(u0, cfg);
  if (requested > dt_max(u0) * (1.0 + 1e-12))
    throw ParameterError("dt = " + std::to_string(requested) + " exceeds the stability bound " +
                         std::to_string(dt_max(u0)));
  u0.check_finite();
  u0.check_vacuum(kVacuumMargin);
}

void Solver::advance() {
  integrator_.advance(u_hat_, source_);
  ++steps_;
  check_finite(u_hat_, steps_);
  time_ = steps_ == total_steps_ ? cfg_.t_end : time_ + integrator_.dt();
}

StateField Solver::state() const { return StateField::from_spectra(grid_, u_hat_, params_, time_); }

StateField step(const StateField& u, const SolverConfig& cfg) {
  SolverConfig one = cfg;
  one.dt = resolve_dt(u, cfg);
  one.t_end = u.time + one.dt;
  one.scheme = TimeScheme::etdrk2;
  Solver s(u, one);
  s.advance();
  return s.state();
}

StateField run(const StateField& u0, const SolverConfig& cfg, const DiagnosticSink& sink) {
  if (cfg.t_end == u0.time) {
    if (sink) sink(u0, 0);
    return u0;
  }
  Solver solver(u0, cfg);
  const std::int64_t stride = std::max<std::int64_t>(1, cfg.diagnostics_stride);
  if (sink) sink(u0, 0);
  while (solver.steps() < solver.total_steps()) {
    solver.advance();
    const std::int64_t n = solver.steps();
    const bool last = n == solver.total_steps();
    const bool sample = sink && (n % stride == 0 || last);
    const bool checkpoint = cfg.checkpoint_stride > 0 && !cfg.checkpoint_dir.empty() && n % cfg.checkpoint_stride == 0;
    if (!sample && !checkpoint) continue;
    const StateField u = solver.state();
    u.check_vacuum(kVacuumMargin);
    if (sample) sink(u, n);
    if (checkpoint) {
      char name[64];
      std::snprintf(name, sizeof name, "checkpoint_%08lld.bin", static_cast<long long>(n));
      write_checkpoint(cfg.checkpoint_dir / name, u);
    }
  }
  return solver.state();
}

}  // namespace nsas
