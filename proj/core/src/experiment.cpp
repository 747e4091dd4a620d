#include "nsas/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <ostream>
#include <sstream>

#include <omp.h>

#include "nsas/diagnostics.hpp"
#include "nsas/error.hpp"
#include "nsas/initial_data.hpp"
#include "nsas/nonlinearity.hpp"
#include "nsas/profile.hpp"
#include "nsas/semigroup.hpp"
#include "nsas/series_csv.hpp"
#include "nsas/solver.hpp"
#include "nsas/spectral.hpp"
#include "nsas/stamp.hpp"
#include "nsas/symbol.hpp"
#include "nsas/threads.hpp"

namespace nsas {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string interval(double lo, double hi) { return "[" + fmt(lo) + ", " + fmt(hi) + "]"; }

CriterionResult within(const std::string& name, double value, double target, double tol, const std::string& detail) {
  return {name, std::abs(value - target) <= tol, value, interval(target - tol, target + tol), detail};
}

CriterionResult at_most(const std::string& name, double value, double bound, const std::string& detail) {
  return {name, value <= bound, value, "<= " + fmt(bound), detail};
}

CriterionResult at_least(const std::string& name, double value, double bound, const std::string& detail) {
  return {name, value >= bound, value, ">= " + fmt(bound), detail};
}

std::string fit_detail(const DecayFit& f) {
  std::ostringstream os;
  os << decay_model_name(f.model) << " fit over " << interval(f.window.first, f.window.second) << ", "
     << f.samples << " samples, residual_rms " << fmt(f.residual_rms) << ", dropped " << f.dropped;
  return os.str();
}

std::vector<double> column(const std::vector<std::vector<double>>& rows, std::size_t c) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

std::size_t column_index(const std::vector<std::string>& cols, const std::string& name) {
  for (std::size_t i = 0; i < cols.size(); ++i)
    if (cols[i] == name) return i;
  throw DataError("unknown column " + name);
}

SolverConfig solver_config(const ExperimentConfig& cfg, double t_end, const std::filesystem::path& out_dir) {
  SolverConfig sc;
  sc.dt = cfg.dt;
  sc.t_end = t_end;
  sc.dealias = cfg.dealias;
  sc.scheme = cfg.scheme;
  sc.checkpoint_stride = cfg.checkpoint_stride;
  sc.diagnostics_stride = cfg.diagnostics_stride;
  if (!out_dir.empty()) sc.checkpoint_dir = out_dir;
  return sc;
}

InitialDataSpec initial_spec(const ExperimentConfig& cfg) {
  return {cfg.seed, cfg.epsilon, cfg.band, cfg.envelope_width};
}

ComponentSpectra subtract(const ComponentSpectra& a, const ComponentSpectra& b) {
  ComponentSpectra d = a;
  for (int c = 0; c < kComponents; ++c)
    for (std::size_t i = 0; i < d[c].size(); ++i) d[c][i] -= b[c][i];
  return d;
}

/// Profile series row plus energy bookkeeping.
struct ProfileTracker {
  EnergyAccumulator energy;
  SupFunctionalTracker m0{SupKind::M0};

  std::vector<double> row(const Grid& grid, const FluidParams& params, const ComponentSpectra& eta, double t) {
    const auto norms = derivative_norms(grid, eta);
    const EnergyRecord& e = energy.add(grid, params, eta, t);
    const double m = m0.update(t, norms[0], norms[1]);
    return {t, norms[0], norms[1], e.eta_H2_sq, e.N_t, m};
  }
};

}  // namespace

std::string status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::pass:
      return "PASS";
    case VerdictStatus::fail:
      return "FAIL";
    case VerdictStatus::error:
      return "ERROR";
  }
  return "?";
}

void ExperimentReport::finalize() {
  if (status == VerdictStatus::error) return;
  status = VerdictStatus::pass;
  for (const auto& c : criteria)
    if (!c.pass) status = VerdictStatus::fail;
}

const CriterionResult* ExperimentReport::find(const std::string& name) const {
  for (const auto& c : criteria)
    if (c.name == name) return &c;
  return nullptr;
}

int exit_code(const ExperimentReport& r) {
  switch (r.status) {
    case VerdictStatus::pass:
      return 0;
    case VerdictStatus::fail:
      return 1;
    case VerdictStatus::error:
      return 2;
  }
  return 2;
}

DecayFit fit_column(const std::vector<double>& t, const std::vector<double>& v, const std::string& label,
                    DecayModel model, std::pair<double, double> window) {
  std::vector<double> tt, vv;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!std::isnan(v[i])) {
      tt.push_back(t[i]);
      vv.push_back(v[i]);
    }
  return fit_decay(DecaySeries::make(tt, vv, label), model, window);
}

double default_t_end(const ExperimentConfig& cfg) {
  if (cfg.t_end >= 0.0) return cfg.t_end;
  if (cfg.ell == 3) return 20.0;
  return cfg.domain().wrap_horizon(cfg.fluid().gamma);
}

SimulationOutput simulate(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
  const DomainSpec domain = cfg.domain();
  const FluidParams params = cfg.fluid();
  params.require_positive_alpha();
  const StateField u0 = make_initial_data(domain, params, initial_spec(cfg));
  const Grid& grid = u0.grid;
  const bool has_profile = domain.ell < 3;
  const Grid red = grid.reduced();

  SimulationOutput out;
  out.t_end = default_t_end(cfg);
  out.horizon = domain.wrap_horizon(params.gamma);
  out.periodic_volume = grid.periodic_volume();

  const SolverConfig sc = solver_config(cfg, out.t_end, out_dir);
  Solver ns(u0, sc);
  out.dt = ns.dt();

  const AverageSplitNorms split0 = split_average_norms(grid, ns.spectra());
  std::optional<ProfileSolver> prof;
  if (has_profile) {
    SolverConfig pc = sc;
    pc.dt = ns.dt();
    prof.emplace(StateField::from_spectra(red, split0.ubar_spectra, params, u0.time), pc);
    if (prof->total_steps() != ns.total_steps()) throw Error("profile and full runs disagree on the step count");
  }

  if (domain.ell == 3) {
    Background bg;
    const double vol = grid.volume();
    bg.phi = ns.spectra()[0][0].real() / vol;
    for (int i = 0; i < 3; ++i) bg.m[i] = ns.spectra()[1 + i][0].real() / vol;
    out.a0 = perturbed_gap(bg, params).a0;
  }

  std::optional<SeriesWriter> writer, pwriter;
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    writer.emplace(out_dir / "series.csv", kNsSeriesColumns);
    if (has_profile) pwriter.emplace(out_dir / "profile_series.csv", kProfileSeriesColumns);
  }

  SupFunctionalTracker m_tracker(domain.ell == 1 ? SupKind::M : domain.ell == 2 ? SupKind::M1 : SupKind::M2, out.a0);
  SupFunctionalTracker n1_tracker(SupKind::N1);
  ProfileTracker ptrack;
  const double vol = grid.volume();
  const Complex phi0 = ns.spectra()[0][0];
  const std::array<Complex, 3> m0{ns.spectra()[1][0], ns.spectra()[2][0], ns.spectra()[3][0]};

  auto sample = [&](double t) {
    const ComponentSpectra& s = ns.spectra();
    const auto norms = derivative_norms(grid, s);
    const AverageSplitNorms split = split_average_norms(grid, s);
    out.mean_phi_drift = std::max(out.mean_phi_drift, std::abs(s[0][0] - phi0) / vol);
    for (int i = 0; i < 3; ++i) out.mean_m_drift = std::max(out.mean_m_drift, std::abs(s[1 + i][0] - m0[i]) / vol);
    std::vector<double> row = {t, norms[0], norms[1], norms[2], norms[3], norms[4], split.l2_tilde, split.h1_tilde,
                               kNaN, kNaN, kNaN, kNaN};
    if (has_profile) {
      const ComponentSpectra diff = subtract(split.ubar_spectra, prof->spectra());
      row[8] = state_sobolev_norm(red, diff, 0);
      row[9] = state_sobolev_norm(red, diff, 1);
      row[10] = m_tracker.update(t, norms[0], norms[1]);
      row[11] = n1_tracker.update(t, row[9]);
      out.profile_rows.push_back(ptrack.row(red, params, prof->spectra(), t));
      if (pwriter) pwriter->write_row(out.profile_rows.back());
    } else {
      row[10] = m_tracker.update(t, split.h1_tilde);
    }
    out.rows.push_back(row);
    if (writer) writer->write_row(row);
  };

  sample(u0.time);
  const std::int64_t stride = std::max<std::int64_t>(1, cfg.diagnostics_stride);
  while (ns.steps() < ns.total_steps()) {
    ns.advance();
    if (prof) prof->advance();
    const std::int64_t n = ns.steps();
    if (prof && std::abs(prof->time() - ns.time()) > 1e-12 * std::max(1.0, ns.time()))
      throw AlignmentError("profile and full runs drifted apart in time");
    const bool last = n == ns.total_steps();
    if (n % stride == 0 || last) {
      sample(ns.time());
      ns.state().check_vacuum(kVacuumMargin);
    }
    if (cfg.checkpoint_stride > 0 && !out_dir.empty() && n % cfg.checkpoint_stride == 0) {
      char name[64];
      std::snprintf(name, sizeof name, "checkpoint_%08lld.bin", static_cast<long long>(n));
      write_checkpoint(out_dir / name, ns.state());
    }
  }
  return out;
}

SimulationOutput simulate_profile(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
  const DomainSpec domain = cfg.domain();
  if (domain.ell == 3) throw ConfigError("the profile system needs ell = 1 or 2");
  const FluidParams params = cfg.fluid();
  const StateField u0 = make_initial_data(domain, params, initial_spec(cfg));
  const Grid red = u0.grid.reduced();
  const AverageSplitNorms split0 = split_average_norms(u0.grid, u0.spectra());
  const StateField eta0 = StateField::from_spectra(red, split0.ubar_spectra, params, 0.0);

  SimulationOutput out;
  out.t_end = default_t_end(cfg);
  out.horizon = domain.wrap_horizon(params.gamma);
  out.periodic_volume = u0.grid.periodic_volume();
  ProfileSolver prof(eta0, solver_config(cfg, out.t_end, {}));
  out.dt = prof.dt();

  std::optional<SeriesWriter> writer;
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    writer.emplace(out_dir / "series.csv", kProfileSeriesColumns);
  }
  ProfileTracker ptrack;
  const Complex sigma0 = prof.spectra()[0][0];
  auto sample = [&](double t) {
    out.profile_rows.push_back(ptrack.row(red, params, prof.spectra(), t));
    out.mean_phi_drift = std::max(out.mean_phi_drift, std::abs(prof.spectra()[0][0] - sigma0) / red.volume());
    if (writer) writer->write_row(out.profile_rows.back());
  };
  sample(0.0);
  const std::int64_t stride = std::max<std::int64_t>(1, cfg.diagnostics_stride);
  while (prof.steps() < prof.total_steps()) {
    prof.advance();
    if (prof.steps() % stride == 0 || prof.steps() == prof.total_steps()) sample(prof.time());
  }
  return out;
}

std::vector<std::vector<double>> symbol_sweep_rows(const LinearCoefficients& coeffs, double p_max, int samples) {
  if (!(p_max > 0.0) || samples < 2) throw ParameterError("symbol sweep needs p_max > 0 and at least 2 samples");
  std::vector<std::vector<double>> rows;
  const double lo = std::log(p_max * 1e-8), hi = std::log(p_max);
  for (int i = 0; i < samples; ++i) {
    const double p = i + 1 == samples ? p_max : std::exp(lo + (hi - lo) * i / (samples - 1));
    const EigenSet e = symbol_eigenvalues(p, coeffs);
    rows.push_back({p, e.lambda1.real(), e.lambda_plus.real(), e.lambda_plus.imag(), e.lambda_minus.real(),
                    e.lambda_minus.imag(), e.discriminant(coeffs)});
  }
  return rows;
}

namespace {

using Rows = std::vector<std::vector<double>>;

std::pair<double, double> fit_window(const ExperimentConfig& cfg, const std::string& name,
                                     const std::vector<double>& t, const std::vector<double>& v, double horizon) {
  if (cfg.has_window(name)) return cfg.window(name, {});
  std::vector<double> tt, vv;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!std::isnan(v[i])) {
      tt.push_back(t[i]);
      vv.push_back(v[i]);
    }
  return default_fit_window(DecaySeries::make(tt, vv, name), horizon);
}

void add_slope(ExperimentReport& rep, const ExperimentConfig& cfg, const std::string& name,
               const std::vector<double>& t, const std::vector<double>& v, double horizon, double target,
               double tol, bool one_sided, DecayModel model = DecayModel::power) {
  const auto window = fit_window(cfg, name, t, v, horizon);
  const DecayFit f = fit_column(t, v, name, model, window);
  const double tgt = cfg.threshold("target." + name, target);
  const double tl = cfg.threshold("tol." + name, tol);
  std::string detail = fit_detail(f);
  if (model != DecayModel::power) {
    const DecayFit plain = fit_column(t, v, name, DecayModel::power, window);
    detail += "; power model on the same window gives " + fmt(plain.exponent_or_rate);
  }
  rep.criteria.push_back(one_sided ? at_most("slope." + name, f.exponent_or_rate, tgt + tl, detail)
                                   : within("slope." + name, f.exponent_or_rate, tgt, tl, detail));
}

void theorem_fits(ExperimentReport& rep, const ExperimentConfig& cfg, const SimulationOutput& sim) {
  const auto& cols = kNsSeriesColumns;
  const auto t = column(sim.rows, 0);
  const double ell = cfg.ell;
  const double base = -(3.0 - ell) / 4.0;
  add_slope(rep, cfg, "L2_u", t, column(sim.rows, column_index(cols, "L2_u")), sim.horizon, base,
            ell == 1 ? 0.15 : 0.1, false);
  add_slope(rep, cfg, "L2_du", t, column(sim.rows, column_index(cols, "L2_du")), sim.horizon, base - 0.5,
            ell == 1 ? 0.2 : 0.15, false);

  std::vector<double> dist;
  const auto l2t = column(sim.rows, column_index(cols, "L2_tilde"));
  const auto l2d = column(sim.rows, column_index(cols, "L2_ubar_minus_eta"));
  for (std::size_t i = 0; i < t.size(); ++i) dist.push_back(full_profile_distance(l2t[i], l2d[i], sim.periodic_volume));
  if (ell == 1) {
    add_slope(rep, cfg, "u_minus_eta", t, dist, sim.horizon, -1.0, 0.2, true);
    for (int k = 2; k <= 4; ++k) {
      const std::string name = "L2_d" + std::to_string(k) + "u";
      add_slope(rep, cfg, name, t, column(sim.rows, column_index(cols, name)), sim.horizon, -(4.0 - k) / 3.0, 0.15,
                true);
    }
  } else {
    add_slope(rep, cfg, "u_minus_eta", t, dist, sim.horizon, -0.75, 0.15, false, DecayModel::power_log);
  }
  const double m_final = sim.rows.back()[column_index(cols, "M_t")];
  rep.criteria.push_back(at_most(ell == 1 ? "M_over_eps" : "M1_over_eps", m_final / cfg.epsilon,
                                 cfg.threshold("M_over_eps", 10.0), "running supremum at the final sample / epsilon"));
}

void theorem3_checks(ExperimentReport& rep, const ExperimentConfig& cfg, const SimulationOutput& sim) {
  const auto& cols = kNsSeriesColumns;
  const auto t = column(sim.rows, 0);
  const auto h1 = column(sim.rows, column_index(cols, "H1_tilde"));
  rep.criteria.push_back(at_most("mean_phi_drift", sim.mean_phi_drift, cfg.threshold("mean_phi_drift", 1e-12),
                                 "max |mean phi(t) - mean phi(0)|; mean m drift " + fmt(sim.mean_m_drift)));
  const auto window = cfg.window("H1_tilde", {2.0, sim.t_end});
  const DecayFit f = fit_column(t, h1, "H1_tilde", DecayModel::exponential, window);
  const double factor = cfg.threshold("rate_factor", 0.9);
  rep.criteria.push_back(at_least("rate.H1_tilde", f.exponent_or_rate, factor * sim.a0,
                                  fit_detail(f) + "; a0 = " + fmt(sim.a0)));
  const double m2 = sim.rows.back()[column_index(cols, "M_t")];
  rep.criteria.push_back(at_most("M2_over_eps", m2 / cfg.epsilon, cfg.threshold("M2_over_eps", 10.0),
                                 "sup exp(a0 t) ||u_tilde||_H1 / epsilon"));
}

void profile_checks(ExperimentReport& rep, const ExperimentConfig& cfg, const SimulationOutput& sim) {
  const auto& cols = kProfileSeriesColumns;
  const auto t = column(sim.profile_rows, 0);
  double n_max = 0.0;
  for (const auto& r : sim.profile_rows) n_max = std::max(n_max, r[column_index(cols, "N_t")]);
  const double eps2 = cfg.epsilon * cfg.epsilon;
  rep.criteria.push_back(at_most("N_over_eps_sq", n_max / eps2, cfg.threshold("N_over_eps_sq", 10.0),
                                 "max N(t) / epsilon^2"));
  const double m0 = sim.profile_rows.back()[column_index(cols, "M0_t")];
  rep.criteria.push_back(
      at_most("M0_over_eps", m0 / cfg.epsilon, cfg.threshold("M0_over_eps", 10.0), "running supremum / epsilon"));
  rep.criteria.push_back(at_most("mean_sigma_drift", sim.mean_phi_drift, cfg.threshold("mean_sigma_drift", 1e-12),
                                 "max |mean sigma(t) - mean sigma(0)|"));
  const double base = -(3.0 - cfg.ell) / 4.0;
  add_slope(rep, cfg, "L2_eta", t, column(sim.profile_rows, 1), sim.horizon, base, 0.1, false);
  add_slope(rep, cfg, "L2_dy_eta", t, column(sim.profile_rows, 2), sim.horizon, base - 0.5, 0.15, false);
}

void lemma21(ExperimentReport& rep, const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
  const DomainSpec domain = cfg.domain();
  const FluidParams params = cfg.fluid();
  const LinearCoefficients lin = params.linear();
  const StateField u0 = make_initial_data(domain, params, initial_spec(cfg));
  const Grid& grid = u0.grid;
  const double r0_sq = cfg.effective_r0_sq();
  const GapReport gap = spectral_gap(r0_sq, lin);
  const double a0 = cfg.threshold("a0_fraction", 0.5) * gap.a;
  const SpectraSplit parts = split_spectra(grid, u0.spectra(), std::sqrt(r0_sq));

  struct Mode {
    std::size_t idx;
    double p;
    double weight;
    Matrix4c step;
    Vector4c low, high;
  };
  std::vector<Mode> modes;
  grid.for_each_mode([&](std::size_t idx, const std::array<double, 3>& q, double w, const auto&) {
    Vector4c lo, hi;
    bool any = false;
    for (int c = 0; c < kComponents; ++c) {
      lo(c) = parts.low[c][idx];
      hi(c) = parts.high[c][idx];
      any = any || lo(c) != Complex(0.0) || hi(c) != Complex(0.0);
    }
    if (!any) return;
    modes.push_back({idx, q[0] * q[0] + q[1] * q[1] + q[2] * q[2], w, Matrix4c::Zero(), lo, hi});
  });
  const double dt = cfg.sample_interval;
  const auto nm = std::ptrdiff_t(modes.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t k = 0; k < nm; ++k)
    modes[k].step = propagator(grid.mode_wavevector(modes[k].idx), lin, dt);

  const double horizon = domain.wrap_horizon(params.gamma);
  const double t_end = cfg.t_end >= 0.0 ? cfg.t_end : horizon;
  const auto steps = std::int64_t(std::floor(t_end / dt + 1e-9));
  std::optional<SeriesWriter> writer;
  if (!out_dir.empty()) writer.emplace(out_dir / "series.csv", std::vector<std::string>{"t", "L2_low", "L2_dy_low", "L2_high"});
  std::vector<double> ts, low0, low1, high0;
  const double vol = grid.volume();
  for (std::int64_t n = 0; n <= steps; ++n) {
    if (n > 0)
      for (auto& m : modes) {
        m.low = m.step * m.low;
        m.high = m.step * m.high;
      }
    double l0 = 0.0, l1 = 0.0, h0 = 0.0;
    for (const auto& m : modes) {
      const double el = m.low.squaredNorm(), eh = m.high.squaredNorm();
      l0 += m.weight * el;
      l1 += m.weight * m.p * el;
      h0 += m.weight * eh;
    }
    const double t = double(n) * dt;
    ts.push_back(t);
    low0.push_back(std::sqrt(l0 / vol));
    low1.push_back(std::sqrt(l1 / vol));
    high0.push_back(std::sqrt(h0 / vol));
    if (writer) writer->write_row({t, low0.back(), low1.back(), high0.back()});
  }
  const double base = -(3.0 - cfg.ell) / 4.0;
  const auto window = cfg.window("low", {10.0, 0.9 * horizon});
  for (int j = 0; j <= 1; ++j) {
    const std::string name = "low_j" + std::to_string(j);
    const DecayFit f = fit_column(ts, j == 0 ? low0 : low1, name, DecayModel::power, cfg.window(name, window));
    rep.criteria.push_back(within("slope." + name, f.exponent_or_rate, base - 0.5 * j,
                                  cfg.threshold("tol.low", 0.1), fit_detail(f)));
  }
  const DecayFit fh = fit_column(ts, high0, "high", DecayModel::exponential, cfg.window("high", {0.0, 0.9 * horizon}));
  rep.criteria.push_back(at_least("rate.high", fh.exponent_or_rate, cfg.threshold("rate_factor", 0.95) * a0,
                                  fit_detail(fh) + "; a = " + fmt(gap.a) + ", a0 = " + fmt(a0)));
}

void symbol_sweep(ExperimentReport& rep, const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
  const LinearCoefficients lin = cfg.linear();
  const auto rows = symbol_sweep_rows(lin, cfg.p_max, cfg.samples);
  if (!out_dir.empty()) {
    SeriesWriter w(out_dir / "symbol.csv", kSymbolColumns);
    for (const auto& r : rows) w.write_row(r);
  }
  const double limit = lin.gamma * lin.gamma / (lin.nu1 + lin.nu2);
  rep.criteria.push_back(at_most("lambda_minus_asymptote", std::abs(rows.back()[4] - limit),
                                 cfg.threshold("asymptote_tol", 1e-5),
                                 "|Re lambda-(p_max) - gamma^2/(nu1+nu2)| with limit " + fmt(limit)));
  double vieta = 0.0;
  for (const auto& r : rows) {
    const double p = r[0];
    const EigenSet e = symbol_eigenvalues(p, lin);
    const double sum = (lin.nu1 + lin.nu2) * p, prod = lin.gamma * lin.gamma * p;
    vieta = std::max(vieta, std::abs(e.lambda_plus + e.lambda_minus - sum) / sum);
    vieta = std::max(vieta, std::abs(e.lambda_plus * e.lambda_minus - prod) / prod);
  }
  rep.criteria.push_back(at_most("vieta_relative", vieta, cfg.threshold("vieta", 1e-12), "sum and product identities"));
}

/// Relative L2 distance between two states on the same grid.
double relative_distance(const StateField& a, const StateField& b) {
  double num = 0.0, den = 0.0;
  for (int c = 0; c < kComponents; ++c)
    for (std::size_t i = 0; i < a.u[c].size(); ++i) {
      const double d = a.u[c][i] - b.u[c][i];
      num += d * d;
      den += b.u[c][i] * b.u[c][i];
    }
  return std::sqrt(num / den);
}

void solver_gates(ExperimentReport& rep, const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
  const FluidParams params = cfg.fluid();

  // Self-convergence on a small periodic problem.
  {
    const DomainSpec d = DomainSpec::make(3, {16, 16, 16}, kTwoPi);
    const StateField u0 = make_initial_data(d, params, {cfg.seed, cfg.threshold("convergence_eps", 50.0), 2, 1.0});
    const double t_end = cfg.threshold("convergence_t_end", 0.5);
    std::vector<StateField> finals;
    for (double dt : {1e-2, 5e-3, 2.5e-3}) {
      SolverConfig sc;
      sc.dt = dt;
      sc.t_end = t_end;
      sc.scheme = cfg.scheme;
      finals.push_back(run(u0, sc));
    }
    const double e1 = relative_distance(finals[0], finals[1]);
    const double e2 = relative_distance(finals[1], finals[2]);
    const double ratio = e1 / e2;
    const double tol = cfg.threshold("order_factor", 1.5);
    CriterionResult r{"convergence_ratio", ratio >= 4.0 / tol && ratio <= 4.0 * tol, ratio,
                      interval(4.0 / tol, 4.0 * tol),
                      "e(dt)/e(dt/2) with e(1e-2) = " + fmt(e1) + ", e(5e-3) = " + fmt(e2) + ", observed order " +
                          fmt(std::log2(ratio))};
    rep.criteria.push_back(r);
  }

  // Linear regime: one nonlinear step against the exact semigroup.
  {
    const DomainSpec d = DomainSpec::make(3, {16, 16, 16}, kTwoPi);
    const StateField u0 = make_initial_data(d, params, {cfg.seed, 1e-8, 2, 1.0});
    SolverConfig sc;
    const StateField stepped = step(u0, sc);
    const StateField exact = semigroup_apply(stepped.time - u0.time, u0);
    rep.criteria.push_back(at_most("linear_regime", relative_distance(stepped, exact),
                                   cfg.threshold("linear_regime", 1e-12), "amplitude 1e-8, one default step"));
  }

  // Resolution doubling of the profile run.
  {
    ExperimentConfig coarse = cfg;
    coarse.experiment = ExperimentKind::profile_only;
    const SimulationOutput a = simulate_profile(coarse, {});
    const DomainSpec dc = coarse.domain();
    DomainSpec df = dc;
    for (int ax = coarse.ell; ax < 3; ++ax) df.resolution[ax] *= 2;
    const StateField u0c = make_initial_data(dc, params, initial_spec(coarse));
    const StateField u0f = resample_state(u0c, Grid(df));
    const Grid red = u0f.grid.reduced();
    const StateField eta0 = StateField::from_spectra(red, split_average_norms(u0f.grid, u0f.spectra()).ubar_spectra,
                                                     params, 0.0);
    SolverConfig sc;
    sc.dt = a.dt;
    sc.t_end = a.t_end;
    sc.diagnostics_stride = coarse.diagnostics_stride;
    std::vector<std::array<double, 3>> fine;
    EnergyAccumulator energy;
    profile_run(eta0, sc, [&](const StateField& s, std::int64_t) {
      const auto sp = s.spectra();
      const auto n = derivative_norms(red, sp);
      const double h2 = state_sobolev_norm(red, sp, 2);
      fine.push_back({n[0], n[1], h2 * h2});
    });
    double worst = 0.0;
    if (fine.size() != a.profile_rows.size()) throw Error("resolution doubling produced different sample counts");
    for (std::size_t i = 0; i < fine.size(); ++i)
      for (int c = 0; c < 3; ++c)
        worst = std::max(worst, std::abs(fine[i][c] - a.profile_rows[i][1 + c]) / std::abs(a.profile_rows[i][1 + c]));
    rep.criteria.push_back(at_most("resolution_doubling", worst, cfg.threshold("resolution_doubling", 1e-6),
                                   "max relative change of L2_eta, L2_dy_eta, H2_eta_sq"));
  }

  // Transform round trip and Parseval.
  {
    const DomainSpec d = DomainSpec::make(1, {8, 32, 32}, 20.0);
    const Grid g(d);
    std::mt19937_64 rng(cfg.seed);
    RealArray f(g.points());
    for (double& v : f) v = double(rng() >> 11) * 0x1.0p-53 - 0.5;
    const ComplexArray s = forward_transform(g, f);
    const RealArray back = inverse_transform(g, s);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      num += (back[i] - f[i]) * (back[i] - f[i]);
      den += f[i] * f[i];
    }
    rep.criteria.push_back(at_most("round_trip", std::sqrt(num / den), 1e-12, "random field, relative L2"));
    // Parseval needs the Nyquist modes, which the Sobolev norm keeps.
    const double l2 = lebesgue_norm(g, f, 2.0);
    const double h0 = std::sqrt(weighted_energy(g, s, [](double) { return 1.0; }));
    rep.criteria.push_back(at_most("parseval", std::abs(l2 - h0) / l2, 1e-12, "random field"));
  }

  // Byte-identical reruns, including a different thread count.
  {
    ExperimentConfig small = cfg;
    small.experiment = ExperimentKind::theorem1;
    small.ell = 1;
    small.resolution = {8, 32, 32};
    small.box_length = 20.0 * std::numbers::pi;
    small.t_end = 2.0;
    small.diagnostics_stride = 5;
    small.checkpoint_stride = 0;
    const std::string first = format_csv(kNsSeriesColumns, simulate(small, {}).rows);
    const std::string second = format_csv(kNsSeriesColumns, simulate(small, {}).rows);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(saved == 1 ? 2 : 1);
    const std::string third = format_csv(kNsSeriesColumns, simulate(small, {}).rows);
    omp_set_num_threads(saved);
    const bool same = first == second && first == third;
    rep.criteria.push_back({"byte_identical", same, same ? 1.0 : 0.0, "identical",
                            "sha256 " + sha256_hex(first).substr(0, 16) + " / " + sha256_hex(third).substr(0, 16)});
  }
  (void)out_dir;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir, std::ostream* log) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport rep;
  rep.kind = cfg.experiment;
  std::string phase = "validate";
  std::string series_bytes;
  try {
    cfg.validate();
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      std::ofstream(out_dir / "config.txt") << cfg.canonical();
    }
    switch (cfg.experiment) {
      case ExperimentKind::theorem1:
      case ExperimentKind::theorem2: {
        phase = "simulate";
        const SimulationOutput sim = simulate(cfg, out_dir);
        phase = "fit";
        theorem_fits(rep, cfg, sim);
        phase = "profile";
        profile_checks(rep, cfg, sim);
        series_bytes = format_csv(kNsSeriesColumns, sim.rows);
        break;
      }
      case ExperimentKind::theorem3: {
        phase = "simulate";
        const SimulationOutput sim = simulate(cfg, out_dir);
        phase = "fit";
        theorem3_checks(rep, cfg, sim);
        series_bytes = format_csv(kNsSeriesColumns, sim.rows);
        break;
      }
      case ExperimentKind::profile_only: {
        phase = "profile";
        const SimulationOutput sim = simulate_profile(cfg, out_dir);
        phase = "fit";
        profile_checks(rep, cfg, sim);
        series_bytes = format_csv(kProfileSeriesColumns, sim.profile_rows);
        break;
      }
      case ExperimentKind::linear_lemma21:
        phase = "semigroup";
        lemma21(rep, cfg, out_dir);
        break;
      case ExperimentKind::symbol_sweep:
        phase = "symbol";
        symbol_sweep(rep, cfg, out_dir);
        break;
      case ExperimentKind::solver_gates:
        phase = "gates";
        solver_gates(rep, cfg, out_dir);
        break;
    }
    rep.finalize();
  } catch (const std::exception& e) {
    rep.status = VerdictStatus::error;
    rep.error_phase = phase;
    rep.error_message = e.what();
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!out_dir.empty()) {
    write_verdict(out_dir / "verdict.txt", rep);
    ReproducibilityStamp stamp;
    stamp.config_hash = sha256_hex(cfg.canonical());
    const auto series = out_dir / "series.csv";
    stamp.series_hash = std::filesystem::exists(series) ? sha256_file(series) : sha256_hex(series_bytes);
    stamp.seed = cfg.seed;
    stamp.build = build_id();
    stamp.threads = thread_count();
    stamp.wall_seconds = rep.wall_seconds;
    write_stamp(out_dir / "stamp.json", stamp);
  }
  if (log) {
    *log << experiment_name(rep.kind) << ": " << status_name(rep.status) << " (" << fmt(rep.wall_seconds) << " s)\n";
    for (const auto& c : rep.criteria)
      *log << "  " << (c.pass ? "PASS" : "FAIL") << "  " << c.name << " = " << fmt(c.value) << "  target " << c.target
           << "  (" << c.detail << ")\n";
    if (rep.status == VerdictStatus::error) *log << "  ERROR in " << rep.error_phase << ": " << rep.error_message << "\n";
  }
  return rep;
}

void write_verdict(const std::filesystem::path& path, const ExperimentReport& r) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("cannot write " + path.string());
  os << "experiment\t" << experiment_name(r.kind) << "\n";
  os << "status\t" << status_name(r.status) << "\n";
  if (r.status == VerdictStatus::error) os << "error\t" << r.error_phase << "\t" << r.error_message << "\n";
  for (const auto& c : r.criteria)
    os << "criterion\t" << (c.pass ? "PASS" : "FAIL") << "\t" << c.name << "\t" << format_csv_value(c.value) << "\t"
       << c.target << "\t" << c.detail << "\n";
}

ExperimentReport read_verdict(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path.string());
  ExperimentReport r;
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> f;
    std::string cur;
    std::istringstream ss(line);
    while (std::getline(ss, cur, '\t')) f.push_back(cur);
    if (f.empty()) continue;
    if (f[0] == "experiment" && f.size() > 1) {
      r.kind = parse_experiment(f[1]);
    } else if (f[0] == "status" && f.size() > 1) {
      r.status = f[1] == "PASS" ? VerdictStatus::pass : f[1] == "FAIL" ? VerdictStatus::fail : VerdictStatus::error;
    } else if (f[0] == "error" && f.size() > 2) {
      r.error_phase = f[1];
      r.error_message = f[2];
    } else if (f[0] == "criterion" && f.size() >= 5) {
      CriterionResult c;
      c.pass = f[1] == "PASS";
      c.name = f[2];
      c.value = f[3].empty() ? kNaN : std::stod(f[3]);
      c.target = f[4];
      if (f.size() > 5) c.detail = f[5];
      r.criteria.push_back(c);
    }
  }
  return r;
}

}  // namespace nsas
