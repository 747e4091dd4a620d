#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nsas/config.hpp"
#include "nsas/decay_fit.hpp"
#include "nsas/error.hpp"
#include "nsas/experiment.hpp"
#include "nsas/series_csv.hpp"
#include "nsas/symbol.hpp"
#include "nsas/threads.hpp"
#include "svg_plot.hpp"

namespace fs = std::filesystem;

namespace {

std::pair<double, double> parse_window(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw nsas::ConfigError("window must be written a,b");
  return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

int cmd_analyze_symbol(double nu1, double nu2, double gamma, double p_max, int samples, const fs::path& out) {
  const nsas::LinearCoefficients c{nu1, nu2, gamma};
  c.validate();
  const auto rows = nsas::symbol_sweep_rows(c, p_max, samples);
  nsas::SeriesWriter w(out, nsas::kSymbolColumns);
  for (const auto& r : rows) w.write_row(r);
  std::printf("wrote %zu rows to %s; Re lambda-(p_max) = %.12g, limit gamma^2/(nu1+nu2) = %.12g\n", rows.size(),
              out.c_str(), rows.back()[4], gamma * gamma / (nu1 + nu2));
  return 0;
}

int cmd_simulate(const fs::path& config, const fs::path& out) {
  const nsas::ExperimentConfig cfg = nsas::load_config(config);
  cfg.validate();
  const auto sim = nsas::simulate(cfg, out);
  std::printf("%zu samples, dt = %.6g, t_end = %.6g, T_wrap = %.6g\n", sim.rows.size(), sim.dt, sim.t_end,
              sim.horizon);
  return 0;
}

int cmd_profile(const fs::path& config, const fs::path& out) {
  const nsas::ExperimentConfig cfg = nsas::load_config(config);
  cfg.validate();
  const auto sim = nsas::simulate_profile(cfg, out);
  std::printf("%zu samples, dt = %.6g, t_end = %.6g\n", sim.profile_rows.size(), sim.dt, sim.t_end);
  return 0;
}

int cmd_fit(const fs::path& series, const std::string& column, const std::string& model, const std::string& window) {
  const nsas::CsvTable table = nsas::read_csv(series);
  const auto fit = nsas::fit_column(table.column("t"), table.column(column), column, nsas::parse_decay_model(model),
                                    parse_window(window));
  std::printf("column      %s\nmodel       %s\n%s %.10g\namplitude   %.10g\nresidual    %.3e\nwindow      [%g, %g]\n"
              "samples     %zu\ndropped     %zu\n",
              column.c_str(), nsas::decay_model_name(fit.model).c_str(),
              fit.model == nsas::DecayModel::exponential ? "rate       " : "exponent   ", fit.exponent_or_rate,
              fit.amplitude, fit.residual_rms, fit.window.first, fit.window.second, fit.samples, fit.dropped);
  return 0;
}

void plot_table(const fs::path& csv, const fs::path& svg, const std::string& title) {
  const nsas::CsvTable table = nsas::read_csv(csv);
  const auto t = table.column(table.header.front());
  std::vector<nsas::tools::PlotSeries> series;
  for (std::size_t c = 1; c < table.header.size(); ++c) {
    const std::string& name = table.header[c];
    if (name == "M_t" || name == "N_t" || name == "M0_t" || name == "discriminant" || name.rfind("im_", 0) == 0)
      continue;
    series.push_back({name, t, table.column(name)});
  }
  nsas::tools::write_loglog_svg(svg, title, series);
}

int cmd_report(const fs::path& run) {
  const nsas::ExperimentReport rep = nsas::read_verdict(run / "verdict.txt");
  std::printf("%-28s %-6s %-16s %s\n", "criterion", "result", "value", "target");
  for (const auto& c : rep.criteria)
    std::printf("%-28s %-6s %-16.8g %s\n", c.name.c_str(), c.pass ? "PASS" : "FAIL", c.value, c.target.c_str());
  if (rep.status == nsas::VerdictStatus::error)
    std::printf("ERROR in %s: %s\n", rep.error_phase.c_str(), rep.error_message.c_str());
  std::printf("overall: %s\n", nsas::status_name(rep.status).c_str());
  for (const char* name : {"series", "profile_series", "symbol"}) {
    const fs::path csv = run / (std::string(name) + ".csv");
    if (!fs::exists(csv)) continue;
    const fs::path svg = run / (std::string(name) + ".svg");
    plot_table(csv, svg, nsas::experiment_name(rep.kind) + " " + name);
    std::printf("plot: %s\n", svg.c_str());
  }
  return nsas::exit_code(rep);
}

int cmd_run_experiment(const fs::path& config, fs::path out) {
  nsas::ExperimentConfig cfg;
  try {
    cfg = nsas::load_config(config);
  } catch (const nsas::Error& e) {
    std::fprintf(stderr, "ERROR in config: %s\n", e.what());
    return 2;
  }
  if (out.empty()) out = cfg.out_dir;
  const nsas::ExperimentReport rep = nsas::run_experiment(cfg, out, &std::cout);
  return nsas::exit_code(rep);
}

}  // namespace

int main(int argc, char** argv) {
  nsas::configure_threads();
  CLI::App app{"nsas: decay experiments for viscous compressible flow on partially periodic domains"};
  app.require_subcommand(1);

  double nu1 = 1.0, nu2 = 1.0, gamma = 1.0, p_max = 1e4;
  int samples = 2000;
  fs::path out, config, series, run_dir;
  std::string column, model = "power", window;

  auto* sym = app.add_subcommand("analyze-symbol", "sweep the eigenvalues of the linear symbol over |q|^2");
  sym->add_option("--nu1", nu1);
  sym->add_option("--nu2", nu2);
  sym->add_option("--gamma", gamma);
  sym->add_option("--p-max", p_max);
  sym->add_option("--samples", samples);
  sym->add_option("--out", out)->required();

  auto* sim = app.add_subcommand("simulate", "run the full solver and write series.csv");
  sim->add_option("--config", config)->required()->check(CLI::ExistingFile);
  sim->add_option("--out", out)->required();

  auto* prof = app.add_subcommand("profile", "run the reduced profile system and write series.csv");
  prof->add_option("--config", config)->required()->check(CLI::ExistingFile);
  prof->add_option("--out", out)->required();

  auto* fit = app.add_subcommand("fit", "fit a decay model to one column of a series file");
  fit->add_option("--series", series)->required()->check(CLI::ExistingFile);
  fit->add_option("--column", column)->required();
  fit->add_option("--model", model)->check(CLI::IsMember({"power", "power_log", "exp", "exponential"}));
  fit->add_option("--window", window)->required();

  auto* rep = app.add_subcommand("report", "print the verdict table and write log-log plots");
  rep->add_option("--run", run_dir)->required()->check(CLI::ExistingDirectory);

  auto* exp = app.add_subcommand("run-experiment", "run an experiment config and emit a verdict");
  exp->add_option("--config", config)->required()->check(CLI::ExistingFile);
  exp->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*sym) return cmd_analyze_symbol(nu1, nu2, gamma, p_max, samples, out);
    if (*sim) return cmd_simulate(config, out);
    if (*prof) return cmd_profile(config, out);
    if (*fit) return cmd_fit(series, column, model, window);
    if (*rep) return cmd_report(run_dir);
    if (*exp) return cmd_run_experiment(config, out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
