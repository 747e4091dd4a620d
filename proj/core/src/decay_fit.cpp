#include "nsas/decay_fit.hpp"

#include <cmath>

#include "nsas/error.hpp"

namespace nsas {

DecaySeries DecaySeries::make(const std::vector<double>& times, const std::vector<double>& values,
                              std::string label) {
  if (times.size() != values.size()) throw DataError("decay series: times and values differ in length");
  DecaySeries s;
  s.label = std::move(label);
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || !std::isfinite(values[i]))
      throw DataError("decay series '" + s.label + "' contains non-finite samples");
    if (i > 0 && !(times[i] > times[i - 1]))
      throw DataError("decay series '" + s.label + "' times are not strictly increasing");
    if (!(values[i] > kFitFloor)) {
      ++s.dropped;
      continue;
    }
    s.times.push_back(times[i]);
    s.values.push_back(values[i]);
  }
  return s;
}

DecayModel parse_decay_model(const std::string& text) {
  if (text == "power") return DecayModel::power;
  if (text == "power_log") return DecayModel::power_log;
  if (text == "exp" || text == "exponential") return DecayModel::exponential;
  throw ParameterError("unknown decay model '" + text + "'");
}

std::string decay_model_name(DecayModel model) {
  switch (model) {
    case DecayModel::power:
      return "power";
    case DecayModel::power_log:
      return "power_log";
    case DecayModel::exponential:
      return "exp";
  }
  return "?";
}

DecayFit fit_decay(const DecaySeries& series, DecayModel model, std::pair<double, double> window) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    const double t = series.times[i];
    if (t < window.first || t > window.second) continue;
    const double lv = std::log(series.values[i]);
    switch (model) {
      case DecayModel::power:
        x.push_back(std::log1p(t));
        y.push_back(lv);
        break;
      case DecayModel::power_log:
        x.push_back(std::log1p(t));
        y.push_back(lv - std::log(std::log(2.0 + t)));
        break;
      case DecayModel::exponential:
        x.push_back(t);
        y.push_back(lv);
        break;
    }
  }
  if (x.size() < 10)
    throw DataError("fit of '" + series.label + "' needs at least 10 samples in the window, got " +
                    std::to_string(x.size()));
  const double n = double(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw DataError("fit window has no spread in time");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (intercept + slope * x[i]);
    rss += r * r;
  }
  DecayFit f;
  f.model = model;
  f.exponent_or_rate = model == DecayModel::exponential ? -slope : slope;
  f.amplitude = std::exp(intercept);
  f.residual_rms = std::sqrt(rss / n);
  f.window = window;
  f.samples = x.size();
  f.dropped = series.dropped;
  return f;
}

double detect_transient(const DecaySeries& series, double threshold) {
  const auto& t = series.times;
  if (t.size() < 3) return 0.0;
  double last = 0.0;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    const double x0 = std::log1p(t[i - 1]), x1 = std::log1p(t[i]), x2 = std::log1p(t[i + 1]);
    const double y0 = std::log(series.values[i - 1]), y1 = std::log(series.values[i]),
                 y2 = std::log(series.values[i + 1]);
    const double s01 = (y1 - y0) / (x1 - x0);
    const double s12 = (y2 - y1) / (x2 - x1);
    const double second = (s12 - s01) / (0.5 * (x2 - x0));
    if (std::abs(second) > threshold) last = t[i];
  }
  return last;
}

std::pair<double, double> default_fit_window(const DecaySeries& series, double horizon) {
  const double upper = std::isfinite(horizon) ? 0.9 * horizon : (series.times.empty() ? 0.0 : series.times.back());
  DecaySeries head = series;
  head.times.clear();
  head.values.clear();
  for (std::size_t i = 0; i < series.times.size(); ++i)
    if (series.times[i] <= upper) {
      head.times.push_back(series.times[i]);
      head.values.push_back(series.values[i]);
    }
  return {std::max(10.0, 5.0 * detect_transient(head)), upper};
}

}  // namespace nsas
