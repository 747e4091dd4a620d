#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace nsas {

/// Samples at or below this are left out of log-space fits.
inline constexpr double kFitFloor = 1e-14;

struct DecaySeries {
  std::vector<double> times;
  std::vector<double> values;
  std::string label;
  /// Samples removed because they were not above kFitFloor.
  std::size_t dropped = 0;

  /// Validates strictly increasing times and finite values, dropping tiny ones.
  static DecaySeries make(const std::vector<double>& times, const std::vector<double>& values, std::string label);
};

enum class DecayModel { power, power_log, exponential };

DecayModel parse_decay_model(const std::string& text);
std::string decay_model_name(DecayModel model);

/// power:      A (1+t)^beta
/// power_log:  A (1+t)^beta ln(2+t)
/// exponential A exp(-r t), reported as exponent_or_rate = r
struct DecayFit {
  DecayModel model = DecayModel::power;
  double exponent_or_rate = 0.0;
  double amplitude = 0.0;
  /// RMS of the log-space residuals.
  double residual_rms = 0.0;
  std::pair<double, double> window{0.0, 0.0};
  std::size_t samples = 0;
  std::size_t dropped = 0;
};

/// Least squares in log space over samples with t in [window.first, window.second].
/// Throws DataError with fewer than 10 samples.
DecayFit fit_decay(const DecaySeries& series, DecayModel model, std::pair<double, double> window);

/// Last time at which |d^2 ln v / d (ln(1+t))^2| exceeds `threshold`; 0 if never.
double detect_transient(const DecaySeries& series, double threshold = 0.05);

/// [max(10, 5 transient), 0.9 horizon].
std::pair<double, double> default_fit_window(const DecaySeries& series, double horizon);

}  // namespace nsas
