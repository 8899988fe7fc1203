#pragma once

#include <cstdint>
#include <string>

#include "risradar/types.hpp"

namespace risradar {

enum class FluctuationModel { NonFluctuating, Exponential, Gamma };

std::string to_string(FluctuationModel m);
/// Accepts "nonfluct", "exp", "gamma" (and the full enumerator names).
FluctuationModel parse_fluctuation_model(const std::string& name);

struct DetectionSetup {
  double pfa = 1e-6;
  FluctuationModel model = FluctuationModel::NonFluctuating;
  double target_mean_square = 1.0;
  double noise_power = 1.0;

  void validate() const;
};

struct DetectionResult {
  double threshold = 0.0;
  double snr = 0.0;
  double pd = 0.0;
};

/// eta = -ln(Pfa); throws ModelError outside (0, 1).
double threshold_from_pfa(double pfa);

/// First-order Marcum Q function.
double marcum_q1(double a, double b);
/// Q1(sqrt(2 mu), sqrt(2 x)) without forming the square roots.
double marcum_q1_half_squared(double mu, double x);

double pd_closed_form(FluctuationModel model, double threshold, double snr);
DetectionResult detect(const DetectionSetup& setup, double snr);

struct MonteCarloEstimate {
  double pd = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t detections = 0;
};

/// Simulates the matched-filter output alpha ||e|| + noise and thresholds
/// |r|^2 / sigma_w^2 against eta. The estimate does not depend on the
/// thread count.
MonteCarloEstimate pd_monte_carlo(const DetectionSetup& setup, double snr, std::uint64_t trials,
                                  std::uint64_t seed);

double glrt_statistic(cdouble sample, double noise_power);

}  // namespace risradar
