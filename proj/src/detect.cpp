#include "risradar/detect.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "risradar/random.hpp"

namespace risradar {

std::string to_string(FluctuationModel m) {
  switch (m) {
    case FluctuationModel::NonFluctuating: return "nonfluct";
    case FluctuationModel::Exponential: return "exp";
    case FluctuationModel::Gamma: return "gamma";
  }
  return "?";
}

FluctuationModel parse_fluctuation_model(const std::string& name) {
  if (name == "nonfluct" || name == "non-fluctuating" || name == "NonFluctuating") {
    return FluctuationModel::NonFluctuating;
  }
  if (name == "exp" || name == "exponential" || name == "Exponential") {
    return FluctuationModel::Exponential;
  }
  if (name == "gamma" || name == "Gamma") return FluctuationModel::Gamma;
  throw ModelError("unknown fluctuation model '" + name + "'");
}

void DetectionSetup::validate() const {
  threshold_from_pfa(pfa);
  if (!(target_mean_square > 0.0)) throw ModelError("target mean-square response must be positive");
  if (!(noise_power > 0.0)) throw ModelError("noise power must be positive");
}

double threshold_from_pfa(double pfa) {
  if (!(pfa > 0.0 && pfa < 1.0)) throw ModelError("false-alarm probability must lie in (0, 1)");
  return -std::log(pfa);
}

namespace {

constexpr long kMaxTerms = 1000000;

double log_add(double a, double b) {
  if (a == -HUGE_VAL) return b;
  if (b == -HUGE_VAL) return a;
  const double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

/// 1 - Q1 = sum_{j >= 1} Pois(x; j) P[Pois(mu) <= j - 1], summed in log space.
double marcum_complement(double mu, double x) {
  const double log_mu = std::log(mu);
  const double log_x = std::log(x);
  double log_cdf = -HUGE_VAL;  // log P[Pois(mu) <= j - 1]
  double log_sum = -HUGE_VAL;
  for (long j = 1; j < kMaxTerms; ++j) {
    const double jj = static_cast<double>(j);
    log_cdf = log_add(log_cdf, -mu + (jj - 1.0) * log_mu - std::lgamma(jj));
    const double log_term = -x + jj * log_x - std::lgamma(jj + 1.0) + log_cdf;
    log_sum = log_add(log_sum, log_term);
    // term ratio is at most (x / (j + 1)) (1 + mu / j), decreasing in j
    const double ratio = x / (jj + 1.0) * (1.0 + mu / jj);
    if (ratio < 1.0) {
      const double log_tail = log_term + std::log(ratio / (1.0 - ratio));
      if (log_tail < log_sum + std::log(1e-15)) break;
    }
  }
  return std::exp(log_sum);
}

}  // namespace

double marcum_q1_half_squared(double mu, double x) {
  if (!(mu >= 0.0) || !(x >= 0.0)) throw ModelError("Marcum Q arguments must be non-negative");
  if (x == 0.0) return 1.0;
  if (mu == 0.0) return std::exp(-x);
  // Far in the saturated region the complement is below double resolution.
  if (std::sqrt(2.0 * mu) - std::sqrt(2.0 * x) > 40.0) return 1.0;
  if (mu > x) return 1.0 - marcum_complement(mu, x);

  // Poisson(mu) mixture of upper regularized gammas Q(k + 1, x).
  const double log_mu = std::log(mu);
  const double log_x = std::log(x);
  double sum = 0.0;
  double upper_gamma = 0.0;
  for (long k = 0; k < kMaxTerms; ++k) {
    const double lgk = std::lgamma(static_cast<double>(k) + 1.0);
    upper_gamma += std::exp(-x + static_cast<double>(k) * log_x - lgk);
    const double weight = std::exp(-mu + static_cast<double>(k) * log_mu - lgk);
    sum += weight * std::min(upper_gamma, 1.0);
    const double kk = static_cast<double>(k);
    if (kk + 2.0 > mu) {
      const double ratio = mu / (kk + 2.0);
      const double next_weight = weight * mu / (kk + 1.0);
      const double tail = next_weight / (1.0 - ratio);
      if (tail <= 1e-12 * sum || tail < 1e-300) break;
    }
  }
  return std::min(sum, 1.0);
}

double marcum_q1(double a, double b) {
  if (!(a >= 0.0) || !(b >= 0.0)) throw ModelError("Marcum Q arguments must be non-negative");
  return marcum_q1_half_squared(0.5 * a * a, 0.5 * b * b);
}

double pd_closed_form(FluctuationModel model, double threshold, double snr) {
  if (!(snr >= 0.0)) throw ModelError("SNR must be non-negative");
  switch (model) {
    case FluctuationModel::NonFluctuating:
      return marcum_q1_half_squared(snr, threshold);
    case FluctuationModel::Exponential:
      return std::exp(-threshold / (1.0 + snr));
    case FluctuationModel::Gamma: {
      const double half = 1.0 + snr / 2.0;
      return (1.0 + threshold * snr / 2.0 / (half * half)) * std::exp(-threshold / half);
    }
  }
  return 0.0;
}

DetectionResult detect(const DetectionSetup& setup, double snr) {
  setup.validate();
  const double eta = threshold_from_pfa(setup.pfa);
  // every model collapses to exp(-eta) = Pfa without signal; skip the log round trip
  const double pd = snr == 0.0 ? setup.pfa : pd_closed_form(setup.model, eta, snr);
  return {eta, snr, pd};
}

double glrt_statistic(cdouble sample, double noise_power) {
  if (!(noise_power > 0.0)) throw ModelError("noise power must be positive");
  return std::norm(sample) / noise_power;
}

namespace {

constexpr std::uint64_t kChunk = 8192;

std::uint64_t run_chunk(const DetectionSetup& setup, double signal_norm, double eta,
                        std::uint64_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, std::sqrt(setup.noise_power / 2.0));
  std::normal_distribution<double> unit(0.0, std::sqrt(0.5));
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  std::gamma_distribution<double> power(2.0, setup.target_mean_square / 2.0);
  const double sigma_alpha = std::sqrt(setup.target_mean_square);
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < count; ++t) {
    cdouble alpha;
    switch (setup.model) {
      case FluctuationModel::NonFluctuating:
        alpha = std::polar(sigma_alpha, phase(rng));
        break;
      case FluctuationModel::Exponential:
        alpha = sigma_alpha * cdouble(unit(rng), unit(rng));
        break;
      case FluctuationModel::Gamma:
        alpha = std::polar(std::sqrt(power(rng)), phase(rng));
        break;
    }
    const cdouble r = alpha * signal_norm + cdouble(noise(rng), noise(rng));
    if (glrt_statistic(r, setup.noise_power) > eta) ++hits;
  }
  return hits;
}

}  // namespace

MonteCarloEstimate pd_monte_carlo(const DetectionSetup& setup, double snr, std::uint64_t trials,
                                  std::uint64_t seed) {
  setup.validate();
  if (trials < 1) throw ModelError("Monte Carlo needs at least one trial");
  if (!(snr >= 0.0)) throw ModelError("SNR must be non-negative");
  const double eta = threshold_from_pfa(setup.pfa);
  const double signal_norm = std::sqrt(snr * setup.noise_power / setup.target_mean_square);
  const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, std::thread::hardware_concurrency()), chunks));

  std::vector<std::uint64_t> hits(workers, 0);
  auto work = [&](unsigned w) {
    for (std::uint64_t c = w; c < chunks; c += workers) {
      const std::uint64_t count = std::min(kChunk, trials - c * kChunk);
      hits[w] += run_chunk(setup, signal_norm, eta, count, derive_seed(seed, c));
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  MonteCarloEstimate est;
  est.trials = trials;
  for (auto h : hits) est.detections += h;
  est.pd = static_cast<double>(est.detections) / static_cast<double>(trials);
  est.std_error = std::sqrt(est.pd * (1.0 - est.pd) / static_cast<double>(trials));
  return est;
}

}  // namespace risradar
