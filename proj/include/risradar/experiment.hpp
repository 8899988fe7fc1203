#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "risradar/optim.hpp"
#include "risradar/scenario.hpp"
#include "risradar/signal.hpp"

namespace risradar {

enum class SweepVariable { Distance, Size, Position, RxElements };
enum class Method { AltMax, Sdr, Rank1, Bidirectional };
enum class Configuration { Both, ForwardOnly, BackwardOnly };

std::string to_string(SweepVariable v);
std::string to_string(Method m);
std::string to_string(Configuration c);
SweepVariable parse_sweep_variable(const std::string& s);
Method parse_method(const std::string& s);
Configuration parse_configuration(const std::string& s);
/// Comma-separated list, e.g. "altmax,rank1".
std::vector<Method> parse_methods(const std::string& list);
/// "all" or a comma-separated list of both|forward|backward.
std::vector<Configuration> parse_configurations(const std::string& list);

struct DesignOptions {
  Method method = Method::AltMax;
  AltMaxOptions altmax;
  SdrDesignOptions sdr;
  std::uint64_t seed = 1;
};

struct Design {
  PhaseConfig phases;
  std::string name;  // near-field, far-field, sdr, independent, equal-phase
  int iterations = 0;
};

/// Per-side phase design for the channels of one cell. The coordinate
/// ascent keeps the better of a random start and the far-field warm start.
Design design_independent(const ChannelSet& ch, const DesignOptions& options);
/// Equal phases on a shared surface; requires equal RIS sizes.
Design design_equal_phase(const ChannelSet& ch, const DesignOptions& options);

struct Evaluation {
  double energy = 0.0;           // ||e||^2 = ||t||^2 ||r||^2
  double baseline_energy = 0.0;  // radar alone
  double echo_rr = 0.0, echo_sr = 0.0, echo_rs = 0.0, echo_ss = 0.0;  // ||e_xy||^2
  std::string label;
  bool reachable = true;
  double gain() const { return energy / baseline_energy; }
};

Evaluation evaluate(const ChannelSet& ch, const PhaseConfig& phases, Configuration config);

struct ResultRow {
  std::string variable;
  double value = 0.0;
  Method method = Method::AltMax;
  std::string design;
  std::string designed_for = "target";  // or design-cell
  Configuration configuration = Configuration::Both;
  std::string label;
  double gain = 1.0;  // linear, versus radar alone
  double gain_rr = 0.0, gain_sr = 0.0, gain_rs = 0.0, gain_ss = 0.0;
  double snr = 0.0;
  double baseline_snr = 0.0;
  double max_bandwidth_hz = 0.0;
  double delay_spread_s = 0.0;
  int iterations = 0;
  double wall_time_s = 0.0;
  std::string status = "ok";
};

struct PointOptions {
  std::vector<Method> methods{Method::AltMax};
  std::vector<Configuration> configurations{Configuration::Both, Configuration::ForwardOnly,
                                            Configuration::BackwardOnly};
  bool include_design_cell = false;  // also evaluate the design made for the design cell
  std::uint64_t seed = 1;
  bool certify_sdr = false;
};

/// All rows for the scenario as configured (one per method, design and configuration).
std::vector<ResultRow> run_point(const ScenarioConfig& cfg, const PointOptions& options,
                                 const std::string& variable = "point", double value = 0.0);

struct SweepSpec {
  SweepVariable variable = SweepVariable::Distance;
  double from = 1.0;
  double to = 20.0;
  int steps = 20;
  PointOptions point;
  unsigned threads = 0;  // 0 uses the hardware concurrency
  bool timing = false;

  std::vector<double> values() const;
};

/// `cfg` with the sweep variable set to `value`.
ScenarioConfig apply_sweep_value(const ScenarioConfig& cfg, SweepVariable variable, double value);

/// Rows ordered by sweep value; failed points become rows with an error status.
std::vector<ResultRow> run_sweep(const ScenarioConfig& cfg, const SweepSpec& spec);

std::vector<std::string> csv_header(bool timing);
void write_csv(const std::vector<ResultRow>& rows, std::ostream& out, bool timing = false);
/// Throws ModelError on empty input or I/O failure.
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path, bool timing = false);
std::string format_number(double v);

struct DetectCurveSpec {
  double pfa = 1e-6;
  FluctuationModel model = FluctuationModel::NonFluctuating;
  double from_db = -40.0;  // transmit power offset
  double to_db = 20.0;
  int steps = 61;
  Method method = Method::AltMax;
  std::uint64_t seed = 1;
};

struct DetectRow {
  double power_offset_db = 0.0;
  std::string configuration;  // radar-only, both, forward-only, backward-only
  double snr = 0.0;
  double pd = 0.0;
};

std::vector<DetectRow> run_detect_curve(const ScenarioConfig& cfg, const DetectCurveSpec& spec);
void write_detect_csv(const std::vector<DetectRow>& rows, const DetectCurveSpec& spec,
                      std::ostream& out);

}  // namespace risradar
