#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "risradar/channel.hpp"
#include "risradar/detect.hpp"
#include "risradar/layout.hpp"

namespace risradar {

/// Schema violation; `field()` is the dotted path of the offending key.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct RadarArrayConfig {
  Point3 position = Point3::Zero();
  double yaw_deg = 0.0;
  double pitch_deg = 0.0;
  int elements = 1;
  double spacing_wavelengths = 0.5;
  double element_width_wavelengths = 0.5;
  double element_height_wavelengths = 1.0;
  double beamwidth_az_deg = 120.0;
  double beamwidth_el_deg = 60.0;
  double peak_gain = 1.0;
  bool direct_path = true;
};

/// RIS centre placed at `distance_m` from its radar along the world
/// bearing `bearing_deg` (from +x towards +y), lifted by `height_m`.
struct RisConfig {
  bool enabled = true;
  double distance_m = 4.0;
  double bearing_deg = 0.0;
  double height_m = 0.0;
  double yaw_deg = 0.0;
  double pitch_deg = 0.0;
  int side_elements = 15;
  double element_side_wavelengths = 0.5;
};

/// A point given directly or as a distance along a straight track.
struct CellConfig {
  std::optional<Point3> position;
  Point3 track_start = Point3::Zero();
  Point3 track_end = Point3::Zero();
  double along_track_m = 0.0;

  Point3 resolve() const;
  double track_length() const { return (track_end - track_start).norm(); }
};

enum class RadarMode { Bistatic, Monostatic };

struct ScenarioConfig {
  std::string name;
  double carrier_frequency_hz = 0.0;
  RadarMode mode = RadarMode::Bistatic;
  RadarArrayConfig transmitter;
  RadarArrayConfig receiver;
  RisConfig forward_ris;
  RisConfig backward_ris;  // ignored in monostatic mode: the forward RIS serves both legs
  CellConfig target;
  std::optional<CellConfig> design_cell;  // defaults to the target cell
  double target_size_wavelengths = 10.0;
  RadiatedPower power;
  LossBudget losses;
  double pfa = 1e-6;
  FluctuationModel model = FluctuationModel::NonFluctuating;
  double nominal_min_separation_m = 0.5;
  double altmax_tolerance = 1e-5;
  int altmax_max_sweeps = 200;
  unsigned long long seed = 1;

  double wavelength() const { return kSpeedOfLight / carrier_frequency_hz; }
  bool shared_ris() const { return mode == RadarMode::Monostatic; }
  Point3 target_position() const { return target.resolve(); }
  Point3 design_position() const { return design_cell ? design_cell->resolve() : target.resolve(); }

  /// Throws ValidationError naming the field.
  void validate() const;
};

Deployment make_deployment(const ScenarioConfig& cfg);
PathIndicators path_indicators(const ScenarioConfig& cfg);
/// Channels towards `cell` for the given configuration.
ChannelSet scenario_channels(const ScenarioConfig& cfg, const Point3& cell);

ScenarioConfig parse_scenario(const std::string& json_text);
ScenarioConfig load_scenario(const std::string& path);
std::string scenario_to_json(const ScenarioConfig& cfg);

struct LoadedScenario {
  ScenarioConfig config;
  FarFieldReport far_field;
  std::vector<std::string> warnings;
};

/// Parses, validates, and attaches far-field diagnostics as warnings.
LoadedScenario load_scenario_with_report(const std::string& path);
std::vector<std::string> far_field_warnings(const ScenarioConfig& cfg, const FarFieldReport& r);

}  // namespace risradar
