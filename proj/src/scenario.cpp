#include "risradar/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace risradar {

using nlohmann::json;

Point3 CellConfig::resolve() const {
  if (position) return *position;
  const double len = track_length();
  if (!(len > 0.0)) throw ModelError("target track has zero length");
  return track_start + (track_end - track_start) * (along_track_m / len);
}

namespace {

void require(bool ok, const std::string& field, const std::string& message) {
  if (!ok) throw ValidationError(field, message);
}

void validate_radar(const RadarArrayConfig& r, const std::string& f) {
  require(r.elements >= 1, f + ".elements", "must be at least 1");
  require(r.spacing_wavelengths > 0.0, f + ".spacing_wavelengths", "must be positive");
  require(r.element_width_wavelengths > 0.0, f + ".element_width_wavelengths", "must be positive");
  require(r.element_height_wavelengths > 0.0, f + ".element_height_wavelengths",
          "must be positive");
  require(r.elements == 1 || r.element_width_wavelengths <= r.spacing_wavelengths + 1e-12,
          f + ".element_width_wavelengths", "elements overlap (width exceeds spacing)");
  require(r.beamwidth_az_deg > 0.0 && r.beamwidth_az_deg < 180.0, f + ".beamwidth_az_deg",
          "must lie in (0, 180)");
  require(r.beamwidth_el_deg > 0.0 && r.beamwidth_el_deg < 180.0, f + ".beamwidth_el_deg",
          "must lie in (0, 180)");
  require(r.peak_gain > 0.0, f + ".peak_gain", "must be positive");
  require(r.position.allFinite(), f + ".position", "must be finite");
}

void validate_ris(const RisConfig& s, const std::string& f) {
  if (!s.enabled) return;
  require(s.distance_m > 0.0, f + ".distance_m", "must be positive");
  require(s.side_elements >= 1, f + ".side_elements", "must be at least 1");
  require(s.element_side_wavelengths > 0.0, f + ".element_side_wavelengths", "must be positive");
}

void validate_cell(const CellConfig& c, const std::string& f) {
  if (c.position) {
    require(c.position->allFinite(), f + ".position", "must be finite");
  } else {
    require(c.track_length() > 0.0, f + ".track", "start and end must differ");
    require(std::isfinite(c.along_track_m), f + ".position_along_track_m", "must be finite");
  }
}

}  // namespace

void ScenarioConfig::validate() const {
  require(carrier_frequency_hz > 0.0 && std::isfinite(carrier_frequency_hz),
          "carrier_frequency_hz", "must be positive");
  validate_radar(transmitter, "transmitter");
  validate_radar(receiver, "receiver");
  validate_ris(forward_ris, "forward_ris");
  if (!shared_ris()) validate_ris(backward_ris, "backward_ris");
  validate_cell(target, "target");
  if (design_cell) validate_cell(*design_cell, "design_cell");
  require(target_size_wavelengths > 0.0, "target.size_wavelengths", "must be positive");
  require(power.tx_power > 0.0, "power.tx_power_w", "must be positive");
  require(power.noise_power > 0.0, "power.noise_power_w", "must be positive");
  require(power.target_mean_square > 0.0, "power.target_mean_square", "must be positive");
  require(losses.tx_direct >= 1.0, "losses.tx_direct", "must be >= 1");
  require(losses.tx_ris >= 1.0, "losses.tx_ris", "must be >= 1");
  require(losses.rx_direct >= 1.0, "losses.rx_direct", "must be >= 1");
  require(losses.rx_ris >= 1.0, "losses.rx_ris", "must be >= 1");
  require(pfa > 0.0 && pfa < 1.0, "detection.pfa", "must lie in (0, 1)");
  require(nominal_min_separation_m >= 0.0, "nominal_min_separation_m", "must be non-negative");
  require(altmax_tolerance > 0.0, "optimizer.tolerance", "must be positive");
  require(altmax_max_sweeps >= 1, "optimizer.max_sweeps", "must be at least 1");
}

namespace {

PlacedArray place_radar(const RadarArrayConfig& r, double lambda) {
  const auto pattern = ElementPattern::from_beamwidths(deg2rad(r.beamwidth_az_deg),
                                                       deg2rad(r.beamwidth_el_deg), r.peak_gain);
  return {make_ula(r.elements, r.spacing_wavelengths * lambda,
                   r.element_width_wavelengths * lambda, r.element_height_wavelengths * lambda,
                   pattern),
          Frame::from_euler(r.position, deg2rad(r.yaw_deg), deg2rad(r.pitch_deg))};
}

std::optional<PlacedArray> place_ris(const RisConfig& s, const Point3& anchor, double lambda) {
  if (!s.enabled) return std::nullopt;
  const double b = deg2rad(s.bearing_deg);
  const Point3 origin =
      anchor + s.distance_m * Point3(std::cos(b), std::sin(b), 0.0) + Point3(0.0, 0.0, s.height_m);
  return PlacedArray{make_ris_grid(s.side_elements * s.side_elements,
                                   s.element_side_wavelengths * lambda),
                     Frame::from_euler(origin, deg2rad(s.yaw_deg), deg2rad(s.pitch_deg))};
}

}  // namespace

Deployment make_deployment(const ScenarioConfig& cfg) {
  const double lambda = cfg.wavelength();
  Deployment dep;
  dep.wavelength = lambda;
  dep.transmitter = place_radar(cfg.transmitter, lambda);
  dep.receiver = place_radar(cfg.receiver, lambda);
  dep.forward_ris = place_ris(cfg.forward_ris, cfg.transmitter.position, lambda);
  dep.backward_ris = cfg.shared_ris() ? dep.forward_ris
                                      : place_ris(cfg.backward_ris, cfg.receiver.position, lambda);
  dep.target_size_tx = cfg.target_size_wavelengths * lambda;
  dep.target_size_rx = cfg.target_size_wavelengths * lambda;
  return dep;
}

PathIndicators path_indicators(const ScenarioConfig& cfg) {
  return {cfg.transmitter.direct_path, cfg.receiver.direct_path, cfg.forward_ris.enabled,
          cfg.shared_ris() ? cfg.forward_ris.enabled : cfg.backward_ris.enabled};
}

ChannelSet scenario_channels(const ScenarioConfig& cfg, const Point3& cell) {
  const Deployment dep = make_deployment(cfg);
  const GeometrySummary geo = summarize_geometry(dep, cell);
  return build_channels(dep, geo, cfg.power, cfg.losses, path_indicators(cfg));
}

namespace {

struct Reader {
  const json& node;
  std::string path;

  std::string field(const std::string& key) const {
    return path.empty() ? key : path + "." + key;
  }
  bool has(const std::string& key) const { return node.contains(key); }

  double number(const std::string& key, std::optional<double> fallback = std::nullopt) const {
    if (!node.contains(key)) {
      if (fallback) return *fallback;
      throw ValidationError(field(key), "missing required number");
    }
    const json& v = node.at(key);
    if (!v.is_number()) throw ValidationError(field(key), "must be a number");
    return v.get<double>();
  }
  int integer(const std::string& key, std::optional<int> fallback = std::nullopt) const {
    if (!node.contains(key)) {
      if (fallback) return *fallback;
      throw ValidationError(field(key), "missing required integer");
    }
    const json& v = node.at(key);
    if (!v.is_number_integer()) throw ValidationError(field(key), "must be an integer");
    return v.get<int>();
  }
  bool boolean(const std::string& key, bool fallback) const {
    if (!node.contains(key)) return fallback;
    const json& v = node.at(key);
    if (!v.is_boolean()) throw ValidationError(field(key), "must be true or false");
    return v.get<bool>();
  }
  std::string text(const std::string& key, const std::string& fallback) const {
    if (!node.contains(key)) return fallback;
    const json& v = node.at(key);
    if (!v.is_string()) throw ValidationError(field(key), "must be a string");
    return v.get<std::string>();
  }
  Point3 point(const std::string& key) const {
    if (!node.contains(key)) throw ValidationError(field(key), "missing required point");
    const json& v = node.at(key);
    if (!v.is_array() || v.size() != 3) {
      throw ValidationError(field(key), "must be an array of three numbers");
    }
    Point3 p;
    for (int i = 0; i < 3; ++i) {
      if (!v[static_cast<std::size_t>(i)].is_number()) {
        throw ValidationError(field(key), "must be an array of three numbers");
      }
      p[i] = v[static_cast<std::size_t>(i)].get<double>();
    }
    return p;
  }
  Reader child(const std::string& key) const {
    if (!node.contains(key)) throw ValidationError(field(key), "missing required object");
    const json& v = node.at(key);
    if (!v.is_object()) throw ValidationError(field(key), "must be an object");
    return {v, field(key)};
  }
};

RadarArrayConfig read_radar(const Reader& r, const RadarArrayConfig& base, bool need_position) {
  RadarArrayConfig c = base;
  if (r.has("position") || need_position) c.position = r.point("position");
  c.yaw_deg = r.number("yaw_deg", base.yaw_deg);
  c.pitch_deg = r.number("pitch_deg", base.pitch_deg);
  c.elements = r.integer("elements", base.elements);
  c.spacing_wavelengths = r.number("spacing_wavelengths", base.spacing_wavelengths);
  c.element_width_wavelengths =
      r.number("element_width_wavelengths", base.element_width_wavelengths);
  c.element_height_wavelengths =
      r.number("element_height_wavelengths", base.element_height_wavelengths);
  c.beamwidth_az_deg = r.number("beamwidth_az_deg", base.beamwidth_az_deg);
  c.beamwidth_el_deg = r.number("beamwidth_el_deg", base.beamwidth_el_deg);
  c.peak_gain = r.number("peak_gain", base.peak_gain);
  c.direct_path = r.boolean("direct_path", base.direct_path);
  return c;
}

RisConfig read_ris(const Reader& r, const Point3& anchor) {
  RisConfig c;
  c.enabled = r.boolean("enabled", true);
  if (r.has("position")) {
    if (r.has("distance_m") || r.has("bearing_deg")) {
      throw ValidationError(r.field("position"),
                            "give either position or distance_m/bearing_deg, not both");
    }
    const Point3 offset = r.point("position") - anchor;
    c.distance_m = std::hypot(offset.x(), offset.y());
    c.bearing_deg = rad2deg(std::atan2(offset.y(), offset.x()));
    c.height_m = offset.z();
  } else {
    c.distance_m = r.number("distance_m");
    c.bearing_deg = r.number("bearing_deg");
    c.height_m = r.number("height_m", 0.0);
  }
  c.yaw_deg = r.number("yaw_deg");
  c.pitch_deg = r.number("pitch_deg", 0.0);
  c.side_elements = r.integer("side_elements", c.side_elements);
  c.element_side_wavelengths = r.number("element_side_wavelengths", c.element_side_wavelengths);
  return c;
}

CellConfig read_cell(const Reader& r) {
  CellConfig c;
  if (r.has("position")) {
    c.position = r.point("position");
    return c;
  }
  const Reader track = r.child("track");
  c.track_start = track.point("start");
  c.track_end = track.point("end");
  c.along_track_m = r.number("position_along_track_m");
  return c;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError("<document>", std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("<document>", "top level must be an object");
  const Reader root{doc, ""};

  ScenarioConfig cfg;
  cfg.name = root.text("name", "");
  cfg.carrier_frequency_hz = root.number("carrier_frequency_hz");
  const std::string mode = root.text("mode", "bistatic");
  if (mode == "bistatic") {
    cfg.mode = RadarMode::Bistatic;
  } else if (mode == "monostatic") {
    cfg.mode = RadarMode::Monostatic;
  } else {
    throw ValidationError("mode", "must be \"bistatic\" or \"monostatic\"");
  }

  cfg.transmitter = read_radar(root.child("transmitter"), RadarArrayConfig{}, true);
  if (cfg.shared_ris()) {
    // Co-located receiver: inherits the transmitter pose unless overridden.
    RadarArrayConfig base = cfg.transmitter;
    cfg.receiver = root.has("receiver") ? read_radar(root.child("receiver"), base, false) : base;
  } else {
    cfg.receiver = read_radar(root.child("receiver"), RadarArrayConfig{}, true);
  }

  if (cfg.shared_ris()) {
    if (root.has("backward_ris")) {
      throw ValidationError("backward_ris", "monostatic mode uses forward_ris for both legs");
    }
    cfg.forward_ris = read_ris(root.child("forward_ris"), cfg.transmitter.position);
    cfg.backward_ris = cfg.forward_ris;
  } else {
    if (root.has("forward_ris")) {
      cfg.forward_ris = read_ris(root.child("forward_ris"), cfg.transmitter.position);
    } else {
      cfg.forward_ris.enabled = false;
    }
    if (root.has("backward_ris")) {
      cfg.backward_ris = read_ris(root.child("backward_ris"), cfg.receiver.position);
    } else {
      cfg.backward_ris.enabled = false;
    }
  }

  const Reader target = root.child("target");
  cfg.target = read_cell(target);
  cfg.target_size_wavelengths = target.number("size_wavelengths", cfg.target_size_wavelengths);
  if (root.has("design_cell")) cfg.design_cell = read_cell(root.child("design_cell"));

  const Reader power = root.child("power");
  cfg.power.tx_power = power.number("tx_power_w");
  cfg.power.noise_power = power.number("noise_power_w");
  cfg.power.target_mean_square = power.number("target_mean_square", 1.0);

  if (root.has("losses")) {
    const Reader l = root.child("losses");
    cfg.losses.tx_direct = l.number("tx_direct", 1.0);
    cfg.losses.tx_ris = l.number("tx_ris", 1.0);
    cfg.losses.rx_direct = l.number("rx_direct", 1.0);
    cfg.losses.rx_ris = l.number("rx_ris", 1.0);
  }
  if (root.has("detection")) {
    const Reader d = root.child("detection");
    cfg.pfa = d.number("pfa", cfg.pfa);
    try {
      cfg.model = parse_fluctuation_model(d.text("model", "nonfluct"));
    } catch (const ModelError& e) {
      throw ValidationError("detection.model", e.what());
    }
  }
  if (root.has("optimizer")) {
    const Reader o = root.child("optimizer");
    cfg.altmax_tolerance = o.number("tolerance", cfg.altmax_tolerance);
    cfg.altmax_max_sweeps = o.integer("max_sweeps", cfg.altmax_max_sweeps);
    const int seed = o.integer("seed", 1);
    if (seed < 0) throw ValidationError("optimizer.seed", "must be non-negative");
    cfg.seed = static_cast<unsigned long long>(seed);
  }
  cfg.nominal_min_separation_m = root.number("nominal_min_separation_m", 0.5);

  cfg.validate();
  try {
    const Deployment dep = make_deployment(cfg);
    dep.transmitter.spec.validate();
    dep.receiver.spec.validate();
    summarize_geometry(dep, cfg.target_position());
    summarize_geometry(dep, cfg.design_position());
  } catch (const ModelError& e) {
    throw ValidationError("<geometry>", e.what());
  }
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("<file>", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

namespace {

json point_json(const Point3& p) { return json::array({p.x(), p.y(), p.z()}); }

json radar_json(const RadarArrayConfig& r) {
  return {{"position", point_json(r.position)},
          {"yaw_deg", r.yaw_deg},
          {"pitch_deg", r.pitch_deg},
          {"elements", r.elements},
          {"spacing_wavelengths", r.spacing_wavelengths},
          {"element_width_wavelengths", r.element_width_wavelengths},
          {"element_height_wavelengths", r.element_height_wavelengths},
          {"beamwidth_az_deg", r.beamwidth_az_deg},
          {"beamwidth_el_deg", r.beamwidth_el_deg},
          {"peak_gain", r.peak_gain},
          {"direct_path", r.direct_path}};
}

json ris_json(const RisConfig& s) {
  return {{"enabled", s.enabled},
          {"distance_m", s.distance_m},
          {"bearing_deg", s.bearing_deg},
          {"height_m", s.height_m},
          {"yaw_deg", s.yaw_deg},
          {"pitch_deg", s.pitch_deg},
          {"side_elements", s.side_elements},
          {"element_side_wavelengths", s.element_side_wavelengths}};
}

json cell_json(const CellConfig& c) {
  if (c.position) return {{"position", point_json(*c.position)}};
  return {{"track", {{"start", point_json(c.track_start)}, {"end", point_json(c.track_end)}}},
          {"position_along_track_m", c.along_track_m}};
}

}  // namespace

std::string scenario_to_json(const ScenarioConfig& cfg) {
  json doc;
  doc["name"] = cfg.name;
  doc["carrier_frequency_hz"] = cfg.carrier_frequency_hz;
  doc["mode"] = cfg.shared_ris() ? "monostatic" : "bistatic";
  doc["transmitter"] = radar_json(cfg.transmitter);
  doc["receiver"] = radar_json(cfg.receiver);
  doc["forward_ris"] = ris_json(cfg.forward_ris);
  if (!cfg.shared_ris()) doc["backward_ris"] = ris_json(cfg.backward_ris);
  doc["target"] = cell_json(cfg.target);
  doc["target"]["size_wavelengths"] = cfg.target_size_wavelengths;
  if (cfg.design_cell) doc["design_cell"] = cell_json(*cfg.design_cell);
  doc["power"] = {{"tx_power_w", cfg.power.tx_power},
                  {"noise_power_w", cfg.power.noise_power},
                  {"target_mean_square", cfg.power.target_mean_square}};
  doc["losses"] = {{"tx_direct", cfg.losses.tx_direct},
                   {"tx_ris", cfg.losses.tx_ris},
                   {"rx_direct", cfg.losses.rx_direct},
                   {"rx_ris", cfg.losses.rx_ris}};
  doc["detection"] = {{"pfa", cfg.pfa}, {"model", to_string(cfg.model)}};
  doc["optimizer"] = {{"tolerance", cfg.altmax_tolerance},
                      {"max_sweeps", cfg.altmax_max_sweeps},
                      {"seed", cfg.seed}};
  doc["nominal_min_separation_m"] = cfg.nominal_min_separation_m;
  return doc.dump(2);
}

std::vector<std::string> far_field_warnings(const ScenarioConfig& cfg, const FarFieldReport& r) {
  std::vector<std::string> out;
  for (const auto& c : r.checks) {
    if (c.applicable && !c.pass) {
      std::ostringstream s;
      s << "far-field condition " << c.name << " violated: " << c.lhs << " m < " << c.rhs << " m";
      out.push_back(s.str());
    }
  }
  for (const auto& a : r.aspect) {
    if (a.applicable && !a.pass) {
      std::ostringstream s;
      s << "aspect-angle condition " << a.name << " violated: " << a.max_angle << " rad vs "
        << a.resolution << " / " << a.factor;
      out.push_back(s.str());
    }
  }
  const double threshold = std::max(r.min_separation_tx, r.min_separation_rx);
  if (threshold > cfg.nominal_min_separation_m) {
    std::ostringstream s;
    s << "element-level far-field threshold " << threshold << " m exceeds the nominal "
      << cfg.nominal_min_separation_m << " m";
    out.push_back(s.str());
  }
  return out;
}

LoadedScenario load_scenario_with_report(const std::string& path) {
  LoadedScenario out;
  out.config = load_scenario(path);
  const Deployment dep = make_deployment(out.config);
  out.far_field = far_field_checks(dep, out.config.target_position());
  out.warnings = far_field_warnings(out.config, out.far_field);
  return out;
}

}  // namespace risradar
