#include "risradar/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

#include "risradar/random.hpp"

namespace risradar {

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::Distance: return "distance";
    case SweepVariable::Size: return "size";
    case SweepVariable::Position: return "position";
    case SweepVariable::RxElements: return "rx-elements";
  }
  return "?";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::AltMax: return "altmax";
    case Method::Sdr: return "sdr";
    case Method::Rank1: return "rank1";
    case Method::Bidirectional: return "bidirectional";
  }
  return "?";
}

std::string to_string(Configuration c) {
  switch (c) {
    case Configuration::Both: return "both";
    case Configuration::ForwardOnly: return "forward";
    case Configuration::BackwardOnly: return "backward";
  }
  return "?";
}

SweepVariable parse_sweep_variable(const std::string& s) {
  if (s == "distance") return SweepVariable::Distance;
  if (s == "size") return SweepVariable::Size;
  if (s == "position") return SweepVariable::Position;
  if (s == "rx-elements") return SweepVariable::RxElements;
  throw ModelError("unknown sweep variable '" + s + "'");
}

Method parse_method(const std::string& s) {
  if (s == "altmax") return Method::AltMax;
  if (s == "sdr") return Method::Sdr;
  if (s == "rank1" || s == "rank1-farfield" || s == "farfield") return Method::Rank1;
  if (s == "bidirectional") return Method::Bidirectional;
  throw ModelError("unknown method '" + s + "'");
}

Configuration parse_configuration(const std::string& s) {
  if (s == "both") return Configuration::Both;
  if (s == "forward") return Configuration::ForwardOnly;
  if (s == "backward") return Configuration::BackwardOnly;
  throw ModelError("unknown configuration '" + s + "'");
}

namespace {

std::vector<std::string> split_list(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  if (out.empty()) throw ModelError("empty list");
  return out;
}

}  // namespace

std::vector<Method> parse_methods(const std::string& list) {
  std::vector<Method> out;
  for (const auto& s : split_list(list)) out.push_back(parse_method(s));
  return out;
}

std::vector<Configuration> parse_configurations(const std::string& list) {
  if (list == "all") {
    return {Configuration::Both, Configuration::ForwardOnly, Configuration::BackwardOnly};
  }
  std::vector<Configuration> out;
  for (const auto& s : split_list(list)) out.push_back(parse_configuration(s));
  return out;
}

namespace {

struct SideDesign {
  RVector phases;
  int iterations = 0;
};

SideDesign design_side(const SideChannel& side, const DesignOptions& o, std::uint64_t seed) {
  const auto ns = side.ris_elements();
  if (ns == 0 || side.gamma_s == cdouble(0.0, 0.0)) return {RVector::Zero(ns), 0};

  if (o.method == Method::Rank1) {
    return {farfield_phases(side).phases, 0};
  }
  const LiftedQuadraticForm form = build_lifted_form(side);
  if (o.method == Method::Sdr) {
    SdrDesignOptions sdr = o.sdr;
    sdr.relaxation.seed = seed;
    sdr.polish = o.altmax;
    const SdrSolution s = sdr_design(form.lifted, sdr);
    return {s.polished.phases, s.relaxation.sweeps + s.polished.iterations};
  }
  std::mt19937_64 rng(seed);
  const UnitModulusSolution random_start =
      altmax(form.lifted, random_unit_modulus(ns + 1, rng), o.altmax);
  const UnitModulusSolution warm =
      altmax(form.lifted, lifted_from_phases(farfield_phases(side).phases), o.altmax);
  const UnitModulusSolution& best =
      warm.objective > random_start.objective ? warm : random_start;
  return {best.phases, random_start.iterations + warm.iterations};
}

}  // namespace

Design design_independent(const ChannelSet& ch, const DesignOptions& options) {
  const SideDesign tx = design_side(ch.tx, options, derive_seed(options.seed, 1));
  const SideDesign rx = design_side(ch.rx, options, derive_seed(options.seed, 2));
  Design d;
  d.phases = {tx.phases, rx.phases};
  d.iterations = tx.iterations + rx.iterations;
  switch (options.method) {
    case Method::Rank1: d.name = "far-field"; break;
    case Method::Sdr: d.name = "sdr"; break;
    case Method::Bidirectional: d.name = "independent"; break;
    case Method::AltMax: d.name = "near-field"; break;
  }
  return d;
}

Design design_equal_phase(const ChannelSet& ch, const DesignOptions& options) {
  const auto ns = ch.tx.ris_elements();
  if (ch.rx.ris_elements() != ns) throw ModelError("bidirectional design needs equal RIS sizes");
  DesignOptions indep = options;
  indep.method = Method::AltMax;
  const Design independent = design_independent(ch, indep);

  std::mt19937_64 rng(derive_seed(options.seed, 3));
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  RVector random(ns);
  for (Eigen::Index n = 0; n < ns; ++n) random[n] = phase(rng);

  Design d;
  d.name = "equal-phase";
  double best = -1.0;
  for (const RVector& init : {random, independent.phases.forward, independent.phases.backward}) {
    const BidirectionalSolution s = bidirectional_altmax(ch, init, options.altmax);
    d.iterations += s.iterations;
    if (s.objective > best) {
      best = s.objective;
      d.phases = {s.phases, s.phases};
    }
  }
  return d;
}

Evaluation evaluate(const ChannelSet& ch, const PhaseConfig& phases, Configuration config) {
  const bool fwd = config != Configuration::BackwardOnly;
  const bool bwd = config != Configuration::ForwardOnly;
  const ChannelSet c = ch.with_paths(fwd, bwd);
  const CVector t_dir = c.tx.gamma_r * c.tx.v_r;
  const CVector r_dir = c.rx.gamma_r * c.rx.v_r;
  const CVector t_ris = indirect_signature(c.tx, phases.forward);
  const CVector r_ris = indirect_signature(c.rx, phases.backward);
  Evaluation e;
  e.energy = (t_dir + t_ris).squaredNorm() * (r_dir + r_ris).squaredNorm();
  e.baseline_energy = t_dir.squaredNorm() * r_dir.squaredNorm();
  e.echo_rr = e.baseline_energy;
  e.echo_sr = t_ris.squaredNorm() * r_dir.squaredNorm();
  e.echo_rs = t_dir.squaredNorm() * r_ris.squaredNorm();
  e.echo_ss = t_ris.squaredNorm() * r_ris.squaredNorm();
  try {
    e.label = classify_configuration(c.tx.gamma_r, c.rx.gamma_r, c.tx.gamma_s, c.rx.gamma_s)
                  .to_string();
  } catch (const ModelError&) {
    e.reachable = false;
    e.label = "unreachable";
  }
  return e;
}

namespace {

struct CellChannels {
  std::string name;
  ChannelSet channels;
};

ResultRow make_row(const ScenarioConfig& cfg, const Deployment& dep, const Point3& target,
                   const ChannelSet& ch, const Design& design, Method method,
                   Configuration config) {
  ResultRow row;
  row.method = method;
  row.design = design.name;
  row.configuration = config;
  row.iterations = design.iterations;
  const Evaluation e = evaluate(ch, design.phases, config);
  row.label = e.label;
  if (!e.reachable) {
    row.status = "target unreachable";
    return row;
  }
  const double scale = cfg.power.target_mean_square / cfg.power.noise_power;
  row.snr = scale * e.energy;
  row.baseline_snr = scale * e.baseline_energy;
  row.gain = e.energy / e.baseline_energy;
  row.gain_rr = e.echo_rr / e.baseline_energy;
  row.gain_sr = e.echo_sr / e.baseline_energy;
  row.gain_rs = e.echo_rs / e.baseline_energy;
  row.gain_ss = e.echo_ss / e.baseline_energy;

  const bool fwd = config != Configuration::BackwardOnly;
  const bool bwd = config != Configuration::ForwardOnly;
  const ChannelSet c = ch.with_paths(fwd, bwd);
  const GammaChannels g{c.tx.gamma_r, c.tx.gamma_s, c.rx.gamma_r, c.rx.gamma_s};
  const DelaySpread spread = delay_spread(dep, target, g);
  row.max_bandwidth_hz = spread.max_bandwidth();
  row.delay_spread_s = spread.spread();
  return row;
}

}  // namespace

std::vector<ResultRow> run_point(const ScenarioConfig& cfg, const PointOptions& options,
                                 const std::string& variable, double value) {
  const Deployment dep = make_deployment(cfg);
  const Point3 target = cfg.target_position();
  const PathIndicators paths = path_indicators(cfg);
  const ChannelSet ch =
      build_channels(dep, summarize_geometry(dep, target), cfg.power, cfg.losses, paths);

  std::vector<CellChannels> cells{{"target", ch}};
  if (options.include_design_cell) {
    cells.push_back({"design-cell", build_channels(dep, summarize_geometry(dep, cfg.design_position()),
                                                   cfg.power, cfg.losses, paths)});
  }

  std::vector<ResultRow> rows;
  for (std::size_t mi = 0; mi < options.methods.size(); ++mi) {
    const Method method = options.methods[mi];
    DesignOptions o;
    o.method = method;
    o.altmax.tolerance = cfg.altmax_tolerance;
    o.altmax.max_sweeps = cfg.altmax_max_sweeps;
    o.sdr.certify = options.certify_sdr;
    o.seed = derive_seed(options.seed, static_cast<std::uint64_t>(method) + 11);

    for (const auto& cell : cells) {
      std::vector<Design> designs;
      std::vector<double> seconds;
      auto timed = [&](auto&& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        designs.push_back(fn());
        seconds.push_back(
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
      };
      if (method == Method::Bidirectional) {
        timed([&] { return design_independent(cell.channels, o); });
        timed([&] { return design_equal_phase(cell.channels, o); });
      } else {
        timed([&] { return design_independent(cell.channels, o); });
      }
      for (std::size_t di = 0; di < designs.size(); ++di) {
        for (Configuration config : options.configurations) {
          if (method == Method::Bidirectional && config != Configuration::Both) continue;
          ResultRow row = make_row(cfg, dep, target, ch, designs[di], method, config);
          row.variable = variable;
          row.value = value;
          row.designed_for = cell.name;
          row.wall_time_s = seconds[di];
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

std::vector<double> SweepSpec::values() const {
  if (steps < 1) throw ModelError("sweep needs at least one step");
  if (!(std::isfinite(from) && std::isfinite(to))) throw ModelError("sweep range must be finite");
  std::vector<double> v;
  for (int i = 0; i < steps; ++i) {
    double x = steps == 1 ? from : from + (to - from) * i / (steps - 1);
    if (variable == SweepVariable::Size || variable == SweepVariable::RxElements) {
      x = std::round(x);
    }
    v.push_back(x);
  }
  return v;
}

ScenarioConfig apply_sweep_value(const ScenarioConfig& cfg, SweepVariable variable, double value) {
  ScenarioConfig c = cfg;
  switch (variable) {
    case SweepVariable::Distance:
      c.forward_ris.distance_m = value;
      c.backward_ris.distance_m = value;
      break;
    case SweepVariable::Size:
      c.forward_ris.side_elements = static_cast<int>(std::lround(value));
      c.backward_ris.side_elements = static_cast<int>(std::lround(value));
      break;
    case SweepVariable::Position:
      if (c.target.position) throw ModelError("position sweep needs a target track");
      c.target.along_track_m = value;
      break;
    case SweepVariable::RxElements:
      c.receiver.elements = static_cast<int>(std::lround(value));
      break;
  }
  c.validate();
  return c;
}

std::vector<ResultRow> run_sweep(const ScenarioConfig& cfg, const SweepSpec& spec) {
  const std::vector<double> values = spec.values();
  std::vector<std::vector<ResultRow>> results(values.size());
  const std::string var = to_string(spec.variable);

  auto job = [&](std::size_t i) {
    try {
      const ScenarioConfig point_cfg = apply_sweep_value(cfg, spec.variable, values[i]);
      PointOptions po = spec.point;
      po.seed = derive_seed(spec.point.seed, i);
      results[i] = run_point(point_cfg, po, var, values[i]);
    } catch (const std::exception& e) {
      for (Method m : spec.point.methods) {
        ResultRow row;
        row.variable = var;
        row.value = values[i];
        row.method = m;
        row.status = std::string("error: ") + e.what();
        results[i].push_back(row);
      }
    }
  };

  unsigned workers = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, values.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < values.size(); ++i) job(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < values.size(); i = next++) job(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  std::vector<ResultRow> rows;
  for (auto& r : results) {
    for (auto& row : r) rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<DetectRow> run_detect_curve(const ScenarioConfig& cfg, const DetectCurveSpec& spec) {
  if (spec.steps < 1) throw ModelError("detection curve needs at least one step");
  const double eta = threshold_from_pfa(spec.pfa);
  const ChannelSet ch = scenario_channels(cfg, cfg.target_position());
  DesignOptions o;
  o.method = spec.method == Method::Bidirectional ? Method::AltMax : spec.method;
  o.altmax.tolerance = cfg.altmax_tolerance;
  o.altmax.max_sweeps = cfg.altmax_max_sweeps;
  o.seed = spec.seed;
  o.sdr.certify = false;
  const Design design = spec.method == Method::Bidirectional ? design_equal_phase(ch, o)
                                                            : design_independent(ch, o);
  const double scale = cfg.power.target_mean_square / cfg.power.noise_power;

  std::vector<std::pair<std::string, double>> curves;
  const Evaluation both = evaluate(ch, design.phases, Configuration::Both);
  curves.emplace_back("radar-only", scale * both.baseline_energy);
  curves.emplace_back("both", scale * both.energy);
  curves.emplace_back("forward-only",
                      scale * evaluate(ch, design.phases, Configuration::ForwardOnly).energy);
  curves.emplace_back("backward-only",
                      scale * evaluate(ch, design.phases, Configuration::BackwardOnly).energy);

  std::vector<DetectRow> rows;
  for (int i = 0; i < spec.steps; ++i) {
    const double offset =
        spec.steps == 1 ? spec.from_db : spec.from_db + (spec.to_db - spec.from_db) * i / (spec.steps - 1);
    for (const auto& [name, snr0] : curves) {
      const double s = snr0 * from_db(offset);
      rows.push_back({offset, name, s, pd_closed_form(spec.model, eta, s)});
    }
  }
  return rows;
}

}  // namespace risradar
