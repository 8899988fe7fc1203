#include "cli.hpp"

#include <fstream>
#include <iomanip>

#include <CLI11.hpp>

#include "risradar/experiment.hpp"
#include "risradar/random.hpp"

namespace risradar {

namespace {

void print_far_field(const LoadedScenario& s, std::ostream& out) {
  const auto& r = s.far_field;
  out << "far-field checks (own boundary evaluation):\n";
  for (const auto& c : r.checks) {
    out << "  " << std::left << std::setw(34) << c.name;
    if (!c.applicable) {
      out << "n/a\n";
      continue;
    }
    out << (c.pass ? "pass" : "FAIL") << "  distance " << c.lhs << " m, bound " << c.rhs << " m\n";
  }
  for (const auto& a : r.aspect) {
    out << "  " << std::left << std::setw(34) << a.name;
    if (!a.applicable) {
      out << "n/a\n";
      continue;
    }
    out << (a.pass ? "pass" : "FAIL") << "  max angle " << a.max_angle << " rad, lambda/D_t "
        << a.resolution << " rad\n";
  }
  out << "  element-level threshold: tx " << r.min_separation_tx << " m, rx "
      << r.min_separation_rx << " m (nominal " << s.config.nominal_min_separation_m << " m)\n";
  out << "  radar-RIS far-field distance 2 max(D_r, D_s)^2 / lambda: tx "
      << r.radar_ris_far_field_tx << " m, rx " << r.radar_ris_far_field_rx << " m\n";
}

int cmd_validate(const std::string& path, std::ostream& out) {
  const LoadedScenario s = load_scenario_with_report(path);
  const auto& c = s.config;
  out << "scenario " << (c.name.empty() ? path : c.name) << " is valid\n";
  out << "  mode " << (c.shared_ris() ? "monostatic" : "bistatic") << ", carrier "
      << c.carrier_frequency_hz << " Hz, wavelength " << c.wavelength() << " m\n";
  out << "  transmit elements " << c.transmitter.elements << ", receive elements "
      << c.receiver.elements << "\n";
  auto ris = [&](const char* name, const RisConfig& r) {
    out << "  " << name << ": ";
    if (!r.enabled) {
      out << "absent\n";
      return;
    }
    out << r.side_elements * r.side_elements << " elements at " << r.distance_m << " m\n";
  };
  ris("forward RIS", c.forward_ris);
  if (!c.shared_ris()) ris("backward RIS", c.backward_ris);
  print_far_field(s, out);
  for (const auto& w : s.warnings) out << "warning: " << w << "\n";
  return 0;
}

void print_rows(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << std::left << std::setw(14) << "method" << std::setw(13) << "design" << std::setw(12)
      << "config" << std::setw(26) << "label" << std::right << std::setw(12) << "gain_dB"
      << std::setw(12) << "snr_dB" << std::setw(16) << "max_bw_Hz" << "\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(14) << to_string(r.method) << std::setw(13) << r.design
        << std::setw(12) << to_string(r.configuration) << std::setw(26) << r.label << std::right
        << std::setw(12) << std::setprecision(6) << to_db(r.gain) << std::setw(12)
        << to_db(r.snr) << std::setw(16) << r.max_bandwidth_hz;
    if (r.status != "ok") out << "  " << r.status;
    out << "\n";
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"RIS-aided MIMO radar simulator"};
  app.require_subcommand(1);

  std::string scenario;
  auto* validate = app.add_subcommand("validate", "Check a scenario file and report far-field conditions");
  validate->add_option("scenario", scenario, "Scenario JSON file")->required();

  std::string method_list = "altmax";
  unsigned long long seed = 1;
  std::string phases_out;
  auto* optimize = app.add_subcommand("optimize", "Design phases for the scenario's target");
  optimize->add_option("scenario", scenario, "Scenario JSON file")->required();
  optimize->add_option("--method", method_list, "altmax|sdr|rank1|bidirectional (comma list)");
  optimize->add_option("--seed", seed, "Random seed");
  optimize->add_option("--phases-out", phases_out, "Write the designed phases as CSV");
  bool certify = false;
  optimize->add_flag("--certify", certify, "Evaluate the pi/4 certificate for SDR designs");

  std::string var = "distance", configs = "all", csv_out;
  double from = 0.0, to = 0.0;
  int steps = 1;
  unsigned threads = 0;
  bool timing = false, design_cell = false;
  auto* sweep = app.add_subcommand("sweep", "Sweep one parameter and write result rows");
  sweep->add_option("scenario", scenario, "Scenario JSON file")->required();
  sweep->add_option("--var", var, "distance|size|position|rx-elements")->required();
  sweep->add_option("--from", from, "First sweep value")->required();
  sweep->add_option("--to", to, "Last sweep value")->required();
  sweep->add_option("--steps", steps, "Number of sweep values")->required();
  sweep->add_option("--configs", configs, "all or comma list of both|forward|backward");
  sweep->add_option("--method", method_list, "altmax|sdr|rank1|bidirectional (comma list)");
  sweep->add_option("--seed", seed, "Random seed");
  sweep->add_option("--threads", threads, "Worker threads (0 = hardware)");
  sweep->add_flag("--timing", timing, "Append wall-time column (output no longer byte-stable)");
  sweep->add_flag("--design-cell", design_cell,
                  "Also evaluate the design made for the scenario's design cell");
  sweep->add_option("--out", csv_out, "Output CSV")->required();

  double pfa = 1e-6;
  std::string model = "nonfluct";
  double from_db = -40.0, to_db = 20.0;
  int curve_steps = 61;
  auto* curve = app.add_subcommand("detect-curve", "Detection probability versus transmit power");
  curve->add_option("scenario", scenario, "Scenario JSON file")->required();
  curve->add_option("--pfa", pfa, "False-alarm probability")->required();
  curve->add_option("--model", model, "nonfluct|exp|gamma")->required();
  curve->add_option("--from", from_db, "First power offset (dB)");
  curve->add_option("--to", to_db, "Last power offset (dB)");
  curve->add_option("--steps", curve_steps, "Number of offsets");
  curve->add_option("--method", method_list, "altmax|sdr|rank1|bidirectional");
  curve->add_option("--seed", seed, "Random seed");
  curve->add_option("--out", csv_out, "Output CSV")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 1;
  }

  try {
    if (validate->parsed()) return cmd_validate(scenario, out);

    if (optimize->parsed()) {
      const LoadedScenario s = load_scenario_with_report(scenario);
      for (const auto& w : s.warnings) err << "warning: " << w << "\n";
      PointOptions po;
      po.methods = parse_methods(method_list);
      po.seed = seed;
      po.certify_sdr = certify;
      print_rows(run_point(s.config, po), out);
      if (!phases_out.empty()) {
        const ChannelSet ch = scenario_channels(s.config, s.config.design_position());
        std::ofstream f(phases_out);
        if (!f) throw ModelError("cannot open " + phases_out);
        f << "method,design,side,element,phase_rad\n";
        for (Method m : po.methods) {
          DesignOptions o;
          o.method = m;
          o.seed = derive_seed(seed, static_cast<std::uint64_t>(m) + 11);
          o.altmax.tolerance = s.config.altmax_tolerance;
          o.altmax.max_sweeps = s.config.altmax_max_sweeps;
          o.sdr.certify = false;
          std::vector<Design> designs{design_independent(ch, o)};
          if (m == Method::Bidirectional) designs.push_back(design_equal_phase(ch, o));
          for (const auto& d : designs) {
            for (Eigen::Index n = 0; n < d.phases.forward.size(); ++n) {
              f << to_string(m) << ',' << d.name << ",forward," << n << ','
                << format_number(d.phases.forward[n]) << '\n';
            }
            for (Eigen::Index n = 0; n < d.phases.backward.size(); ++n) {
              f << to_string(m) << ',' << d.name << ",backward," << n << ','
                << format_number(d.phases.backward[n]) << '\n';
            }
          }
        }
      }
      return 0;
    }

    if (sweep->parsed()) {
      const LoadedScenario s = load_scenario_with_report(scenario);
      for (const auto& w : s.warnings) err << "warning: " << w << "\n";
      SweepSpec spec;
      spec.variable = parse_sweep_variable(var);
      spec.from = from;
      spec.to = to;
      spec.steps = steps;
      spec.threads = threads;
      spec.timing = timing;
      spec.point.methods = parse_methods(method_list);
      spec.point.configurations = parse_configurations(configs);
      spec.point.seed = seed;
      spec.point.include_design_cell = design_cell;
      const auto rows = run_sweep(s.config, spec);
      emit_csv(rows, csv_out, timing);
      out << "wrote " << rows.size() << " rows to " << csv_out << "\n";
      return 0;
    }

    if (curve->parsed()) {
      const LoadedScenario s = load_scenario_with_report(scenario);
      DetectCurveSpec spec;
      spec.pfa = pfa;
      spec.model = parse_fluctuation_model(model);
      spec.from_db = from_db;
      spec.to_db = to_db;
      spec.steps = curve_steps;
      spec.method = parse_method(method_list);
      spec.seed = seed;
      const auto rows = run_detect_curve(s.config, spec);
      std::ofstream f(csv_out, std::ios::binary);
      if (!f) throw ModelError("cannot open " + csv_out);
      write_detect_csv(rows, spec, f);
      out << "wrote " << rows.size() << " rows to " << csv_out << "\n";
      return 0;
    }
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace risradar
