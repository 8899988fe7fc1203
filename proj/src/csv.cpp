#include <charconv>
#include <cmath>
#include <fstream>

#include "risradar/experiment.hpp"

namespace risradar {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::string db(double linear) { return format_number(to_db(linear)); }

std::string quoted(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::vector<std::string> csv_header(bool timing) {
  std::vector<std::string> h{"variable",       "value",          "method",
                             "design",         "designed_for",   "configuration",
                             "label",          "gain_db",        "gain_rr_db",
                             "gain_sr_db",     "gain_rs_db",     "gain_ss_db",
                             "snr_db",         "baseline_snr_db", "max_bandwidth_hz",
                             "delay_spread_s", "iterations",     "status"};
  if (timing) h.push_back("wall_time_s");
  return h;
}

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out, bool timing) {
  const auto header = csv_header(timing);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& r : rows) {
    const bool ok = r.status == "ok";
    auto num = [&](const std::string& s) { return ok ? s : std::string(); };
    out << r.variable << ',' << format_number(r.value) << ',' << to_string(r.method) << ','
        << r.design << ',' << r.designed_for << ',' << to_string(r.configuration) << ','
        << quoted(r.label) << ',' << num(db(r.gain)) << ',' << num(db(r.gain_rr)) << ','
        << num(db(r.gain_sr)) << ',' << num(db(r.gain_rs)) << ',' << num(db(r.gain_ss)) << ','
        << num(db(r.snr)) << ',' << num(db(r.baseline_snr)) << ','
        << num(format_number(r.max_bandwidth_hz)) << ',' << num(format_number(r.delay_spread_s))
        << ',' << r.iterations << ',' << quoted(r.status);
    if (timing) out << ',' << format_number(r.wall_time_s);
    out << '\n';
  }
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path, bool timing) {
  if (rows.empty()) throw ModelError("no rows to write");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ModelError("cannot open " + path + " for writing");
  write_csv(rows, out, timing);
  out.flush();
  if (!out) throw ModelError("failed writing " + path);
}

void write_detect_csv(const std::vector<DetectRow>& rows, const DetectCurveSpec& spec,
                      std::ostream& out) {
  out << "power_offset_db,configuration,snr_db,pd,pfa,model\n";
  for (const auto& r : rows) {
    out << format_number(r.power_offset_db) << ',' << r.configuration << ','
        << format_number(to_db(r.snr)) << ',' << format_number(r.pd) << ','
        << format_number(spec.pfa) << ',' << to_string(spec.model) << '\n';
  }
}

}  // namespace risradar
