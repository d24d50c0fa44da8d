#include "cryomram/report_io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace cryomram::io {

namespace {

using nlohmann::ordered_json;

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fmt(double v) { return format_number(v); }

ordered_json characteristics_object(const device::DeviceCharacteristics& c) {
  ordered_json j;
  j["diameter_nm"] = c.diameter * 1e9;
  j["temperature_K"] = c.temperature;
  j["polarization"] = c.polarization;
  j["ms_T"] = c.ms_tesla;
  j["ki_J_per_m2"] = c.ki;
  j["r_low_ohm"] = c.r_low;
  j["r_high_ohm"] = c.r_high;
  j["tmr0_percent"] = 100.0 * c.tmr0;
  j["g_stt"] = c.g_stt;
  j["i_c_A"] = c.i_c;
  j["delta"] = c.delta;
  j["regime"] = device::to_string(c.regime);
  j["h_k_eff_A_per_m"] = c.h_k_eff;
  j["k_eff_J_per_m3"] = c.k_eff;
  j["d_w_nm"] = c.d_w * 1e9;
  j["nz_minus_nxy"] = c.nz_minus_nxy;
  j["ten_year_retention"] = c.ten_year_retention;
  return j;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::row(const std::vector<std::string>& cells) {
  if (cells.size() != header_.size()) {
    throw std::invalid_argument("CSV row has " + std::to_string(cells.size()) + " cells, header has " +
                                std::to_string(header_.size()));
  }
  rows_.push_back(cells);
  return *this;
}

std::string CsvTable::str() const {
  std::ostringstream os;
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_escape(cells[i]);
    os << "\n";
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return os.str();
}

std::string characteristics_csv(const std::vector<device::DeviceCharacteristics>& rows) {
  CsvTable t({"diameter_nm", "temperature_K", "polarization", "ms_T", "ki_J_per_m2", "r_low_ohm",
              "r_high_ohm", "tmr0_percent", "g_stt", "i_c_A", "delta", "regime", "h_k_eff_A_per_m",
              "k_eff_J_per_m3", "d_w_nm", "nz_minus_nxy", "ten_year_retention"});
  for (const auto& c : rows) {
    t.row({fmt(c.diameter * 1e9), fmt(c.temperature), fmt(c.polarization), fmt(c.ms_tesla), fmt(c.ki),
           fmt(c.r_low), fmt(c.r_high), fmt(100.0 * c.tmr0), fmt(c.g_stt), fmt(c.i_c), fmt(c.delta),
           device::to_string(c.regime), fmt(c.h_k_eff), fmt(c.k_eff), fmt(c.d_w * 1e9),
           fmt(c.nz_minus_nxy), c.ten_year_retention ? "true" : "false"});
  }
  return t.str();
}

std::string characteristics_json(const std::vector<device::DeviceCharacteristics>& rows) {
  ordered_json j = ordered_json::array();
  for (const auto& c : rows) j.push_back(characteristics_object(c));
  return j.dump(2) + "\n";
}

std::string sweep_csv(const std::vector<SweepPoint>& rows) {
  CsvTable t({"diameter_nm", "temperature_K", "delta", "i_c_A", "regime"});
  for (const auto& p : rows) {
    t.row({fmt(p.diameter * 1e9), fmt(p.temperature), fmt(p.delta), fmt(p.i_c), device::to_string(p.regime)});
  }
  return t.str();
}

std::string sweep_json(const std::vector<SweepPoint>& rows) {
  ordered_json j = ordered_json::array();
  for (const auto& p : rows) {
    j.push_back({{"diameter_nm", p.diameter * 1e9},
                 {"temperature_K", p.temperature},
                 {"delta", p.delta},
                 {"i_c_A", p.i_c},
                 {"regime", device::to_string(p.regime)}});
  }
  return j.dump(2) + "\n";
}

std::string wer_csv(const switching::WerCurve& curve) {
  CsvTable t({"t_p", "wer", "method", "trials", "ci_low", "ci_high"});
  for (const auto& p : curve.points) {
    t.row({fmt(p.t_p), fmt(p.wer), switching::to_string(p.method), std::to_string(p.trials),
           fmt(p.ci_low), fmt(p.ci_high)});
  }
  return t.str();
}

std::string wer_json(const switching::WerCurve& curve, double i_write) {
  ordered_json j;
  j["i_write_A"] = i_write;
  j["method"] = switching::to_string(curve.method);
  j["trials"] = curve.trials;
  ordered_json pts = ordered_json::array();
  for (const auto& p : curve.points) {
    pts.push_back({{"t_p_s", p.t_p},
                   {"wer", p.wer},
                   {"method", switching::to_string(p.method)},
                   {"trials", p.trials},
                   {"ci_low", p.ci_low},
                   {"ci_high", p.ci_high}});
  }
  j["points"] = pts;
  return j.dump(2) + "\n";
}

std::string switching_samples_csv(const std::vector<switching::SwitchingSample>& samples) {
  CsvTable t({"trial", "switched", "t_switch_s", "initial_angle_rad"});
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    t.row({std::to_string(i), s.switched ? "1" : "0", s.switched ? fmt(s.t_switch) : "",
           fmt(s.initial_angle)});
  }
  return t.str();
}

std::string write_samples_csv(const std::vector<bitcell::WriteSample>& samples) {
  CsvTable t({"trial", "i_lh_A", "i_hl_A", "t_lh_s", "t_hl_s", "t_p_s", "energy_J", "failed"});
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    t.row({std::to_string(i), fmt(s.i_lh), fmt(s.i_hl), fmt(s.t_lh), fmt(s.t_hl), fmt(s.t_p), fmt(s.energy),
           s.failed ? "1" : "0"});
  }
  return t.str();
}

std::string read_samples_csv(const std::vector<bitcell::ReadSample>& samples) {
  CsvTable t({"trial", "v_lrs_V", "v_hrs_V"});
  for (std::size_t i = 0; i < samples.size(); ++i) {
    t.row({std::to_string(i), fmt(samples[i].v_lrs), fmt(samples[i].v_hrs)});
  }
  return t.str();
}

std::string bitcell_report_csv(const bitcell::BitcellReport& r) {
  CsvTable t({"name", "temperature_K", "vdd_V", "i_write_lh_A", "i_write_hl_A", "t_p_nominal_s", "t_p_6sigma_s",
              "t_p_max_s", "write_energy_avg_J", "i_read_A", "t_read_s", "read_power_W", "v_sm_nominal_V",
              "v_sm_3sigma_V", "lrs_eff_ohm", "hrs_eff_ohm", "trials", "failed_samples", "sense_failure"});
  t.row({r.name, fmt(r.temperature), fmt(r.vdd), fmt(r.i_write_lh), fmt(r.i_write_hl), fmt(r.t_p_nominal),
         fmt(r.t_p_6sigma), fmt(r.t_p_max), fmt(r.write_energy_avg), fmt(r.i_read), fmt(r.t_read),
         fmt(r.read_power), fmt(r.v_sm_nominal), fmt(r.v_sm_3sigma), fmt(r.lrs_eff), fmt(r.hrs_eff),
         std::to_string(r.trials), std::to_string(r.failed_samples), r.sense_failure ? "true" : "false"});
  return t.str();
}

std::string benchmark_csv(const std::vector<arch::BenchmarkRow>& rows) {
  CsvTable t({"capacity", "metric", "mram40", "mram13", "sram", "mram40_norm", "mram13_norm"});
  for (const auto& r : rows) {
    t.row({std::to_string(r.capacity), r.metric, fmt(r.mram40), fmt(r.mram13), fmt(r.sram),
           fmt(r.mram40_norm), fmt(r.mram13_norm)});
  }
  return t.str();
}

std::string benchmark_json(const std::vector<arch::BenchmarkRow>& rows) {
  ordered_json j = ordered_json::array();
  for (const auto& r : rows) {
    j.push_back({{"capacity", r.capacity},
                 {"metric", r.metric},
                 {"mram40", r.mram40},
                 {"mram13", r.mram13},
                 {"sram", r.sram},
                 {"mram40_norm", r.mram40_norm},
                 {"mram13_norm", r.mram13_norm}});
  }
  return j.dump(2) + "\n";
}

std::string manifest_json(const RunManifest& m) {
  ordered_json j;
  j["command"] = m.command;
  j["inputs"] = m.inputs;
  j["seed"] = m.seed;
  j["output_directory"] = m.output_directory;
  j["tool_version"] = m.tool_version;
  j["timestamp"] = m.timestamp;
  j["outputs"] = m.outputs;
  return j.dump(2) + "\n";
}

}  // namespace cryomram::io
