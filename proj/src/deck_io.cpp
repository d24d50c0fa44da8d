#include "cryomram/deck_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "cryomram/errors.hpp"

namespace cryomram::io {

namespace {

constexpr double kNano = 1e-9;
constexpr double kMicro = 1e-6;

/// Flat key/value view of a YAML map with consumption tracking, so that
/// misspelled keys are rejected instead of silently ignored.
class FlatReader {
public:
  FlatReader(const std::string& text, std::string source) : source_(std::move(source)) {
    try {
      root_ = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
      throw ParseError(where(e.mark) + e.msg);
    }
    if (!root_ || root_.IsNull()) throw ParseError(source_ + ": empty deck");
    if (!root_.IsMap()) throw ParseError(where(root_.Mark()) + "deck must be a key/value map");
  }

  bool has(const std::string& key) const { return static_cast<bool>(root_[key]); }

  double number(const std::string& key) {
    auto v = maybe(key);
    if (!v) throw ParseError(source_ + ": missing field '" + key + "'");
    return *v;
  }

  double number(const std::string& key, double fallback) { return maybe(key).value_or(fallback); }

  std::optional<double> maybe(const std::string& key) {
    const YAML::Node n = root_[key];
    if (!n) return std::nullopt;
    used_.insert(key);
    if (!n.IsScalar()) throw ParseError(where(n.Mark()) + "field '" + key + "' must be a number");
    try {
      return n.as<double>();
    } catch (const YAML::Exception&) {
      throw ParseError(where(n.Mark()) + "field '" + key + "': '" + n.Scalar() + "' is not a number");
    }
  }

  std::string text(const std::string& key, const std::string& fallback) {
    const YAML::Node n = root_[key];
    if (!n) return fallback;
    used_.insert(key);
    if (!n.IsScalar()) throw ParseError(where(n.Mark()) + "field '" + key + "' must be a string");
    return n.Scalar();
  }

  std::string text(const std::string& key) {
    if (!has(key)) throw ParseError(source_ + ": missing field '" + key + "'");
    return text(key, "");
  }

  /// Rejects keys that were never read.
  void finish() const {
    for (const auto& kv : root_) {
      const auto key = kv.first.Scalar();
      if (!used_.count(key)) throw ParseError(where(kv.first.Mark()) + "unknown field '" + key + "'");
    }
  }

  /// Runs `fn`, prefixing validation errors with the deck name.
  template <class Fn>
  void checked(Fn&& fn) const {
    try {
      fn();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(source_ + ": " + e.what());
    }
  }

private:
  std::string where(const YAML::Mark& m) const {
    if (m.is_null()) return source_ + ": ";
    return source_ + ":" + std::to_string(m.line + 1) + ": ";
  }

  std::string source_;
  YAML::Node root_;
  std::set<std::string> used_;
};

void read_barrier(FlatReader& r, const std::string& prefix, device::BarrierElectrical& b) {
  b.g_t = r.number(prefix + "_g_t_S");
  b.g_si = r.number(prefix + "_g_si_300K_S");
  b.g_si_exponent = r.number(prefix + "_g_si_exponent", b.g_si_exponent);
  b.v_h = r.number(prefix + "_v_h_V", b.v_h);
}

void read_transistor(FlatReader& r, const std::string& prefix, bitcell::TransistorParams& p) {
  p.temperature = r.number(prefix + "_temperature_K", p.temperature);
  p.v_th = r.number(prefix + "_v_th_V", p.v_th);
  p.k_gain = r.number(prefix + "_k_gain_A_per_V_alpha", p.k_gain);
  p.alpha_p = r.number(prefix + "_alpha_p", p.alpha_p);
  p.k_vdsat = r.number(prefix + "_k_vdsat_V", p.k_vdsat);
  p.lambda = r.number(prefix + "_lambda_per_V", p.lambda);
  p.i_off = r.number(prefix + "_i_off_A", p.i_off);
  p.ss_mv_per_dec = r.number(prefix + "_ss_mV_per_dec", p.ss_mv_per_dec);
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
  out.flush();
  if (!out) throw IoError("error writing '" + path + "'");
}

device::DeviceDeck parse_device_deck(const std::string& text, const std::string& source) {
  FlatReader r(text, source);
  device::DeviceDeck d;
  d.name = r.text("name");

  physics::MaterialDeck fit;
  fit.alpha = r.number("alpha", fit.alpha);
  fit.Aex = r.number("aex_J_per_m", fit.Aex);
  fit.beta = r.number("beta_per_K1_5", fit.beta);
  fit.Tstar = r.number("tstar_K", fit.Tstar);
  fit.ki_exponent = r.number("ki_exponent", fit.ki_exponent);
  if (r.has("anchor_temperature_K")) {
    const double t_anchor = r.number("anchor_temperature_K");
    const physics::MaterialAnchors a{r.number("polarization_at_anchor"), r.number("ms_at_anchor_T"),
                                     r.number("ki_at_anchor_J_per_m2")};
    r.checked([&] { d.material = physics::calibrate_deck(a, t_anchor, fit); });
  } else {
    d.material = fit;
    d.material.P0 = r.number("polarization_0K");
    d.material.Ms0 = r.number("ms_0K_T");
    d.material.Ki0 = r.number("ki_0K_J_per_m2");
  }

  d.geometry.diameter = r.number("diameter_nm") * kNano;
  d.geometry.t_fl = r.number("t_fl_nm") * kNano;
  d.geometry.t_ox_top = r.number("t_ox_top_nm") * kNano;
  d.geometry.t_ox_bottom = r.number("t_ox_bottom_nm") * kNano;
  d.geometry.ra_ohm_um2 = r.number("ra_ohm_um2", 0.0);

  const std::string mode = r.text("demag_mode", "fixed");
  if (mode == "fixed") {
    d.demag.mode = device::DemagModel::Mode::Fixed;
    d.demag.value = r.number("demag_nz_minus_nxy");
  } else if (mode == "aspect_ratio") {
    d.demag.mode = device::DemagModel::Mode::AspectRatio;
    d.demag.offset = r.number("demag_offset", 0.0);
  } else {
    throw ParseError(source + ": demag_mode must be 'fixed' or 'aspect_ratio', got '" + mode + "'");
  }

  read_barrier(r, "top", d.top);
  read_barrier(r, "bottom", d.bottom);
  d.max_bias = r.number("max_bias_V", d.max_bias);
  r.finish();
  r.checked([&] { device::validate(d); });
  return d;
}

device::DeviceDeck load_device_deck(const std::string& path) {
  return parse_device_deck(read_file(path), path);
}

std::string to_yaml(const device::DeviceDeck& d) {
  std::ostringstream os;
  const auto kv = [&](const char* key, double v) { os << key << ": " << format_double(v) << "\n"; };
  os << "name: " << d.name << "\n";
  kv("polarization_0K", d.material.P0);
  kv("ms_0K_T", d.material.Ms0);
  kv("ki_0K_J_per_m2", d.material.Ki0);
  kv("alpha", d.material.alpha);
  kv("aex_J_per_m", d.material.Aex);
  kv("beta_per_K1_5", d.material.beta);
  kv("tstar_K", d.material.Tstar);
  kv("ki_exponent", d.material.ki_exponent);
  kv("diameter_nm", d.geometry.diameter / kNano);
  kv("t_fl_nm", d.geometry.t_fl / kNano);
  kv("t_ox_top_nm", d.geometry.t_ox_top / kNano);
  kv("t_ox_bottom_nm", d.geometry.t_ox_bottom / kNano);
  kv("ra_ohm_um2", d.geometry.ra_ohm_um2);
  if (d.demag.mode == device::DemagModel::Mode::Fixed) {
    os << "demag_mode: fixed\n";
    kv("demag_nz_minus_nxy", d.demag.value);
  } else {
    os << "demag_mode: aspect_ratio\n";
    kv("demag_offset", d.demag.offset);
  }
  for (const auto& [prefix, b] : {std::pair{"top", &d.top}, std::pair{"bottom", &d.bottom}}) {
    const std::string p = prefix;
    kv((p + "_g_t_S").c_str(), b->g_t);
    kv((p + "_g_si_300K_S").c_str(), b->g_si);
    kv((p + "_g_si_exponent").c_str(), b->g_si_exponent);
    kv((p + "_v_h_V").c_str(), b->v_h);
  }
  kv("max_bias_V", d.max_bias);
  return os.str();
}

bitcell::AccessTransistorModel parse_transistor_deck(const std::string& text, const std::string& source) {
  FlatReader r(text, source);
  bitcell::AccessTransistorModel m;
  r.text("name", "");
  read_transistor(r, "warm", m.warm);
  read_transistor(r, "cold", m.cold);
  m.width_scale = r.number("width_scale", m.width_scale);
  r.finish();
  r.checked([&] { bitcell::validate(m); });
  return m;
}

bitcell::AccessTransistorModel load_transistor_deck(const std::string& path) {
  return parse_transistor_deck(read_file(path), path);
}

bitcell::VariabilityDeck parse_variability_deck(const std::string& text, const std::string& source) {
  FlatReader r(text, source);
  bitcell::VariabilityDeck v;
  r.text("name", "");
  v.sigma_over_mu_area = r.number("sigma_over_mu_area", v.sigma_over_mu_area);
  v.sigma_over_mu_thickness = r.number("sigma_over_mu_thickness", v.sigma_over_mu_thickness);
  v.transistor_vth_sigma = r.number("transistor_vth_sigma_V", v.transistor_vth_sigma);
  v.truncation = r.number("truncation_sigma", v.truncation);
  v.barrier_decay_length = r.number("barrier_decay_length_nm", v.barrier_decay_length / kNano) * kNano;
  const double seed = r.number("rng_seed", static_cast<double>(v.rng_seed));
  if (!(seed >= 0.0) || seed != std::floor(seed)) throw ParseError(source + ": rng_seed must be a non-negative integer");
  v.rng_seed = static_cast<std::uint64_t>(seed);
  r.finish();
  r.checked([&] { bitcell::validate(v); });
  return v;
}

bitcell::VariabilityDeck load_variability_deck(const std::string& path) {
  return parse_variability_deck(read_file(path), path);
}

arch::TechnologyDeck parse_technology_deck(const std::string& text, const std::string& source) {
  FlatReader r(text, source);
  arch::TechnologyDeck t;
  t.name = r.text("name");
  t.temperature = r.number("temperature_K");
  t.feature_size = r.number("feature_size_nm", t.feature_size / kNano) * kNano;
  t.vdd = r.number("vdd_V", t.vdd);
  t.v_th = r.number("v_th_V", t.v_th);
  t.i_on_per_um = r.number("i_on_A_per_um", t.i_on_per_um);
  t.i_off_per_um = r.number("i_off_A_per_um", t.i_off_per_um);
  t.pmos_drive_ratio = r.number("pmos_drive_ratio", t.pmos_drive_ratio);
  t.pmos_off_ratio = r.number("pmos_off_ratio", t.pmos_off_ratio);
  t.c_gate_per_um = r.number("c_gate_F_per_um", t.c_gate_per_um);
  t.c_drain_per_um = r.number("c_drain_F_per_um", t.c_drain_per_um);
  t.mobility_factor = r.number("mobility_factor", t.mobility_factor);
  t.wire_r_per_m_300k = r.number("wire_r_ohm_per_m_300K", t.wire_r_per_m_300k);
  t.wire_resistivity_scale = r.number("wire_resistivity_scale", t.wire_resistivity_scale);
  t.wire_c_per_m = r.number("wire_c_F_per_m", t.wire_c_per_m);
  t.min_width = r.number("min_width_nm", t.min_width / kNano) * kNano;
  t.sense_min_swing = r.number("sense_min_swing_V", t.sense_min_swing);
  t.sense_amp_width = r.number("sense_amp_width_um", t.sense_amp_width / kMicro) * kMicro;
  t.driver_fanout = r.number("driver_fanout", t.driver_fanout);
  r.finish();
  r.checked([&] { arch::validate(t); });
  return t;
}

arch::TechnologyDeck load_technology_deck(const std::string& path) {
  return parse_technology_deck(read_file(path), path);
}

arch::SramCellDeck parse_sram_deck(const std::string& text, const std::string& source) {
  FlatReader r(text, source);
  arch::SramCellDeck d;
  d.name = r.text("name", d.name);
  d.cell_area_f2 = r.number("cell_area_F2", d.cell_area_f2);
  d.read_width = r.number("read_width_nm", d.read_width / kNano) * kNano;
  d.leakage_width = r.number("leakage_width_nm", d.leakage_width / kNano) * kNano;
  d.bitline_swing = r.number("bitline_swing_V", d.bitline_swing);
  d.access_width = r.number("access_width", d.access_width);
  r.finish();
  r.checked([&] { arch::validate(d); });
  return d;
}

arch::SramCellDeck load_sram_deck(const std::string& path) { return parse_sram_deck(read_file(path), path); }

bitcell::BitcellDeck load_bitcell_deck(const std::string& path) {
  try {
    return bitcell::bitcell_deck_from_json(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace cryomram::io
