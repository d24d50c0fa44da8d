#include "cryomram/bitcell.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <boost/math/tools/roots.hpp>
#include "json.hpp"

#include "cryomram/errors.hpp"
#include "cryomram/parallel.hpp"
#include "cryomram/rng.hpp"

namespace cryomram::bitcell {

namespace {

using device::ResistanceState;

constexpr double kCurrentTolerance = 1e-9;
constexpr double kRailHigh = 1.2;  // V

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v, double mu) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double median(std::vector<double> v) {
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  return 0.5 * (*mid + *std::max_element(v.begin(), mid));
}

void check_config(const BitcellConfig& cfg) {
  if (!(cfg.vdd > 0.0)) throw ConfigError("supply voltage must be positive");
  if (!(cfg.wer_target > 0.0 && cfg.wer_target < 0.5)) throw ConfigError("wer_target must be in (0, 0.5)");
  if (!(cfg.rdr_target > 0.0 && cfg.rdr_target < 1.0)) throw ConfigError("rdr_target must be in (0, 1)");
  if (!(cfg.t_read > 0.0)) throw ConfigError("t_read must be positive");
  if (!(cfg.pulse_budget > 0.0)) throw ConfigError("pulse budget must be positive");
}

/// V_ds at which the access device, gate at vdd and source grounded, carries `current`.
double drain_voltage_at(const TransistorParams& t, double vdd, double current, double width,
                        double vth_shift) {
  double lo = 0.0;
  double hi = vdd;
  if (drain_current(t, vdd, hi, width, vth_shift) < current) {
    throw DomainError("read current exceeds the access transistor drive");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    (drain_current(t, vdd, mid, width, vth_shift) < current ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

void validate(const VariabilityDeck& v) {
  if (!(v.sigma_over_mu_area >= 0.0)) throw ConfigError("sigma_over_mu_area must be non-negative");
  if (!(v.sigma_over_mu_thickness >= 0.0)) {
    throw ConfigError("sigma_over_mu_thickness must be non-negative");
  }
  if (!(v.transistor_vth_sigma >= 0.0)) throw ConfigError("transistor_vth_sigma must be non-negative");
  if (!(v.truncation > 0.0)) throw ConfigError("truncation must be positive");
  if (!(v.barrier_decay_length > 0.0)) throw ConfigError("barrier_decay_length must be positive");
  // A -4 sigma draw must still leave a physical device.
  if (v.truncation * std::max(v.sigma_over_mu_area, v.sigma_over_mu_thickness) >= 1.0) {
    throw ConfigError("relative variability too large for the truncation bound");
  }
}

ProcessSample draw_sample(const VariabilityDeck& v, std::uint64_t index) {
  PhiloxStream rng(v.rng_seed, index);
  ProcessSample s;
  s.area = 1.0 + v.sigma_over_mu_area * rng.truncated_normal(v.truncation);
  s.t_fl = 1.0 + v.sigma_over_mu_thickness * rng.truncated_normal(v.truncation);
  s.t_ox_top = 1.0 + v.sigma_over_mu_thickness * rng.truncated_normal(v.truncation);
  s.t_ox_bottom = 1.0 + v.sigma_over_mu_thickness * rng.truncated_normal(v.truncation);
  s.vth_shift = v.transistor_vth_sigma * rng.truncated_normal(v.truncation);
  return s;
}

device::DeviceDeck perturb(const device::DeviceDeck& nominal, const ProcessSample& s,
                           double barrier_decay_length) {
  device::DeviceDeck d = nominal;
  auto& g = d.geometry;
  g.diameter *= std::sqrt(s.area);
  g.t_fl *= s.t_fl;
  const double dt_top = nominal.geometry.t_ox_top * (s.t_ox_top - 1.0);
  const double dt_bottom = nominal.geometry.t_ox_bottom * (s.t_ox_bottom - 1.0);
  g.t_ox_top += dt_top;
  g.t_ox_bottom += dt_bottom;
  const double top = s.area * std::exp(-dt_top / barrier_decay_length);
  const double bottom = s.area * std::exp(-dt_bottom / barrier_decay_length);
  d.top.g_t *= top;
  d.top.g_si *= top;
  d.bottom.g_t *= bottom;
  d.bottom.g_si *= bottom;
  return d;
}

OperatingPoint solve_series(const ElementCurrent& element, const TransistorParams& t, double wl_v,
                            double bl_v, double sl_v, double width_scale, double vth_shift) {
  for (double v : {wl_v, bl_v, sl_v}) {
    if (!(v >= 0.0 && v <= kRailHigh + 1e-12)) {
      throw DomainError("terminal voltage " + std::to_string(v) + " V outside the [0, 1.2] V rails");
    }
  }
  OperatingPoint op;
  if (bl_v == sl_v) {
    op.v_x = bl_v;
    return op;
  }

  const auto mismatch = [&](double x) {
    return element(bl_v - x) - channel_current(t, wl_v, x, sl_v, width_scale, vth_shift);
  };
  const double lo = std::min(bl_v, sl_v);
  const double hi = std::max(bl_v, sl_v);
  const double f_lo = mismatch(lo);
  const double f_hi = mismatch(hi);
  if (f_lo * f_hi > 0.0) {
    std::ostringstream os;
    os << "bitcell operating point not bracketed: f(" << lo << ")=" << f_lo << ", f(" << hi
       << ")=" << f_hi;
    throw SolverError(os.str());
  }

  std::uintmax_t iterations = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      mismatch, lo, hi, f_lo, f_hi, boost::math::tools::eps_tolerance<double>(50), iterations);
  op.v_x = 0.5 * (a + b);
  op.iterations = static_cast<int>(iterations);

  const double i_elem = element(bl_v - op.v_x);
  const double i_tr = channel_current(t, wl_v, op.v_x, sl_v, width_scale, vth_shift);
  const double scale = std::max(std::abs(i_elem), std::abs(i_tr));
  if (scale > 0.0 && std::abs(i_elem - i_tr) / scale > kCurrentTolerance) {
    std::ostringstream os;
    os << "bitcell operating point did not converge: bracket [" << a << ", " << b
       << "] V, element " << i_elem << " A vs channel " << i_tr << " A after " << iterations
       << " iterations";
    throw SolverError(os.str());
  }
  op.i_cell = i_elem;
  op.v_dmtj = bl_v - op.v_x;
  op.v_ds = op.v_x - sl_v;
  return op;
}

OperatingPoint solve_bitcell(const device::DeviceDeck& dmtj, const AccessTransistorModel& transistor,
                             double temperature, double wl_v, double bl_v, double sl_v,
                             ResistanceState state, double vth_shift) {
  const auto& params = transistor.at(temperature);
  const ElementCurrent element = [&](double v) {
    return device::device_resistance(dmtj, state, temperature, v).current;
  };
  return solve_series(element, params, wl_v, bl_v, sl_v, transistor.width_scale, vth_shift);
}

OperatingPoint write_point(const device::DeviceDeck& dmtj, const AccessTransistorModel& transistor,
                           const BitcellConfig& cfg, Transition tr, double vth_shift) {
  if (tr == Transition::LowToHigh) {
    return solve_bitcell(dmtj, transistor, cfg.temperature, cfg.vdd, 0.0, cfg.vdd,
                         ResistanceState::Low, vth_shift);
  }
  return solve_bitcell(dmtj, transistor, cfg.temperature, cfg.vdd, cfg.vdd, 0.0,
                       ResistanceState::High, vth_shift);
}

WriteSample write_sample(const device::DeviceDeck& dmtj, const AccessTransistorModel& transistor,
                         const BitcellConfig& cfg, double vth_shift) {
  WriteSample s;
  s.i_lh = std::abs(write_point(dmtj, transistor, cfg, Transition::LowToHigh, vth_shift).i_cell);
  s.i_hl = std::abs(write_point(dmtj, transistor, cfg, Transition::HighToLow, vth_shift).i_cell);
  const auto dev = switching::macrospin_from(dmtj, cfg.temperature);
  const switching::PulseOptions opts{cfg.pulse_budget, cfg.activation};
  try {
    s.t_lh = switching::pulse_for_wer(dev, s.i_lh, cfg.wer_target, opts);
    s.t_hl = switching::pulse_for_wer(dev, s.i_hl, cfg.wer_target, opts);
  } catch (const NumericalError&) {
    s.failed = true;
    return s;
  }
  s.t_p = std::max(s.t_lh, s.t_hl);
  s.energy = cfg.vdd * 0.5 * (s.i_lh + s.i_hl) * s.t_p;
  return s;
}

WriteAnalysis write_analysis(const device::DeviceDeck& dmtj, const AccessTransistorModel& transistor,
                             const VariabilityDeck& variability, const BitcellConfig& cfg,
                             std::size_t mc_trials) {
  device::validate(dmtj);
  validate(transistor);
  validate(variability);
  check_config(cfg);

  WriteAnalysis out;
  out.nominal = write_sample(dmtj, transistor, cfg);
  if (out.nominal.failed) {
    throw NumericalError("nominal bitcell does not reach the WER target within the pulse budget");
  }
  out.samples.resize(mc_trials);
  parallel_for(mc_trials, cfg.threads, [&](std::size_t i) {
    const auto ps = draw_sample(variability, i);
    const auto deck = perturb(dmtj, ps, variability.barrier_decay_length);
    out.samples[i] = write_sample(deck, transistor, cfg, ps.vth_shift);
  });

  std::vector<double> tp;
  std::vector<double> energy;
  std::size_t lh_worse = 0;
  for (const auto& s : out.samples) {
    if (s.failed) {
      ++out.failed;
      continue;
    }
    tp.push_back(s.t_p);
    energy.push_back(s.energy);
    if (s.t_lh >= s.t_hl) ++lh_worse;
  }
  if (tp.empty()) {
    tp.push_back(out.nominal.t_p);
    energy.push_back(out.nominal.energy);
    lh_worse = out.nominal.t_lh >= out.nominal.t_hl ? 1 : 0;
  }
  out.t_p_mean = mean(tp);
  out.t_p_sigma = stddev(tp, out.t_p_mean);
  out.t_p_median = median(tp);
  out.t_p_6sigma = out.t_p_mean + 6.0 * out.t_p_sigma;
  out.t_p_max = *std::max_element(tp.begin(), tp.end());
  out.energy_avg = mean(energy);
  out.worst_transition = 2 * lh_worse >= tp.size() ? "LRS->HRS" : "HRS->LRS";
  return out;
}

double read_voltage(const device::DeviceDeck& dmtj, const AccessTransistorModel& transistor,
                    const BitcellConfig& cfg, ResistanceState state, double i_read,
                    double vth_shift) {
  if (i_read == 0.0) return 0.0;
  const auto& params = transistor.at(cfg.temperature);
  const auto sol = device::device_voltage_at_current(dmtj, state, cfg.temperature, i_read);
  const double v_ds = drain_voltage_at(params, cfg.vdd, i_read, transistor.width_scale, vth_shift);
  return sol.v_ox_top + sol.v_ox_bottom + v_ds;
}

ReadAnalysis read_analysis(const device::DeviceDeck& dmtj, const AccessTransistorModel& transistor,
                           const VariabilityDeck& variability, const BitcellConfig& cfg,
                           std::size_t mc_trials, double i_read) {
  device::validate(dmtj);
  validate(transistor);
  validate(variability);
  check_config(cfg);

  ReadAnalysis out;
  if (i_read < 0.0) {
    const auto dev = switching::macrospin_from(dmtj, cfg.temperature);
    i_read = switching::max_read_current(dev, cfg.rdr_target, cfg.t_read, cfg.activation);
  }
  out.i_read = i_read;
  out.v_lrs = read_voltage(dmtj, transistor, cfg, ResistanceState::Low, i_read);
  out.v_hrs = read_voltage(dmtj, transistor, cfg, ResistanceState::High, i_read);
  out.v_sm_nominal = out.v_hrs - out.v_lrs;
  if (i_read > 0.0) {
    out.lrs_eff = out.v_lrs / i_read;
    out.hrs_eff = out.v_hrs / i_read;
  }
  out.read_power = i_read * 0.5 * (out.v_lrs + out.v_hrs);

  out.samples.resize(mc_trials);
  parallel_for(mc_trials, cfg.threads, [&](std::size_t i) {
    const auto ps = draw_sample(variability, i);
    const auto deck = perturb(dmtj, ps, variability.barrier_decay_length);
    out.samples[i] = {read_voltage(deck, transistor, cfg, ResistanceState::Low, i_read, ps.vth_shift),
                      read_voltage(deck, transistor, cfg, ResistanceState::High, i_read, ps.vth_shift)};
  });

  if (mc_trials == 0) {
    out.mu_lrs = out.v_lrs;
    out.mu_hrs = out.v_hrs;
  } else {
    std::vector<double> lrs;
    std::vector<double> hrs;
    for (const auto& s : out.samples) {
      lrs.push_back(s.v_lrs);
      hrs.push_back(s.v_hrs);
    }
    out.mu_lrs = mean(lrs);
    out.mu_hrs = mean(hrs);
    out.sigma_lrs = stddev(lrs, out.mu_lrs);
    out.sigma_hrs = stddev(hrs, out.mu_hrs);
  }
  out.v_sm_3sigma = (out.mu_hrs - 3.0 * out.sigma_hrs) - (out.mu_lrs + 3.0 * out.sigma_lrs);
  out.sense_failure = !(out.v_sm_3sigma > 0.0);
  return out;
}

BitcellReport make_report(const std::string& name, const BitcellConfig& cfg,
                          const WriteAnalysis& w, const ReadAnalysis& r, std::size_t trials) {
  BitcellReport rep;
  rep.name = name;
  rep.temperature = cfg.temperature;
  rep.vdd = cfg.vdd;
  rep.i_write_lh = w.nominal.i_lh;
  rep.i_write_hl = w.nominal.i_hl;
  rep.t_p_nominal = w.nominal.t_p;
  rep.t_p_6sigma = w.t_p_6sigma;
  rep.t_p_max = w.t_p_max;
  rep.write_energy_avg = w.energy_avg;
  rep.i_read = r.i_read;
  rep.t_read = cfg.t_read;
  rep.read_power = r.read_power;
  rep.v_sm_nominal = r.v_sm_nominal;
  rep.v_sm_3sigma = r.v_sm_3sigma;
  rep.lrs_eff = r.lrs_eff;
  rep.hrs_eff = r.hrs_eff;
  rep.trials = trials;
  rep.failed_samples = w.failed;
  rep.sense_failure = r.sense_failure;
  return rep;
}

// ---------------------------------------------------------------------------
// Bitcell deck.

void validate(const BitcellDeck& d) {
  const auto positive = [](double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(std::string("bitcell deck: ") + field + " must be positive, got " +
                        std::to_string(v));
    }
  };
  if (d.name.empty()) throw ConfigError("bitcell deck: name must not be empty");
  positive(d.temperature, "temperature_K");
  positive(d.vdd, "vdd_V");
  positive(d.i_write, "i_write_A");
  positive(d.t_write, "t_write_s");
  positive(d.write_energy, "write_energy_J");
  positive(d.i_read, "i_read_A");
  positive(d.t_read, "t_read_s");
  positive(d.read_power, "read_power_W");
  positive(d.lrs_eff, "lrs_eff_ohm");
  positive(d.hrs_eff, "hrs_eff_ohm");
  positive(d.cell_area_f2, "cell_area_F2");
  positive(d.access_width, "access_width");
  if (!(d.hrs_eff > d.lrs_eff)) throw ConfigError("bitcell deck: hrs_eff_ohm must exceed lrs_eff_ohm");
  if (!(d.v_sense >= 0.0)) throw ConfigError("bitcell deck: v_sense_V must be non-negative");
}

BitcellDeck export_bitcell_deck(const BitcellReport& r) {
  BitcellDeck d;
  d.name = r.name;
  d.temperature = r.temperature;
  d.vdd = r.vdd;
  d.i_write = 0.5 * (r.i_write_lh + r.i_write_hl);
  d.t_write = r.t_p_6sigma;
  d.write_energy = r.write_energy_avg;
  d.i_read = r.i_read;
  d.t_read = r.t_read;
  d.read_power = r.read_power;
  d.lrs_eff = r.lrs_eff;
  d.hrs_eff = r.hrs_eff;
  d.v_sense = std::max(0.0, r.v_sm_nominal);
  validate(d);
  return d;
}

std::string to_json(const BitcellDeck& d) {
  nlohmann::ordered_json j;
  j["name"] = d.name;
  j["temperature_K"] = d.temperature;
  j["vdd_V"] = d.vdd;
  j["i_write_A"] = d.i_write;
  j["t_write_s"] = d.t_write;
  j["write_energy_J"] = d.write_energy;
  j["i_read_A"] = d.i_read;
  j["t_read_s"] = d.t_read;
  j["read_power_W"] = d.read_power;
  j["lrs_eff_ohm"] = d.lrs_eff;
  j["hrs_eff_ohm"] = d.hrs_eff;
  j["v_sense_V"] = d.v_sense;
  j["cell_area_F2"] = d.cell_area_f2;
  j["access_width"] = d.access_width;
  return j.dump(2) + "\n";
}

BitcellDeck bitcell_deck_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("bitcell deck: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("bitcell deck: top level must be an object");
  const auto number = [&](const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("bitcell deck: missing field '") + key + "'");
    if (!j[key].is_number()) throw ParseError(std::string("bitcell deck: field '") + key + "' must be a number");
    return j[key].get<double>();
  };
  BitcellDeck d;
  if (!j.contains("name") || !j["name"].is_string()) throw ParseError("bitcell deck: missing field 'name'");
  d.name = j["name"].get<std::string>();
  d.temperature = number("temperature_K");
  d.vdd = number("vdd_V");
  d.i_write = number("i_write_A");
  d.t_write = number("t_write_s");
  d.write_energy = number("write_energy_J");
  d.i_read = number("i_read_A");
  d.t_read = number("t_read_s");
  d.read_power = number("read_power_W");
  d.lrs_eff = number("lrs_eff_ohm");
  d.hrs_eff = number("hrs_eff_ohm");
  d.v_sense = number("v_sense_V");
  if (j.contains("cell_area_F2")) d.cell_area_f2 = number("cell_area_F2");
  if (j.contains("access_width")) d.access_width = number("access_width");
  validate(d);
  return d;
}

std::string to_json(const BitcellReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["temperature_K"] = r.temperature;
  j["vdd_V"] = r.vdd;
  j["i_write_lh_A"] = r.i_write_lh;
  j["i_write_hl_A"] = r.i_write_hl;
  j["t_p_nominal_s"] = r.t_p_nominal;
  j["t_p_6sigma_s"] = r.t_p_6sigma;
  j["t_p_max_s"] = r.t_p_max;
  j["write_energy_avg_J"] = r.write_energy_avg;
  j["i_read_A"] = r.i_read;
  j["t_read_s"] = r.t_read;
  j["read_power_W"] = r.read_power;
  j["v_sm_nominal_V"] = r.v_sm_nominal;
  j["v_sm_3sigma_V"] = r.v_sm_3sigma;
  j["lrs_eff_ohm"] = r.lrs_eff;
  j["hrs_eff_ohm"] = r.hrs_eff;
  j["trials"] = r.trials;
  j["failed_samples"] = r.failed_samples;
  j["sense_failure"] = r.sense_failure;
  return j.dump(2) + "\n";
}

}  // namespace cryomram::bitcell
