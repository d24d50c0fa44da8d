#pragma once

// 1T1DMTJ bitcell in standard connection: BL - DMTJ (bottom RL .. top RL) -
// internal node X - access transistor - SL. Operating-point solve, write and
// read Monte Carlo analyses, and the bitcell deck handed to the array model.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cryomram/device.hpp"
#include "cryomram/switching.hpp"
#include "cryomram/transistor.hpp"

namespace cryomram::bitcell {

struct VariabilityDeck {
  double sigma_over_mu_area = 0.05;
  double sigma_over_mu_thickness = 0.01;  ///< applied to t_FL, t_OX,T and t_OX,B
  double transistor_vth_sigma = 0.020;    ///< V
  double truncation = 4.0;                ///< Gaussian cut-off in sigmas
  double barrier_decay_length = 0.125e-9;  ///< m; G ~ area exp(-(t - t0) / length)
  std::uint64_t rng_seed = 1;
};

void validate(const VariabilityDeck& v);

/// Relative perturbation of one Monte Carlo instance.
struct ProcessSample {
  double area = 1.0;  ///< multiplicative
  double t_fl = 1.0;
  double t_ox_top = 1.0;
  double t_ox_bottom = 1.0;
  double vth_shift = 0.0;  ///< V
};

/// Deterministic draw for (variability.rng_seed, index).
ProcessSample draw_sample(const VariabilityDeck& v, std::uint64_t index);

/// Device deck with geometry and barrier conductances perturbed by `s`.
device::DeviceDeck perturb(const device::DeviceDeck& nominal, const ProcessSample& s,
                           double barrier_decay_length);

struct BitcellConfig {
  double temperature = 77.0;
  double vdd = 1.2;
  double wer_target = 1e-7;
  double rdr_target = 1e-9;
  double t_read = 1e-9;
  double pulse_budget = 1e-6;
  switching::ActivationModel activation;
  unsigned threads = 0;
};

struct OperatingPoint {
  double i_cell = 0.0;  ///< A, positive from BL to SL
  double v_dmtj = 0.0;  ///< V_BL - V_X
  double v_ds = 0.0;    ///< V_X - V_SL
  double v_x = 0.0;
  int iterations = 0;
};

/// Two-terminal element current as a function of its voltage.
using ElementCurrent = std::function<double(double)>;

/// Kirchhoff solve of an arbitrary element in series with the access device.
OperatingPoint solve_series(const ElementCurrent& element, const TransistorParams& t, double wl_v,
                            double bl_v, double sl_v, double width_scale = 1.0,
                            double vth_shift = 0.0);

/// Operating point of the bitcell with the DMTJ in `state`.
OperatingPoint solve_bitcell(const device::DeviceDeck& dmtj, const AccessTransistorModel& transistor,
                             double temperature, double wl_v, double bl_v, double sl_v,
                             device::ResistanceState state, double vth_shift = 0.0);

enum class Transition { LowToHigh, HighToLow };

/// Write bias for a transition: LRS->HRS drives SL high (source-degenerated
/// transistor), HRS->LRS drives BL high.
OperatingPoint write_point(const device::DeviceDeck& dmtj, const AccessTransistorModel& transistor,
                           const BitcellConfig& cfg, Transition tr, double vth_shift = 0.0);

struct WriteSample {
  double i_lh = 0.0;
  double i_hl = 0.0;
  double t_lh = 0.0;
  double t_hl = 0.0;
  double t_p = 0.0;     ///< max(t_lh, t_hl)
  double energy = 0.0;  ///< vdd * mean(i_lh, i_hl) * t_p
  bool failed = false;
};

struct WriteAnalysis {
  WriteSample nominal;
  std::vector<WriteSample> samples;
  std::size_t failed = 0;
  double t_p_mean = 0.0;
  double t_p_sigma = 0.0;
  double t_p_median = 0.0;
  double t_p_6sigma = 0.0;  ///< Gaussian fit mean + 6 sigma
  double t_p_max = 0.0;     ///< empirical maximum
  double energy_avg = 0.0;
  const char* worst_transition = "LRS->HRS";
};

/// Write pulse needed by one device instance for both transitions.
WriteSample write_sample(const device::DeviceDeck& dmtj, const AccessTransistorModel& transistor,
                         const BitcellConfig& cfg, double vth_shift = 0.0);

WriteAnalysis write_analysis(const device::DeviceDeck& dmtj, const AccessTransistorModel& transistor,
                             const VariabilityDeck& variability, const BitcellConfig& cfg,
                             std::size_t mc_trials);

struct ReadSample {
  double v_lrs = 0.0;
  double v_hrs = 0.0;
};

struct ReadAnalysis {
  double i_read = 0.0;
  double v_lrs = 0.0;  ///< nominal bitcell voltages
  double v_hrs = 0.0;
  double v_sm_nominal = 0.0;
  double v_sm_3sigma = 0.0;
  double mu_lrs = 0.0, sigma_lrs = 0.0, mu_hrs = 0.0, sigma_hrs = 0.0;
  double lrs_eff = 0.0;
  double hrs_eff = 0.0;
  double read_power = 0.0;  ///< instantaneous, averaged over the two states
  bool sense_failure = false;
  std::vector<ReadSample> samples;
};

/// Bitcell voltage (BL to SL) when `i_read` is forced with the word line on.
double read_voltage(const device::DeviceDeck& dmtj, const AccessTransistorModel& transistor,
                    const BitcellConfig& cfg, device::ResistanceState state, double i_read,
                    double vth_shift = 0.0);

/// With i_read < 0 the read current comes from switching::max_read_current.
ReadAnalysis read_analysis(const device::DeviceDeck& dmtj, const AccessTransistorModel& transistor,
                           const VariabilityDeck& variability, const BitcellConfig& cfg,
                           std::size_t mc_trials, double i_read = -1.0);

struct BitcellReport {
  std::string name;
  double temperature = 0.0;
  double vdd = 0.0;
  double i_write_lh = 0.0;
  double i_write_hl = 0.0;
  double t_p_nominal = 0.0;
  double t_p_6sigma = 0.0;
  double t_p_max = 0.0;
  double write_energy_avg = 0.0;
  double i_read = 0.0;
  double t_read = 0.0;
  double read_power = 0.0;
  double v_sm_nominal = 0.0;
  double v_sm_3sigma = 0.0;
  double lrs_eff = 0.0;
  double hrs_eff = 0.0;
  std::size_t trials = 0;
  std::size_t failed_samples = 0;
  bool sense_failure = false;
};

BitcellReport make_report(const std::string& name, const BitcellConfig& cfg,
                          const WriteAnalysis& w, const ReadAnalysis& r, std::size_t trials);

/// Architecture-level description of a bitcell. Units are in the field names
/// of the serialized form.
struct BitcellDeck {
  std::string name;
  double temperature = 77.0;
  double vdd = 1.2;
  double i_write = 0.0;         ///< A, mean of both transitions
  double t_write = 0.0;         ///< s, worst-case pulse
  double write_energy = 0.0;    ///< J per bit
  double i_read = 0.0;          ///< A
  double t_read = 1e-9;         ///< s
  double read_power = 0.0;      ///< W
  double lrs_eff = 0.0;         ///< ohm
  double hrs_eff = 0.0;         ///< ohm
  double v_sense = 0.0;         ///< V, margin available to the sense amplifier
  double cell_area_f2 = 30.0;
  double access_width = 1.0;    ///< transistor width in minimum widths
};

void validate(const BitcellDeck& d);

BitcellDeck export_bitcell_deck(const BitcellReport& report);

std::string to_json(const BitcellDeck& d);
BitcellDeck bitcell_deck_from_json(const std::string& text);

std::string to_json(const BitcellReport& r);

}  // namespace cryomram::bitcell
