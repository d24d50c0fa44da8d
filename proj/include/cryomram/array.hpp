#pragma once

// Analytical cache-array estimator: a capacity is split into banks, mats and
// sub-arrays; latency comes from logical-effort decoder/driver chains and
// Elmore RC wires, energy from CV^2 and I V t terms, leakage from the total
// off-state width of every leaking device.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cryomram/bitcell.hpp"

namespace cryomram::arch {

struct TechnologyDeck {
  std::string name;
  double temperature = 300.0;       ///< K
  double feature_size = 65e-9;      ///< m
  double vdd = 1.2;                 ///< V
  double v_th = 0.45;               ///< V
  double i_on_per_um = 650e-6;      ///< NMOS saturation current per um of width (A)
  double i_off_per_um = 30e-9;      ///< NMOS off current per um (A)
  double pmos_drive_ratio = 0.5;    ///< PMOS / NMOS on current per width
  double pmos_off_ratio = 0.5;      ///< PMOS / NMOS off current per width
  double c_gate_per_um = 1.0e-15;   ///< F/um
  double c_drain_per_um = 0.6e-15;  ///< F/um
  double mobility_factor = 1.0;     ///< relative to 300 K, informational
  double wire_r_per_m_300k = 1.1e6; ///< ohm/m at 300 K
  double wire_resistivity_scale = 1.0;
  double wire_c_per_m = 2.0e-10;    ///< F/m
  double min_width = 0.13e-6;       ///< m, minimum transistor width
  double sense_min_swing = 0.02;    ///< V, sense amplifier resolution
  double sense_amp_width = 2.0e-6;  ///< m of leaking device per sense amplifier
  double driver_fanout = 4.0;       ///< stage effort of buffer chains

  double wire_r_per_m() const { return wire_r_per_m_300k * wire_resistivity_scale; }
  /// Channel resistance of a 1 um NMOS at full gate drive.
  double r_on_per_um() const { return vdd / i_on_per_um; }
  /// Intrinsic delay of an inverter driving its own input capacitance.
  double tau() const;
  double fo4() const;
};

void validate(const TechnologyDeck& t);

/// 6T-SRAM baseline cell. Currents and leakage are derived from the tech deck.
struct SramCellDeck {
  std::string name = "sram6t";
  double cell_area_f2 = 150.0;
  double read_width = 0.26e-6;       ///< m, series access/pull-down path width
  double leakage_width = 0.52e-6;    ///< m, total off-state width per cell in standby
  double bitline_swing = 0.1;        ///< V, read-swing on the unselected-column bitlines
  double access_width = 1.0;         ///< gate loading on the word line (minimum widths, per access device)
};

void validate(const SramCellDeck& d);

struct SramCellMetrics {
  double read_current;  ///< A
  double leakage;       ///< W
};

SramCellMetrics sram_cell_metrics(const SramCellDeck& d, const TechnologyDeck& t);

/// Memory technology occupying the cell array.
struct CellDeck {
  enum class Kind { SttMram, Sram };
  Kind kind = Kind::SttMram;
  bitcell::BitcellDeck mram;
  SramCellDeck sram;

  static CellDeck from_mram(const bitcell::BitcellDeck& d);
  static CellDeck from_sram(const SramCellDeck& d);
  std::string name() const;
  double cell_area_f2() const;
};

enum class Objective { Latency, Energy, Edp };
const char* to_string(Objective o);
Objective objective_from_string(const std::string& s);

struct ArrayOrganization {
  std::uint64_t capacity = 0;  ///< bytes
  int banks = 1;
  int mats_per_bank = 1;
  int subarrays_per_mat = 1;
  int rows = 0;
  int cols = 0;
  int mux_bitline = 1;  ///< columns sharing one sense amplifier
  int mux_sense = 1;    ///< sense amplifier outputs sharing one data line
  int mux_output = 1;
  int line_bits = 512;

  std::uint64_t total_subarrays() const;
  /// Sub-arrays activated for one line access.
  int active_subarrays() const;
  int bits_per_subarray_access() const;
};

/// Throws ConfigError if the organization cannot hold `capacity` or is
/// structurally invalid.
void validate(const ArrayOrganization& org);

struct SearchOptions {
  int line_bits = 512;
  int fixed_rows = 0;  ///< 0 = searched
  int fixed_cols = 0;
  int max_banks = 1;
  unsigned threads = 1;
  /// Candidates larger than the smallest feasible array by more than this
  /// fraction are discarded before the objective is applied.
  double area_slack = 0.25;
};

struct RcStage {
  double r;  ///< series resistance (ohm)
  double c;  ///< capacitance to ground at the stage output (F)
};

/// Elmore delay of an RC ladder: sum_i r_i * sum_{j >= i} c_j.
double elmore_delay(std::span<const RcStage> ladder);

/// Delay of a wire of `length` driven by optimally spaced repeaters.
double repeated_wire_delay(const TechnologyDeck& t, double length);

struct ComponentBreakdown {
  double htree = 0.0;
  double decoder = 0.0;
  double wordline = 0.0;
  double bitline = 0.0;
  double sense = 0.0;
  double cell = 0.0;  ///< write pulse for MRAM, cell flip for SRAM
};

struct ArrayEstimate {
  ArrayOrganization org;
  double read_latency = 0.0;
  double write_latency = 0.0;
  double read_energy = 0.0;   ///< J per line access
  double write_energy = 0.0;  ///< J per line access
  double leakage_power = 0.0; ///< W
  double peripheral_leakage = 0.0;
  double cell_leakage = 0.0;
  double area = 0.0;          ///< m^2
  ComponentBreakdown read_delay, write_delay, read_energy_parts, write_energy_parts;
};

ArrayEstimate estimate(const ArrayOrganization& org, const CellDeck& cell, const TechnologyDeck& tech);

double objective_value(const ArrayEstimate& e, Objective objective);

/// Exhaustive search over power-of-two partitions. Capacity in [64 kB, 8 MB].
ArrayOrganization organize(std::uint64_t capacity, const CellDeck& cell, const TechnologyDeck& tech,
                           Objective objective, const SearchOptions& options = {});

struct BenchmarkRow {
  std::uint64_t capacity = 0;
  std::string metric;
  double mram40 = 0.0;
  double mram13 = 0.0;
  double sram = 0.0;
  double mram40_norm = 0.0;
  double mram13_norm = 0.0;
};

struct BenchmarkDecks {
  const bitcell::BitcellDeck* mram40 = nullptr;
  const bitcell::BitcellDeck* mram13 = nullptr;
  const SramCellDeck* sram = nullptr;
};

inline constexpr const char* kBenchmarkMetrics[] = {
    "read_latency_s", "write_latency_s", "read_energy_J", "write_energy_J", "leakage_W"};

std::vector<BenchmarkRow> benchmark(const std::vector<std::uint64_t>& capacities,
                                    const BenchmarkDecks& decks, const TechnologyDeck& tech,
                                    Objective objective = Objective::Edp,
                                    const SearchOptions& options = {});

/// Shipped 65 nm decks at 300 K and 77 K.
TechnologyDeck tech65_300k();
TechnologyDeck tech65_77k();

}  // namespace cryomram::arch
