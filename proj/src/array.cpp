#include "cryomram/array.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "cryomram/errors.hpp"
#include "cryomram/parallel.hpp"

namespace cryomram::arch {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr std::uint64_t kMinCapacity = 64 * 1024;
constexpr std::uint64_t kMaxCapacity = 8 * 1024 * 1024;
constexpr int kMinDimension = 16;
constexpr int kMaxDimension = 4096;

// Peripheral footprints in feature sizes: the row decoder/driver stripe to the
// side of a sub-array and the sense/mux/driver stripe below it.
constexpr double kRowPeripheryF = 50.0;
constexpr double kColumnPeripheryF = 150.0;
constexpr double kSenseAmpAreaF2 = 2000.0;
// Address lines routed with the data bits through the H-tree.
constexpr int kControlLines = 8;

bool is_pow2(std::uint64_t v) { return v != 0 && std::has_single_bit(v); }

int log2i(std::uint64_t v) { return static_cast<int>(std::bit_width(v)) - 1; }

/// Sizes a buffer chain by logical effort. Returns the stage count and the
/// per-stage effort for a total path effort `path_effort`.
struct Chain {
  int stages;
  double stage_effort;
};

Chain size_chain(double path_effort, double target_effort) {
  path_effort = std::max(path_effort, 1.0);
  int n = std::max(1, static_cast<int>(std::lround(std::log(path_effort) / std::log(target_effort))));
  return {n, std::pow(path_effort, 1.0 / n)};
}

/// Off-state NMOS-equivalent width of an inverter of total width w, averaged
/// over its two output states.
double inverter_leak_width(const TechnologyDeck& t, double w) {
  const double beta = 1.0 / t.pmos_drive_ratio;
  const double wn = w / (1.0 + beta);
  const double wp = w - wn;
  return 0.5 * (wn + wp * t.pmos_off_ratio);
}

/// Total width (m) of a 1x inverter: 1 um NMOS plus the matching PMOS.
double unit_inverter_width(const TechnologyDeck& t) { return 1e-6 * (1.0 + 1.0 / t.pmos_drive_ratio); }

double unit_input_cap(const TechnologyDeck& t) { return t.c_gate_per_um * 1e6 * unit_inverter_width(t); }

struct DriverResult {
  double delay;
  double energy;       ///< per transition of the driven load
  double leak_width;   ///< m of NMOS-equivalent off width
};

/// Off width of an inverter of total width w whose output rests at `high`.
double inverter_leak_width(const TechnologyDeck& t, double w, bool high) {
  const double wn = w / (1.0 + 1.0 / t.pmos_drive_ratio);
  return high ? wn : (w - wn) * t.pmos_off_ratio;
}

/// Buffer chain from a unit inverter to `load` with `logic_effort` of
/// embedded logic in the path. With `idle_low` the output is parked low
/// between accesses (word lines), otherwise leakage is state-averaged.
DriverResult drive(const TechnologyDeck& t, double load, double logic_effort = 1.0, bool idle_low = false) {
  const double c_in = unit_input_cap(t);
  const Chain ch = size_chain(logic_effort * load / c_in, t.driver_fanout);
  DriverResult r{};
  r.delay = kLn2 * t.tau() * ch.stages * (ch.stage_effort + 1.0);
  double c_stage = load;
  double chain_cap = 0.0;
  for (int s = 0; s < ch.stages; ++s) {
    c_stage /= ch.stage_effort;
    chain_cap += c_stage;
    const double w = c_stage / unit_input_cap(t) * unit_inverter_width(t);
    r.leak_width += idle_low ? inverter_leak_width(t, w, s % 2 == 1) : inverter_leak_width(t, w);
  }
  r.energy = (load + chain_cap) * t.vdd * t.vdd;
  return r;
}

struct WireResult {
  double delay;
  double cap;         ///< switched capacitance per line
  double leak_width;  ///< per line
};

WireResult repeated_wire(const TechnologyDeck& t, double length) {
  WireResult w{};
  if (length <= 0.0) return w;
  const double r = t.wire_r_per_m();
  const double c = t.wire_c_per_m;
  const double r0 = t.r_on_per_um();  // ohm for a 1 um device
  const double cg = unit_input_cap(t);
  const double cd = t.c_drain_per_um * 1e6 * unit_inverter_width(t);
  const double l_opt = std::sqrt(2.0 * r0 * (cg + cd) / (r * c));
  const double size = std::max(1.0, std::sqrt(r0 * c / (r * cg)));
  const int n = std::max(1, static_cast<int>(std::lround(length / l_opt)));
  const double seg = length / n;
  const RcStage ladder[] = {{r0 / size, size * cd + 0.5 * c * seg}, {r * seg, 0.5 * c * seg + size * cg}};
  w.delay = n * kLn2 * elmore_delay(ladder);
  w.cap = c * length + n * size * (cg + cd);
  w.leak_width = n * inverter_leak_width(t, size * unit_inverter_width(t));
  return w;
}

/// Geometry of one organization.
struct Floorplan {
  double cell_side;
  double subarray_w, subarray_h;
  double total_w, total_h;
  double htree;  ///< root-to-leaf route length
};

std::pair<int, int> grid(std::uint64_t n) {
  const int e = log2i(n);
  return {1 << ((e + 1) / 2), 1 << (e / 2)};
}

Floorplan floorplan(const ArrayOrganization& org, const CellDeck& cell, const TechnologyDeck& t) {
  Floorplan fp{};
  const double f = t.feature_size;
  fp.cell_side = std::sqrt(cell.cell_area_f2()) * f;
  fp.subarray_w = org.cols * fp.cell_side + kRowPeripheryF * f;
  // Sense amplifiers are pitch-matched to their column group.
  const double sense_stripe = kSenseAmpAreaF2 * f * f / (org.mux_bitline * fp.cell_side);
  fp.subarray_h = org.rows * fp.cell_side + kColumnPeripheryF * f + sense_stripe;
  const auto [nx, ny] = grid(org.total_subarrays());
  fp.total_w = nx * fp.subarray_w;
  fp.total_h = ny * fp.subarray_h;
  fp.htree = 0.5 * (fp.total_w + fp.total_h);
  return fp;
}

double wordline_cell_cap(const CellDeck& cell, const TechnologyDeck& t, double side) {
  const double gate = t.c_gate_per_um * 1e6 * t.min_width;
  if (cell.kind == CellDeck::Kind::Sram) return 2.0 * gate * cell.sram.access_width + t.wire_c_per_m * side;
  return gate * cell.mram.access_width + t.wire_c_per_m * side;
}

double bitline_cell_cap(const CellDeck& cell, const TechnologyDeck& t, double side) {
  const double drain = t.c_drain_per_um * 1e6 * t.min_width;
  const double w = cell.kind == CellDeck::Kind::Sram ? cell.sram.access_width : cell.mram.access_width;
  return drain * w + t.wire_c_per_m * side;
}

}  // namespace

// ---------------------------------------------------------------------------

double TechnologyDeck::tau() const {
  return r_on_per_um() * c_gate_per_um * (1.0 + 1.0 / pmos_drive_ratio);
}

double TechnologyDeck::fo4() const { return kLn2 * tau() * 5.0; }

void validate(const TechnologyDeck& t) {
  const auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string("technology deck: ") + what + " must be positive");
  };
  positive(t.temperature, "temperature_K");
  positive(t.feature_size, "feature_size_nm");
  positive(t.vdd, "vdd_V");
  positive(t.i_on_per_um, "i_on_A_per_um");
  positive(t.i_off_per_um, "i_off_A_per_um");
  positive(t.pmos_drive_ratio, "pmos_drive_ratio");
  positive(t.pmos_off_ratio, "pmos_off_ratio");
  positive(t.c_gate_per_um, "c_gate_F_per_um");
  positive(t.c_drain_per_um, "c_drain_F_per_um");
  positive(t.wire_r_per_m_300k, "wire_r_ohm_per_m_300K");
  positive(t.wire_resistivity_scale, "wire_resistivity_scale");
  positive(t.wire_c_per_m, "wire_c_F_per_m");
  positive(t.min_width, "min_width_nm");
  positive(t.sense_min_swing, "sense_min_swing_V");
  positive(t.sense_amp_width, "sense_amp_width_um");
  if (!(t.driver_fanout > 1.0)) throw ConfigError("technology deck: driver_fanout must exceed 1");
  if (!(t.v_th > 0.0 && t.v_th < t.vdd)) throw ConfigError("technology deck: v_th must lie in (0, vdd)");
}

void validate(const SramCellDeck& d) {
  if (!(d.cell_area_f2 > 0.0)) throw ConfigError("sram deck: cell_area_F2 must be positive");
  if (!(d.read_width > 0.0)) throw ConfigError("sram deck: read_width must be positive");
  if (!(d.leakage_width >= 0.0)) throw ConfigError("sram deck: leakage_width must be non-negative");
  if (!(d.bitline_swing > 0.0)) throw ConfigError("sram deck: bitline_swing must be positive");
  if (!(d.access_width > 0.0)) throw ConfigError("sram deck: access_width must be positive");
}

SramCellMetrics sram_cell_metrics(const SramCellDeck& d, const TechnologyDeck& t) {
  // Access and pull-down devices in series roughly halve the drive.
  return {0.5 * t.i_on_per_um * d.read_width * 1e6, t.i_off_per_um * d.leakage_width * 1e6 * t.vdd};
}

CellDeck CellDeck::from_mram(const bitcell::BitcellDeck& d) {
  bitcell::validate(d);
  CellDeck c;
  c.kind = Kind::SttMram;
  c.mram = d;
  return c;
}

CellDeck CellDeck::from_sram(const SramCellDeck& d) {
  validate(d);
  CellDeck c;
  c.kind = Kind::Sram;
  c.sram = d;
  return c;
}

std::string CellDeck::name() const { return kind == Kind::Sram ? sram.name : mram.name; }

double CellDeck::cell_area_f2() const { return kind == Kind::Sram ? sram.cell_area_f2 : mram.cell_area_f2; }

const char* to_string(Objective o) {
  switch (o) {
    case Objective::Latency: return "latency";
    case Objective::Energy: return "energy";
    case Objective::Edp: return "edp";
  }
  return "edp";
}

Objective objective_from_string(const std::string& s) {
  if (s == "latency") return Objective::Latency;
  if (s == "energy") return Objective::Energy;
  if (s == "edp") return Objective::Edp;
  throw ConfigError("unknown objective '" + s + "' (expected latency, energy or edp)");
}

std::uint64_t ArrayOrganization::total_subarrays() const {
  return static_cast<std::uint64_t>(banks) * mats_per_bank * subarrays_per_mat;
}

int ArrayOrganization::bits_per_subarray_access() const {
  return std::max(1, cols / (mux_bitline * mux_sense * mux_output));
}

int ArrayOrganization::active_subarrays() const {
  return std::max(1, line_bits / bits_per_subarray_access());
}

void validate(const ArrayOrganization& org) {
  for (int v : {org.banks, org.mats_per_bank, org.subarrays_per_mat, org.rows, org.cols, org.mux_bitline,
                org.mux_sense, org.mux_output, org.line_bits}) {
    if (!is_pow2(static_cast<std::uint64_t>(std::max(v, 0)))) {
      throw ConfigError("organization factors must be positive powers of two");
    }
  }
  const std::uint64_t bits = org.total_subarrays() * static_cast<std::uint64_t>(org.rows) * org.cols;
  if (bits != org.capacity * 8) {
    std::ostringstream os;
    os << "organization holds " << bits << " bits, capacity needs " << org.capacity * 8;
    throw ConfigError(os.str());
  }
  if (org.mux_bitline * org.mux_sense * org.mux_output > org.cols) {
    throw ConfigError("column multiplexing exceeds the column count");
  }
  const std::uint64_t within_bank = static_cast<std::uint64_t>(org.mats_per_bank) * org.subarrays_per_mat;
  const int per = org.bits_per_subarray_access();
  if (per > org.line_bits || static_cast<std::uint64_t>(org.active_subarrays()) > within_bank) {
    throw ConfigError("a bank cannot deliver one line per access with this organization");
  }
}

double elmore_delay(std::span<const RcStage> ladder) {
  double downstream = 0.0;
  double delay = 0.0;
  for (auto it = ladder.rbegin(); it != ladder.rend(); ++it) {
    downstream += it->c;
    delay += it->r * downstream;
  }
  return delay;
}

double repeated_wire_delay(const TechnologyDeck& t, double length) { return repeated_wire(t, length).delay; }

ArrayEstimate estimate(const ArrayOrganization& org, const CellDeck& cell, const TechnologyDeck& t) {
  validate(org);
  validate(t);
  const bool sram = cell.kind == CellDeck::Kind::Sram;
  const double vdd = t.vdd;
  const Floorplan fp = floorplan(org, cell, t);

  ArrayEstimate e;
  e.org = org;
  e.area = fp.total_w * fp.total_h;

  const int active = org.active_subarrays();
  const int sensed_per_subarray = org.cols / org.mux_bitline;
  const int sensed = active * sensed_per_subarray;
  const int cols_active = active * org.cols;

  // H-tree: address/control in, data in or out.
  const WireResult tree = repeated_wire(t, fp.htree);
  const int addr_bits = log2i(org.capacity * 8 / org.line_bits) + kControlLines;
  const double tree_energy_bit = 0.5 * tree.cap * vdd * vdd;  // activity 1/2

  // Row path: decoder logic and word-line driver.
  const double c_wl = org.cols * wordline_cell_cap(cell, t, fp.cell_side);
  const double r_wl = t.wire_r_per_m() * org.cols * fp.cell_side;
  const int row_bits = std::max(1, log2i(static_cast<std::uint64_t>(org.rows)));
  const double decode_effort = std::pow(4.0 / 3.0, row_bits) * std::sqrt(static_cast<double>(org.rows));
  const DriverResult wl_drv = drive(t, c_wl, decode_effort, true);
  const double t_wordline = 0.38 * r_wl * c_wl;

  // Column path.
  const double c_bl = org.rows * bitline_cell_cap(cell, t, fp.cell_side);
  const double r_bl = t.wire_r_per_m() * org.rows * fp.cell_side;
  const double t_bl_wire = 0.38 * r_bl * c_bl;
  const double t_sense = 2.0 * t.fo4() + kLn2 * t.tau() * std::log2(std::max(2, org.mux_sense));
  const double c_sense = t.sense_amp_width * 1e6 * t.c_gate_per_um;
  const double e_sense = sensed * c_sense * vdd * vdd;

  double t_bitline_read = 0.0;
  double e_bitline_read = 0.0;
  double t_cell_write = 0.0;
  double e_cell_write = 0.0;
  double column_driver_width = 0.0;  // per sensed/written column
  if (sram) {
    const auto m = sram_cell_metrics(cell.sram, t);
    t_bitline_read = c_bl * cell.sram.bitline_swing / m.read_current + t_bl_wire;
    // Every column of an activated row discharges its bitline pair by the read swing.
    e_bitline_read = cols_active * c_bl * vdd * cell.sram.bitline_swing;
    const double write_width = 4.0 * t.min_width * 1e6;  // um
    const double i_drv = t.i_on_per_um * write_width;
    t_cell_write = c_bl * vdd / i_drv + t_bl_wire + 2.0 * t.fo4();
    e_cell_write = org.line_bits * c_bl * vdd * vdd +
                   std::max(0, cols_active - org.line_bits) * c_bl * vdd * cell.sram.bitline_swing;
    column_driver_width = 2.0 * write_width * 1e-6 * (1.0 + 1.0 / t.pmos_drive_ratio);
  } else {
    const auto& d = cell.mram;
    const double v_h = d.i_read * d.hrs_eff;
    const double v_l = d.i_read * d.lrs_eff;
    const double usable = (v_h - v_l) - t.sense_min_swing;
    if (!(usable > 0.0)) {
      throw ConfigError("bitcell sense margin " + std::to_string(v_h - v_l) +
                        " V is below the sense amplifier resolution");
    }
    // Forced-current sensing: the HRS node must clear the settled LRS level
    // by the amplifier resolution.
    t_bitline_read = d.hrs_eff * c_bl * std::log(v_h / usable) + t_bl_wire;
    e_bitline_read = sensed * (d.read_power * t_bitline_read + c_bl * v_h * vdd);
    t_cell_write = d.t_write + t_bl_wire + kLn2 * (d.lrs_eff * c_bl);
    // Bit line and source line of each written column both swing.
    e_cell_write = org.line_bits * (d.write_energy + 2.0 * c_bl * vdd * vdd);
    const double width_um = std::max(t.min_width * 1e6, 2.0 * d.i_write / t.i_on_per_um);
    column_driver_width = 2.0 * width_um * 1e-6 * (1.0 + 1.0 / t.pmos_drive_ratio);
  }

  auto& rd = e.read_delay;
  rd.htree = 2.0 * tree.delay;
  rd.decoder = wl_drv.delay;
  rd.wordline = t_wordline;
  rd.bitline = t_bitline_read;
  rd.sense = t_sense;
  e.read_latency = rd.htree + rd.decoder + rd.wordline + rd.bitline + rd.sense;

  auto& wd = e.write_delay;
  wd.htree = tree.delay;
  wd.decoder = wl_drv.delay;
  wd.wordline = t_wordline;
  wd.cell = t_cell_write;
  e.write_latency = wd.htree + wd.decoder + wd.wordline + wd.cell;

  auto& re = e.read_energy_parts;
  re.htree = (addr_bits + org.line_bits) * tree_energy_bit;
  re.decoder = active * wl_drv.energy;
  re.bitline = e_bitline_read;
  re.sense = e_sense;
  e.read_energy = re.htree + re.decoder + re.bitline + re.sense;

  auto& we = e.write_energy_parts;
  we.htree = (addr_bits + org.line_bits) * tree_energy_bit;
  we.decoder = active * wl_drv.energy;
  we.cell = e_cell_write;
  e.write_energy = we.htree + we.decoder + we.cell;

  // Leakage: word-line drivers, column circuits, sense amplifiers, column
  // multiplexers and H-tree repeaters; SRAM cells on top.
  const double n_sub = static_cast<double>(org.total_subarrays());
  double leak_width = 0.0;
  leak_width += n_sub * org.rows * wl_drv.leak_width;
  leak_width += n_sub * sensed_per_subarray *
                (inverter_leak_width(t, column_driver_width) + t.sense_amp_width);
  if (org.mux_bitline > 1) leak_width += n_sub * org.cols * t.min_width;
  leak_width += (addr_bits + org.line_bits) * tree.leak_width;
  e.peripheral_leakage = leak_width * 1e6 * t.i_off_per_um * vdd;
  if (sram) {
    e.cell_leakage = static_cast<double>(org.capacity) * 8.0 * sram_cell_metrics(cell.sram, t).leakage;
  }
  e.leakage_power = e.peripheral_leakage + e.cell_leakage;
  return e;
}

double objective_value(const ArrayEstimate& e, Objective objective) {
  switch (objective) {
    case Objective::Latency: return e.read_latency;
    case Objective::Energy: return e.read_energy;
    case Objective::Edp: return e.read_latency * e.read_energy;
  }
  return e.read_latency * e.read_energy;
}

ArrayOrganization organize(std::uint64_t capacity, const CellDeck& cell, const TechnologyDeck& tech,
                           Objective objective, const SearchOptions& options) {
  if (capacity < kMinCapacity || capacity > kMaxCapacity) {
    throw DomainError("capacity " + std::to_string(capacity) + " B outside [64 kB, 8 MB]");
  }
  if (!is_pow2(capacity)) throw DomainError("capacity must be a power of two");
  validate(tech);
  for (int fixed : {options.fixed_rows, options.fixed_cols}) {
    if (fixed != 0 && (fixed < kMinDimension || fixed > kMaxDimension ||
                       !is_pow2(static_cast<std::uint64_t>(fixed)))) {
      throw ConfigError("infeasible partition: sub-array dimensions must be powers of two in [16, 4096]");
    }
  }
  if (!(options.area_slack >= 0.0)) throw ConfigError("area_slack must be non-negative");
  if (!is_pow2(static_cast<std::uint64_t>(std::max(options.line_bits, 0)))) {
    throw ConfigError("line_bits must be a power of two");
  }

  std::vector<ArrayOrganization> candidates;
  const std::uint64_t bits = capacity * 8;
  for (int rows = kMinDimension; rows <= kMaxDimension; rows *= 2) {
    if (options.fixed_rows && rows != options.fixed_rows) continue;
    for (int cols = kMinDimension; cols <= kMaxDimension; cols *= 2) {
      if (options.fixed_cols && cols != options.fixed_cols) continue;
      const std::uint64_t cells = static_cast<std::uint64_t>(rows) * cols;
      if (cells > bits) continue;
      const std::uint64_t subarrays = bits / cells;
      for (int banks = 1; banks <= options.max_banks && static_cast<std::uint64_t>(banks) <= subarrays; banks *= 2) {
        for (int spm = 1; spm <= 8 && static_cast<std::uint64_t>(banks * spm) <= subarrays; spm *= 2) {
          const std::uint64_t mats = subarrays / (static_cast<std::uint64_t>(banks) * spm);
          for (int mb = 1; mb <= 8; mb *= 2) {
            for (int ms = 1; ms <= 4; ms *= 2) {
              ArrayOrganization org;
              org.capacity = capacity;
              org.banks = banks;
              org.mats_per_bank = static_cast<int>(mats);
              org.subarrays_per_mat = spm;
              org.rows = rows;
              org.cols = cols;
              org.mux_bitline = mb;
              org.mux_sense = ms;
              org.line_bits = options.line_bits;
              try {
                validate(org);
              } catch (const ConfigError&) {
                continue;
              }
              candidates.push_back(org);
            }
          }
        }
      }
    }
  }
  if (candidates.empty()) {
    throw ConfigError("infeasible partition: no organization with rows and columns of at least 16");
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> score(candidates.size(), kInf);
  std::vector<double> area(candidates.size(), kInf);
  parallel_for(candidates.size(), options.threads, [&](std::size_t i) {
    try {
      const ArrayEstimate e = estimate(candidates[i], cell, tech);
      score[i] = objective_value(e, objective);
      area[i] = e.area;
    } catch (const ConfigError&) {
    }
  });
  const double min_area = *std::min_element(area.begin(), area.end());
  if (!std::isfinite(min_area)) throw ConfigError("no feasible organization for this bitcell");
  const double area_cap = min_area * (1.0 + options.area_slack);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (area[i] > area_cap) score[i] = kInf;
  }
  // First minimum in enumeration order, so ties resolve deterministically.
  const auto best = std::min_element(score.begin(), score.end());
  return candidates[static_cast<std::size_t>(best - score.begin())];
}

std::vector<BenchmarkRow> benchmark(const std::vector<std::uint64_t>& capacities,
                                    const BenchmarkDecks& decks, const TechnologyDeck& tech,
                                    Objective objective, const SearchOptions& options) {
  if (!decks.sram) throw ConfigError("benchmark needs the SRAM baseline deck");
  if (!decks.mram40 || !decks.mram13) throw ConfigError("benchmark needs both MRAM bitcell decks");
  const CellDeck cells[] = {CellDeck::from_mram(*decks.mram40), CellDeck::from_mram(*decks.mram13),
                            CellDeck::from_sram(*decks.sram)};
  std::vector<BenchmarkRow> rows;
  for (std::uint64_t cap : capacities) {
    ArrayEstimate est[3];
    for (int k = 0; k < 3; ++k) est[k] = estimate(organize(cap, cells[k], tech, objective, options), cells[k], tech);
    const auto metric = [](const ArrayEstimate& e, int m) {
      switch (m) {
        case 0: return e.read_latency;
        case 1: return e.write_latency;
        case 2: return e.read_energy;
        case 3: return e.write_energy;
        default: return e.leakage_power;
      }
    };
    for (int m = 0; m < 5; ++m) {
      BenchmarkRow r;
      r.capacity = cap;
      r.metric = kBenchmarkMetrics[m];
      r.mram40 = metric(est[0], m);
      r.mram13 = metric(est[1], m);
      r.sram = metric(est[2], m);
      r.mram40_norm = r.mram40 / r.sram;
      r.mram13_norm = r.mram13 / r.sram;
      rows.push_back(r);
    }
  }
  return rows;
}

TechnologyDeck tech65_300k() {
  TechnologyDeck t;
  t.name = "tech65_300K";
  return t;
}

TechnologyDeck tech65_77k() {
  TechnologyDeck t;
  t.name = "tech65_77K";
  t.temperature = 77.0;
  t.v_th = 0.532;
  t.i_on_per_um = 650e-6 * 1.3;
  t.i_off_per_um = 30e-9 * std::pow(10.0, -1.3);
  t.mobility_factor = 1.3;
  t.wire_resistivity_scale = 0.4;
  return t;
}

}  // namespace cryomram::arch
