#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cryomram/array.hpp"
#include "cryomram/bitcell.hpp"
#include "cryomram/deck_io.hpp"
#include "cryomram/device.hpp"
#include "cryomram/errors.hpp"
#include "cryomram/report_io.hpp"
#include "cryomram/switching.hpp"

#ifndef CRYOMRAM_VERSION
#define CRYOMRAM_VERSION "0.0.0"
#endif

namespace cryomram::cli {

namespace {

namespace fs = std::filesystem;

struct Common {
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 1;
  bool seed_set = false;
  unsigned threads = 0;
};

void add_common(CLI::App* cmd, Common& c, bool with_seed) {
  cmd->add_option("--out", c.out, "Output directory (default: primary output on stdout)");
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
  if (with_seed) cmd->add_option("--seed", c.seed, "RNG seed");
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

/// Collects named outputs, then either prints the primary one or writes all
/// of them next to a manifest.
class Emitter {
public:
  Emitter(const Common& c, std::string command, std::ostream& out)
      : common_(c), out_(out) {
    manifest_.command = std::move(command);
    manifest_.seed = c.seed;
    manifest_.output_directory = c.out;
    manifest_.tool_version = CRYOMRAM_VERSION;
  }

  void input(const std::string& path) {
    if (!path.empty()) manifest_.inputs.push_back(path);
  }

  void add(const std::string& name, std::string content, bool primary = false) {
    if (primary) primary_ = files_.size();
    files_.emplace_back(name, std::move(content));
  }

  void finish() {
    if (common_.out.empty()) {
      if (!files_.empty()) out_ << files_[primary_].second;
      return;
    }
    std::error_code ec;
    fs::create_directories(common_.out, ec);
    if (ec) throw IoError("cannot create output directory '" + common_.out + "': " + ec.message());
    for (const auto& [name, content] : files_) {
      io::write_file((fs::path(common_.out) / name).string(), content);
      manifest_.outputs.push_back(name);
    }
    manifest_.timestamp = utc_timestamp();
    io::write_file((fs::path(common_.out) / "manifest.json").string(), io::manifest_json(manifest_));
  }

private:
  const Common& common_;
  std::ostream& out_;
  io::RunManifest manifest_;
  std::vector<std::pair<std::string, std::string>> files_;
  std::size_t primary_ = 0;
};

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0 && hi > lo)) throw DomainError("pulse-width grid needs 0 < t_min < t_max");
  if (n < 2) throw DomainError("pulse-width grid needs at least two points");
  std::vector<double> g(static_cast<std::size_t>(n));
  const double step = std::log(hi / lo) / (n - 1);
  for (int k = 0; k < n; ++k) g[static_cast<std::size_t>(k)] = lo * std::exp(step * k);
  g.back() = hi;
  return g;
}

/// "a,b,c" -> doubles.
std::vector<double> parse_tuple(const std::string& text, std::size_t expected, const char* what) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(std::string("malformed ") + what + " '" + text + "'");
    }
  }
  if (v.size() != expected) throw ConfigError(std::string("malformed ") + what + " '" + text + "'");
  return v;
}

// --- characterize ----------------------------------------------------------

struct CharacterizeArgs {
  std::vector<std::string> decks;
  std::vector<double> temps{300.0, 77.0};
};

void cmd_characterize(const CharacterizeArgs& a, const Common& c, std::ostream& out) {
  Emitter em(c, "characterize", out);
  std::vector<device::DeviceCharacteristics> rows;
  for (const auto& path : a.decks) {
    em.input(path);
    const auto deck = io::load_device_deck(path);
    for (double t : a.temps) rows.push_back(device::characterize(deck, t));
  }
  if (c.format == "json") {
    em.add("characterize.json", io::characteristics_json(rows), true);
  } else {
    em.add("characterize.csv", io::characteristics_csv(rows), true);
  }
  em.finish();
}

// --- sweep -----------------------------------------------------------------

struct SweepArgs {
  std::string deck;
  std::vector<double> temps{300.0, 77.0};
  double d_min = 5.0;
  double d_max = 80.0;
  double d_step = 1.0;
};

void cmd_sweep(const SweepArgs& a, const Common& c, std::ostream& out) {
  if (!(a.d_min >= 5.0 && a.d_max <= 80.0 && a.d_min <= a.d_max)) {
    throw DomainError("diameter range must lie within [5, 80] nm with d_min <= d_max");
  }
  if (!(a.d_step > 0.0)) throw DomainError("diameter step must be positive");
  Emitter em(c, "sweep", out);
  em.input(a.deck);
  const auto base = io::load_device_deck(a.deck);
  const auto n = static_cast<int>(std::floor((a.d_max - a.d_min) / a.d_step + 1e-9)) + 1;
  std::vector<io::SweepPoint> rows;
  for (double t : a.temps) {
    for (int k = 0; k < n; ++k) {
      auto deck = base;
      deck.geometry.diameter = (a.d_min + k * a.d_step) * 1e-9;
      const auto ts = device::thermal_stability(deck, t);
      rows.push_back({deck.geometry.diameter, t, ts.delta, device::critical_current(deck, t), ts.regime});
    }
  }
  if (c.format == "json") {
    em.add("sweep.json", io::sweep_json(rows), true);
  } else {
    em.add("sweep.csv", io::sweep_csv(rows), true);
  }
  em.finish();
}

// --- wer -------------------------------------------------------------------

struct WerArgs {
  std::string deck;
  double temp = 77.0;
  double current = 20e-6;
  std::size_t trials = 100000;
  double dt = 1e-12;
  double t_min = 0.0;
  double t_max = 0.0;
  int points = 60;
  double floor = 1e-9;
  bool samples = false;
};

void cmd_wer(const WerArgs& a, const Common& c, std::ostream& out) {
  if (a.trials < switching::kMinMonteCarloTrials) {
    throw DomainError("--trials must be at least " + std::to_string(switching::kMinMonteCarloTrials) +
                      ", got " + std::to_string(a.trials));
  }
  Emitter em(c, "wer", out);
  em.input(a.deck);
  const auto deck = io::load_device_deck(a.deck);
  const auto dev = switching::macrospin_from(deck, a.temp);

  double t_max = a.t_max;
  if (t_max <= 0.0) {
    if (std::abs(a.current) <= dev.i_c) {
      throw ConfigError("sub-critical write current: pass --t-max explicitly");
    }
    switching::PulseOptions po;
    t_max = 1.5 * switching::pulse_for_wer(dev, a.current, a.floor, po);
  }
  const double t_min = a.t_min > 0.0 ? a.t_min : t_max / 100.0;

  switching::WerOptions wo;
  wo.seed = c.seed;
  wo.dt = a.dt;
  wo.threads = c.threads;
  const auto curve = switching::wer_curve(dev, a.current, log_grid(t_min, t_max, a.points), a.trials,
                                          a.floor, wo);
  if (c.format == "json") {
    em.add("wer.json", io::wer_json(curve, a.current), true);
  } else {
    em.add("wer.csv", io::wer_csv(curve), true);
  }
  if (a.samples) {
    switching::SwitchingProblem p;
    p.device = dev;
    p.i_applied = a.current;
    p.t_max = t_max;
    p.seed = c.seed;
    p.dt = a.dt;
    em.add("switching_samples.csv", io::switching_samples_csv(switching::simulate_trials(p, a.trials, c.threads)));
  }
  em.finish();
}

// --- bitcell ---------------------------------------------------------------

struct BitcellArgs {
  std::string deck;
  std::string transistor;
  std::string variability;
  double temp = 77.0;
  double vdd = 1.2;
  double wer = 1e-7;
  double rdr = 1e-9;
  double t_read = 1e-9;
  std::size_t trials = 10000;
  std::string export_path;
  bool samples = false;
};

void cmd_bitcell(const BitcellArgs& a, const Common& c, std::ostream& out) {
  if (a.trials < 1) throw DomainError("--trials must be positive");
  Emitter em(c, "bitcell", out);
  em.input(a.deck);
  em.input(a.transistor);
  em.input(a.variability);
  const auto deck = io::load_device_deck(a.deck);
  const auto tr = a.transistor.empty() ? bitcell::AccessTransistorModel{} : io::load_transistor_deck(a.transistor);
  auto var = a.variability.empty() ? bitcell::VariabilityDeck{} : io::load_variability_deck(a.variability);
  if (c.seed_set || a.variability.empty()) var.rng_seed = c.seed;

  bitcell::BitcellConfig cfg;
  cfg.temperature = a.temp;
  cfg.vdd = a.vdd;
  cfg.wer_target = a.wer;
  cfg.rdr_target = a.rdr;
  cfg.t_read = a.t_read;
  cfg.threads = c.threads;
  const auto w = bitcell::write_analysis(deck, tr, var, cfg, a.trials);
  const auto r = bitcell::read_analysis(deck, tr, var, cfg, a.trials);
  const auto report = bitcell::make_report(deck.name, cfg, w, r, a.trials);

  if (c.format == "json") {
    em.add("bitcell.json", bitcell::to_json(report) + "\n", true);
  } else {
    em.add("bitcell.csv", io::bitcell_report_csv(report), true);
  }
  if (a.samples) {
    em.add("write_samples.csv", io::write_samples_csv(w.samples));
    em.add("read_samples.csv", io::read_samples_csv(r.samples));
  }
  if (!a.export_path.empty()) io::write_file(a.export_path, bitcell::to_json(bitcell::export_bitcell_deck(report)) + "\n");
  em.finish();
}

// --- bench -----------------------------------------------------------------

struct BenchArgs {
  std::string mram40;
  std::string mram13;
  std::string sram;
  std::string tech;
  std::string capacities = "64kB..2MB";
  std::string objective = "edp";
  double area_slack = 0.25;
};

void cmd_bench(const BenchArgs& a, const Common& c, std::ostream& out) {
  Emitter em(c, "bench", out);
  for (const auto* p : {&a.mram40, &a.mram13, &a.sram, &a.tech}) em.input(*p);
  const auto m40 = io::load_bitcell_deck(a.mram40);
  const auto m13 = io::load_bitcell_deck(a.mram13);
  const auto sram = a.sram.empty() ? arch::SramCellDeck{} : io::load_sram_deck(a.sram);
  const auto tech = a.tech.empty() ? arch::tech65_77k() : io::load_technology_deck(a.tech);
  arch::SearchOptions so;
  so.threads = c.threads;
  so.area_slack = a.area_slack;
  const auto rows = arch::benchmark(parse_capacity_list(a.capacities), {&m40, &m13, &sram}, tech,
                                    arch::objective_from_string(a.objective), so);
  if (c.format == "json") {
    em.add("bench.json", io::benchmark_json(rows), true);
  } else {
    em.add("bench.csv", io::benchmark_csv(rows), true);
  }
  em.finish();
}

// --- extract ---------------------------------------------------------------

struct ExtractArgs {
  std::string deck;
  std::vector<std::string> targets;
  std::string delta_target;
  std::string ic_target;
};

void cmd_extract(const ExtractArgs& a, const Common& c, std::ostream& out) {
  Emitter em(c, "extract", out);
  em.input(a.deck);
  auto deck = io::load_device_deck(a.deck);
  if (!a.delta_target.empty() && !a.ic_target.empty()) {
    throw ConfigError("--delta-target and --ic-target are mutually exclusive");
  }
  if (!a.delta_target.empty()) {
    const auto v = parse_tuple(a.delta_target, 2, "--delta-target (T,delta)");
    deck.demag.mode = device::DemagModel::Mode::Fixed;
    deck.demag.value = device::calibrate_demag_for_delta(deck, v[0], v[1]);
    deck.demag.offset = 0.0;
  }
  if (!a.ic_target.empty()) {
    const auto v = parse_tuple(a.ic_target, 2, "--ic-target (T,I_c)");
    deck.demag.mode = device::DemagModel::Mode::Fixed;
    deck.demag.value = device::calibrate_demag_for_critical_current(deck, v[0], v[1]);
    deck.demag.offset = 0.0;
  }
  nlohmann::ordered_json fit;
  if (!a.targets.empty()) {
    std::vector<device::ResistanceTarget> targets;
    for (const auto& t : a.targets) {
      const auto v = parse_tuple(t, 3, "--target (T,R_L,R_H)");
      targets.push_back({v[0], v[1], v[2]});
    }
    const auto ex = device::extract_barriers(deck, targets);
    deck.top = ex.top;
    deck.bottom = ex.bottom;
    fit["max_relative_error"] = ex.max_relative_error;
    fit["relative_errors"] = ex.relative_errors;
  }
  fit["nz_minus_nxy"] = deck.demag.evaluate(deck.geometry);
  em.add("deck.yaml", io::to_yaml(deck), c.format == "csv");
  em.add("fit.json", fit.dump(2) + "\n", c.format == "json");
  em.finish();
}

void print_error(std::ostream& err, bool as_json, const char* kind, const std::string& msg, int code) {
  if (as_json) {
    nlohmann::ordered_json j;
    j["error"] = {{"kind", kind}, {"message", msg}, {"exit_code", code}};
    err << j.dump() << "\n";
  } else {
    err << "error (" << kind << "): " << msg << "\n";
  }
}

}  // namespace

std::uint64_t parse_capacity(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("malformed capacity '" + text + "'");
  }
  std::string unit = text.substr(used);
  std::transform(unit.begin(), unit.end(), unit.begin(), [](unsigned char ch) { return std::tolower(ch); });
  double scale = 1.0;
  if (unit == "kb" || unit == "k") scale = 1024.0;
  else if (unit == "mb" || unit == "m") scale = 1024.0 * 1024.0;
  else if (unit != "" && unit != "b") throw ConfigError("unknown capacity unit in '" + text + "'");
  const double bytes = v * scale;
  if (!(bytes >= 1.0) || bytes != std::floor(bytes)) throw ConfigError("capacity must be a whole number of bytes: '" + text + "'");
  return static_cast<std::uint64_t>(bytes);
}

std::vector<std::uint64_t> parse_capacity_list(const std::string& text) {
  std::vector<std::uint64_t> caps;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const auto lo = parse_capacity(text.substr(0, dots));
    const auto hi = parse_capacity(text.substr(dots + 2));
    if (lo > hi) throw ConfigError("empty capacity range '" + text + "'");
    for (auto c = lo; c <= hi; c *= 2) caps.push_back(c);
    return caps;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) caps.push_back(parse_capacity(item));
  if (caps.empty()) throw ConfigError("no capacities given");
  return caps;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cryogenic DMTJ STT-MRAM device, bitcell and array estimator", "cryomram"};
  app.set_version_flag("--version", CRYOMRAM_VERSION);
  app.require_subcommand(1);
  bool error_json = false;
  app.add_flag("--error-json", error_json, "Report errors as a JSON object on stderr");

  Common common;

  CharacterizeArgs ca;
  auto* characterize = app.add_subcommand("characterize", "Device characteristics per deck and temperature");
  characterize->add_option("--deck", ca.decks, "Device deck (repeatable)")->required();
  characterize->add_option("--temp", ca.temps, "Temperatures in K (repeatable)");
  add_common(characterize, common, false);

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "Delta and I_c versus diameter");
  sweep->add_option("--deck", sa.deck, "Device deck")->required();
  sweep->add_option("--temp", sa.temps, "Temperatures in K (repeatable)");
  sweep->add_option("--d-min", sa.d_min, "Smallest diameter (nm)");
  sweep->add_option("--d-max", sa.d_max, "Largest diameter (nm)");
  sweep->add_option("--d-step", sa.d_step, "Diameter step (nm)");
  add_common(sweep, common, false);

  WerArgs wa;
  auto* wer = app.add_subcommand("wer", "Write error rate versus pulse width");
  wer->add_option("--deck", wa.deck, "Device deck")->required();
  wer->add_option("--temp", wa.temp, "Temperature (K)");
  wer->add_option("--current", wa.current, "Write current (A); the sign selects the start state");
  wer->add_option("--trials", wa.trials, "Monte Carlo trials");
  wer->add_option("--dt", wa.dt, "Integrator step (s)");
  wer->add_option("--t-min", wa.t_min, "Shortest pulse (s)");
  wer->add_option("--t-max", wa.t_max, "Longest pulse (s)");
  wer->add_option("--points", wa.points, "Grid points");
  wer->add_option("--floor", wa.floor, "Lowest WER of interest");
  wer->add_flag("--samples", wa.samples, "Also write per-trial switching times");
  add_common(wer, common, true);

  BitcellArgs ba;
  auto* bc = app.add_subcommand("bitcell", "1T1DMTJ write/read Monte Carlo");
  bc->add_option("--deck", ba.deck, "Device deck")->required();
  bc->add_option("--transistor", ba.transistor, "Access transistor deck");
  bc->add_option("--variability", ba.variability, "Process variability deck");
  bc->add_option("--temp", ba.temp, "Temperature (K)");
  bc->add_option("--vdd", ba.vdd, "Supply (V)");
  bc->add_option("--wer", ba.wer, "Target write error rate");
  bc->add_option("--rdr", ba.rdr, "Target read disturb rate");
  bc->add_option("--t-read", ba.t_read, "Read pulse (s)");
  bc->add_option("--trials", ba.trials, "Monte Carlo instances");
  bc->add_option("--export", ba.export_path, "Write the array-level bitcell deck (JSON) here");
  bc->add_flag("--samples", ba.samples, "Also write per-instance samples");
  add_common(bc, common, true);

  BenchArgs ka;
  auto* bench = app.add_subcommand("bench", "Array benchmark of two MRAM bitcells against 6T-SRAM");
  bench->add_option("--mram40", ka.mram40, "Large-device bitcell deck (JSON)")->required();
  bench->add_option("--mram13", ka.mram13, "Small-device bitcell deck (JSON)")->required();
  bench->add_option("--sram", ka.sram, "SRAM cell deck");
  bench->add_option("--tech", ka.tech, "Technology deck (default: built-in 77 K)");
  bench->add_option("--capacities", ka.capacities, "e.g. 64kB..2MB or 64kB,1MB");
  bench->add_option("--objective", ka.objective, "Organization objective")
      ->check(CLI::IsMember({"latency", "energy", "edp"}));
  bench->add_option("--area-slack", ka.area_slack, "Allowed area above the smallest organization");
  add_common(bench, common, false);

  ExtractArgs ea;
  auto* extract = app.add_subcommand("extract", "Fit barrier conductances and demag to observed data");
  extract->add_option("--deck", ea.deck, "Device deck to start from")->required();
  extract->add_option("--target", ea.targets, "T,R_L,R_H in K and ohm (repeatable)");
  extract->add_option("--delta-target", ea.delta_target, "T,delta for the demag calibration");
  extract->add_option("--ic-target", ea.ic_target, "T,I_c (A) for the demag calibration");
  add_common(extract, common, false);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << CRYOMRAM_VERSION << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    print_error(err, error_json, "usage", e.what(), 2);
    return 2;
  }
  for (auto* sc : app.get_subcommands()) {
    if (auto* opt = sc->get_option_no_throw("--seed")) common.seed_set = opt->count() > 0;
  }

  try {
    if (*characterize) cmd_characterize(ca, common, out);
    else if (*sweep) cmd_sweep(sa, common, out);
    else if (*wer) cmd_wer(wa, common, out);
    else if (*bc) cmd_bitcell(ba, common, out);
    else if (*bench) cmd_bench(ka, common, out);
    else if (*extract) cmd_extract(ea, common, out);
  } catch (const Error& e) {
    print_error(err, error_json, e.kind(), e.what(), e.exit_code());
    return e.exit_code();
  } catch (const std::exception& e) {
    print_error(err, error_json, "internal", e.what(), 3);
    return 3;
  }
  return 0;
}

}  // namespace cryomram::cli
