#pragma once

// CSV and JSON emitters. Numbers are printed with a fixed significant-digit
// format so identical inputs always give byte-identical files.

#include <string>
#include <vector>

#include "cryomram/array.hpp"
#include "cryomram/bitcell.hpp"
#include "cryomram/device.hpp"
#include "cryomram/switching.hpp"

namespace cryomram::io {

/// "%.10g"-style rendering used by every CSV writer.
std::string format_number(double v);

class CsvTable {
public:
  explicit CsvTable(std::vector<std::string> header);
  CsvTable& row(const std::vector<std::string>& cells);
  std::string str() const;
  std::size_t rows() const { return rows_.size(); }

private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string characteristics_csv(const std::vector<device::DeviceCharacteristics>& rows);
std::string characteristics_json(const std::vector<device::DeviceCharacteristics>& rows);

struct SweepPoint {
  double diameter;
  double temperature;
  double delta;
  double i_c;
  device::Regime regime;
};

std::string sweep_csv(const std::vector<SweepPoint>& rows);
std::string sweep_json(const std::vector<SweepPoint>& rows);

std::string wer_csv(const switching::WerCurve& curve);
std::string wer_json(const switching::WerCurve& curve, double i_write);
std::string switching_samples_csv(const std::vector<switching::SwitchingSample>& samples);

std::string write_samples_csv(const std::vector<bitcell::WriteSample>& samples);
std::string read_samples_csv(const std::vector<bitcell::ReadSample>& samples);
std::string bitcell_report_csv(const bitcell::BitcellReport& r);

std::string benchmark_csv(const std::vector<arch::BenchmarkRow>& rows);
std::string benchmark_json(const std::vector<arch::BenchmarkRow>& rows);

struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  std::uint64_t seed = 0;
  std::string output_directory;
  std::string tool_version;
  std::string timestamp;
  std::vector<std::string> outputs;
};

std::string manifest_json(const RunManifest& m);

}  // namespace cryomram::io
