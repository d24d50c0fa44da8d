#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cryomram::cli {

/// Runs one command line (without the program name). Primary output goes to
/// `out` unless --out names a directory; diagnostics go to `err`. Returns the
/// process exit code: 0 success, 2 validation, 3 numerical failure, 4 I/O.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "64kB", "2MB", "65536" -> bytes.
std::uint64_t parse_capacity(const std::string& text);

/// "64kB..2MB" (doubling) or a comma-separated list.
std::vector<std::uint64_t> parse_capacity_list(const std::string& text);

}  // namespace cryomram::cli
