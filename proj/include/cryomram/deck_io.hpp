#pragma once

// Deck files. Device, transistor, variability and technology decks are flat
// YAML maps whose keys carry their units; bitcell decks are JSON. Parse
// problems are reported as ParseError with the file name and line.

#include <string>

#include "cryomram/array.hpp"
#include "cryomram/bitcell.hpp"
#include "cryomram/device.hpp"

namespace cryomram::io {

/// Whole file as a string; IoError if it cannot be read.
std::string read_file(const std::string& path);
/// Writes atomically enough for our purposes (truncate + write); IoError on failure.
void write_file(const std::string& path, const std::string& content);

device::DeviceDeck parse_device_deck(const std::string& text, const std::string& source = "<string>");
device::DeviceDeck load_device_deck(const std::string& path);
std::string to_yaml(const device::DeviceDeck& deck);

bitcell::AccessTransistorModel parse_transistor_deck(const std::string& text,
                                                     const std::string& source = "<string>");
bitcell::AccessTransistorModel load_transistor_deck(const std::string& path);

bitcell::VariabilityDeck parse_variability_deck(const std::string& text,
                                                const std::string& source = "<string>");
bitcell::VariabilityDeck load_variability_deck(const std::string& path);

arch::TechnologyDeck parse_technology_deck(const std::string& text, const std::string& source = "<string>");
arch::TechnologyDeck load_technology_deck(const std::string& path);

arch::SramCellDeck parse_sram_deck(const std::string& text, const std::string& source = "<string>");
arch::SramCellDeck load_sram_deck(const std::string& path);

bitcell::BitcellDeck load_bitcell_deck(const std::string& path);

}  // namespace cryomram::io
