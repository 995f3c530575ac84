#pragma once

// Set files, spectrum CSV and points files.
//
// Text set format:
//     N <ambient>
//     <element>
//     ...            (ascending, one per line)
// JSON set format: {"ambient": N, "elements": [...]}

#include "salemap/intsets.hpp"
#include "salemap/spectral.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace salemap::io {

enum class SetFormat { text, json };

// .json selects JSON, anything else text.
SetFormat set_format_for(const std::filesystem::path& path);

DiscreteSet parse_set_text(std::istream& in);
DiscreteSet parse_set_json(const std::string& text);
std::string format_set_text(const DiscreteSet& set);
std::string format_set_json(const DiscreteSet& set);

// Sniffs the content: a leading '{' means JSON.
DiscreteSet read_set(const std::filesystem::path& path);
void write_set(const std::filesystem::path& path, const DiscreteSet& set, SetFormat format);

// "k,re,im,abs" header, one row per frequency, 15 significant digits.
std::string spectrum_csv(const Spectrum& spectrum);

// One real per line; blank lines and '#' comments skipped.
std::vector<double> read_points(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace salemap::io
