#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "antpath/bench.hpp"
#include "antpath/colony.hpp"
#include "antpath/gridworld.hpp"

namespace antpath::io {

// Map text format:
//   <width> <height>
//   <height rows of width chars, '.' free, '#' obstacle>
// LF line endings, no trailing whitespace.
std::string format_map(const GridMap& map);
// Throws ParseError naming the offending line.
GridMap parse_map(std::string_view text, const std::string& source = "<map>");
GridMap load_map(const std::filesystem::path& path);

// {"map": "<path or inline map text>", "start": [x,y], "goal": [x,y]}.
// Inline text is recognized by a newline; a path is resolved against base_dir.
Instance parse_instance_json(std::string_view json_text, const std::filesystem::path& base_dir = {},
                             const std::string& source = "<instance>");
Instance load_instance(const std::filesystem::path& path);
std::string format_instance_json(const Instance& instance);

// Fixed 6 significant digits; empty string for nullopt or NaN.
std::string format_number(std::optional<double> value);

// height rows x width columns of per-node pheromone (max over incoming edges; obstacles 0).
std::string pheromone_csv(const PheromoneField& field);
// ASCII PGM (P2), linearly scaled so the field maximum maps to 255.
std::string pheromone_pgm(const PheromoneField& field);

// One row per config: label, AveragePath, Turning, SD-P, SuccessRate, PathImprove, p-value.
std::string report_csv(const BenchReport& report);
// Wall-clock columns (Time(s), SD-T) per config; not reproducible across runs.
std::string timing_csv(const BenchReport& report);
std::string report_json(const BenchReport& report);
// One row per iteration, one column per colony config.
std::string curves_csv(const BenchReport& report);
// Human-readable table with every metric.
std::string report_table(const BenchReport& report);

std::string read_file(const std::filesystem::path& path);
// Throws IoError carrying the path.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace antpath::io
