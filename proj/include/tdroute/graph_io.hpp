#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tdroute/graph.hpp"

namespace tdroute {

// Shortest round-trip decimal form; canonical across the project so that
// serializations (and therefore fingerprints) are stable.
std::string format_double(double value);
std::optional<double> parse_double_strict(std::string_view text);

// Accepts "HH:MM", "HH:MM:SS" or plain decimal minutes.
double parse_clock_minutes(std::string_view text);

struct ImportReport {
  std::size_t merged_edges = 0;
  std::size_t dropped_records = 0;
  std::vector<std::string> notes;
};

// Line-oriented text format:
//   tdg <period> <|V|> <|E|>
//   c <category> <dwell-minutes>
//   v <id> [<category>]
//   e <from> <to> <k> <b_0>:<c_0> ... <b_{k-1}>:<c_{k-1}>
// '#' starts a comment. Static graphs use the same format with k = 1.
std::string serialize_tdg(const TimeDependentGraph& g);
TimeDependentGraph parse_tdg(std::string_view text);
void write_tdg(const TimeDependentGraph& g, const std::filesystem::path& path);
TimeDependentGraph read_tdg(const std::filesystem::path& path);

// Lenient variants: parallel edges are merged by pointwise minimum and
// recorded in the report instead of rejected.
TimeDependentGraph parse_tdg_merging(std::string_view text, ImportReport& report);
TimeDependentGraph read_tdg_merging(const std::filesystem::path& path, ImportReport& report);

std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t graph_fingerprint(const TimeDependentGraph& g);

}  // namespace tdroute
