#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tdroute/graph.hpp"

namespace tdroute {

/// Pre-computed optimistic cost from every vertex to the nearest POI of every
/// category, measured in the lower bound graph. Row-major [vertex][category];
/// unreachable entries are +infinity.
struct LowerBoundTable {
  std::vector<double> values;
  std::vector<std::string> category_order;
  std::uint64_t graph_fingerprint = 0;

  std::size_t category_count() const { return category_order.size(); }
  std::size_t vertex_count() const {
    return category_order.empty() ? 0 : values.size() / category_order.size();
  }
  double at(VertexId v, CategoryId c) const {
    return values[static_cast<std::size_t>(v) * category_order.size() + c];
  }

  bool operator==(const LowerBoundTable&) const = default;
};

/// Per-query optimistic cost from every vertex to one destination, from a
/// single Dijkstra run on the reversed lower bound graph.
struct DestinationBounds {
  VertexId destination = 0;
  std::vector<double> to_destination;

  double at(VertexId v) const { return to_destination[v]; }
};

// One multi-source Dijkstra per category over the reversed lower bound graph;
// categories are processed in parallel when threads != 1 (0 = hardware).
LowerBoundTable build_category_bounds(const TimeDependentGraph& g, unsigned threads = 0);

DestinationBounds destination_bounds(const TimeDependentGraph& g, VertexId destination);
DestinationBounds destination_bounds_on(const StaticGraph& reversed_lower_bound,
                                        VertexId destination);

// Binary round trip. The file pins the source graph's fingerprint; the
// graph-checked overload rejects stale tables.
void save_table(const LowerBoundTable& table, const std::filesystem::path& path);
LowerBoundTable load_table(const std::filesystem::path& path);
LowerBoundTable load_table(const std::filesystem::path& path, const TimeDependentGraph& g);

}  // namespace tdroute
