#pragma once

#include <span>
#include <vector>

#include "tdroute/graph.hpp"

namespace tdroute {

// Multi-source Dijkstra on a static graph; unreachable entries are +infinity.
std::vector<double> shortest_distances(const StaticGraph& g,
                                       std::span<const VertexId> sources);

inline std::vector<double> shortest_distances(const StaticGraph& g, VertexId source) {
  const VertexId s[1] = {source};
  return shortest_distances(g, s);
}

}  // namespace tdroute
