#include "tdroute/static_paths.hpp"

#include <limits>
#include <queue>

namespace tdroute {

std::vector<double> shortest_distances(const StaticGraph& g,
                                       std::span<const VertexId> sources) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(g.vertex_count(), kInf);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (VertexId s : sources) {
    dist[s] = 0.0;
    queue.push({0.0, s});
  }
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;  // stale
    for (const StaticGraph::Edge& e : g.out_edges(u)) {
      const double nd = d + e.cost;
      if (nd < dist[e.to]) {
        dist[e.to] = nd;
        queue.push({nd, e.to});
      }
    }
  }
  return dist;
}

}  // namespace tdroute
