#include "support/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

#include "tdroute/netgen.hpp"

namespace tdroute::testing {

TimeDependentGraph section1_fixture() {
  GraphBuilder b;
  b.add_category("C_B", 15.0);
  b.add_category("C_R", 60.0);
  b.add_category("C_G", 5.0);

  b.add_vertex("s");
  b.add_vertex("d");
  b.add_vertex("v1");
  b.add_vertex("v2");
  b.add_vertex("b1", "C_B");
  b.add_vertex("b2", "C_B");
  b.add_vertex("r1", "C_R");
  b.add_vertex("r2", "C_R");
  b.add_vertex("g1", "C_G");

  // Off-peak the s->b1 road takes 5 minutes; at 18:00 it reads 6.
  b.add_edge("s", "b1", TravelTimeFunction({{0.0, 6.0}, {600.0, 5.0}, {660.0, 6.0}}));
  b.add_edge("s", "v1", 4.0);
  b.add_edge("v1", "b2", 3.0);
  b.add_edge("b2", "r1", 5.0);
  b.add_edge("r1", "d", 9.0);
  b.add_edge("b1", "v2", 6.0);
  b.add_edge("v2", "r2", 7.0);
  b.add_edge("r2", "v2", 7.0);
  b.add_edge("v2", "v1", 4.0);
  b.add_edge("v1", "d", 8.0);
  b.add_edge("v1", "g1", 2.0);
  b.add_edge("g1", "d", 20.0);
  return b.build();
}

OtdsrQuery section1_query(const TimeDependentGraph& g, double depart_minutes) {
  OtdsrQuery q;
  q.source = g.vertex("s");
  q.destination = g.vertex("d");
  q.depart = Clock::wrap(depart_minutes, g.period());
  q.sequence = {*g.find_category("C_B"), *g.find_category("C_R")};
  return q;
}

TimeDependentGraph fig3_fixture() {
  GraphBuilder b;
  b.add_category("banks", 0.0);
  b.add_category("restaurants", 0.0);

  b.add_vertex("s");
  b.add_vertex("b1", "banks");
  b.add_vertex("b2", "banks");
  b.add_vertex("b3", "banks");
  b.add_vertex("r1", "restaurants");
  b.add_vertex("r2", "restaurants");
  b.add_vertex("dd");

  b.add_edge("s", "b1", 4.0);
  b.add_edge("s", "b2", 5.0);
  b.add_edge("s", "b3", 7.0);
  b.add_edge("b1", "r2", 9.0);
  b.add_edge("b2", "r1", 7.0);
  b.add_edge("b3", "r2", 2.0);
  b.add_edge("r1", "dd", 0.0);
  b.add_edge("r2", "dd", 0.0);
  return b.build();
}

OtdsrQuery fig3_query(const TimeDependentGraph& g) {
  OtdsrQuery q;
  q.source = g.vertex("s");
  q.destination = g.vertex("dd");
  q.depart = Clock{0.0};
  q.sequence = {*g.find_category("banks"), *g.find_category("restaurants")};
  return q;
}

TravelTimeFunction random_fifo_function(Rng& rng, double period, double min_cost,
                                        double max_cost) {
  const std::size_t k = 1 + rng.below(4);
  std::vector<Breakpoint> points;
  if (k == 1) {
    points.push_back({0.0, rng.uniform(min_cost, max_cost)});
  } else {
    // Distinct times with gaps of at least 10 minutes, wrap gap included.
    std::set<long> slots;
    while (slots.size() < k) {
      slots.insert(static_cast<long>(rng.below(static_cast<std::uint64_t>(period / 10.0) - 1)));
    }
    for (long slot : slots) {
      points.push_back({static_cast<double>(slot) * 10.0, rng.uniform(min_cost, max_cost)});
    }
  }
  return TravelTimeFunction(fifo_repair(std::move(points), period), period);
}

SpurInstance random_spur_instance(std::uint64_t seed, std::size_t max_sequence) {
  Rng rng(seed);

  const std::size_t side = 6 + rng.below(15);  // 36..400 grid vertices
  GridParams grid;
  grid.vertices = side * side;
  grid.poi_density = 0.0;
  grid.vertex_degree = 2.0 + 0.5 * static_cast<double>(rng.below(3));
  grid.num_categories = 0;
  grid.seed = rng.next_u64();
  const TimeDependentGraph base = generate_grid(grid);

  constexpr std::size_t kCategories = 3;
  GraphBuilder b(base);
  std::vector<CategoryId> category_ids;
  for (std::size_t c = 0; c < kCategories; ++c) {
    b.add_category("cat" + std::to_string(c), std::floor(rng.uniform(0.0, 60.0)));
  }

  // Distinct host vertices, one spur tip per POI.
  std::vector<std::size_t> hosts(grid.vertices);
  for (std::size_t v = 0; v < hosts.size(); ++v) hosts[v] = v;
  rng.shuffle(hosts);
  std::size_t next_host = 0;
  for (std::size_t c = 0; c < kCategories; ++c) {
    const std::size_t pois = 1 + rng.below(3);
    for (std::size_t i = 0; i < pois; ++i) {
      const std::string host = base.name_of(static_cast<VertexId>(hosts[next_host++]));
      const std::string tip = "p" + std::to_string(c) + "_" + std::to_string(i);
      b.add_vertex(tip, "cat" + std::to_string(c));
      b.add_edge(host, tip, random_fifo_function(rng));
      b.add_edge(tip, host, random_fifo_function(rng));
    }
  }

  SpurInstance instance{b.build(), {}};
  const TimeDependentGraph& g = instance.graph;
  for (std::size_t c = 0; c < kCategories; ++c) {
    category_ids.push_back(*g.find_category("cat" + std::to_string(c)));
  }

  OtdsrQuery& q = instance.query;
  q.source = static_cast<VertexId>(rng.below(grid.vertices));  // grid vertices are not POIs
  q.destination = rng.chance(0.05)
                      ? q.source
                      : static_cast<VertexId>(rng.below(grid.vertices));
  q.depart = Clock{rng.uniform(0.0, g.period())};
  const std::size_t m = rng.below(max_sequence + 1);
  for (std::size_t i = 0; i < m; ++i) {
    CategoryId c = category_ids[rng.below(kCategories)];
    while (i > 0 && c == q.sequence.back()) c = category_ids[rng.below(kCategories)];
    q.sequence.push_back(c);
  }
  return instance;
}

std::vector<double> bellman_ford_distances(const StaticGraph& g, VertexId source) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(g.vertex_count(), kInf);
  dist[source] = 0.0;
  for (std::size_t round = 0; round + 1 < g.vertex_count(); ++round) {
    bool changed = false;
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
      if (dist[u] == kInf) continue;
      for (const StaticGraph::Edge& e : g.out_edges(u)) {
        if (dist[u] + e.cost < dist[e.to]) {
          dist[e.to] = dist[u] + e.cost;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return dist;
}

std::vector<double> per_vertex_category_bounds(const TimeDependentGraph& g) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const StaticGraph lb = lower_bound_graph(g);
  const std::size_t num_categories = g.categories().size();
  std::vector<double> table(g.vertex_count() * num_categories, kInf);

  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    // Plain binary-heap Dijkstra, written out on purpose.
    std::vector<double> dist(g.vertex_count(), kInf);
    using Item = std::pair<double, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[v] = 0.0;
    queue.push({0.0, v});
    while (!queue.empty()) {
      const auto [d, u] = queue.top();
      queue.pop();
      if (d > dist[u]) continue;
      for (const StaticGraph::Edge& e : lb.out_edges(u)) {
        if (d + e.cost < dist[e.to]) {
          dist[e.to] = d + e.cost;
          queue.push({dist[e.to], e.to});
        }
      }
    }
    for (CategoryId c = 0; c < num_categories; ++c) {
      double best = kInf;
      for (VertexId poi : g.category(c).pois) best = std::min(best, dist[poi]);
      table[static_cast<std::size_t>(v) * num_categories + c] = best;
    }
  }
  return table;
}

}  // namespace tdroute::testing
