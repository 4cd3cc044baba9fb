#pragma once

#include <cstdint>
#include <vector>

#include "tdroute/graph.hpp"
#include "tdroute/rng.hpp"
#include "tdroute/td_osr.hpp"

namespace tdroute::testing {

// Small network with two banks, two restaurants and one gas station where the
// greedy chain of nearest-neighbor hops costs 38 minutes from s at 18:00 but
// the true optimum is 21 via <s, v1, b2, r1, d>. Cost functions are constant
// except (s, b1), which dips to 5 off-peak and reads 6 at 18:00.
TimeDependentGraph section1_fixture();

// Query on the fixture above: depart s at 18:00, visit a bank then a
// restaurant (dwell 15 and 60 minutes), end at d.
OtdsrQuery section1_query(const TimeDependentGraph& g, double depart_minutes = 1080.0);

// Static network reproducing the progressive-exploration heap trace: banks at
// 4/5/7 from s, restaurants at 9/7/2 behind them, and a sink destination
// reachable from both restaurants at cost 0. All dwell times are zero.
TimeDependentGraph fig3_fixture();

OtdsrQuery fig3_query(const TimeDependentGraph& g);

// Piecewise-linear function with 1-4 breakpoints, costs in [min_cost,
// max_cost], breakpoint gaps of at least 10 minutes, FIFO-repaired.
TravelTimeFunction random_fifo_function(Rng& rng, double period = kDayMinutes,
                                        double min_cost = 1.0, double max_cost = 30.0);

/// Random oracle-suite instance: a strongly connected grid with random FIFO
/// costs, POIs attached on leaf spurs (so forced-visit and free-waypoint
/// semantics coincide), random per-category dwell in [0, 60], non-POI source
/// and destination, and a sequence without immediate category repeats.
struct SpurInstance {
  TimeDependentGraph graph;
  OtdsrQuery query;
};

SpurInstance random_spur_instance(std::uint64_t seed, std::size_t max_sequence = 3);

// Independent single-source shortest paths by Bellman-Ford relaxation; used as
// an oracle against the Dijkstra-based routines.
std::vector<double> bellman_ford_distances(const StaticGraph& g, VertexId source);

// The quadratic pre-processing scheme: one full Dijkstra per vertex on the
// lower bound graph, then the per-category minimum over POIs. Same table as
// the multi-source build, computed the expensive way.
std::vector<double> per_vertex_category_bounds(const TimeDependentGraph& g);

}  // namespace tdroute::testing
