#pragma once

#include <optional>
#include <vector>

#include "tdroute/td_osr.hpp"

namespace tdroute {

/// Exhaustive label-setting search over (vertex, sequence-progress) states
/// with the same forced-visit and dwell semantics as td_osr_query but no
/// heuristic and no pruning rules. FIFO makes per-state closing exact: at
/// equal progress, travel order equals clock order. Guarded by a state budget
/// of |V| * (m + 1) <= 10^6.
std::optional<Route> product_dijkstra(const TimeDependentGraph& g, const OtdsrQuery& query,
                                      const SearchOptions& options = {});

/// Second, independent verifier: tries every choice of one POI per slot and
/// chains time-dependent shortest-path legs with dwell in between. Matches the
/// forced-visit searches when POIs sit on leaf spurs. Guarded by a combination
/// budget of 10^4.
std::optional<Route> enumerate_combinations(const TimeDependentGraph& g,
                                            const OtdsrQuery& query);

/// Baseline that repeatedly takes the time-dependent nearest POI of the next
/// category and finishes with the destination leg. Not optimal in general.
std::optional<QueryResult> greedy_route(const TimeDependentGraph& g,
                                        const LowerBoundTable& table, const OtdsrQuery& query);

struct AdmissibilitySample {
  VertexId vertex = 0;
  std::vector<CategoryId> remaining;
  Clock clock;
};

struct AdmissibilityReport {
  std::size_t samples = 0;
  std::size_t unreachable = 0;
  std::size_t violations = 0;
  double worst_excess = 0.0;  // max of heuristic - true remaining travel
};

// Verifies heuristic(v, remaining, ...) <= true remaining travel computed by
// product_dijkstra for every sample; destination taken from `bounds`.
AdmissibilityReport label_admissibility_check(const TimeDependentGraph& g,
                                              const LowerBoundTable& table,
                                              const DestinationBounds& bounds,
                                              const std::vector<AdmissibilitySample>& samples);

}  // namespace tdroute
