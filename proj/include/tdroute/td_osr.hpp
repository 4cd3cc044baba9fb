#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "tdroute/graph.hpp"
#include "tdroute/lower_bounds.hpp"
#include "tdroute/tdsp.hpp"

namespace tdroute {

/// Find the fastest route s -> d departing at `depart` that visits exactly one
/// POI of each category in `sequence`, in order. Repeated categories are
/// allowed, as is s == d.
struct OtdsrQuery {
  VertexId source = 0;
  VertexId destination = 0;
  Clock depart;
  std::vector<CategoryId> sequence;
  // Per-category dwell replacing the graph's default for this query.
  std::unordered_map<CategoryId, double> dwell_override;
};

struct SearchOptions {
  // Count the origin as the first POI when it belongs to sequence[0]. The
  // expansion step only inspects neighbors, so this is off by default.
  bool count_origin = false;
  // Also generate a non-visiting label when a neighbor belongs to the next
  // category (default follows the forced-visit expansion step).
  bool allow_passthrough = false;
  // Off = plain per-(vertex, progress) closing, for A/B correctness runs.
  bool level_pruning = true;
  std::size_t expansion_budget = 0;  // 0 = unlimited
  double time_budget_ms = 0.0;       // 0 = unlimited
};

struct Route {
  std::vector<VertexId> poi_choices;  // one per sequence position
  std::vector<VertexId> full_path;    // s ... d
  std::vector<Leg> legs;              // split at the chosen POIs
  double total_travel = 0.0;          // dwell excluded
  double total_elapsed = 0.0;         // dwell included
  Clock arrive;                       // at the destination, before any dwell there
};

struct SearchStats {
  std::size_t expansions = 0;
  std::size_t max_expansions_per_vertex = 0;
  std::size_t enqueued = 0;
  std::size_t updated = 0;
  double elapsed_ms = 0.0;
  // Diagnostics: popped priorities are non-decreasing within one progress
  // level; and globally, which holds for the unpruned variant.
  bool pop_monotone_per_level = true;
  bool pop_monotone_global = true;
};

struct QueryResult {
  Route route;
  SearchStats stats;
};

/// Optimistic remaining cost: the farthest of the per-category bounds for the
/// categories still to visit and the destination bound. +infinity when any of
/// them is unreachable in the lower bound graph.
double heuristic(VertexId v, std::span<const CategoryId> remaining,
                 const LowerBoundTable& table, const DestinationBounds& bounds);

/// A* over (vertex, sequence-progress) labels with the max-of-bounds heuristic,
/// per-level removed lists and in-queue label replacement. Throws
/// FingerprintMismatch when the table does not belong to g, BudgetExceeded
/// when an explicit budget runs out; returns nullopt when no feasible route
/// exists.
std::optional<QueryResult> td_osr_query(const TimeDependentGraph& g,
                                        const LowerBoundTable& table, const OtdsrQuery& query,
                                        const SearchOptions& options = {});

// Shared by the query engines.
void validate_query(const TimeDependentGraph& g, const OtdsrQuery& query);
void require_matching_table(const TimeDependentGraph& g, const LowerBoundTable& table);
double dwell_of(const TimeDependentGraph& g, const OtdsrQuery& query, CategoryId category);

/// Re-runs a returned route edge by edge from the query clock, adding dwell at
/// each chosen POI, and checks that per-leg travels and clocks reproduce the
/// stored values within `tolerance`. Returns true when the route is feasible.
/// `origin_counted` mirrors the count_origin option of the producing search.
bool resimulate_route(const TimeDependentGraph& g, const OtdsrQuery& query, const Route& route,
                      double tolerance = 1e-9, bool origin_counted = false);

}  // namespace tdroute
