#pragma once

#include <optional>
#include <vector>

#include "tdroute/td_osr.hpp"

namespace tdroute {

struct PneSnapshotEntry {
  std::vector<VertexId> pois;
  double travel = 0.0;
  bool complete = false;
  bool operator==(const PneSnapshotEntry&) const = default;
};

// Heap content in priority order, captured after one pop-and-generate round.
using PneSnapshot = std::vector<PneSnapshotEntry>;

/// Progressive neighbor exploration: grows partial POI prefixes with resumable
/// time-dependent NN searches (extension = nearest POI of the next category,
/// sibling = next-nearest POI of the same slot), appends the destination leg
/// as soon as all slots are filled, and prunes with the best complete total.
/// Agrees with td_osr_query wherever forced-visit and free-waypoint semantics
/// coincide (POIs off the through paths).
std::optional<QueryResult> td_pne_query(const TimeDependentGraph& g,
                                        const LowerBoundTable& table,
                                        const OtdsrQuery& query,
                                        const SearchOptions& options = {});

struct PneTrace {
  std::vector<PneSnapshot> snapshots;
  std::optional<QueryResult> result;
};

// Same computation, recording the heap after the seed round and after every
// pop-and-generate round (the final pop that returns the answer adds none).
PneTrace pne_trace(const TimeDependentGraph& g, const LowerBoundTable& table,
                   const OtdsrQuery& query, const SearchOptions& options = {});

}  // namespace tdroute
