#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "tdroute/graph.hpp"
#include "tdroute/lower_bounds.hpp"

namespace tdroute {

/// One segment of a route: the full vertex path of a shortest-path search
/// between two stops, with pure travel time and wall clocks at both ends.
struct Leg {
  std::vector<VertexId> path;
  double travel = 0.0;
  Clock depart;
  Clock arrive;
};

struct ReachedVertex {
  double travel = 0.0;
  Clock arrival;
};

/// Earliest-arrival point-to-point search. Runs as label-setting Dijkstra on
/// arrival times, or as A* when destination bounds are supplied (the bounds
/// are a static underestimate and remain consistent for time-dependent
/// costs). Both forms return the same travel values. Ties broken by smaller
/// vertex id. Returns nullopt when the destination is unreachable.
std::optional<Leg> td_shortest_path(const TimeDependentGraph& g, VertexId source,
                                    Clock depart, VertexId destination,
                                    const DestinationBounds* bounds = nullptr);

struct CountedLeg {
  Leg leg;
  std::size_t settled = 0;
};
std::optional<CountedLeg> td_shortest_path_counted(const TimeDependentGraph& g,
                                                   VertexId source, Clock depart,
                                                   VertexId destination,
                                                   const DestinationBounds* bounds = nullptr);

// Earliest arrivals from one departure; unreachable vertices are nullopt.
std::vector<std::optional<ReachedVertex>> td_one_to_all(const TimeDependentGraph& g,
                                                        VertexId source, Clock depart);

/// Resumable time-dependent nearest-neighbor search: an A* from the source
/// guided by the pre-computed category bounds that pauses every time it
/// settles a POI of the requested category. POIs come out in non-decreasing
/// true travel time; emitted results are memoized so siblings in a progressive
/// exploration can re-read earlier ranks.
class NnIterator {
 public:
  struct Result {
    VertexId poi = 0;
    Leg leg;
  };

  NnIterator(const TimeDependentGraph& g, const LowerBoundTable& table, VertexId source,
             Clock depart, CategoryId category);

  // Next unreported POI by travel time, or nullopt when exhausted.
  std::optional<Result> next();

  // Result of the given rank (0 = nearest), advancing as needed; nullptr when
  // fewer POIs are reachable.
  const Result* result_at(std::size_t rank);

  std::size_t emitted_count() const { return results_.size(); }
  std::size_t settled_count() const { return settled_count_; }
  VertexId source() const { return source_; }
  Clock depart() const { return depart_; }
  CategoryId category() const { return category_; }

 private:
  std::optional<VertexId> settle_next_poi();
  Result make_result(VertexId poi) const;

  const TimeDependentGraph* graph_;
  const LowerBoundTable* table_;
  VertexId source_;
  Clock depart_;
  CategoryId category_;

  std::vector<double> travel_;
  std::vector<VertexId> parent_;
  std::vector<char> settled_;
  // (priority, vertex) min-heap with lazy deletion
  std::vector<std::pair<double, VertexId>> heap_;
  std::vector<Result> results_;
  std::size_t next_rank_ = 0;
  std::size_t settled_count_ = 0;
};

// Throws InvalidArgument when the category is not in the table.
NnIterator nn_open(const TimeDependentGraph& g, const LowerBoundTable& table,
                   VertexId source, Clock depart, CategoryId category);

inline std::optional<NnIterator::Result> nn_next(NnIterator& it) { return it.next(); }

}  // namespace tdroute
