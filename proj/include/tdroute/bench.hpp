#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tdroute/graph.hpp"
#include "tdroute/lower_bounds.hpp"
#include "tdroute/rng.hpp"

namespace tdroute {

// Benchmark defaults at scale 1.0 (network size is multiplied by the sweep
// scale; the other parameters apply as-is).
struct SweepDefaults {
  std::size_t vertices = 50000;
  double poi_density = 0.01;
  double vertex_degree = 2.5;
  std::size_t num_categories = 10;
  std::size_t sequence_size = 3;
  double query_locality_pct = 15.0;
};

struct SweepConfig {
  // vertices | poiDensity | vertexDegree | numCategories | sequenceSize | queryLocality
  std::string parameter;
  std::vector<double> values;
  double scale = 0.1;
  std::uint64_t seed = 1;
  std::size_t queries_per_setting = 10;
  std::vector<std::string> algos = {"tdosr", "tdpne"};
  // With timing off the elapsedMs column is written as 0 and the CSV is
  // byte-identical across runs.
  bool timing = true;
  std::size_t expansion_budget = 0;
  double time_budget_ms = 0.0;
  unsigned jobs = 1;
  SweepDefaults defaults;
};

SweepConfig parse_sweep_config(const std::string& json_text);

// CSV with one row per (setting, query, algo) plus one median summary row per
// (setting, algo). Columns: parameter,value,seed,algo,expandedVertices,
// elapsedMs,totalTravel. Failed rows (budget exceeded) carry totalTravel=nan.
std::string run_sweep(const SweepConfig& config);

// Diameter of a static graph estimated as the best of `probes` double sweeps
// (forward Dijkstra from a random vertex, then from the farthest vertex found).
double estimate_diameter(const StaticGraph& g, Rng& rng, int probes = 16);

/// Query endpoint sampler: s uniform, d among vertices whose lower-bound-graph
/// distance from s falls within +-10% of locality_pct% of the estimated
/// diameter. The band widens (25%, 50%, then any reachable vertex) when
/// sampling keeps missing.
class LocalitySampler {
 public:
  LocalitySampler(const TimeDependentGraph& g, Rng& rng, int probes = 16);

  std::pair<VertexId, VertexId> sample(double locality_pct, Rng& rng) const;
  double diameter() const { return diameter_; }
  const StaticGraph& bound_graph() const { return lb_; }

 private:
  StaticGraph lb_;
  double diameter_ = 0.0;
};

std::pair<VertexId, VertexId> sample_locality_query(const TimeDependentGraph& g,
                                                    double locality_pct, std::uint64_t seed);

}  // namespace tdroute
