#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tdroute/graph.hpp"
#include "tdroute/graph_io.hpp"

namespace tdroute {

struct GridParams {
  std::size_t vertices = 0;
  double poi_density = 0.0;      // POIs / vertices
  double vertex_degree = 2.5;    // target average out-degree
  std::size_t num_categories = 0;
  std::uint64_t seed = 0;
  double default_dwell = 15.0;   // minutes, applied to every category
};

/// Near-square grid with hourly random speeds per edge (30-80 km/h over a
/// 500 m edge), FIFO-repaired piecewise-linear costs, uniformly placed POIs
/// with balanced categories, and the requested average out-degree. Strong
/// connectivity is guaranteed by construction (a two-way spanning backbone
/// plus randomly sampled extra grid/diagonal edges). Deterministic per seed.
TimeDependentGraph generate_grid(const GridParams& params);

struct SpeedClassDef {
  std::string name;
  double max_kmh = 0.0;
};

struct RoadEdgeDef {
  std::string from, to;
  double length_m = 0.0;
  std::string speed_class;
};

struct RoadPoiDef {
  std::string vertex;
  std::string category;
};

struct RoadNetwork {
  std::vector<RoadEdgeDef> edges;
  std::vector<RoadPoiDef> pois;
  std::vector<SpeedClassDef> classes;
  double period = kDayMinutes;
};

/// Cost synthesis for imported static networks: per speed class, speeds are
/// drawn from a normal distribution with mean (classMax + min of all class
/// maxima) / 2 and stddev mean/4, redrawn while above the class maximum. The
/// base travel time (length/speed) covers 12am-7am and is multiplied by 1.7
/// (8-9am), 1.4 (10am-3pm), 1.9 (4-6pm), 1.3 (7-10pm) and 1.1 (11pm-12am);
/// unlisted hours keep the base. Hourly breakpoints, FIFO-repaired. Parallel
/// edges are merged by pointwise minimum.
TimeDependentGraph synthesize_real_costs(const RoadNetwork& network, std::uint64_t seed,
                                         ImportReport* report = nullptr);

// CSV loaders for the static import path. Formats (optional header rows):
//   edges:   from,to,length_m,speed_class
//   pois:    vertex,category
//   classes: class,max_kmh
RoadNetwork load_road_network(const std::filesystem::path& edge_csv,
                              const std::filesystem::path& poi_csv,
                              const std::filesystem::path& class_csv);

// Graph-format import with parallel-edge merging (same as read_tdg_merging).
TimeDependentGraph import_network(const std::filesystem::path& tdg_file, ImportReport& report);

}  // namespace tdroute
