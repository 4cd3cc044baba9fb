#include "tdroute/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "tdroute/errors.hpp"
#include "tdroute/rng.hpp"

namespace tdroute {
namespace {

constexpr double kGridEdgeKm = 0.5;
constexpr double kMinSpeedKmh = 30.0;
constexpr double kMaxSpeedKmh = 80.0;

// Hourly cost multipliers for the real-cost synthesis; index = hour of day.
constexpr double kHourMultiplier[24] = {
    1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0,  // 12am-7am: base
    1.0,                                 // 7-8am
    1.7,                                 // 8-9am
    1.0,                                 // 9-10am
    1.4, 1.4, 1.4, 1.4, 1.4,             // 10am-3pm
    1.0,                                 // 3-4pm
    1.9, 1.9,                            // 4-6pm
    1.0,                                 // 6-7pm
    1.3, 1.3, 1.3,                       // 7-10pm
    1.0,                                 // 10-11pm
    1.1,                                 // 11pm-12am
};

TravelTimeFunction hourly_function(const std::vector<double>& costs, double period) {
  std::vector<Breakpoint> pts;
  pts.reserve(costs.size());
  for (std::size_t h = 0; h < costs.size(); ++h) {
    pts.push_back({static_cast<double>(h) * 60.0, costs[h]});
  }
  return TravelTimeFunction(fifo_repair(std::move(pts), period), period);
}

TravelTimeFunction random_grid_cost(Rng& rng) {
  std::vector<double> costs(24);
  for (double& c : costs) {
    const double speed = rng.uniform(kMinSpeedKmh, kMaxSpeedKmh);
    c = kGridEdgeKm / speed * 60.0;
  }
  return hourly_function(costs, kDayMinutes);
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string_view field = line.substr(start, comma == std::string_view::npos
                                                    ? std::string_view::npos
                                                    : comma - start);
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) {
      field.remove_prefix(1);
    }
    while (!field.empty() &&
           (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
      field.remove_suffix(1);
    }
    out.push_back(field);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TimeDependentGraph generate_grid(const GridParams& params) {
  const std::size_t n = params.vertices;
  if (n < 2) throw InvalidArgument("generate_grid: need at least 2 vertices");
  if (params.poi_density < 0.0 || params.poi_density > 1.0) {
    throw InvalidArgument("generate_grid: poi density must be in [0, 1]");
  }
  if (params.vertex_degree <= 0.0) {
    throw InvalidArgument("generate_grid: vertex degree must be positive");
  }
  const std::size_t poi_count =
      static_cast<std::size_t>(std::llround(params.poi_density * static_cast<double>(n)));
  if (poi_count > 0 && params.num_categories == 0) {
    throw InvalidArgument("generate_grid: POIs requested but no categories");
  }

  Rng rng(params.seed);

  const std::size_t rows =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(std::sqrt(
                                   static_cast<double>(n)))));
  const std::size_t cols = (n + rows - 1) / rows;
  const auto exists = [&](std::size_t r, std::size_t c) {
    return c < cols && r * cols + c < n;
  };

  // Backbone: a spanning tree (column-0 spine plus row paths), kept in both
  // directions so the graph is strongly connected whatever gets sampled next.
  std::set<std::pair<std::uint32_t, std::uint32_t>> chosen;
  const auto connect = [&](std::size_t a, std::size_t b) {
    chosen.insert({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)});
    chosen.insert({static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(a)});
  };
  for (std::size_t r = 0; r + 1 < rows && exists(r + 1, 0); ++r) {
    connect(r * cols, (r + 1) * cols);
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c + 1 < cols && exists(r, c + 1); ++c) {
      if (exists(r, c)) connect(r * cols + c, r * cols + c + 1);
    }
  }

  const std::size_t target_edges =
      static_cast<std::size_t>(std::llround(params.vertex_degree * static_cast<double>(n)));
  if (target_edges < chosen.size()) {
    throw InvalidArgument(
        "generate_grid: degree too low for a strongly connected grid (need >= " +
        format_double(static_cast<double>(chosen.size()) / static_cast<double>(n)) + ")");
  }

  // Remaining straight edges, then diagonals if the degree asks for more.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pool;
  const auto offer = [&](std::size_t a, std::size_t b) {
    const auto edge = std::make_pair(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
    if (!chosen.contains(edge)) pool.push_back(edge);
  };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (!exists(r, c)) continue;
      const std::size_t v = r * cols + c;
      if (exists(r, c + 1)) {
        offer(v, v + 1);
        offer(v + 1, v);
      }
      if (exists(r + 1, c)) {
        offer(v, v + cols);
        offer(v + cols, v);
      }
    }
  }
  rng.shuffle(pool);
  std::size_t missing = target_edges - chosen.size();
  for (const auto& edge : pool) {
    if (missing == 0) break;
    if (chosen.insert(edge).second) --missing;
  }
  if (missing > 0) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> diagonals;
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        if (!exists(r, c)) continue;
        const std::size_t v = r * cols + c;
        if (exists(r + 1, c + 1)) {
          diagonals.push_back({static_cast<std::uint32_t>(v),
                               static_cast<std::uint32_t>(v + cols + 1)});
          diagonals.push_back({static_cast<std::uint32_t>(v + cols + 1),
                               static_cast<std::uint32_t>(v)});
        }
        if (c > 0 && exists(r + 1, c - 1)) {
          diagonals.push_back({static_cast<std::uint32_t>(v),
                               static_cast<std::uint32_t>(v + cols - 1)});
          diagonals.push_back({static_cast<std::uint32_t>(v + cols - 1),
                               static_cast<std::uint32_t>(v)});
        }
      }
    }
    rng.shuffle(diagonals);
    for (const auto& edge : diagonals) {
      if (missing == 0) break;
      if (chosen.insert(edge).second) --missing;
    }
    if (missing > 0) {
      throw InvalidArgument("generate_grid: degree exceeds what the grid offers");
    }
  }

  GraphBuilder builder(kDayMinutes);
  for (std::size_t c = 0; c < params.num_categories; ++c) {
    builder.add_category("c" + std::to_string(c), params.default_dwell);
  }
  std::vector<std::size_t> order(n);
  for (std::size_t v = 0; v < n; ++v) order[v] = v;
  rng.shuffle(order);
  std::vector<std::string> category_of(n);
  for (std::size_t k = 0; k < poi_count; ++k) {
    category_of[order[k]] = "c" + std::to_string(k % params.num_categories);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (category_of[v].empty()) {
      builder.add_vertex(std::to_string(v));
    } else {
      builder.add_vertex(std::to_string(v), category_of[v]);
    }
  }
  // std::set iteration gives a fixed edge order; costs drawn in that order.
  for (const auto& [from, to] : chosen) {
    builder.add_edge(std::to_string(from), std::to_string(to), random_grid_cost(rng));
  }
  return builder.build();
}

TimeDependentGraph synthesize_real_costs(const RoadNetwork& network, std::uint64_t seed,
                                         ImportReport* report) {
  if (network.classes.empty()) throw InvalidArgument("synthesize_real_costs: no speed classes");
  if (network.edges.empty()) throw InvalidArgument("synthesize_real_costs: no edges");

  std::map<std::string, double> class_max;
  double min_of_maxima = std::numeric_limits<double>::infinity();
  for (const SpeedClassDef& def : network.classes) {
    if (def.max_kmh <= 0.0) {
      throw InvalidArgument("synthesize_real_costs: class " + def.name +
                            " has non-positive max speed");
    }
    if (!class_max.emplace(def.name, def.max_kmh).second) {
      throw InvalidArgument("synthesize_real_costs: duplicate class " + def.name);
    }
    min_of_maxima = std::min(min_of_maxima, def.max_kmh);
  }

  Rng rng(seed);
  GraphBuilder builder(network.period);

  std::map<std::string, double> dwell_by_category;
  for (const RoadPoiDef& poi : network.pois) dwell_by_category.emplace(poi.category, 0.0);
  for (const auto& [name, dwell] : dwell_by_category) builder.add_category(name, dwell);

  for (const RoadEdgeDef& e : network.edges) {
    if (!builder.has_vertex(e.from)) builder.add_vertex(e.from);
    if (!builder.has_vertex(e.to)) builder.add_vertex(e.to);
  }
  for (const RoadPoiDef& poi : network.pois) builder.tag_poi(poi.vertex, poi.category);

  std::map<std::pair<std::string, std::string>, TravelTimeFunction> merged;
  for (const RoadEdgeDef& e : network.edges) {
    if (e.length_m <= 0.0) {
      throw InvalidArgument("synthesize_real_costs: non-positive length on edge " + e.from +
                            " -> " + e.to);
    }
    auto cls = class_max.find(e.speed_class);
    if (cls == class_max.end()) {
      throw InvalidArgument("synthesize_real_costs: edge " + e.from + " -> " + e.to +
                            " references unknown class " + e.speed_class);
    }
    const double mean = (cls->second + min_of_maxima) / 2.0;
    const double stddev = mean / 4.0;
    double speed = rng.normal(mean, stddev);
    // Redraw while over the class limit, as well as non-physical draws.
    while (speed > cls->second || speed < 0.5) speed = rng.normal(mean, stddev);

    const double base = e.length_m / 1000.0 / speed * 60.0;
    std::vector<double> costs(24);
    for (std::size_t h = 0; h < 24; ++h) costs[h] = base * kHourMultiplier[h];
    TravelTimeFunction f = hourly_function(costs, network.period);

    const auto key = std::make_pair(e.from, e.to);
    auto it = merged.find(key);
    if (it == merged.end()) {
      merged.emplace(key, std::move(f));
    } else {
      it->second = pointwise_min(it->second, f);
      if (report != nullptr) {
        ++report->merged_edges;
        report->notes.push_back("merged parallel edge " + e.from + " -> " + e.to);
      }
    }
  }
  for (auto& [key, f] : merged) builder.add_edge(key.first, key.second, std::move(f));
  return builder.build();
}

RoadNetwork load_road_network(const std::filesystem::path& edge_csv,
                              const std::filesystem::path& poi_csv,
                              const std::filesystem::path& class_csv) {
  RoadNetwork network;

  std::size_t line_no = 0;
  const auto bad = [&](const std::filesystem::path& path, const std::string& what) {
    return ParseError(path.filename().string() + " line " + std::to_string(line_no) + ": " +
                      what);
  };

  line_no = 0;
  for (const std::string& line : read_lines(class_csv)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto f = split_csv(line);
    if (f.size() != 2) throw bad(class_csv, "expected class,max_kmh");
    auto max = parse_double_strict(f[1]);
    if (!max) {
      if (line_no == 1) continue;  // header row
      throw bad(class_csv, "bad max speed '" + std::string(f[1]) + "'");
    }
    network.classes.push_back({std::string(f[0]), *max});
  }

  line_no = 0;
  for (const std::string& line : read_lines(edge_csv)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto f = split_csv(line);
    if (f.size() != 4) throw bad(edge_csv, "expected from,to,length_m,speed_class");
    auto length = parse_double_strict(f[2]);
    if (!length) {
      if (line_no == 1) continue;
      throw bad(edge_csv, "bad length '" + std::string(f[2]) + "'");
    }
    network.edges.push_back(
        {std::string(f[0]), std::string(f[1]), *length, std::string(f[3])});
  }

  std::set<std::string> known;
  for (const RoadEdgeDef& e : network.edges) {
    known.insert(e.from);
    known.insert(e.to);
  }
  line_no = 0;
  for (const std::string& line : read_lines(poi_csv)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto f = split_csv(line);
    if (f.size() != 2) throw bad(poi_csv, "expected vertex,category");
    if (line_no == 1 && f[0] == "vertex") continue;
    if (!known.contains(std::string(f[0]))) {
      throw bad(poi_csv, "POI references unknown vertex '" + std::string(f[0]) + "'");
    }
    network.pois.push_back({std::string(f[0]), std::string(f[1])});
  }
  return network;
}

TimeDependentGraph import_network(const std::filesystem::path& tdg_file, ImportReport& report) {
  return read_tdg_merging(tdg_file, report);
}

}  // namespace tdroute
