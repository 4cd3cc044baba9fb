#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tdroute/travel_time_function.hpp"

namespace tdroute {

using VertexId = std::uint32_t;
using CategoryId = std::uint32_t;

inline constexpr CategoryId kNoCategory = ~CategoryId{0};

/// Time of day in minutes, always reduced into [0, period).
struct Clock {
  double minutes = 0.0;

  static Clock wrap(double m, double period) { return {wrap_minutes(m, period)}; }
  bool operator==(const Clock&) const = default;
};

struct Category {
  std::string name;
  double dwell_minutes = 0.0;
  std::vector<VertexId> pois;  // sorted by id
};

/// Static weighted digraph; derived from a TimeDependentGraph as its lower
/// bound graph or the reverse thereof, or built directly in tests.
struct StaticGraph {
  struct Edge {
    VertexId to = 0;
    double cost = 0.0;
    bool operator==(const Edge&) const = default;
  };

  std::vector<std::vector<Edge>> adjacency;

  std::size_t vertex_count() const { return adjacency.size(); }
  std::span<const Edge> out_edges(VertexId v) const { return adjacency[v]; }
  std::size_t edge_count() const;
  bool operator==(const StaticGraph&) const = default;
};

StaticGraph reversed(const StaticGraph& g);

class GraphBuilder;

/// Directed road network with one periodic travel-time function per edge,
/// plus POI category tags and per-category dwell times. Immutable once built;
/// concurrent readers are safe.
class TimeDependentGraph {
 public:
  struct Edge {
    VertexId to = 0;
    TravelTimeFunction cost;
  };

  double period() const { return period_; }
  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  const std::string& name_of(VertexId v) const { return names_[v]; }
  std::optional<VertexId> find_vertex(std::string_view name) const;
  // Throws InvalidArgument when the name is unknown.
  VertexId vertex(std::string_view name) const;

  std::span<const Edge> out_edges(VertexId v) const { return adjacency_[v]; }
  const Edge* edge_between(VertexId from, VertexId to) const;

  CategoryId category_of(VertexId v) const { return poi_category_[v]; }
  std::span<const Category> categories() const { return categories_; }
  const Category& category(CategoryId c) const { return categories_[c]; }
  std::optional<CategoryId> find_category(std::string_view name) const;

  // Departure clock -> arrival clock over edge (u, v); throws on missing edge.
  Clock arrive_at(VertexId u, VertexId v, Clock depart) const;

  // Stable hash of the canonical serialization; pins preprocessing artifacts
  // to the exact graph they were built from.
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  friend class GraphBuilder;
  TimeDependentGraph() = default;

  double period_ = kDayMinutes;
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<std::vector<Edge>> adjacency_;
  std::vector<CategoryId> poi_category_;
  std::vector<Category> categories_;
  std::size_t edge_count_ = 0;
  std::uint64_t fingerprint_ = 0;
};

/// Accumulates vertices/categories/edges by name and validates the whole
/// structure in build(): known endpoints, no self loops, at most one edge per
/// ordered pair, FIFO-valid cost functions, one category per vertex.
class GraphBuilder {
 public:
  explicit GraphBuilder(double period = kDayMinutes) : period_(period) {}
  // Seeds the builder with an existing graph (used to extend fixtures).
  explicit GraphBuilder(const TimeDependentGraph& g);

  VertexId add_vertex(std::string name);
  VertexId add_vertex(std::string name, std::string category);
  void add_category(std::string name, double dwell_minutes);
  void tag_poi(std::string_view vertex, std::string_view category);
  void add_edge(std::string_view from, std::string_view to, TravelTimeFunction cost);
  void add_edge(std::string_view from, std::string_view to, double constant);

  bool has_vertex(std::string_view name) const { return index_.contains(std::string(name)); }
  double period() const { return period_; }

  TimeDependentGraph build() const;

 private:
  struct PendingEdge {
    std::string from, to;
    TravelTimeFunction cost;
  };
  double period_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<std::string> vertex_category_;  // "" = none
  std::vector<std::pair<std::string, double>> categories_;
  std::vector<PendingEdge> edges_;
};

/// Optimistic static version of g: each edge keeps its minimum cost over the
/// period (attained at a breakpoint for piecewise-linear functions).
StaticGraph lower_bound_graph(const TimeDependentGraph& g);

}  // namespace tdroute
