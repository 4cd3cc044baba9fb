#include "tdroute/graph.hpp"

#include <algorithm>

#include "tdroute/errors.hpp"
#include "tdroute/graph_io.hpp"

namespace tdroute {

std::size_t StaticGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& out : adjacency) n += out.size();
  return n;
}

StaticGraph reversed(const StaticGraph& g) {
  StaticGraph r;
  r.adjacency.resize(g.vertex_count());
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    for (const StaticGraph::Edge& e : g.adjacency[u]) {
      r.adjacency[e.to].push_back({u, e.cost});
    }
  }
  for (auto& out : r.adjacency) {
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.to < b.to; });
  }
  return r;
}

std::optional<VertexId> TimeDependentGraph::find_vertex(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexId TimeDependentGraph::vertex(std::string_view name) const {
  auto v = find_vertex(name);
  if (!v) throw InvalidArgument("unknown vertex: " + std::string(name));
  return *v;
}

const TimeDependentGraph::Edge* TimeDependentGraph::edge_between(VertexId from,
                                                                 VertexId to) const {
  const auto& out = adjacency_[from];
  auto it = std::lower_bound(out.begin(), out.end(), to,
                             [](const Edge& e, VertexId v) { return e.to < v; });
  if (it == out.end() || it->to != to) return nullptr;
  return &*it;
}

Clock TimeDependentGraph::arrive_at(VertexId u, VertexId v, Clock depart) const {
  const Edge* e = edge_between(u, v);
  if (e == nullptr) {
    throw InvalidArgument("no edge " + names_[u] + " -> " + names_[v]);
  }
  return Clock::wrap(depart.minutes + e->cost.cost_at(depart.minutes), period_);
}

std::optional<CategoryId> TimeDependentGraph::find_category(std::string_view name) const {
  for (CategoryId c = 0; c < categories_.size(); ++c) {
    if (categories_[c].name == name) return c;
  }
  return std::nullopt;
}

GraphBuilder::GraphBuilder(const TimeDependentGraph& g) : period_(g.period()) {
  for (const Category& c : g.categories()) add_category(c.name, c.dwell_minutes);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const CategoryId c = g.category_of(v);
    if (c == kNoCategory) {
      add_vertex(g.name_of(v));
    } else {
      add_vertex(g.name_of(v), g.category(c).name);
    }
  }
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    for (const TimeDependentGraph::Edge& e : g.out_edges(u)) {
      add_edge(g.name_of(u), g.name_of(e.to), e.cost);
    }
  }
}

VertexId GraphBuilder::add_vertex(std::string name) {
  if (name.empty()) throw InvalidArgument("vertex name must be non-empty");
  if (index_.contains(name)) throw InvalidArgument("duplicate vertex: " + name);
  const VertexId id = static_cast<VertexId>(names_.size());
  index_.emplace(name, id);
  names_.push_back(std::move(name));
  vertex_category_.emplace_back();
  return id;
}

VertexId GraphBuilder::add_vertex(std::string name, std::string category) {
  const VertexId id = add_vertex(std::move(name));
  vertex_category_[id] = std::move(category);
  return id;
}

void GraphBuilder::add_category(std::string name, double dwell_minutes) {
  if (name.empty()) throw InvalidArgument("category name must be non-empty");
  if (dwell_minutes < 0.0) throw InvalidArgument("dwell must be >= 0");
  for (const auto& [existing, _] : categories_) {
    if (existing == name) throw InvalidArgument("duplicate category: " + name);
  }
  categories_.emplace_back(std::move(name), dwell_minutes);
}

void GraphBuilder::tag_poi(std::string_view vertex, std::string_view category) {
  auto it = index_.find(std::string(vertex));
  if (it == index_.end()) throw InvalidArgument("unknown vertex: " + std::string(vertex));
  std::string& slot = vertex_category_[it->second];
  if (!slot.empty() && slot != category) {
    throw InvalidArgument("vertex " + std::string(vertex) + " already belongs to " + slot);
  }
  slot = std::string(category);
}

void GraphBuilder::add_edge(std::string_view from, std::string_view to,
                            TravelTimeFunction cost) {
  edges_.push_back({std::string(from), std::string(to), std::move(cost)});
}

void GraphBuilder::add_edge(std::string_view from, std::string_view to, double constant) {
  add_edge(from, to, constant_cost(constant, period_));
}

TimeDependentGraph GraphBuilder::build() const {
  TimeDependentGraph g;
  g.period_ = period_;
  g.names_ = names_;
  g.index_ = index_;
  g.poi_category_.assign(names_.size(), kNoCategory);
  g.adjacency_.resize(names_.size());

  for (const auto& [name, dwell] : categories_) {
    g.categories_.push_back({name, dwell, {}});
  }
  for (VertexId v = 0; v < vertex_category_.size(); ++v) {
    const std::string& cat = vertex_category_[v];
    if (cat.empty()) continue;
    auto c = g.find_category(cat);
    if (!c) throw InvalidArgument("vertex " + names_[v] + " references unknown category " + cat);
    g.poi_category_[v] = *c;
    g.categories_[*c].pois.push_back(v);
  }
  for (Category& c : g.categories_) {
    std::sort(c.pois.begin(), c.pois.end());
  }

  for (const PendingEdge& e : edges_) {
    auto fit = index_.find(e.from);
    auto tit = index_.find(e.to);
    if (fit == index_.end()) throw InvalidArgument("edge references unknown vertex " + e.from);
    if (tit == index_.end()) throw InvalidArgument("edge references unknown vertex " + e.to);
    if (fit->second == tit->second) {
      throw InvalidArgument("self loop on vertex " + e.from);
    }
    if (e.cost.period() != period_) {
      throw InvalidArgument("edge " + e.from + " -> " + e.to + " has mismatched period");
    }
    if (FifoCheck check = e.cost.validate_fifo(); !check) {
      throw InvalidArgument("edge " + e.from + " -> " + e.to + " violates FIFO at segment " +
                            std::to_string(check.segment));
    }
    g.adjacency_[fit->second].push_back({tit->second, e.cost});
  }
  for (auto& out : g.adjacency_) {
    std::sort(out.begin(), out.end(),
              [](const TimeDependentGraph::Edge& a, const TimeDependentGraph::Edge& b) {
                return a.to < b.to;
              });
    for (std::size_t i = 1; i < out.size(); ++i) {
      if (out[i].to == out[i - 1].to) {
        throw InvalidArgument("duplicate edge to vertex " + g.names_[out[i].to]);
      }
    }
    g.edge_count_ += out.size();
  }

  g.fingerprint_ = graph_fingerprint(g);
  return g;
}

StaticGraph lower_bound_graph(const TimeDependentGraph& g) {
  StaticGraph lb;
  lb.adjacency.resize(g.vertex_count());
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    lb.adjacency[u].reserve(g.out_edges(u).size());
    for (const TimeDependentGraph::Edge& e : g.out_edges(u)) {
      lb.adjacency[u].push_back({e.to, e.cost.min_cost()});
    }
  }
  return lb;
}

}  // namespace tdroute
