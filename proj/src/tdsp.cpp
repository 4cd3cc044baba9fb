#include "tdroute/tdsp.hpp"

#include <algorithm>
#include <queue>

#include "tdroute/errors.hpp"

namespace tdroute {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr VertexId kNoParent = ~VertexId{0};

std::vector<VertexId> walk_parents(const std::vector<VertexId>& parent, VertexId from,
                                   VertexId to) {
  std::vector<VertexId> path;
  for (VertexId v = to;; v = parent[v]) {
    path.push_back(v);
    if (v == from) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::optional<CountedLeg> td_shortest_path_counted(const TimeDependentGraph& g,
                                                   VertexId source, Clock depart,
                                                   VertexId destination,
                                                   const DestinationBounds* bounds) {
  if (source >= g.vertex_count() || destination >= g.vertex_count()) {
    throw InvalidArgument("td_shortest_path: unknown vertex id");
  }
  if (bounds != nullptr && bounds->destination != destination) {
    throw InvalidArgument("td_shortest_path: bounds were computed for a different destination");
  }
  const double period = g.period();
  const auto h = [&](VertexId v) { return bounds != nullptr ? bounds->at(v) : 0.0; };
  if (h(source) == kInf) return std::nullopt;

  std::vector<double> travel(g.vertex_count(), kInf);
  std::vector<VertexId> parent(g.vertex_count(), kNoParent);
  std::vector<char> settled(g.vertex_count(), 0);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;

  travel[source] = 0.0;
  queue.push({h(source), source});
  std::size_t settled_count = 0;

  while (!queue.empty()) {
    const auto [pri, u] = queue.top();
    queue.pop();
    if (settled[u]) continue;
    settled[u] = 1;
    ++settled_count;
    if (u == destination) {
      Leg leg{walk_parents(parent, source, destination), travel[u], depart,
              Clock::wrap(depart.minutes + travel[u], period)};
      return CountedLeg{std::move(leg), settled_count};
    }
    const double clock_u = wrap_minutes(depart.minutes + travel[u], period);
    for (const TimeDependentGraph::Edge& e : g.out_edges(u)) {
      if (settled[e.to]) continue;
      const double hv = h(e.to);
      if (hv == kInf) continue;  // cannot reach the destination anyway
      const double nt = travel[u] + e.cost.cost_at(clock_u);
      if (nt < travel[e.to]) {
        travel[e.to] = nt;
        parent[e.to] = u;
        queue.push({nt + hv, e.to});
      }
    }
  }
  return std::nullopt;
}

std::optional<Leg> td_shortest_path(const TimeDependentGraph& g, VertexId source, Clock depart,
                                    VertexId destination, const DestinationBounds* bounds) {
  auto res = td_shortest_path_counted(g, source, depart, destination, bounds);
  if (!res) return std::nullopt;
  return std::move(res->leg);
}

std::vector<std::optional<ReachedVertex>> td_one_to_all(const TimeDependentGraph& g,
                                                        VertexId source, Clock depart) {
  if (source >= g.vertex_count()) throw InvalidArgument("td_one_to_all: unknown vertex id");
  const double period = g.period();
  std::vector<double> travel(g.vertex_count(), kInf);
  std::vector<char> settled(g.vertex_count(), 0);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  travel[source] = 0.0;
  queue.push({0.0, source});
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (settled[u]) continue;
    settled[u] = 1;
    const double clock_u = wrap_minutes(depart.minutes + d, period);
    for (const TimeDependentGraph::Edge& e : g.out_edges(u)) {
      const double nt = d + e.cost.cost_at(clock_u);
      if (nt < travel[e.to]) {
        travel[e.to] = nt;
        queue.push({nt, e.to});
      }
    }
  }
  std::vector<std::optional<ReachedVertex>> out(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (settled[v]) {
      out[v] = ReachedVertex{travel[v], Clock::wrap(depart.minutes + travel[v], period)};
    }
  }
  return out;
}

NnIterator::NnIterator(const TimeDependentGraph& g, const LowerBoundTable& table,
                       VertexId source, Clock depart, CategoryId category)
    : graph_(&g),
      table_(&table),
      source_(source),
      depart_(depart),
      category_(category),
      travel_(g.vertex_count(), kInf),
      parent_(g.vertex_count(), kNoParent),
      settled_(g.vertex_count(), 0) {
  const double h = table.at(source, category);
  if (h != kInf) {
    travel_[source] = 0.0;
    heap_.push_back({h, source});
  }
}

std::optional<VertexId> NnIterator::settle_next_poi() {
  const double period = graph_->period();
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), std::greater<>{});
    const auto [pri, u] = heap_.back();
    heap_.pop_back();
    if (settled_[u]) continue;
    settled_[u] = 1;
    ++settled_count_;

    const double clock_u = wrap_minutes(depart_.minutes + travel_[u], period);
    for (const TimeDependentGraph::Edge& e : graph_->out_edges(u)) {
      if (settled_[e.to]) continue;
      const double h = table_->at(e.to, category_);
      if (h == kInf) continue;
      const double nt = travel_[u] + e.cost.cost_at(clock_u);
      if (nt < travel_[e.to]) {
        travel_[e.to] = nt;
        parent_[e.to] = u;
        heap_.push_back({nt + h, e.to});
        std::push_heap(heap_.begin(), heap_.end(), std::greater<>{});
      }
    }
    if (graph_->category_of(u) == category_) return u;
  }
  return std::nullopt;
}

NnIterator::Result NnIterator::make_result(VertexId poi) const {
  return {poi, Leg{walk_parents(parent_, source_, poi), travel_[poi], depart_,
                   Clock::wrap(depart_.minutes + travel_[poi], graph_->period())}};
}

std::optional<NnIterator::Result> NnIterator::next() {
  const Result* r = result_at(next_rank_);
  if (r == nullptr) return std::nullopt;
  ++next_rank_;
  return *r;
}

const NnIterator::Result* NnIterator::result_at(std::size_t rank) {
  while (results_.size() <= rank) {
    auto poi = settle_next_poi();
    if (!poi) return nullptr;
    results_.push_back(make_result(*poi));
  }
  return &results_[rank];
}

NnIterator nn_open(const TimeDependentGraph& g, const LowerBoundTable& table, VertexId source,
                   Clock depart, CategoryId category) {
  if (category >= table.category_count()) {
    throw InvalidArgument("nn_open: unknown category id " + std::to_string(category));
  }
  if (source >= g.vertex_count()) throw InvalidArgument("nn_open: unknown vertex id");
  return NnIterator(g, table, source, depart, category);
}

}  // namespace tdroute
