#include "tdroute/td_osr.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

#include "tdroute/errors.hpp"

namespace tdroute {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Label {
  VertexId vertex = 0;
  std::uint32_t progress = 0;
  double travel = 0.0;
  double clock = 0.0;  // departure clock from `vertex`; dwell already added
  std::int64_t parent = -1;
};

struct QueueKey {
  double priority = 0.0;
  std::uint32_t progress = 0;
  VertexId vertex = 0;
  std::size_t label = 0;
};

// Priority ascending; ties prefer labels closer to completion, then smaller
// vertex id. One entry per vertex, so the order is total.
struct KeyLess {
  bool operator()(const QueueKey& a, const QueueKey& b) const {
    if (a.priority != b.priority) return a.priority < b.priority;
    if (a.progress != b.progress) return a.progress > b.progress;
    return a.vertex < b.vertex;
  }
};

class Deadline {
 public:
  Deadline(const SearchOptions& options, std::chrono::steady_clock::time_point start)
      : expansion_budget_(options.expansion_budget),
        time_budget_ms_(options.time_budget_ms),
        start_(start) {}

  void on_expansion(std::size_t expansions) const {
    if (expansion_budget_ != 0 && expansions > expansion_budget_) {
      throw BudgetExceeded("search exceeded expansion budget of " +
                           std::to_string(expansion_budget_));
    }
    if (time_budget_ms_ > 0.0 && (expansions & 1023) == 0 && elapsed_ms() > time_budget_ms_) {
      throw BudgetExceeded("search exceeded time budget");
    }
  }

  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::size_t expansion_budget_;
  double time_budget_ms_;
  std::chrono::steady_clock::time_point start_;
};

struct MonotonicityTracker {
  std::vector<double> per_level;
  double global = -kInf;

  explicit MonotonicityTracker(std::size_t levels) : per_level(levels, -kInf) {}

  void record(std::uint32_t level, double priority, SearchStats& stats) {
    if (priority < per_level[level] - kClockEps) stats.pop_monotone_per_level = false;
    if (priority < global - kClockEps) stats.pop_monotone_global = false;
    per_level[level] = std::max(per_level[level], priority);
    global = std::max(global, priority);
  }
};

Route reconstruct_route(const TimeDependentGraph& g, const OtdsrQuery& query,
                        const std::vector<Label>& arena, std::size_t final_label) {
  const double period = g.period();
  std::vector<std::size_t> chain;
  for (std::int64_t i = static_cast<std::int64_t>(final_label); i >= 0; i = arena[i].parent) {
    chain.push_back(static_cast<std::size_t>(i));
  }
  std::reverse(chain.begin(), chain.end());

  Route route;
  route.full_path.reserve(chain.size());
  for (std::size_t i : chain) route.full_path.push_back(arena[i].vertex);

  // Positions in the chain where a POI was consumed, in slot order.
  std::vector<std::size_t> stop_positions;
  std::vector<double> spent_at(chain.size(), 0.0);
  std::uint32_t prev_progress = 0;
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const Label& lab = arena[chain[k]];
    if (lab.progress > prev_progress || (k == 0 && lab.progress > 0)) {
      const std::uint32_t slot = lab.progress - 1;
      route.poi_choices.push_back(lab.vertex);
      stop_positions.push_back(k);
      spent_at[k] = dwell_of(g, query, query.sequence[slot]);
    }
    prev_progress = lab.progress;
  }

  std::vector<std::size_t> bounds;
  bounds.push_back(0);
  for (std::size_t p : stop_positions) {
    if (p != bounds.back()) bounds.push_back(p);
  }
  if (chain.size() - 1 != bounds.back() || bounds.size() == 1) bounds.push_back(chain.size() - 1);

  for (std::size_t b = 0; b + 1 < bounds.size(); ++b) {
    const std::size_t from = bounds[b], to = bounds[b + 1];
    Leg leg;
    leg.path.assign(route.full_path.begin() + static_cast<std::ptrdiff_t>(from),
                    route.full_path.begin() + static_cast<std::ptrdiff_t>(to) + 1);
    leg.travel = arena[chain[to]].travel - arena[chain[from]].travel;
    leg.depart = Clock{arena[chain[from]].clock};
    leg.arrive = Clock::wrap(arena[chain[to]].clock - spent_at[to], period);
    route.legs.push_back(std::move(leg));
  }

  route.total_travel = arena[chain.back()].travel;
  double dwell_sum = 0.0;
  for (CategoryId c : query.sequence) dwell_sum += dwell_of(g, query, c);
  route.total_elapsed = route.total_travel + dwell_sum;
  route.arrive = route.legs.empty() ? Clock{arena[chain.back()].clock}
                                    : route.legs.back().arrive;
  return route;
}

std::optional<QueryResult> run_pruned(const TimeDependentGraph& g, const LowerBoundTable& table,
                                      const OtdsrQuery& query, const SearchOptions& options,
                                      const DestinationBounds& dest, Label source_label,
                                      double source_h,
                                      std::chrono::steady_clock::time_point start) {
  const std::uint32_t m = static_cast<std::uint32_t>(query.sequence.size());
  const auto remaining = [&](std::uint32_t progress) {
    return std::span<const CategoryId>(query.sequence).subspan(progress);
  };

  SearchStats stats;
  Deadline deadline(options, start);
  MonotonicityTracker monotone(m + 1);

  std::vector<Label> arena;
  std::set<QueueKey, KeyLess> queue;
  std::unordered_map<VertexId, std::set<QueueKey, KeyLess>::iterator> in_queue;
  std::vector<int> max_removed(g.vertex_count(), -1);
  std::vector<std::uint32_t> pops(g.vertex_count(), 0);

  const auto push = [&](const Label& lab, double priority) {
    arena.push_back(lab);
    auto [it, inserted] =
        queue.insert(QueueKey{priority, lab.progress, lab.vertex, arena.size() - 1});
    in_queue.emplace(lab.vertex, it);
    ++stats.enqueued;
  };

  push(source_label, source_label.travel + source_h);

  while (!queue.empty()) {
    const QueueKey key = *queue.begin();
    queue.erase(queue.begin());
    in_queue.erase(key.vertex);
    const Label lab = arena[key.label];

    ++stats.expansions;
    deadline.on_expansion(stats.expansions);
    pops[lab.vertex] += 1;
    stats.max_expansions_per_vertex =
        std::max<std::size_t>(stats.max_expansions_per_vertex, pops[lab.vertex]);
    monotone.record(lab.progress, key.priority, stats);

    max_removed[lab.vertex] =
        std::max(max_removed[lab.vertex], static_cast<int>(lab.progress));

    if (lab.vertex == query.destination && lab.progress == m) {
      stats.elapsed_ms = deadline.elapsed_ms();
      return QueryResult{reconstruct_route(g, query, arena, key.label), stats};
    }

    for (const TimeDependentGraph::Edge& e : g.out_edges(lab.vertex)) {
      const double edge_cost = e.cost.cost_at(lab.clock);

      const auto relax = [&](std::uint32_t new_progress, double spent) {
        const double new_travel = lab.travel + edge_cost;
        const double new_clock = wrap_minutes(lab.clock + edge_cost + spent, g.period());
        const double h = heuristic(e.to, remaining(new_progress), table, dest);
        if (h == kInf) return;
        const double priority = new_travel + h;
        if (max_removed[e.to] >= static_cast<int>(new_progress)) return;

        const Label next{e.to, new_progress, new_travel, new_clock,
                         static_cast<std::int64_t>(key.label)};
        auto queued = in_queue.find(e.to);
        if (queued == in_queue.end()) {
          push(next, priority);
          return;
        }
        const QueueKey old = *queued->second;
        if (arena[old.label].progress <= new_progress && old.priority >= priority) {
          queue.erase(queued->second);
          in_queue.erase(queued);
          push(next, priority);
          ++stats.updated;
          --stats.enqueued;  // replacement, not a fresh enqueue
        }
      };

      const bool joins_next =
          lab.progress < m && g.category_of(e.to) == query.sequence[lab.progress];
      if (joins_next) {
        relax(lab.progress + 1, dwell_of(g, query, query.sequence[lab.progress]));
        if (options.allow_passthrough) relax(lab.progress, 0.0);
      } else {
        relax(lab.progress, 0.0);
      }
    }
  }
  return std::nullopt;
}

std::optional<QueryResult> run_unpruned(const TimeDependentGraph& g,
                                        const LowerBoundTable& table, const OtdsrQuery& query,
                                        const SearchOptions& options,
                                        const DestinationBounds& dest, Label source_label,
                                        double source_h,
                                        std::chrono::steady_clock::time_point start) {
  const std::uint32_t m = static_cast<std::uint32_t>(query.sequence.size());
  const std::size_t num_states = g.vertex_count() * (m + 1);
  const auto state_of = [&](VertexId v, std::uint32_t progress) {
    return static_cast<std::size_t>(progress) * g.vertex_count() + v;
  };
  const auto remaining = [&](std::uint32_t progress) {
    return std::span<const CategoryId>(query.sequence).subspan(progress);
  };

  SearchStats stats;
  Deadline deadline(options, start);
  MonotonicityTracker monotone(m + 1);

  std::vector<Label> arena;
  std::vector<double> best(num_states, kInf);
  std::vector<char> closed(num_states, 0);
  std::vector<std::uint32_t> pops(g.vertex_count(), 0);

  struct HeapGreater {
    bool operator()(const QueueKey& a, const QueueKey& b) const { return KeyLess{}(b, a); }
  };
  std::priority_queue<QueueKey, std::vector<QueueKey>, HeapGreater> queue;

  const auto push = [&](const Label& lab, double priority) {
    const std::size_t state = state_of(lab.vertex, lab.progress);
    if (lab.travel >= best[state]) return;
    best[state] = lab.travel;
    arena.push_back(lab);
    queue.push(QueueKey{priority, lab.progress, lab.vertex, arena.size() - 1});
    ++stats.enqueued;
  };

  push(source_label, source_label.travel + source_h);

  while (!queue.empty()) {
    const QueueKey key = queue.top();
    queue.pop();
    const Label lab = arena[key.label];
    const std::size_t state = state_of(lab.vertex, lab.progress);
    if (closed[state] || lab.travel > best[state]) continue;
    closed[state] = 1;

    ++stats.expansions;
    deadline.on_expansion(stats.expansions);
    pops[lab.vertex] += 1;
    stats.max_expansions_per_vertex =
        std::max<std::size_t>(stats.max_expansions_per_vertex, pops[lab.vertex]);
    monotone.record(lab.progress, key.priority, stats);

    if (lab.vertex == query.destination && lab.progress == m) {
      stats.elapsed_ms = deadline.elapsed_ms();
      return QueryResult{reconstruct_route(g, query, arena, key.label), stats};
    }

    for (const TimeDependentGraph::Edge& e : g.out_edges(lab.vertex)) {
      const double edge_cost = e.cost.cost_at(lab.clock);

      const auto relax = [&](std::uint32_t new_progress, double spent) {
        const double new_travel = lab.travel + edge_cost;
        const double new_clock = wrap_minutes(lab.clock + edge_cost + spent, g.period());
        const double h = heuristic(e.to, remaining(new_progress), table, dest);
        if (h == kInf) return;
        if (closed[state_of(e.to, new_progress)]) return;
        push(Label{e.to, new_progress, new_travel, new_clock,
                   static_cast<std::int64_t>(key.label)},
             new_travel + h);
      };

      const bool joins_next =
          lab.progress < m && g.category_of(e.to) == query.sequence[lab.progress];
      if (joins_next) {
        relax(lab.progress + 1, dwell_of(g, query, query.sequence[lab.progress]));
        if (options.allow_passthrough) relax(lab.progress, 0.0);
      } else {
        relax(lab.progress, 0.0);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

double heuristic(VertexId v, std::span<const CategoryId> remaining,
                 const LowerBoundTable& table, const DestinationBounds& bounds) {
  double h = bounds.at(v);
  for (CategoryId c : remaining) h = std::max(h, table.at(v, c));
  return h;
}

void validate_query(const TimeDependentGraph& g, const OtdsrQuery& query) {
  if (query.source >= g.vertex_count()) throw InvalidArgument("query: unknown source vertex");
  if (query.destination >= g.vertex_count()) {
    throw InvalidArgument("query: unknown destination vertex");
  }
  for (CategoryId c : query.sequence) {
    if (c >= g.categories().size()) throw InvalidArgument("query: unknown category in sequence");
  }
  for (const auto& [c, dwell] : query.dwell_override) {
    if (c >= g.categories().size()) throw InvalidArgument("query: dwell override for unknown category");
    if (dwell < 0.0 || !std::isfinite(dwell)) throw InvalidArgument("query: dwell must be >= 0");
  }
}

void require_matching_table(const TimeDependentGraph& g, const LowerBoundTable& table) {
  if (table.graph_fingerprint != g.fingerprint()) {
    throw FingerprintMismatch("lower bound table was built for a different graph");
  }
}

double dwell_of(const TimeDependentGraph& g, const OtdsrQuery& query, CategoryId category) {
  auto it = query.dwell_override.find(category);
  if (it != query.dwell_override.end()) return it->second;
  return g.category(category).dwell_minutes;
}

std::optional<QueryResult> td_osr_query(const TimeDependentGraph& g,
                                        const LowerBoundTable& table, const OtdsrQuery& query,
                                        const SearchOptions& options) {
  validate_query(g, query);
  require_matching_table(g, table);
  const auto start = std::chrono::steady_clock::now();

  const std::uint32_t m = static_cast<std::uint32_t>(query.sequence.size());
  const DestinationBounds dest = destination_bounds(g, query.destination);

  Label source{query.source, 0, 0.0, wrap_minutes(query.depart.minutes, g.period()), -1};
  if (options.count_origin && m > 0 && g.category_of(query.source) == query.sequence[0]) {
    source.progress = 1;
    source.clock = wrap_minutes(source.clock + dwell_of(g, query, query.sequence[0]), g.period());
  }
  const double source_h = heuristic(
      query.source, std::span<const CategoryId>(query.sequence).subspan(source.progress), table,
      dest);
  if (source_h == kInf) return std::nullopt;

  return options.level_pruning
             ? run_pruned(g, table, query, options, dest, source, source_h, start)
             : run_unpruned(g, table, query, options, dest, source, source_h, start);
}

bool resimulate_route(const TimeDependentGraph& g, const OtdsrQuery& query, const Route& route,
                      double tolerance, bool origin_counted) {
  const double period = g.period();
  const std::size_t m = query.sequence.size();
  if (route.poi_choices.size() != m) return false;
  for (std::size_t i = 0; i < m; ++i) {
    if (g.category_of(route.poi_choices[i]) != query.sequence[i]) return false;
  }
  if (route.legs.empty()) return false;
  if (route.legs.front().path.front() != query.source) return false;
  if (route.legs.back().path.back() != query.destination) return false;

  double clock = wrap_minutes(query.depart.minutes, period);
  double travel_sum = 0.0;
  std::size_t slot = 0;
  if (origin_counted && m > 0 && route.poi_choices.front() == query.source) {
    // The origin is the first stop; its dwell applies before the first leg.
    clock = wrap_minutes(clock + dwell_of(g, query, query.sequence[0]), period);
    ++slot;
  }

  for (std::size_t li = 0; li < route.legs.size(); ++li) {
    const Leg& leg = route.legs[li];
    if (li > 0 && leg.path.front() != route.legs[li - 1].path.back()) return false;
    if (std::fabs(leg.depart.minutes - clock) > tolerance) return false;

    double leg_travel = 0.0;
    for (std::size_t k = 0; k + 1 < leg.path.size(); ++k) {
      const TimeDependentGraph::Edge* e = g.edge_between(leg.path[k], leg.path[k + 1]);
      if (e == nullptr) return false;
      const double cost = e->cost.cost_at(clock);
      leg_travel += cost;
      clock = wrap_minutes(clock + cost, period);
    }
    if (std::fabs(leg_travel - leg.travel) > tolerance) return false;
    if (std::fabs(leg.arrive.minutes - clock) > tolerance) return false;
    travel_sum += leg_travel;

    const bool is_stop = slot < m && leg.path.back() == route.poi_choices[slot];
    if (is_stop) {
      clock = wrap_minutes(clock + dwell_of(g, query, query.sequence[slot]), period);
      ++slot;
    }
  }
  if (slot != m) return false;
  return std::fabs(travel_sum - route.total_travel) <= tolerance;
}

}  // namespace tdroute
