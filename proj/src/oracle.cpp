#include "tdroute/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>

#include "tdroute/errors.hpp"
#include "tdroute/tdsp.hpp"

namespace tdroute {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct State {
  VertexId vertex = 0;
  std::uint32_t progress = 0;
};

// Assembles a Route from a chain of states, recomputing clocks edge by edge.
// The dwell spent up to a state depends on its progress alone, so the clocks
// here reproduce the search's own values exactly.
Route route_from_chain(const TimeDependentGraph& g, const OtdsrQuery& query,
                       const std::vector<State>& chain) {
  const double period = g.period();
  const std::size_t m = query.sequence.size();

  std::vector<double> dwell_prefix(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    dwell_prefix[i + 1] = dwell_prefix[i] + dwell_of(g, query, query.sequence[i]);
  }

  Route route;
  route.full_path.reserve(chain.size());
  for (const State& s : chain) route.full_path.push_back(s.vertex);

  double clock = wrap_minutes(query.depart.minutes, period);
  if (chain.front().progress > 0) {  // origin counted as the first stop
    route.poi_choices.push_back(chain.front().vertex);
    clock = wrap_minutes(clock + dwell_prefix[1], period);
  }

  Leg current;
  current.path.push_back(chain.front().vertex);
  current.depart = Clock{clock};
  double travel = 0.0;
  double leg_travel = 0.0;

  for (std::size_t k = 1; k < chain.size(); ++k) {
    const TimeDependentGraph::Edge* e = g.edge_between(chain[k - 1].vertex, chain[k].vertex);
    const double cost = e->cost.cost_at(clock);
    travel += cost;
    leg_travel += cost;
    clock = wrap_minutes(clock + cost, period);
    current.path.push_back(chain[k].vertex);

    const bool consumed = chain[k].progress > chain[k - 1].progress;
    const bool last = k + 1 == chain.size();
    if (consumed) route.poi_choices.push_back(chain[k].vertex);
    if (consumed || last) {
      current.travel = leg_travel;
      current.arrive = Clock{clock};  // before any dwell at this stop
      route.legs.push_back(std::move(current));
      if (consumed) {
        clock = wrap_minutes(
            clock + dwell_of(g, query, query.sequence[chain[k].progress - 1]), period);
      }
      current = Leg{};
      current.path.push_back(chain[k].vertex);
      current.depart = Clock{clock};
      leg_travel = 0.0;
    }
  }
  if (chain.size() == 1) {
    current.travel = 0.0;
    current.arrive = Clock{clock};
    route.legs.push_back(std::move(current));
  }

  route.total_travel = travel;
  route.total_elapsed = travel + dwell_prefix[m];
  route.arrive = route.legs.back().arrive;
  return route;
}

}  // namespace

std::optional<Route> product_dijkstra(const TimeDependentGraph& g, const OtdsrQuery& query,
                                      const SearchOptions& options) {
  validate_query(g, query);
  const std::uint32_t m = static_cast<std::uint32_t>(query.sequence.size());
  const std::size_t num_states = g.vertex_count() * (m + 1);
  if (num_states > 1000000) {
    throw BudgetExceeded("product_dijkstra: state budget exceeded (" +
                         std::to_string(num_states) + " states)");
  }
  const double period = g.period();

  std::vector<double> dwell_prefix(m + 1, 0.0);
  for (std::uint32_t i = 0; i < m; ++i) {
    dwell_prefix[i + 1] = dwell_prefix[i] + dwell_of(g, query, query.sequence[i]);
  }

  const auto state_of = [&](VertexId v, std::uint32_t k) {
    return static_cast<std::size_t>(k) * g.vertex_count() + v;
  };

  std::vector<double> travel(num_states, kInf);
  std::vector<char> settled(num_states, 0);
  std::vector<std::size_t> parent(num_states, num_states);

  // (travel, progress, vertex); min by travel, ties by higher progress then
  // smaller vertex, mirroring the main searches.
  struct Item {
    double travel;
    std::uint32_t progress;
    VertexId vertex;
  };
  struct ItemGreater {
    bool operator()(const Item& a, const Item& b) const {
      if (a.travel != b.travel) return a.travel > b.travel;
      if (a.progress != b.progress) return a.progress < b.progress;
      return a.vertex > b.vertex;
    }
  };
  std::priority_queue<Item, std::vector<Item>, ItemGreater> queue;

  std::uint32_t start_progress = 0;
  if (options.count_origin && m > 0 && g.category_of(query.source) == query.sequence[0]) {
    start_progress = 1;
  }
  travel[state_of(query.source, start_progress)] = 0.0;
  queue.push({0.0, start_progress, query.source});

  std::size_t goal = num_states;
  while (!queue.empty()) {
    const Item item = queue.top();
    queue.pop();
    const std::size_t s = state_of(item.vertex, item.progress);
    if (settled[s] || item.travel > travel[s]) continue;
    settled[s] = 1;
    if (item.vertex == query.destination && item.progress == m) {
      goal = s;
      break;
    }
    const double clock =
        wrap_minutes(query.depart.minutes + item.travel + dwell_prefix[item.progress], period);
    for (const TimeDependentGraph::Edge& e : g.out_edges(item.vertex)) {
      const double nt = item.travel + e.cost.cost_at(clock);
      const auto relax = [&](std::uint32_t k) {
        const std::size_t ns = state_of(e.to, k);
        if (!settled[ns] && nt < travel[ns]) {
          travel[ns] = nt;
          parent[ns] = s;
          queue.push({nt, k, e.to});
        }
      };
      const bool joins_next =
          item.progress < m && g.category_of(e.to) == query.sequence[item.progress];
      if (joins_next) {
        relax(item.progress + 1);
        if (options.allow_passthrough) relax(item.progress);
      } else {
        relax(item.progress);
      }
    }
  }
  if (goal == num_states) return std::nullopt;

  std::vector<State> chain;
  for (std::size_t s = goal; s != num_states; s = parent[s]) {
    chain.push_back({static_cast<VertexId>(s % g.vertex_count()),
                     static_cast<std::uint32_t>(s / g.vertex_count())});
  }
  std::reverse(chain.begin(), chain.end());
  return route_from_chain(g, query, chain);
}

std::optional<Route> enumerate_combinations(const TimeDependentGraph& g,
                                            const OtdsrQuery& query) {
  validate_query(g, query);
  const std::size_t m = query.sequence.size();

  std::size_t combos = 1;
  for (CategoryId c : query.sequence) {
    const std::size_t size = g.category(c).pois.size();
    if (size == 0) return std::nullopt;  // empty category: nothing to visit
    if (combos > 10000 / size + 1) combos = 10001;  // saturate without overflow
    combos *= size;
    if (combos > 10000) {
      throw BudgetExceeded("enumerate_combinations: combination budget exceeded");
    }
  }

  const double period = g.period();
  std::optional<Route> best;

  std::vector<std::size_t> pick(m, 0);
  while (true) {
    // Chain s -> p1 -> ... -> pm -> d at the running clock.
    std::vector<Leg> legs;
    std::vector<VertexId> pois;
    double travel = 0.0;
    double clock = wrap_minutes(query.depart.minutes, period);
    VertexId at = query.source;
    bool feasible = true;
    for (std::size_t i = 0; i < m && feasible; ++i) {
      const VertexId poi = g.category(query.sequence[i]).pois[pick[i]];
      auto leg = td_shortest_path(g, at, Clock{clock}, poi);
      if (!leg) {
        feasible = false;
        break;
      }
      travel += leg->travel;
      clock = wrap_minutes(leg->arrive.minutes + dwell_of(g, query, query.sequence[i]), period);
      at = poi;
      pois.push_back(poi);
      legs.push_back(std::move(*leg));
    }
    if (feasible) {
      if (auto leg = td_shortest_path(g, at, Clock{clock}, query.destination)) {
        travel += leg->travel;
        legs.push_back(std::move(*leg));
        if (!best || travel < best->total_travel) {
          Route route;
          route.poi_choices = std::move(pois);
          route.legs = std::move(legs);
          for (const Leg& l : route.legs) {
            if (route.full_path.empty()) {
              route.full_path = l.path;
            } else {
              route.full_path.insert(route.full_path.end(), l.path.begin() + 1, l.path.end());
            }
          }
          route.total_travel = travel;
          double dwell_sum = 0.0;
          for (CategoryId c : query.sequence) dwell_sum += dwell_of(g, query, c);
          route.total_elapsed = travel + dwell_sum;
          route.arrive = route.legs.back().arrive;
          best = std::move(route);
        }
      }
    }
    // Odometer over category member indices.
    std::size_t i = m;
    while (i > 0) {
      --i;
      if (++pick[i] < g.category(query.sequence[i]).pois.size()) break;
      pick[i] = 0;
      if (i == 0) return best;
    }
    if (m == 0) return best;
  }
}

std::optional<QueryResult> greedy_route(const TimeDependentGraph& g,
                                        const LowerBoundTable& table,
                                        const OtdsrQuery& query) {
  validate_query(g, query);
  require_matching_table(g, table);
  const auto start = std::chrono::steady_clock::now();
  const double period = g.period();
  const std::size_t m = query.sequence.size();

  QueryResult out;
  std::size_t settles = 0;
  double clock = wrap_minutes(query.depart.minutes, period);
  VertexId at = query.source;

  for (std::size_t i = 0; i < m; ++i) {
    NnIterator it = nn_open(g, table, at, Clock{clock}, query.sequence[i]);
    auto nearest = it.next();
    settles += it.settled_count();
    if (!nearest) return std::nullopt;
    clock = wrap_minutes(nearest->leg.arrive.minutes + dwell_of(g, query, query.sequence[i]),
                         period);
    at = nearest->poi;
    out.route.poi_choices.push_back(nearest->poi);
    out.route.total_travel += nearest->leg.travel;
    out.route.legs.push_back(std::move(nearest->leg));
  }

  const DestinationBounds dest = destination_bounds(g, query.destination);
  auto final_leg = td_shortest_path_counted(g, at, Clock{clock}, query.destination, &dest);
  if (!final_leg) return std::nullopt;
  settles += final_leg->settled;
  out.route.total_travel += final_leg->leg.travel;
  out.route.legs.push_back(std::move(final_leg->leg));

  for (const Leg& l : out.route.legs) {
    if (out.route.full_path.empty()) {
      out.route.full_path = l.path;
    } else {
      out.route.full_path.insert(out.route.full_path.end(), l.path.begin() + 1, l.path.end());
    }
  }
  double dwell_sum = 0.0;
  for (CategoryId c : query.sequence) dwell_sum += dwell_of(g, query, c);
  out.route.total_elapsed = out.route.total_travel + dwell_sum;
  out.route.arrive = out.route.legs.back().arrive;
  out.stats.expansions = settles;
  out.stats.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();
  return out;
}

AdmissibilityReport label_admissibility_check(const TimeDependentGraph& g,
                                              const LowerBoundTable& table,
                                              const DestinationBounds& bounds,
                                              const std::vector<AdmissibilitySample>& samples) {
  AdmissibilityReport report;
  for (const AdmissibilitySample& sample : samples) {
    ++report.samples;
    const double h = heuristic(sample.vertex, sample.remaining, table, bounds);
    OtdsrQuery probe;
    probe.source = sample.vertex;
    probe.destination = bounds.destination;
    probe.depart = sample.clock;
    probe.sequence = sample.remaining;
    probe.dwell_override = {};
    const auto truth = product_dijkstra(g, probe);
    if (!truth) {
      // Unreachable in the product graph; any bound is vacuously admissible,
      // but an infinite heuristic must coincide with an unreachable truth.
      ++report.unreachable;
      continue;
    }
    const double excess = h - truth->total_travel;
    if (excess > kClockEps) {
      ++report.violations;
      report.worst_excess = std::max(report.worst_excess, excess);
    }
  }
  return report;
}

}  // namespace tdroute
