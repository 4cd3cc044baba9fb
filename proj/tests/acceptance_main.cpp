// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion. `--only N` restricts to one criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support/fixtures.hpp"
#include "tdroute/bench.hpp"
#include "tdroute/graph_io.hpp"
#include "tdroute/lower_bounds.hpp"
#include "tdroute/netgen.hpp"
#include "tdroute/oracle.hpp"
#include "tdroute/td_osr.hpp"
#include "tdroute/td_pne.hpp"
#include "tdroute/tdsp.hpp"

using namespace tdroute;
using namespace tdroute::testing;

namespace {

constexpr double kTravelTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
};

bool equal_travel(double a, double b) { return std::fabs(a - b) <= kTravelTol; }

std::string fmt(double v) { return format_double(v); }

// ---------------------------------------------------------------------------
// 1. Oracle optimality suite.

Outcome criterion_oracle_suite() {
  Outcome out;
  std::size_t instances = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const SpurInstance inst = random_spur_instance(seed);
    const auto table = build_category_bounds(inst.graph);
    const auto osr = td_osr_query(inst.graph, table, inst.query);
    const auto pne = td_pne_query(inst.graph, table, inst.query);
    const auto product = product_dijkstra(inst.graph, inst.query);
    const auto combos = enumerate_combinations(inst.graph, inst.query);
    if (!osr || !pne || !product || !combos) {
      out.fail("seed " + std::to_string(seed) + ": some solver reported unreachable");
      continue;
    }
    ++instances;
    const double reference = product->total_travel;
    if (!equal_travel(osr->route.total_travel, reference) ||
        !equal_travel(pne->route.total_travel, reference) ||
        !equal_travel(combos->total_travel, reference)) {
      out.fail("seed " + std::to_string(seed) + ": travels diverge (osr " +
               fmt(osr->route.total_travel) + ", pne " + fmt(pne->route.total_travel) +
               ", product " + fmt(reference) + ", enum " + fmt(combos->total_travel) + ")");
    }
  }
  if (instances < 200) out.fail("only " + std::to_string(instances) + " instances compared");
  if (out.pass) out.detail = "200 instances, 4 solvers in exact agreement";
  return out;
}

// ---------------------------------------------------------------------------
// 2. Worked-example fixture.

Outcome criterion_worked_example() {
  Outcome out;
  const auto g = section1_fixture();
  const auto table = build_category_bounds(g);
  const auto q = section1_query(g);

  const auto* edge_sb1 = g.edge_between(g.vertex("s"), g.vertex("b1"));
  if (edge_sb1 == nullptr || !equal_travel(edge_sb1->cost.cost_at(1080.0), 6.0)) {
    out.fail("c(s,b1)(18:00) != 6");
  }
  if (edge_sb1 != nullptr && !equal_travel(edge_sb1->cost.min_cost(), 5.0)) {
    out.fail("lower bound of (s,b1) != 5");
  }

  const auto greedy = greedy_route(g, table, q);
  if (!greedy || !equal_travel(greedy->route.total_travel, 38.0)) {
    out.fail("greedy travel != 38");
  } else {
    std::vector<VertexId> expected;
    for (const char* n : {"s", "b1", "v2", "r2", "v2", "v1", "d"}) expected.push_back(g.vertex(n));
    if (greedy->route.full_path != expected) out.fail("greedy path mismatch");
    const Leg& bank_leg = greedy->route.legs[1];
    if (!equal_travel(bank_leg.travel, 13.0) || !equal_travel(bank_leg.depart.minutes, 1101.0) ||
        !equal_travel(bank_leg.arrive.minutes, 1114.0)) {
      out.fail("b1->r2 leg is not 13 minutes departing 18:21");
    }
    const Leg& final_leg = greedy->route.legs[2];
    if (!equal_travel(final_leg.travel, 19.0) || !equal_travel(final_leg.depart.minutes, 1174.0)) {
      out.fail("r2->d leg is not 19 minutes departing 19:34");
    }
  }

  std::vector<VertexId> optimal_path;
  for (const char* n : {"s", "v1", "b2", "r1", "d"}) optimal_path.push_back(g.vertex(n));
  const auto osr = td_osr_query(g, table, q);
  if (!osr || !equal_travel(osr->route.total_travel, 21.0) ||
      osr->route.full_path != optimal_path) {
    out.fail("td-osr does not return 21 via s,v1,b2,r1,d");
  }
  const auto pne = td_pne_query(g, table, q);
  if (!pne || !equal_travel(pne->route.total_travel, 21.0) ||
      pne->route.full_path != optimal_path) {
    out.fail("td-pne does not return 21 via s,v1,b2,r1,d");
  }
  const auto product = product_dijkstra(g, q);
  if (!product || !equal_travel(product->total_travel, 21.0)) {
    out.fail("oracle does not confirm 21 as the optimum");
  }
  const auto combos = enumerate_combinations(g, q);
  if (!combos || !equal_travel(combos->total_travel, 21.0)) {
    out.fail("combination oracle does not confirm 21");
  }
  if (out.pass) out.detail = "greedy 38, optimal 21, all fixture values verified";
  return out;
}

// ---------------------------------------------------------------------------
// 3. Golden heap trace.

Outcome criterion_golden_trace() {
  Outcome out;
  const auto g = fig3_fixture();
  const auto table = build_category_bounds(g);
  const auto trace = pne_trace(g, table, fig3_query(g));

  const auto entry = [&](std::vector<std::string> names, double travel, bool complete) {
    PneSnapshotEntry e;
    for (const auto& n : names) e.pois.push_back(g.vertex(n));
    e.travel = travel;
    e.complete = complete;
    return e;
  };
  const std::vector<PneSnapshot> expected = {
      {entry({"b1"}, 4.0, false)},
      {entry({"b2"}, 5.0, false), entry({"b1", "r2"}, 13.0, true)},
      {entry({"b3"}, 7.0, false), entry({"b2", "r1"}, 12.0, true)},
      {entry({"b3", "r2"}, 9.0, true)},
  };
  if (trace.snapshots.size() != expected.size()) {
    out.fail("expected 4 snapshots, got " + std::to_string(trace.snapshots.size()));
  } else {
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (trace.snapshots[i] != expected[i]) {
        out.fail("snapshot " + std::to_string(i + 1) + " differs");
      }
    }
  }
  if (!trace.result || !equal_travel(trace.result->route.total_travel, 9.0)) {
    out.fail("answer travel != 9");
  } else {
    const std::vector<VertexId> pois = {g.vertex("b3"), g.vertex("r2")};
    if (trace.result->route.poi_choices != pois) out.fail("answer is not <s,b3,r2>");
  }
  if (out.pass) out.detail = "four snapshots and the 9-minute answer reproduced";
  return out;
}

// ---------------------------------------------------------------------------
// 4. Admissibility (Lemma 1).

Outcome criterion_admissibility() {
  Outcome out;
  Rng rng(0x1e44a1);
  std::size_t samples = 0;
  std::size_t violations = 0;
  for (std::uint64_t seed = 4200; seed < 4210; ++seed) {
    const SpurInstance inst = random_spur_instance(seed);
    const auto& g = inst.graph;
    const auto table = build_category_bounds(g);
    const auto bounds = destination_bounds(g, inst.query.destination);
    std::vector<AdmissibilitySample> batch;
    for (int k = 0; k < 55; ++k) {
      AdmissibilitySample s;
      s.vertex = static_cast<VertexId>(rng.below(g.vertex_count()));
      s.clock = Clock{rng.uniform(0.0, g.period())};
      const std::size_t len = rng.below(4);
      for (std::size_t i = 0; i < len; ++i) {
        CategoryId c = static_cast<CategoryId>(rng.below(g.categories().size()));
        while (!s.remaining.empty() && c == s.remaining.back()) {
          c = static_cast<CategoryId>(rng.below(g.categories().size()));
        }
        s.remaining.push_back(c);
      }
      batch.push_back(std::move(s));
    }
    const auto report = label_admissibility_check(g, table, bounds, batch);
    samples += report.samples;
    violations += report.violations;
    if (report.violations > 0) {
      out.fail("seed " + std::to_string(seed) + ": worst excess " + fmt(report.worst_excess));
    }
  }
  if (samples < 500) out.fail("only " + std::to_string(samples) + " samples");
  if (out.pass) {
    out.detail = std::to_string(samples) + " samples, " + std::to_string(violations) +
                 " violations";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shared helper for criteria 5 and 8: default Table-1 configuration queries at
// one tenth scale.

struct BenchCell {
  SearchStats osr;
  SearchStats pne;
  std::size_t sequence_size = 0;
  double osr_travel = 0.0;
  double pne_travel = 0.0;
};

std::vector<BenchCell> run_default_queries(double poi_density, std::uint64_t seed,
                                           std::size_t queries) {
  GridParams grid;
  grid.vertices = 5000;
  grid.poi_density = poi_density;
  grid.vertex_degree = 2.5;
  grid.num_categories = 10;
  grid.seed = seed;
  grid.default_dwell = 0.0;
  const auto g = generate_grid(grid);
  const auto table = build_category_bounds(g);

  Rng rng(seed ^ 0xbe9c4ULL);
  LocalitySampler sampler(g, rng);

  std::vector<BenchCell> cells;
  for (std::size_t qi = 0; qi < queries; ++qi) {
    OtdsrQuery q;
    auto [s, d] = sampler.sample(15.0, rng);
    q.source = s;
    q.destination = d;
    q.depart = Clock{rng.uniform(0.0, g.period())};
    for (std::size_t i = 0; i < 3; ++i) {
      CategoryId c = static_cast<CategoryId>(rng.below(g.categories().size()));
      for (int guard = 0; guard < 64; ++guard) {
        const bool repeat = i > 0 && c == q.sequence.back();
        const bool origin_poi = i == 0 && g.category_of(s) == c;
        if (!repeat && !origin_poi) break;
        c = static_cast<CategoryId>(rng.below(g.categories().size()));
      }
      q.sequence.push_back(c);
    }

    const auto osr = td_osr_query(g, table, q);
    const auto pne = td_pne_query(g, table, q);
    if (!osr || !pne) continue;
    BenchCell cell;
    cell.osr = osr->stats;
    cell.pne = pne->stats;
    cell.sequence_size = q.sequence.size();
    cell.osr_travel = osr->route.total_travel;
    cell.pne_travel = pne->route.total_travel;
    cells.push_back(cell);
  }
  return cells;
}

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

// ---------------------------------------------------------------------------
// 5. Expansion bound (Lemma 2).

Outcome criterion_expansion_bound() {
  Outcome out;
  std::size_t runs = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const SpurInstance inst = random_spur_instance(seed);
    const auto table = build_category_bounds(inst.graph);
    const auto osr = td_osr_query(inst.graph, table, inst.query);
    if (!osr) continue;
    ++runs;
    if (osr->stats.max_expansions_per_vertex > inst.query.sequence.size() + 1) {
      out.fail("seed " + std::to_string(seed) + ": " +
               std::to_string(osr->stats.max_expansions_per_vertex) + " expansions of one vertex");
    }
  }

  const auto cells = run_default_queries(0.01, 815, 10);
  if (cells.size() < 10) out.fail("default sweep produced only " + std::to_string(cells.size()) + " cells");
  for (const BenchCell& cell : cells) {
    ++runs;
    if (cell.osr.max_expansions_per_vertex > cell.sequence_size + 1) {
      out.fail("sweep query exceeds m+1 expansions per vertex");
    }
  }
  if (out.pass) out.detail = std::to_string(runs) + " runs within the m+1 bound";
  return out;
}

// ---------------------------------------------------------------------------
// 6. FIFO properties of generated networks.

Outcome criterion_fifo() {
  Outcome out;
  std::vector<TimeDependentGraph> graphs;
  GridParams grid{.vertices = 5000, .poi_density = 0.01, .vertex_degree = 2.5,
                  .num_categories = 10, .seed = 6};
  graphs.push_back(generate_grid(grid));
  graphs.push_back(generate_grid({.vertices = 100, .poi_density = 0.1, .vertex_degree = 3.0,
                                  .num_categories = 2, .seed = 61}));

  RoadNetwork network;
  network.classes = {{"motorway", 120.0}, {"urban", 50.0}, {"residential", 30.0}};
  Rng lens(62);
  for (int i = 0; i < 1000; ++i) {
    const std::string a = "n" + std::to_string(i);
    const std::string b = "n" + std::to_string((i * 7 + 1) % 1000);
    if (a == b) continue;
    const char* cls = i % 3 == 0 ? "motorway" : (i % 3 == 1 ? "urban" : "residential");
    network.edges.push_back({a, b, lens.uniform(50.0, 20000.0), cls});
  }
  graphs.push_back(synthesize_real_costs(network, 63));

  std::size_t edges = 0;
  for (const auto& g : graphs) {
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
      for (const auto& e : g.out_edges(u)) {
        ++edges;
        if (!e.cost.validate_fifo().ok) {
          out.fail("generated edge violates FIFO");
        }
      }
    }
  }

  // Arrival monotonicity over 10k random (edge, t1 < t2) samples.
  Rng rng(64);
  const auto& big = graphs.front();
  std::vector<std::pair<VertexId, const TimeDependentGraph::Edge*>> all_edges;
  for (VertexId u = 0; u < big.vertex_count(); ++u) {
    for (const auto& e : big.out_edges(u)) all_edges.push_back({u, &e});
  }
  std::size_t checked = 0;
  for (int k = 0; k < 10000; ++k) {
    const auto& [u, e] = all_edges[rng.below(all_edges.size())];
    double t1 = rng.uniform(0.0, big.period());
    double t2 = rng.uniform(0.0, big.period());
    if (t1 > t2) std::swap(t1, t2);
    const double a1 = t1 + e->cost.cost_at(t1);
    const double a2 = t2 + e->cost.cost_at(t2);
    if (a1 > a2 + 1e-6) {
      out.fail("arrival monotonicity violated");
      break;
    }
    ++checked;
  }
  if (out.pass) {
    out.detail = std::to_string(edges) + " edges FIFO-valid, " + std::to_string(checked) +
                 " monotonicity samples";
  }
  return out;
}

// ---------------------------------------------------------------------------
// 7. Pre-processing invariants.

Outcome criterion_preprocessing() {
  Outcome out;
  std::size_t graphs = 0;
  std::vector<TimeDependentGraph> subjects;
  subjects.push_back(section1_fixture());
  subjects.push_back(fig3_fixture());
  for (std::uint64_t seed = 7500; subjects.size() < 8 && seed < 7600; ++seed) {
    auto inst = random_spur_instance(seed);
    if (inst.graph.vertex_count() <= 200) subjects.push_back(std::move(inst.graph));
  }

  for (const auto& g : subjects) {
    ++graphs;
    const auto table = build_category_bounds(g);
    if (table.values.size() != g.vertex_count() * g.categories().size()) {
      out.fail("entry count != |C|*|V|");
    }
    const StaticGraph lb = lower_bound_graph(g);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      for (CategoryId c = 0; c < g.categories().size(); ++c) {
        const bool zero = table.at(v, c) == 0.0;
        if (zero != (g.category_of(v) == c)) out.fail("zero-on-POI violated");
      }
      for (const auto& e : lb.out_edges(v)) {
        for (CategoryId c = 0; c < g.categories().size(); ++c) {
          if (table.at(v, c) > e.cost + table.at(e.to, c) + kTravelTol) {
            out.fail("triangle inequality violated");
          }
        }
      }
    }
    const auto oracle = per_vertex_category_bounds(g);
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      const bool both_inf = table.values[i] == kInf && oracle[i] == kInf;
      if (!both_inf && std::fabs(table.values[i] - oracle[i]) > kTravelTol) {
        out.fail("per-vertex oracle disagrees with the multi-source build");
        break;
      }
    }
  }
  if (out.pass) {
    out.detail = std::to_string(graphs) + " graphs: counts, zeros, triangle, oracle all hold";
  }
  return out;
}

// ---------------------------------------------------------------------------
// 8. Performance trend at desk scale.

Outcome criterion_trend() {
  Outcome out;
  const auto default_cells = run_default_queries(0.01, 88, 10);
  if (default_cells.size() < 10) {
    out.fail("only " + std::to_string(default_cells.size()) + " default queries completed");
    return out;
  }
  std::vector<double> osr_exp, pne_exp, osr_ms, pne_ms;
  for (const BenchCell& c : default_cells) {
    if (!equal_travel(c.osr_travel, c.pne_travel)) out.fail("travel mismatch between algorithms");
    osr_exp.push_back(static_cast<double>(c.osr.expansions));
    pne_exp.push_back(static_cast<double>(c.pne.expansions));
    osr_ms.push_back(c.osr.elapsed_ms);
    pne_ms.push_back(c.pne.elapsed_ms);
  }
  const double osr_exp_med = median_of(osr_exp);
  const double pne_exp_med = median_of(pne_exp);
  const double osr_ms_med = median_of(osr_ms);
  const double pne_ms_med = median_of(pne_ms);
  if (!(osr_exp_med < pne_exp_med)) {
    out.fail("median expansions: osr " + fmt(osr_exp_med) + " !< pne " + fmt(pne_exp_med));
  }
  if (!(osr_ms_med < pne_ms_med)) {
    out.fail("median elapsed: osr " + fmt(osr_ms_med) + "ms !< pne " + fmt(pne_ms_med) + "ms");
  }

  const auto sparse = run_default_queries(0.005, 88, 10);
  const auto dense = run_default_queries(0.02, 88, 10);
  if (sparse.size() < 10 || dense.size() < 10) {
    out.fail("density sweep incomplete");
    return out;
  }
  std::vector<double> osr_sparse, osr_dense, pne_sparse, pne_dense;
  for (const BenchCell& c : sparse) {
    osr_sparse.push_back(static_cast<double>(c.osr.expansions));
    pne_sparse.push_back(static_cast<double>(c.pne.expansions));
  }
  for (const BenchCell& c : dense) {
    osr_dense.push_back(static_cast<double>(c.osr.expansions));
    pne_dense.push_back(static_cast<double>(c.pne.expansions));
  }
  if (!(median_of(osr_dense) < median_of(osr_sparse))) {
    out.fail("td-osr cost does not decrease with density (" + fmt(median_of(osr_sparse)) +
             " -> " + fmt(median_of(osr_dense)) + ")");
  }
  if (median_of(pne_dense) < median_of(pne_sparse)) {
    out.fail("td-pne cost decreases with density (" + fmt(median_of(pne_sparse)) + " -> " +
             fmt(median_of(pne_dense)) + ")");
  }
  if (out.pass) {
    std::ostringstream ss;
    ss << "medians: expansions " << osr_exp_med << " vs " << pne_exp_med << ", elapsed "
       << osr_ms_med << "ms vs " << pne_ms_med << "ms; density osr " << median_of(osr_sparse)
       << "->" << median_of(osr_dense) << ", pne " << median_of(pne_sparse) << "->"
       << median_of(pne_dense);
    out.detail = ss.str();
  }
  return out;
}

// ---------------------------------------------------------------------------
// 9. Reduction checks.

Outcome criterion_reductions() {
  Outcome out;

  // m = 0 reduces every solver to the plain shortest path.
  std::size_t zero_checked = 0;
  for (std::uint64_t seed = 9100; seed < 9130; ++seed) {
    SpurInstance inst = random_spur_instance(seed);
    inst.query.sequence.clear();
    const auto& g = inst.graph;
    const auto table = build_category_bounds(g);
    const auto reference = td_shortest_path(g, inst.query.source, inst.query.depart,
                                            inst.query.destination);
    const auto osr = td_osr_query(g, table, inst.query);
    const auto pne = td_pne_query(g, table, inst.query);
    const auto product = product_dijkstra(g, inst.query);
    const auto combos = enumerate_combinations(g, inst.query);
    const auto greedy = greedy_route(g, table, inst.query);
    if (!reference || !osr || !pne || !product || !combos || !greedy) {
      out.fail("seed " + std::to_string(seed) + ": unreachable in the m=0 reduction");
      continue;
    }
    ++zero_checked;
    for (double travel :
         {osr->route.total_travel, pne->route.total_travel, product->total_travel,
          combos->total_travel, greedy->route.total_travel}) {
      if (!equal_travel(travel, reference->travel)) {
        out.fail("seed " + std::to_string(seed) + ": m=0 travel diverges");
        break;
      }
    }
  }

  // Constant-cost graphs with inline POIs: the time-dependent machinery must
  // reproduce the static sequenced-route answer.
  Rng rng(91);
  std::size_t static_checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    GraphBuilder b;
    const std::size_t n = 24;
    b.add_category("A", rng.uniform(0.0, 30.0));
    b.add_category("B", rng.uniform(0.0, 30.0));
    for (std::size_t v = 0; v < n; ++v) {
      const std::string name = "x" + std::to_string(v);
      if (v >= 2 && v < 5) {
        b.add_vertex(name, "A");
      } else if (v >= 5 && v < 8) {
        b.add_vertex(name, "B");
      } else {
        b.add_vertex(name);
      }
    }
    std::set<std::pair<std::size_t, std::size_t>> used;
    for (std::size_t v = 0; v < n; ++v) {  // ring keeps it strongly connected
      used.insert({v, (v + 1) % n});
      b.add_edge("x" + std::to_string(v), "x" + std::to_string((v + 1) % n),
                 rng.uniform(1.0, 9.0));
    }
    for (int chord = 0; chord < 20; ++chord) {
      const auto u = rng.below(n), v = rng.below(n);
      if (u == v || !used.insert({u, v}).second) continue;
      b.add_edge("x" + std::to_string(u), "x" + std::to_string(v), rng.uniform(1.0, 9.0));
    }
    const TimeDependentGraph g = b.build();
    const auto table = build_category_bounds(g);
    OtdsrQuery q;
    q.source = g.vertex("x0");
    q.destination = g.vertex("x1");
    q.depart = Clock{rng.uniform(0.0, g.period())};
    q.sequence = rng.chance(0.5)
                     ? std::vector<CategoryId>{*g.find_category("A"), *g.find_category("B")}
                     : std::vector<CategoryId>{*g.find_category("B"), *g.find_category("A")};
    const auto osr = td_osr_query(g, table, q);
    const auto combos = enumerate_combinations(g, q);
    const auto product = product_dijkstra(g, q);
    if (!osr || !combos || !product) {
      out.fail("constant-cost instance unexpectedly unreachable");
      continue;
    }
    ++static_checked;
    if (!equal_travel(osr->route.total_travel, combos->total_travel) ||
        !equal_travel(osr->route.total_travel, product->total_travel)) {
      out.fail("static sequenced-route answer diverges (osr " + fmt(osr->route.total_travel) +
               ", enum " + fmt(combos->total_travel) + ")");
    }
  }
  if (zero_checked < 25 || static_checked < 25) {
    out.fail("insufficient coverage: " + std::to_string(zero_checked) + " zero-sequence, " +
             std::to_string(static_checked) + " static instances");
  }
  if (out.pass) {
    out.detail = std::to_string(zero_checked) + " m=0 reductions, " +
                 std::to_string(static_checked) + " static instances";
  }
  return out;
}

// ---------------------------------------------------------------------------
// 10. Midnight wraparound.

Outcome criterion_wraparound() {
  Outcome out;
  const auto g = section1_fixture();
  const auto table = build_category_bounds(g);
  const auto q = section1_query(g, 1430.0);  // 23:50

  const auto osr = td_osr_query(g, table, q);
  const auto pne = td_pne_query(g, table, q);
  if (!osr || !pne) {
    out.fail("late-night query unreachable");
    return out;
  }
  if (!equal_travel(osr->route.total_travel, 21.0)) out.fail("late-night optimum != 21");
  if (osr->route.arrive.minutes >= q.depart.minutes) out.fail("route does not cross midnight");
  if (!resimulate_route(g, q, osr->route, kTravelTol)) out.fail("td-osr legs do not re-simulate");
  if (!resimulate_route(g, q, pne->route, kTravelTol)) out.fail("td-pne legs do not re-simulate");

  std::size_t crossings = 0;
  std::size_t checked = 0;
  for (std::uint64_t seed = 10100; seed < 10130; ++seed) {
    SpurInstance inst = random_spur_instance(seed);
    inst.query.depart = Clock{1435.0};
    if (inst.query.sequence.empty()) continue;
    const auto table2 = build_category_bounds(inst.graph);
    const auto result = td_osr_query(inst.graph, table2, inst.query);
    if (!result) continue;
    ++checked;
    if (!resimulate_route(inst.graph, inst.query, result->route, kTravelTol)) {
      out.fail("seed " + std::to_string(seed) + ": re-simulation mismatch");
    }
    if (result->route.arrive.minutes < inst.query.depart.minutes) ++crossings;
  }
  if (checked < 15) out.fail("too few late-night instances");
  if (crossings == 0) out.fail("no instance crossed midnight");
  if (out.pass) {
    out.detail = "fixture + " + std::to_string(checked) + " instances re-simulated, " +
                 std::to_string(crossings) + " crossed midnight";
  }
  return out;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
  }

  const std::vector<Criterion> criteria = {
      {1, "oracle optimality suite", criterion_oracle_suite},
      {2, "worked-example fixture", criterion_worked_example},
      {3, "golden heap trace", criterion_golden_trace},
      {4, "heuristic admissibility", criterion_admissibility},
      {5, "expansion bound", criterion_expansion_bound},
      {6, "fifo properties", criterion_fifo},
      {7, "pre-processing invariants", criterion_preprocessing},
      {8, "performance trend", criterion_trend},
      {9, "reduction checks", criterion_reductions},
      {10, "midnight wraparound", criterion_wraparound},
  };

  bool all_pass = true;
  for (const Criterion& criterion : criteria) {
    if (only != 0 && criterion.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %d: %s (%.1fs)%s%s\n", outcome.pass ? "PASS" : "FAIL",
                criterion.id, criterion.title, seconds, outcome.detail.empty() ? "" : " — ",
                outcome.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && outcome.pass;
  }
  return all_pass ? 0 : 1;
}
