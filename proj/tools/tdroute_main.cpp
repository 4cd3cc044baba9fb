#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "tdroute/bench.hpp"
#include "tdroute/errors.hpp"
#include "tdroute/graph_io.hpp"
#include "tdroute/lower_bounds.hpp"
#include "tdroute/netgen.hpp"
#include "tdroute/oracle.hpp"
#include "tdroute/result_io.hpp"
#include "tdroute/static_paths.hpp"
#include "tdroute/td_osr.hpp"
#include "tdroute/td_pne.hpp"

namespace {

using namespace tdroute;

constexpr int kExitError = 1;
constexpr int kExitUnreachable = 2;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) {
      if (start < text.size()) out.push_back(text.substr(start));
      break;
    }
    if (comma > start) out.push_back(text.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

OtdsrQuery build_query(const TimeDependentGraph& g, const std::string& source,
                       const std::string& destination, const std::string& depart,
                       const std::string& sequence, const std::string& dwell_spec) {
  OtdsrQuery query;
  query.source = g.vertex(source);
  query.destination = g.vertex(destination);
  query.depart = Clock::wrap(parse_clock_minutes(depart), g.period());
  for (const std::string& name : split_list(sequence)) {
    auto c = g.find_category(name);
    if (!c) throw InvalidArgument("unknown category: " + name);
    query.sequence.push_back(*c);
  }
  for (const std::string& item : split_list(dwell_spec)) {
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument("dwell override must be <category>=<minutes>: " + item);
    }
    auto c = g.find_category(item.substr(0, eq));
    if (!c) throw InvalidArgument("unknown category: " + item.substr(0, eq));
    auto minutes = parse_double_strict(item.substr(eq + 1));
    if (!minutes || *minutes < 0.0) throw InvalidArgument("bad dwell in: " + item);
    query.dwell_override[*c] = *minutes;
  }
  return query;
}

LowerBoundTable table_for(const TimeDependentGraph& g, const std::string& table_path) {
  if (table_path.empty()) return build_category_bounds(g);
  return load_table(table_path, g);
}

void write_or_print(const std::string& content, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
}

int run_validate(const TimeDependentGraph& g, const std::string& table_path) {
  // Construction already enforces the structural invariants; re-check the
  // FIFO condition explicitly and report per-edge results.
  std::size_t checked = 0;
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    for (const auto& e : g.out_edges(u)) {
      const FifoCheck check = e.cost.validate_fifo();
      if (!check) {
        std::cerr << "fifo violation on edge " << g.name_of(u) << " -> " << g.name_of(e.to)
                  << " segment " << check.segment << " slope " << format_double(check.slope)
                  << "\n";
        return kExitError;
      }
      ++checked;
    }
  }
  std::cout << "fifo ok (" << checked << " edges)\n";

  if (!g.categories().empty()) {
    const LowerBoundTable table =
        table_path.empty() ? build_category_bounds(g) : load_table(table_path, g);
    if (table.values.size() != g.vertex_count() * g.categories().size()) {
      std::cerr << "table size mismatch\n";
      return kExitError;
    }
    const StaticGraph lb = lower_bound_graph(g);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      for (CategoryId c = 0; c < g.categories().size(); ++c) {
        const double entry = table.at(v, c);
        const bool is_poi = g.category_of(v) == c;
        if (is_poi != (entry == 0.0)) {
          std::cerr << "zero-on-poi violated at vertex " << g.name_of(v) << " category "
                    << g.category(c).name << "\n";
          return kExitError;
        }
      }
      for (const auto& e : lb.out_edges(v)) {
        for (CategoryId c = 0; c < g.categories().size(); ++c) {
          if (table.at(v, c) > e.cost + table.at(e.to, c) + 1e-9) {
            std::cerr << "triangle inequality violated at edge " << g.name_of(v) << " -> "
                      << g.name_of(e.to) << " category " << g.category(c).name << "\n";
            return kExitError;
          }
        }
      }
    }
    std::cout << "lower bound table ok (" << table.values.size() << " entries)\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-dependent sequenced route queries on road networks"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "Generate or import a graph file");
  std::string gen_out;
  GridParams grid;
  std::string edges_csv, pois_csv, classes_csv;
  generate->add_option("-o,--output", gen_out, "Output graph file")->required();
  generate->add_option("--vertices", grid.vertices, "Grid vertex count");
  generate->add_option("--poi-density", grid.poi_density, "POIs / vertices");
  generate->add_option("--degree", grid.vertex_degree, "Target average out-degree");
  generate->add_option("--categories", grid.num_categories, "Number of categories");
  generate->add_option("--seed", grid.seed, "RNG seed");
  generate->add_option("--dwell", grid.default_dwell, "Dwell minutes per category");
  generate->add_option("--edges", edges_csv, "Static edge CSV (from,to,length_m,speed_class)");
  generate->add_option("--pois", pois_csv, "POI CSV (vertex,category)");
  generate->add_option("--classes", classes_csv, "Speed class CSV (class,max_kmh)");

  // preprocess
  auto* preprocess = app.add_subcommand("preprocess", "Build the lower bound table");
  std::string pre_graph, pre_out;
  unsigned pre_threads = 0;
  preprocess->add_option("-g,--graph", pre_graph, "Graph file")->required();
  preprocess->add_option("-o,--output", pre_out, "Output table file")->required();
  preprocess->add_option("--threads", pre_threads, "Worker threads (0 = hardware)");

  // query / trace share options
  std::string q_graph, q_table, q_algo = "tdosr", q_source, q_dest, q_depart = "0";
  std::string q_seq, q_dwell;
  bool q_json = false, q_count_origin = false, q_passthrough = false, q_no_level_pruning = false;
  std::size_t q_budget = 0;
  double q_time_budget = 0.0;
  const auto add_query_options = [&](CLI::App* cmd, bool with_algo) {
    cmd->add_option("-g,--graph", q_graph, "Graph file")->required();
    cmd->add_option("--table", q_table, "Lower bound table file (built in memory if absent)");
    if (with_algo) {
      cmd->add_option("--algo", q_algo, "tdosr | tdpne | oracle | greedy")
          ->check(CLI::IsMember({"tdosr", "tdpne", "oracle", "greedy"}));
    }
    cmd->add_option("-s,--source", q_source, "Source vertex")->required();
    cmd->add_option("-d,--destination", q_dest, "Destination vertex")->required();
    cmd->add_option("-t,--depart", q_depart, "Departure time (HH:MM or minutes)");
    cmd->add_option("--seq", q_seq, "Category sequence, comma separated");
    cmd->add_option("--dwell-override", q_dwell, "Per-category dwell: cat=min,...");
    cmd->add_flag("--json", q_json, "JSON output");
    cmd->add_flag("--count-origin", q_count_origin, "Count the origin as the first POI");
    cmd->add_flag("--allow-passthrough", q_passthrough, "Allow skipping an encountered POI");
    cmd->add_flag("--no-level-pruning", q_no_level_pruning,
                  "Plain per-(vertex, progress) closing");
    cmd->add_option("--budget", q_budget, "Expansion budget (0 = unlimited)");
    cmd->add_option("--time-budget-ms", q_time_budget, "Time budget in ms (0 = unlimited)");
  };
  auto* query_cmd = app.add_subcommand("query", "Run one sequenced route query");
  add_query_options(query_cmd, true);
  auto* trace_cmd = app.add_subcommand("trace", "Print the PNE heap trace for one query");
  add_query_options(trace_cmd, false);

  // validate
  auto* validate = app.add_subcommand("validate", "Check FIFO and table invariants");
  std::string v_graph, v_table;
  validate->add_option("-g,--graph", v_graph, "Graph file")->required();
  validate->add_option("--table", v_table, "Lower bound table file");

  // bench
  auto* bench = app.add_subcommand("bench", "Run a parameter sweep");
  std::string b_config, b_out;
  bench->add_option("--config", b_config, "Sweep config (JSON)")->required();
  bench->add_option("-o,--output", b_out, "Output CSV ('-' = stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      TimeDependentGraph g = [&] {
        if (!edges_csv.empty()) {
          if (pois_csv.empty() || classes_csv.empty()) {
            throw InvalidArgument("--edges requires --pois and --classes");
          }
          ImportReport report;
          RoadNetwork network = load_road_network(edges_csv, pois_csv, classes_csv);
          TimeDependentGraph imported = synthesize_real_costs(network, grid.seed, &report);
          for (const std::string& note : report.notes) std::cerr << note << "\n";
          return imported;
        }
        if (grid.vertices == 0) {
          throw InvalidArgument("either --vertices or --edges is required");
        }
        return generate_grid(grid);
      }();
      write_tdg(g, gen_out);
      std::cout << "wrote " << gen_out << " (" << g.vertex_count() << " vertices, "
                << g.edge_count() << " edges, fingerprint " << g.fingerprint() << ")\n";
      return 0;
    }

    if (preprocess->parsed()) {
      const TimeDependentGraph g = read_tdg(pre_graph);
      const LowerBoundTable table = build_category_bounds(g, pre_threads);
      save_table(table, pre_out);
      std::cout << "wrote " << pre_out << " (" << table.values.size() << " entries, "
                << table.category_count() << " categories)\n";
      return 0;
    }

    if (query_cmd->parsed() || trace_cmd->parsed()) {
      const TimeDependentGraph g = read_tdg(q_graph);
      const LowerBoundTable table = table_for(g, q_table);
      const OtdsrQuery query = build_query(g, q_source, q_dest, q_depart, q_seq, q_dwell);
      SearchOptions options;
      options.count_origin = q_count_origin;
      options.allow_passthrough = q_passthrough;
      options.level_pruning = !q_no_level_pruning;
      options.expansion_budget = q_budget;
      options.time_budget_ms = q_time_budget;

      if (trace_cmd->parsed()) {
        const PneTrace trace = pne_trace(g, table, query, options);
        std::cout << render_trace_text(g, trace);
        if (!trace.result) {
          std::cerr << "unreachable\n";
          return kExitUnreachable;
        }
        std::cout << render_result_text(g, query, *trace.result, "tdpne");
        return 0;
      }

      std::optional<QueryResult> result;
      if (q_algo == "tdosr") {
        result = td_osr_query(g, table, query, options);
      } else if (q_algo == "tdpne") {
        result = td_pne_query(g, table, query, options);
      } else if (q_algo == "greedy") {
        result = greedy_route(g, table, query);
      } else {
        auto route = product_dijkstra(g, query, options);
        if (route) result = QueryResult{std::move(*route), {}};
      }
      if (!result) {
        std::cerr << "unreachable\n";
        return kExitUnreachable;
      }
      std::cout << (q_json ? render_result_json(g, query, *result, q_algo)
                           : render_result_text(g, query, *result, q_algo));
      return 0;
    }

    if (validate->parsed()) {
      const TimeDependentGraph g = read_tdg(v_graph);
      return run_validate(g, v_table);
    }

    if (bench->parsed()) {
      std::ifstream in(b_config);
      if (!in) throw IoError("cannot open " + b_config);
      std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      const SweepConfig config = parse_sweep_config(text);
      write_or_print(run_sweep(config), b_out);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
