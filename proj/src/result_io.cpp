#include "tdroute/result_io.hpp"

#include <json.hpp>

#include "tdroute/graph_io.hpp"

namespace tdroute {
namespace {

std::string sequence_names(const TimeDependentGraph& g, const OtdsrQuery& query) {
  std::string out;
  for (std::size_t i = 0; i < query.sequence.size(); ++i) {
    if (i > 0) out += ",";
    out += g.category(query.sequence[i]).name;
  }
  return out.empty() ? "-" : out;
}

}  // namespace

std::string render_result_text(const TimeDependentGraph& g, const OtdsrQuery& query,
                               const QueryResult& result, const std::string& algo) {
  const Route& route = result.route;
  std::string out;
  out += "algo " + algo + "\n";
  out += "query " + g.name_of(query.source) + " -> " + g.name_of(query.destination) +
         " depart " + format_double(query.depart.minutes) + " sequence " +
         sequence_names(g, query) + "\n";
  for (std::size_t i = 0; i < route.poi_choices.size(); ++i) {
    out += "poi " + std::to_string(i + 1) + " " + g.category(query.sequence[i]).name + " " +
           g.name_of(route.poi_choices[i]) + "\n";
  }
  for (std::size_t i = 0; i < route.legs.size(); ++i) {
    const Leg& leg = route.legs[i];
    out += "leg " + std::to_string(i + 1) + " " + g.name_of(leg.path.front()) + " -> " +
           g.name_of(leg.path.back()) + " depart " + format_double(leg.depart.minutes) +
           " arrive " + format_double(leg.arrive.minutes) + " travel " +
           format_double(leg.travel) + " path";
    for (VertexId v : leg.path) out += " " + g.name_of(v);
    out += "\n";
  }
  out += "total travel " + format_double(route.total_travel) + "\n";
  out += "total elapsed " + format_double(route.total_elapsed) + "\n";
  out += "arrive " + format_double(route.arrive.minutes) + "\n";
  out += "stats expansions " + std::to_string(result.stats.expansions) + " max-per-vertex " +
         std::to_string(result.stats.max_expansions_per_vertex) + " enqueued " +
         std::to_string(result.stats.enqueued) + " updated " +
         std::to_string(result.stats.updated) + " elapsed-ms " +
         format_double(result.stats.elapsed_ms) + "\n";
  return out;
}

std::string render_result_json(const TimeDependentGraph& g, const OtdsrQuery& query,
                               const QueryResult& result, const std::string& algo) {
  nlohmann::json j;
  j["algo"] = algo;
  j["query"]["source"] = g.name_of(query.source);
  j["query"]["destination"] = g.name_of(query.destination);
  j["query"]["depart"] = query.depart.minutes;
  auto& seq = j["query"]["sequence"] = nlohmann::json::array();
  for (CategoryId c : query.sequence) seq.push_back(g.category(c).name);

  const Route& route = result.route;
  auto& pois = j["route"]["pois"] = nlohmann::json::array();
  for (std::size_t i = 0; i < route.poi_choices.size(); ++i) {
    pois.push_back({{"category", g.category(query.sequence[i]).name},
                    {"vertex", g.name_of(route.poi_choices[i])}});
  }
  auto& path = j["route"]["path"] = nlohmann::json::array();
  for (VertexId v : route.full_path) path.push_back(g.name_of(v));
  auto& legs = j["route"]["legs"] = nlohmann::json::array();
  for (const Leg& leg : route.legs) {
    nlohmann::json jl;
    jl["from"] = g.name_of(leg.path.front());
    jl["to"] = g.name_of(leg.path.back());
    jl["depart"] = leg.depart.minutes;
    jl["arrive"] = leg.arrive.minutes;
    jl["travel"] = leg.travel;
    auto& lp = jl["path"] = nlohmann::json::array();
    for (VertexId v : leg.path) lp.push_back(g.name_of(v));
    legs.push_back(std::move(jl));
  }
  j["route"]["total_travel"] = route.total_travel;
  j["route"]["total_elapsed"] = route.total_elapsed;
  j["route"]["arrive"] = route.arrive.minutes;
  j["stats"] = {{"expansions", result.stats.expansions},
                {"max_expansions_per_vertex", result.stats.max_expansions_per_vertex},
                {"enqueued", result.stats.enqueued},
                {"updated", result.stats.updated},
                {"elapsed_ms", result.stats.elapsed_ms}};
  return j.dump(2) + "\n";
}

std::string render_trace_text(const TimeDependentGraph& g, const PneTrace& trace) {
  std::string out;
  for (std::size_t step = 0; step < trace.snapshots.size(); ++step) {
    out += "step " + std::to_string(step + 1) + ":";
    for (const PneSnapshotEntry& e : trace.snapshots[step]) {
      out += " (";
      for (std::size_t i = 0; i < e.pois.size(); ++i) {
        if (i > 0) out += ",";
        out += g.name_of(e.pois[i]);
      }
      out += ": " + format_double(e.travel) + (e.complete ? ")*" : ")");
    }
    out += "\n";
  }
  return out;
}

}  // namespace tdroute
