#pragma once

#include <string>

#include "tdroute/graph.hpp"
#include "tdroute/td_osr.hpp"
#include "tdroute/td_pne.hpp"

namespace tdroute {

// Structured text form of a query answer; one record per line, clock values
// in decimal minutes. Schema documented in the README.
std::string render_result_text(const TimeDependentGraph& g, const OtdsrQuery& query,
                               const QueryResult& result, const std::string& algo);

// Same content as JSON.
std::string render_result_json(const TimeDependentGraph& g, const OtdsrQuery& query,
                               const QueryResult& result, const std::string& algo);

// One line per snapshot: "step K: (pois: travel) ..."; complete entries are
// marked with '*'.
std::string render_trace_text(const TimeDependentGraph& g, const PneTrace& trace);

}  // namespace tdroute
