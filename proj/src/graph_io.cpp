#include "tdroute/graph_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "tdroute/errors.hpp"

namespace tdroute {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

double need_double(std::string_view tok, std::size_t line_no, const char* what) {
  auto v = parse_double_strict(tok);
  if (!v) fail(line_no, std::string("bad ") + what + " '" + std::string(tok) + "'");
  return *v;
}

struct RawEdge {
  std::string from, to;
  TravelTimeFunction cost;
  std::size_t line_no;
};

TimeDependentGraph parse_impl(std::string_view text, bool merge_parallel,
                              ImportReport* report) {
  std::optional<double> period;
  std::size_t declared_vertices = 0, declared_edges = 0;
  bool saw_header = false;

  std::vector<std::pair<std::string, std::string>> vertices;  // name, category ("" = none)
  std::vector<std::pair<std::string, double>> categories;
  std::vector<RawEdge> edges;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                           : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = split_ws(line);
    if (tok.empty()) continue;

    if (tok[0] == "tdg") {
      if (saw_header) fail(line_no, "duplicate header");
      if (tok.size() != 4) fail(line_no, "header must be: tdg <period> <|V|> <|E|>");
      period = need_double(tok[1], line_no, "period");
      declared_vertices = static_cast<std::size_t>(need_double(tok[2], line_no, "vertex count"));
      declared_edges = static_cast<std::size_t>(need_double(tok[3], line_no, "edge count"));
      saw_header = true;
    } else if (tok[0] == "c") {
      if (tok.size() != 3) fail(line_no, "category line must be: c <name> <dwell>");
      categories.emplace_back(std::string(tok[1]), need_double(tok[2], line_no, "dwell"));
    } else if (tok[0] == "v") {
      if (tok.size() != 2 && tok.size() != 3) fail(line_no, "vertex line must be: v <id> [<category>]");
      vertices.emplace_back(std::string(tok[1]), tok.size() == 3 ? std::string(tok[2]) : "");
    } else if (tok[0] == "e") {
      if (tok.size() < 4) fail(line_no, "edge line must be: e <from> <to> <k> <b:c>...");
      const double kd = need_double(tok[3], line_no, "breakpoint count");
      const std::size_t k = static_cast<std::size_t>(kd);
      if (kd != static_cast<double>(k) || k == 0) fail(line_no, "breakpoint count must be a positive integer");
      if (tok.size() != 4 + k) {
        fail(line_no, "expected " + std::to_string(k) + " breakpoints, got " +
                          std::to_string(tok.size() - 4));
      }
      if (!period) fail(line_no, "edge before header");
      std::vector<Breakpoint> pts;
      pts.reserve(k);
      for (std::size_t i = 0; i < k; ++i) {
        const std::string_view pair = tok[4 + i];
        const std::size_t colon = pair.find(':');
        if (colon == std::string_view::npos) fail(line_no, "breakpoint must be <time>:<cost>");
        pts.push_back({need_double(pair.substr(0, colon), line_no, "breakpoint time"),
                       need_double(pair.substr(colon + 1), line_no, "breakpoint cost")});
      }
      TravelTimeFunction f;
      try {
        f = TravelTimeFunction(std::move(pts), *period);
      } catch (const InvalidArgument& e) {
        fail(line_no, e.what());
      }
      edges.push_back({std::string(tok[1]), std::string(tok[2]), std::move(f), line_no});
    } else {
      fail(line_no, "unknown record '" + std::string(tok[0]) + "'");
    }
  }

  if (!saw_header) throw ParseError("missing 'tdg' header");
  if (vertices.size() != declared_vertices) {
    throw ParseError("header declares " + std::to_string(declared_vertices) +
                     " vertices, file has " + std::to_string(vertices.size()));
  }

  GraphBuilder builder(*period);
  for (const auto& [name, dwell] : categories) builder.add_category(name, dwell);
  for (const auto& [name, cat] : vertices) {
    if (cat.empty()) {
      builder.add_vertex(name);
    } else {
      builder.add_vertex(name, cat);
    }
  }
  for (const RawEdge& e : edges) {
    if (!builder.has_vertex(e.from)) fail(e.line_no, "edge references unknown vertex " + e.from);
    if (!builder.has_vertex(e.to)) fail(e.line_no, "edge references unknown vertex " + e.to);
  }

  std::size_t final_edges = 0;
  if (merge_parallel) {
    std::map<std::pair<std::string, std::string>, TravelTimeFunction> merged;
    for (const RawEdge& e : edges) {
      auto key = std::make_pair(e.from, e.to);
      auto it = merged.find(key);
      if (it == merged.end()) {
        merged.emplace(std::move(key), e.cost);
      } else {
        it->second = pointwise_min(it->second, e.cost);
        if (report != nullptr) {
          ++report->merged_edges;
          report->notes.push_back("line " + std::to_string(e.line_no) + ": merged parallel edge " +
                                  e.from + " -> " + e.to + " (pointwise minimum kept)");
        }
      }
    }
    for (auto& [key, cost] : merged) {
      builder.add_edge(key.first, key.second, std::move(cost));
      ++final_edges;
    }
  } else {
    for (const RawEdge& e : edges) builder.add_edge(e.from, e.to, e.cost);
    final_edges = edges.size();
  }

  if (!merge_parallel && final_edges != declared_edges) {
    throw ParseError("header declares " + std::to_string(declared_edges) + " edges, file has " +
                     std::to_string(final_edges));
  }

  try {
    return builder.build();
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::optional<double> parse_double_strict(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text == "inf") return std::numeric_limits<double>::infinity();
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc{} || res.ptr != end) return std::nullopt;
  return value;
}

double parse_clock_minutes(std::string_view text) {
  const std::size_t c1 = text.find(':');
  if (c1 == std::string_view::npos) {
    auto v = parse_double_strict(text);
    if (!v) throw InvalidArgument("bad time '" + std::string(text) + "'");
    return *v;
  }
  const std::size_t c2 = text.find(':', c1 + 1);
  auto hours = parse_double_strict(text.substr(0, c1));
  auto mins = parse_double_strict(text.substr(c1 + 1, c2 == std::string_view::npos
                                                          ? std::string_view::npos
                                                          : c2 - c1 - 1));
  if (!hours || !mins) throw InvalidArgument("bad time '" + std::string(text) + "'");
  double total = *hours * 60.0 + *mins;
  if (c2 != std::string_view::npos) {
    auto secs = parse_double_strict(text.substr(c2 + 1));
    if (!secs) throw InvalidArgument("bad time '" + std::string(text) + "'");
    total += *secs / 60.0;
  }
  return total;
}

std::string serialize_tdg(const TimeDependentGraph& g) {
  std::string out;
  out += "tdg " + format_double(g.period()) + " " + std::to_string(g.vertex_count()) + " " +
         std::to_string(g.edge_count()) + "\n";
  for (const Category& c : g.categories()) {
    out += "c " + c.name + " " + format_double(c.dwell_minutes) + "\n";
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    out += "v " + g.name_of(v);
    if (g.category_of(v) != kNoCategory) out += " " + g.category(g.category_of(v)).name;
    out += "\n";
  }
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    for (const TimeDependentGraph::Edge& e : g.out_edges(u)) {
      out += "e " + g.name_of(u) + " " + g.name_of(e.to) + " " +
             std::to_string(e.cost.breakpoints().size());
      for (const Breakpoint& p : e.cost.breakpoints()) {
        out += " " + format_double(p.time) + ":" + format_double(p.cost);
      }
      out += "\n";
    }
  }
  return out;
}

TimeDependentGraph parse_tdg(std::string_view text) { return parse_impl(text, false, nullptr); }

TimeDependentGraph parse_tdg_merging(std::string_view text, ImportReport& report) {
  return parse_impl(text, true, &report);
}

void write_tdg(const TimeDependentGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << serialize_tdg(g);
  if (!out) throw IoError("failed writing " + path.string());
}

namespace {
std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

TimeDependentGraph read_tdg(const std::filesystem::path& path) { return parse_tdg(slurp(path)); }

TimeDependentGraph read_tdg_merging(const std::filesystem::path& path, ImportReport& report) {
  return parse_tdg_merging(slurp(path), report);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t graph_fingerprint(const TimeDependentGraph& g) {
  return fnv1a64(serialize_tdg(g));
}

}  // namespace tdroute
