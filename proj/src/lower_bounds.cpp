#include "tdroute/lower_bounds.hpp"

#include <atomic>
#include <cstring>
#include <fstream>
#include <limits>
#include <thread>

#include "tdroute/errors.hpp"
#include "tdroute/static_paths.hpp"

namespace tdroute {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr char kMagic[4] = {'L', 'B', 'T', '1'};
// Stored in place of +infinity; real distances are never negative.
constexpr double kUnreachableSentinel = -1.0;

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double d) {
  std::uint64_t bits;
  std::memcpy(&bits, &d, sizeof(bits));
  put_u64(out, bits);
}

class Reader {
 public:
  explicit Reader(std::string data) : data_(std::move(data)) {}

  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    }
    pos_ += 8;
    return v;
  }

  double f64() {
    const std::uint64_t bits = u64();
    double d;
    std::memcpy(&d, &bits, sizeof(d));
    return d;
  }

  std::string bytes(std::size_t n) {
    need(n);
    std::string s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  bool exhausted() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t n) {
    if (pos_ + n > data_.size()) throw IoError("truncated lower bound table file");
  }
  std::string data_;
  std::size_t pos_ = 0;
};

}  // namespace

LowerBoundTable build_category_bounds(const TimeDependentGraph& g, unsigned threads) {
  const std::size_t num_categories = g.categories().size();
  if (num_categories == 0) {
    throw InvalidArgument("build_category_bounds: graph has no categories");
  }
  LowerBoundTable table;
  table.graph_fingerprint = g.fingerprint();
  table.category_order.reserve(num_categories);
  for (const Category& c : g.categories()) table.category_order.push_back(c.name);
  table.values.assign(g.vertex_count() * num_categories, kInf);

  const StaticGraph rev = reversed(lower_bound_graph(g));

  auto run_category = [&](CategoryId c) {
    const Category& cat = g.category(c);
    if (cat.pois.empty()) return;  // column stays all-infinity
    const std::vector<double> dist = shortest_distances(rev, cat.pois);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      table.values[static_cast<std::size_t>(v) * num_categories + c] = dist[v];
    }
  };

  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads <= 1 || num_categories <= 1) {
    for (CategoryId c = 0; c < num_categories; ++c) run_category(c);
  } else {
    std::atomic<CategoryId> next{0};
    std::vector<std::thread> pool;
    const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(num_categories));
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) {
      pool.emplace_back([&] {
        for (CategoryId c = next.fetch_add(1); c < num_categories; c = next.fetch_add(1)) {
          run_category(c);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }
  return table;
}

DestinationBounds destination_bounds_on(const StaticGraph& reversed_lower_bound,
                                        VertexId destination) {
  if (destination >= reversed_lower_bound.vertex_count()) {
    throw InvalidArgument("destination_bounds: unknown vertex id " +
                          std::to_string(destination));
  }
  return {destination, shortest_distances(reversed_lower_bound, destination)};
}

DestinationBounds destination_bounds(const TimeDependentGraph& g, VertexId destination) {
  if (destination >= g.vertex_count()) {
    throw InvalidArgument("destination_bounds: unknown vertex id " +
                          std::to_string(destination));
  }
  return destination_bounds_on(reversed(lower_bound_graph(g)), destination);
}

void save_table(const LowerBoundTable& table, const std::filesystem::path& path) {
  std::string out;
  out.append(kMagic, sizeof(kMagic));
  put_u64(out, table.graph_fingerprint);
  put_u64(out, table.vertex_count());
  put_u64(out, table.category_count());
  for (const std::string& name : table.category_order) {
    put_u64(out, name.size());
    out += name;
  }
  for (double v : table.values) {
    put_f64(out, v == kInf ? kUnreachableSentinel : v);
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw IoError("failed writing " + path.string());
}

LowerBoundTable load_table(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path.string());
  std::string data((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
  Reader in(std::move(data));

  if (in.bytes(4) != std::string(kMagic, sizeof(kMagic))) {
    throw IoError(path.string() + ": not a lower bound table file");
  }
  LowerBoundTable table;
  table.graph_fingerprint = in.u64();
  const std::uint64_t num_vertices = in.u64();
  const std::uint64_t num_categories = in.u64();
  table.category_order.reserve(num_categories);
  for (std::uint64_t c = 0; c < num_categories; ++c) {
    const std::uint64_t len = in.u64();
    table.category_order.push_back(in.bytes(len));
  }
  table.values.reserve(num_vertices * num_categories);
  for (std::uint64_t i = 0; i < num_vertices * num_categories; ++i) {
    const double v = in.f64();
    table.values.push_back(v == kUnreachableSentinel ? kInf : v);
  }
  if (!in.exhausted()) throw IoError(path.string() + ": trailing bytes");
  return table;
}

LowerBoundTable load_table(const std::filesystem::path& path, const TimeDependentGraph& g) {
  LowerBoundTable table = load_table(path);
  if (table.graph_fingerprint != g.fingerprint()) {
    throw FingerprintMismatch("lower bound table " + path.string() +
                              " was built for a different graph");
  }
  if (table.vertex_count() != g.vertex_count() ||
      table.category_count() != g.categories().size()) {
    throw FingerprintMismatch("lower bound table " + path.string() +
                              " shape does not match the graph");
  }
  return table;
}

}  // namespace tdroute
