#include "tdroute/td_pne.hpp"

#include <chrono>
#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <set>
#include <unordered_map>

#include "tdroute/errors.hpp"

namespace tdroute {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t clock_bits(double minutes) {
  std::uint64_t bits;
  std::memcpy(&bits, &minutes, sizeof(bits));
  return bits;
}

// Identifies one NN search: the state it starts from and the category it
// looks for. NN results depend on nothing else, so equal keys share state.
struct NnKey {
  VertexId vertex = 0;
  CategoryId category = 0;
  std::uint64_t clock = 0;

  bool operator==(const NnKey&) const = default;
};

struct NnKeyHash {
  std::size_t operator()(const NnKey& k) const {
    std::uint64_t h = k.clock;
    h ^= (static_cast<std::uint64_t>(k.vertex) << 32) | k.category;
    h *= 0x9e3779b97f4a7c15ULL;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

struct DestKeyHash {
  std::size_t operator()(const std::pair<VertexId, std::uint64_t>& k) const {
    std::uint64_t h = k.second ^ (static_cast<std::uint64_t>(k.first) << 32);
    h *= 0x9e3779b97f4a7c15ULL;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

struct Entry {
  std::vector<VertexId> pois;
  double travel = 0.0;  // dwell excluded; includes the destination leg once complete
  double clock = 0.0;   // departure clock after the dwell at the last POI
  std::vector<Leg> legs;
  bool complete = false;
  NnKey generator;        // NN search that produced the last POI
  std::size_t rank = 0;   // rank of the last POI within that search
};

// Travel ascending, ties by fewer POIs then lexicographic POI ids.
struct EntryLess {
  bool operator()(const Entry& a, const Entry& b) const {
    if (a.travel != b.travel) return a.travel < b.travel;
    if (a.pois.size() != b.pois.size()) return a.pois.size() < b.pois.size();
    if (a.pois != b.pois) return a.pois < b.pois;
    return a.complete < b.complete;
  }
};

class PneEngine {
 public:
  PneEngine(const TimeDependentGraph& g, const LowerBoundTable& table, const OtdsrQuery& query,
            const SearchOptions& options, std::vector<PneSnapshot>* trace)
      : g_(g), table_(table), query_(query), options_(options), trace_(trace),
        start_(std::chrono::steady_clock::now()) {}

  std::optional<QueryResult> run() {
    validate_query(g_, query_);
    require_matching_table(g_, table_);
    dest_ = destination_bounds(g_, query_.destination);

    const std::size_t m = query_.sequence.size();
    if (m == 0) {
      auto leg = td_shortest_path_counted(g_, query_.source, query_.depart, query_.destination,
                                          &dest_);
      if (!leg) return std::nullopt;
      inner_settles_ += leg->settled;
      Entry whole;
      whole.travel = leg->leg.travel;
      whole.legs.push_back(std::move(leg->leg));
      whole.complete = true;
      return make_result(whole);
    }

    seed();
    snapshot();

    while (!heap_.empty()) {
      Entry top = *heap_.begin();
      heap_.erase(heap_.begin());
      ++pops_;
      check_budget();
      if (top.complete) return make_result(top);

      extend(top);
      add_sibling(top);
      snapshot();
    }
    return std::nullopt;
  }

 private:
  void seed() {
    const double start_clock = wrap_minutes(query_.depart.minutes, g_.period());
    const NnKey key{query_.source, query_.sequence[0], clock_bits(start_clock)};
    NnIterator& it = iterator(key, start_clock);
    const NnIterator::Result* first = it.result_at(0);
    if (first == nullptr) return;
    admit(entry_from(nullptr, *first, 0, key));
  }

  // Builds an entry by appending `found` to `prefix` (nullptr = empty prefix).
  Entry entry_from(const Entry* prefix, const NnIterator::Result& found, std::size_t rank,
                   NnKey generator) {
    Entry e;
    const std::size_t slot = prefix == nullptr ? 0 : prefix->pois.size();
    if (prefix != nullptr) {
      e.pois = prefix->pois;
      e.legs = prefix->legs;
      e.travel = prefix->travel;
    }
    e.pois.push_back(found.poi);
    e.legs.push_back(found.leg);
    e.travel += found.leg.travel;
    e.clock = wrap_minutes(found.leg.arrive.minutes +
                               dwell_of(g_, query_, query_.sequence[slot]),
                           g_.period());
    e.generator = generator;
    e.rank = rank;
    return e;
  }

  // Entry with all slots filled or complete: route it into the heap through
  // the upper-bound filter. Filling the last slot triggers completion with the
  // destination leg plus the sibling cascade for that slot (the completed
  // entry is popped only to terminate, so its sibling is generated here).
  void admit(Entry e) {
    const std::size_t m = query_.sequence.size();
    if (e.pois.size() < m) {
      try_insert(std::move(e));
      return;
    }
    while (true) {
      if (Entry done = e; complete_with_destination(done)) {
        if (done.travel < upper_) {
          upper_ = done.travel;
          evict_above_upper();
        }
        try_insert(std::move(done));
      }
      auto sib = sibling_of(e);
      if (!sib) break;
      if (sib->travel > upper_ + kClockEps) break;  // NN order: later ranks only grow
      e = std::move(*sib);
    }
  }

  bool complete_with_destination(Entry& e) {
    auto leg = destination_leg(e.pois.back(), e.clock);
    if (!leg) return false;
    e.legs.push_back(*leg);
    e.travel += leg->travel;
    e.complete = true;
    return true;
  }

  void extend(const Entry& e) {
    const std::size_t next_slot = e.pois.size();
    const NnKey key{e.pois.back(), query_.sequence[next_slot], clock_bits(e.clock)};
    NnIterator& it = iterator(key, e.clock);
    const NnIterator::Result* found = it.result_at(0);
    if (found == nullptr) return;
    admit(entry_from(&e, *found, 0, key));
  }

  void add_sibling(const Entry& e) {
    auto sib = sibling_of(e);
    if (sib) admit(std::move(*sib));
  }

  std::optional<Entry> sibling_of(const Entry& e) {
    NnIterator& it = iterator(e.generator, 0.0);  // key always pre-exists here
    const NnIterator::Result* found = it.result_at(e.rank + 1);
    if (found == nullptr) return std::nullopt;
    Entry prefix = e;
    prefix.pois.pop_back();
    prefix.legs.pop_back();
    prefix.travel -= e.legs.back().travel;
    return entry_from(&prefix, *found, e.rank + 1, e.generator);
  }

  void try_insert(Entry e) {
    if (e.travel > upper_ + kClockEps) {
      ++discarded_;
      return;
    }
    heap_.insert(std::move(e));
    ++enqueued_;
  }

  void evict_above_upper() {
    Entry probe;
    probe.travel = upper_ + kClockEps;
    auto it = heap_.lower_bound(probe);
    discarded_ += static_cast<std::size_t>(std::distance(it, heap_.end()));
    heap_.erase(it, heap_.end());
  }

  NnIterator& iterator(const NnKey& key, double clock) {
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      it = cache_
               .emplace(key, std::make_unique<NnIterator>(g_, table_, key.vertex, Clock{clock},
                                                          key.category))
               .first;
    }
    return *it->second;
  }

  std::optional<Leg> destination_leg(VertexId from, double clock) {
    const auto key = std::make_pair(from, clock_bits(clock));
    auto it = dest_legs_.find(key);
    if (it == dest_legs_.end()) {
      auto counted =
          td_shortest_path_counted(g_, from, Clock{clock}, query_.destination, &dest_);
      std::optional<Leg> leg;
      if (counted) {
        inner_settles_ += counted->settled;
        leg = std::move(counted->leg);
      }
      it = dest_legs_.emplace(key, std::move(leg)).first;
    }
    return it->second;
  }

  void snapshot() {
    if (trace_ == nullptr) return;
    PneSnapshot snap;
    snap.reserve(heap_.size());
    for (const Entry& e : heap_) snap.push_back({e.pois, e.travel, e.complete});
    trace_->push_back(std::move(snap));
  }

  void check_budget() const {
    if (options_.expansion_budget != 0 && total_expansions() > options_.expansion_budget) {
      throw BudgetExceeded("search exceeded expansion budget of " +
                           std::to_string(options_.expansion_budget));
    }
    if (options_.time_budget_ms > 0.0 && elapsed_ms() > options_.time_budget_ms) {
      throw BudgetExceeded("search exceeded time budget");
    }
  }

  std::size_t total_expansions() const {
    std::size_t settles = inner_settles_;
    for (const auto& [key, it] : cache_) settles += it->settled_count();
    return pops_ + settles;
  }

  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

  QueryResult make_result(const Entry& e) {
    QueryResult out;
    out.route.poi_choices = e.pois;
    out.route.legs = e.legs;
    for (const Leg& leg : e.legs) {
      if (out.route.full_path.empty()) {
        out.route.full_path = leg.path;
      } else {
        out.route.full_path.insert(out.route.full_path.end(), leg.path.begin() + 1,
                                   leg.path.end());
      }
    }
    out.route.total_travel = e.travel;
    double dwell_sum = 0.0;
    for (CategoryId c : query_.sequence) dwell_sum += dwell_of(g_, query_, c);
    out.route.total_elapsed = e.travel + dwell_sum;
    out.route.arrive = e.legs.empty() ? query_.depart : e.legs.back().arrive;
    out.stats.expansions = total_expansions();
    out.stats.enqueued = enqueued_;
    out.stats.updated = discarded_;
    out.stats.elapsed_ms = elapsed_ms();
    return out;
  }

  const TimeDependentGraph& g_;
  const LowerBoundTable& table_;
  const OtdsrQuery& query_;
  const SearchOptions& options_;
  std::vector<PneSnapshot>* trace_;
  std::chrono::steady_clock::time_point start_;

  DestinationBounds dest_;
  std::set<Entry, EntryLess> heap_;
  std::unordered_map<NnKey, std::unique_ptr<NnIterator>, NnKeyHash> cache_;
  std::unordered_map<std::pair<VertexId, std::uint64_t>, std::optional<Leg>, DestKeyHash>
      dest_legs_;

  double upper_ = kInf;
  std::size_t pops_ = 0;
  std::size_t enqueued_ = 0;
  std::size_t discarded_ = 0;
  std::size_t inner_settles_ = 0;
};

}  // namespace

std::optional<QueryResult> td_pne_query(const TimeDependentGraph& g,
                                        const LowerBoundTable& table, const OtdsrQuery& query,
                                        const SearchOptions& options) {
  PneEngine engine(g, table, query, options, nullptr);
  return engine.run();
}

PneTrace pne_trace(const TimeDependentGraph& g, const LowerBoundTable& table,
                   const OtdsrQuery& query, const SearchOptions& options) {
  PneTrace trace;
  PneEngine engine(g, table, query, options, &trace.snapshots);
  trace.result = engine.run();
  return trace;
}

}  // namespace tdroute
