#include "tdroute/travel_time_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tdroute/errors.hpp"

namespace tdroute {

double wrap_minutes(double minutes, double period) {
  double m = std::fmod(minutes, period);
  if (m < 0.0) m += period;
  // fmod(x, p) can return p for x slightly below a multiple of p.
  if (m >= period) m -= period;
  return m;
}

TravelTimeFunction::TravelTimeFunction(std::vector<Breakpoint> points, double period)
    : points_(std::move(points)), period_(period) {
  if (!(period_ > 0.0) || !std::isfinite(period_)) {
    throw InvalidArgument("travel time function: period must be positive and finite");
  }
  if (points_.empty()) {
    throw InvalidArgument("travel time function: needs at least one breakpoint");
  }
  double prev = -1.0;
  for (const Breakpoint& p : points_) {
    if (!std::isfinite(p.time) || p.time < 0.0 || p.time >= period_) {
      throw InvalidArgument("travel time function: breakpoint time outside [0, period)");
    }
    if (p.time <= prev) {
      throw InvalidArgument("travel time function: breakpoint times must be strictly increasing");
    }
    if (!std::isfinite(p.cost) || p.cost < 0.0) {
      throw InvalidArgument("travel time function: costs must be finite and non-negative");
    }
    prev = p.time;
  }
}

bool TravelTimeFunction::is_constant() const {
  for (const Breakpoint& p : points_) {
    if (p.cost != points_.front().cost) return false;
  }
  return true;
}

double TravelTimeFunction::cost_at(double depart) const {
  const double t = wrap_minutes(depart, period_);
  if (points_.size() == 1) return points_.front().cost;

  // First breakpoint strictly after t; its predecessor starts the segment.
  auto it = std::upper_bound(points_.begin(), points_.end(), t,
                             [](double v, const Breakpoint& b) { return v < b.time; });
  double t0, c0, t1, c1;
  if (it == points_.begin()) {
    // t lies before the first breakpoint: the wrap segment, shifted back.
    t0 = points_.back().time - period_;
    c0 = points_.back().cost;
    t1 = points_.front().time;
    c1 = points_.front().cost;
  } else if (it == points_.end()) {
    // t lies after the last breakpoint: the wrap segment in place.
    t0 = points_.back().time;
    c0 = points_.back().cost;
    t1 = points_.front().time + period_;
    c1 = points_.front().cost;
  } else {
    t0 = std::prev(it)->time;
    c0 = std::prev(it)->cost;
    t1 = it->time;
    c1 = it->cost;
  }
  return c0 + (t - t0) * (c1 - c0) / (t1 - t0);
}

double TravelTimeFunction::min_cost() const {
  double m = std::numeric_limits<double>::infinity();
  for (const Breakpoint& p : points_) m = std::min(m, p.cost);
  return m;
}

double TravelTimeFunction::max_abs_slope() const {
  if (points_.size() == 1) return 0.0;
  double m = 0.0;
  for (std::size_t k = 0; k < points_.size(); ++k) {
    const Breakpoint& a = points_[k];
    const bool wrap = k + 1 == points_.size();
    const double t1 = wrap ? points_.front().time + period_ : points_[k + 1].time;
    const double c1 = wrap ? points_.front().cost : points_[k + 1].cost;
    m = std::max(m, std::fabs((c1 - a.cost) / (t1 - a.time)));
  }
  return m;
}

FifoCheck TravelTimeFunction::validate_fifo() const {
  if (points_.size() == 1) return {};
  for (std::size_t k = 0; k < points_.size(); ++k) {
    const Breakpoint& a = points_[k];
    const bool wrap = k + 1 == points_.size();
    const double t1 = wrap ? points_.front().time + period_ : points_[k + 1].time;
    const double c1 = wrap ? points_.front().cost : points_[k + 1].cost;
    const double slope = (c1 - a.cost) / (t1 - a.time);
    if (slope < -1.0 - kClockEps) {
      return {.ok = false, .segment = k, .slope = slope};
    }
  }
  return {};
}

TravelTimeFunction constant_cost(double cost, double period) {
  return TravelTimeFunction({{0.0, cost}}, period);
}

std::vector<Breakpoint> fifo_repair(std::vector<Breakpoint> points, double period) {
  if (points.size() <= 1) return points;
  const std::size_t n = points.size();
  // Each forward pass settles the interior; a wrap violation raises the first
  // cost and triggers another pass. Converges within a couple of sweeps, the
  // cap is a safety net.
  for (std::size_t pass = 0; pass <= n + 1; ++pass) {
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const double gap = points[k + 1].time - points[k].time;
      const double floor_cost = points[k].cost - gap;
      if (points[k + 1].cost < floor_cost) points[k + 1].cost = floor_cost;
    }
    const double wrap_gap = points.front().time + period - points.back().time;
    const double wrap_floor = points.back().cost - wrap_gap;
    if (points.front().cost < wrap_floor) {
      points.front().cost = wrap_floor;
    } else {
      break;
    }
  }
  return points;
}

TravelTimeFunction pointwise_min(const TravelTimeFunction& a, const TravelTimeFunction& b) {
  if (a.period() != b.period()) {
    throw InvalidArgument("pointwise_min: functions must share a period");
  }
  const double period = a.period();

  // Candidate times: all breakpoints of both plus the crossing inside any
  // interval where the two linear pieces intersect.
  std::vector<double> times;
  for (const Breakpoint& p : a.breakpoints()) times.push_back(p.time);
  for (const Breakpoint& p : b.breakpoints()) times.push_back(p.time);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end(),
                          [](double x, double y) { return std::fabs(x - y) < 1e-12; }),
              times.end());

  std::vector<double> cuts = times;
  const std::size_t base = times.size();
  for (std::size_t i = 0; i < base; ++i) {
    const double t0 = times[i];
    const double t1 = (i + 1 < base) ? times[i + 1] : times[0] + period;
    const double fa0 = a.cost_at(t0), fa1 = a.cost_at(t1);
    const double fb0 = b.cost_at(t0), fb1 = b.cost_at(t1);
    const double d0 = fa0 - fb0, d1 = fa1 - fb1;
    if ((d0 > 0.0 && d1 < 0.0) || (d0 < 0.0 && d1 > 0.0)) {
      const double x = t0 + (t1 - t0) * d0 / (d0 - d1);
      cuts.push_back(wrap_minutes(x, period));
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double x, double y) { return std::fabs(x - y) < 1e-12; }),
             cuts.end());

  std::vector<Breakpoint> out;
  out.reserve(cuts.size());
  for (double t : cuts) out.push_back({t, std::min(a.cost_at(t), b.cost_at(t))});
  return TravelTimeFunction(std::move(out), period);
}

}  // namespace tdroute
