#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tdroute {

inline constexpr double kDayMinutes = 1440.0;

// Comparison tolerance for clock values, in minutes.
inline constexpr double kClockEps = 1e-9;

struct Breakpoint {
  double time = 0.0;  // minutes within [0, period)
  double cost = 0.0;  // minutes
  bool operator==(const Breakpoint&) const = default;
};

struct FifoCheck {
  bool ok = true;
  std::size_t segment = 0;  // first violating segment (wrap = last index)
  double slope = 0.0;
  explicit operator bool() const { return ok; }
};

/// Periodic piecewise-linear travel time of one edge. The function
/// interpolates linearly between breakpoints and wraps from the last
/// breakpoint to the first one shifted by a period. Costs are minutes and
/// must be non-negative and finite; the FIFO slope condition (every segment
/// slope >= -1, wrap segment included) is validated separately so raw sampled
/// data can be repaired before use.
class TravelTimeFunction {
 public:
  TravelTimeFunction() = default;

  // Throws InvalidArgument unless times are strictly increasing within
  // [0, period) and costs are finite and >= 0.
  explicit TravelTimeFunction(std::vector<Breakpoint> points,
                              double period = kDayMinutes);

  double period() const { return period_; }
  std::span<const Breakpoint> breakpoints() const { return points_; }
  bool is_constant() const;

  // Cost when departing at `depart` (any real; reduced modulo the period).
  double cost_at(double depart) const;

  // Minimum over the whole period; attained at a breakpoint.
  double min_cost() const;

  double max_abs_slope() const;

  FifoCheck validate_fifo() const;

  bool operator==(const TravelTimeFunction&) const = default;

 private:
  std::vector<Breakpoint> points_;
  double period_ = kDayMinutes;
};

TravelTimeFunction constant_cost(double cost, double period = kDayMinutes);

// Raises breakpoint costs to the minimal values satisfying the FIFO slope
// condition. Sweeps forward and re-checks the wrap until stable.
std::vector<Breakpoint> fifo_repair(std::vector<Breakpoint> points, double period);

// Pointwise minimum of two functions over one period (same period required).
// Used to merge parallel edges; FIFO validity is preserved.
TravelTimeFunction pointwise_min(const TravelTimeFunction& a,
                                 const TravelTimeFunction& b);

// Reduces a clock value into [0, period).
double wrap_minutes(double minutes, double period);

}  // namespace tdroute
