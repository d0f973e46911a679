#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "nmq/errors.hpp"

namespace nmq {

/// Uniform, strictly increasing sampling of [t_start, t_end].
class TimeGrid {
 public:
  TimeGrid(double t_start, double t_end, std::size_t num_points)
      : t_start_(t_start), t_end_(t_end) {
    if (!std::isfinite(t_start) || !std::isfinite(t_end))
      throw DomainError("time grid bounds must be finite");
    if (t_start < 0.0) throw DomainError("time grid must start at t >= 0");
    if (num_points == 0) throw DomainError("time grid needs at least one point");
    if (num_points == 1 && t_end != t_start)
      throw DomainError("a single-point grid requires t_end == t_start");
    if (num_points > 1 && !(t_end > t_start))
      throw DomainError("time grid requires t_end > t_start");

    points_.resize(num_points);
    const double span = t_end - t_start;
    const double denom = num_points > 1 ? static_cast<double>(num_points - 1) : 1.0;
    for (std::size_t i = 0; i < num_points; ++i)
      points_[i] = t_start + span * (static_cast<double>(i) / denom);
    points_.back() = t_end;
  }

  /// Grid with a fixed step, ending at the last multiple of `dt` not past t_end.
  static TimeGrid with_step(double t_end, double dt) {
    if (!(dt > 0.0)) throw DomainError("time step must be positive");
    const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
    return TimeGrid(0.0, static_cast<double>(steps) * dt, steps + 1);
  }

  double t_start() const { return t_start_; }
  double t_end() const { return t_end_; }
  std::size_t size() const { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  std::span<const double> points() const { return points_; }
  double step() const {
    return size() > 1 ? (t_end_ - t_start_) / static_cast<double>(size() - 1) : 0.0;
  }

  bool operator==(const TimeGrid&) const = default;

 private:
  double t_start_;
  double t_end_;
  std::vector<double> points_;
};

}  // namespace nmq
