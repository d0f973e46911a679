#include "nmq/entanglement.hpp"

#include <spdlog/spdlog.h>

namespace nmq {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::death:
      return "DEATH";
    case EventKind::revival:
      return "REVIVAL";
    case EventKind::final_death:
      return "FINAL_DEATH";
  }
  return "UNKNOWN";
}

EntanglementSeries entanglement_series(const SubsystemTrajectory& first,
                                       const SubsystemTrajectory& second, double nbar) {
  EntanglementSeries series{first.grid, {}, {}, {}};
  const std::size_t n = first.grid.size();
  series.concurrence.reserve(n);
  series.precursor.reserve(n);
  series.eof.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const XStateMatrix x = to_x_state(assemble_rho12(first, second, nbar, i));
    const double p = precursor(x);
    const double c = std::min(std::max(p, 0.0), 1.0);
    series.precursor.push_back(p);
    series.concurrence.push_back(c);
    series.eof.push_back(entanglement_of_formation(c));
  }
  return series;
}

namespace {

double refine_crossing(const std::function<double(double)>& f, double lo, double hi,
                       double threshold) {
  const bool lo_alive = f(lo) >= threshold;
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) >= threshold) == lo_alive) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<EntanglementEvent> extract_events(const EntanglementSeries& series, double threshold,
                                              const std::function<double(double)>& precursor_at) {
  const auto& p = series.precursor;
  const auto t = series.grid.points();
  std::vector<EntanglementEvent> events;
  if (p.size() < 2) return events;

  // Grid index of the previous transition, to detect intervals of one point.
  std::size_t last_transition = 0;
  bool have_transition = false;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const bool alive_now = p[i] >= threshold;
    const bool alive_next = p[i + 1] >= threshold;
    if (alive_now == alive_next) continue;

    double when = 0.0;
    if (precursor_at) {
      when = refine_crossing(precursor_at, t[i], t[i + 1], threshold);
    } else {
      const double w = (threshold - p[i]) / (p[i + 1] - p[i]);
      when = t[i] + w * (t[i + 1] - t[i]);
    }
    EntanglementEvent ev{alive_now ? EventKind::death : EventKind::revival, when, false};
    if (have_transition && i - last_transition < 2) {
      ev.reduced_precision = true;
      events.back().reduced_precision = true;
      spdlog::warn("time grid too coarse near t = {:.6g}: interval of a single grid point", when);
    }
    events.push_back(ev);
    last_transition = i;
    have_transition = true;
  }
  if (!events.empty() && events.back().kind == EventKind::death)
    events.back().kind = EventKind::final_death;
  return events;
}

std::function<double(double)> precursor_function(const TwoQubitEvolution& evolution) {
  return [&evolution](double t) {
    return precursor(to_x_state(evolution.rho(t)));
  };
}

}  // namespace nmq
