#pragma once

// Adaptive Dormand-Prince 5(4) stepping for dense Eigen states.

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nmq/errors.hpp"

namespace nmq::detail {

struct StepControl {
  double rtol = 1e-10;
  double atol = 1e-12;
  double min_step = 1e-14;
  std::size_t max_steps = 10'000'000;
};

/// Stateful integrator; keeps its step size between successive `advance` calls.
template <typename State, typename Rhs>
class DormandPrince {
 public:
  DormandPrince(Rhs rhs, StepControl control) : rhs_(std::move(rhs)), control_(control) {}

  /// Integrates y from t to t_end in place.
  void advance(State& y, double t, double t_end) {
    if (t_end <= t) return;
    if (step_ <= 0.0) step_ = std::min(1e-3, t_end - t);
    State k1 = rhs_(t, y);
    std::size_t steps = 0;
    while (t < t_end) {
      if (++steps > control_.max_steps) fail("step budget exhausted", t);
      double h = std::min(step_, t_end - t);
      const bool clipped = h < step_;

      const State k2 = rhs_(t + c2 * h, y + h * (a21 * k1));
      const State k3 = rhs_(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
      const State k4 = rhs_(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
      const State k5 = rhs_(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const State k6 =
          rhs_(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      const State y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      const State k7 = rhs_(t + h, y5);
      const State err =
          h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      const auto scale = (control_.atol + control_.rtol *
                                              y.cwiseAbs().cwiseMax(y5.cwiseAbs()).array())
                             .eval();
      const double norm = std::sqrt((err.cwiseAbs().array() / scale).square().mean());
      if (!std::isfinite(norm)) fail("non-finite error estimate", t);

      if (norm <= 1.0) {
        t += h;
        y = y5;
        k1 = k7;
        const double grow = norm > 0.0 ? std::min(5.0, 0.9 * std::pow(norm, -0.2)) : 5.0;
        if (!clipped) step_ = h * grow;
      } else {
        step_ = h * std::max(0.2, 0.9 * std::pow(norm, -0.2));
        if (step_ < control_.min_step) fail("step size underflow", t);
      }
    }
  }

  double step() const { return step_; }

 private:
  [[noreturn]] void fail(const char* why, double t) const {
    std::ostringstream msg;
    msg << "adaptive integrator failed: " << why << " at t = " << t << " (step " << step_ << ")";
    throw NumericalError(msg.str());
  }

  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // Fifth-order minus embedded fourth-order weights.
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  Rhs rhs_;
  StepControl control_;
  double step_ = 0.0;
};

template <typename State, typename Rhs>
DormandPrince<State, Rhs> make_dormand_prince(Rhs rhs, StepControl control) {
  return DormandPrince<State, Rhs>(std::move(rhs), control);
}

}  // namespace nmq::detail
