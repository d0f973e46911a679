#pragma once

// Seeded generators shared by the property tests.

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "nmq/model.hpp"
#include "nmq/reconstruction.hpp"

namespace nmq::testing {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

  std::complex<double> gaussian_complex() {
    std::normal_distribution<double> n;
    return {n(engine_), n(engine_)};
  }

  ModelParams params() {
    ModelParams p;
    p.omega1 = uniform(5, 15);
    p.omega2 = uniform(5, 15);
    p.omega3 = p.omega1 - uniform(-3, 3);
    p.omega4 = p.omega2 - uniform(-3, 3);
    p.alpha1 = uniform(0, 5);
    p.alpha2 = uniform(0, 5);
    p.gamma = uniform(0, 5);
    p.nbar = uniform(0, 2);
    return p;
  }

  /// A physical X state.
  XStateMatrix x_state() {
    const double w[4] = {uniform(0.01, 1), uniform(0.01, 1), uniform(0.01, 1), uniform(0.01, 1)};
    const double sum = w[0] + w[1] + w[2] + w[3];
    XStateMatrix x{w[0] / sum, w[1] / sum, w[2] / sum, w[3] / sum, {}};
    x.f = std::polar(uniform(0, 1) * std::sqrt(x.a * x.d), uniform(0, 6.283185307179586));
    return x;
  }

  Eigen::Matrix2cd unitary() {
    Eigen::Matrix2cd m;
    for (int i = 0; i < 4; ++i) m(i / 2, i % 2) = gaussian_complex();
    return Eigen::HouseholderQR<Eigen::Matrix2cd>(m).householderQ();
  }

 private:
  std::mt19937_64 engine_;
};

inline double max_abs(const auto& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace nmq::testing
