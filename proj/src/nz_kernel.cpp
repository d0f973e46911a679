#include "nmq/nz_kernel.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "nmq/errors.hpp"

namespace nmq {

namespace {

constexpr int kRelevantSize = static_cast<int>(basis::kRelevant.size());
using Reduced = Eigen::Matrix<std::complex<double>, kRelevantSize, kRelevantSize>;
using ReducedVector = Eigen::Matrix<std::complex<double>, kRelevantSize, 1>;

Reduced restrict(const GeneratorMatrix& m) {
  Reduced r;
  for (int i = 0; i < kRelevantSize; ++i)
    for (int j = 0; j < kRelevantSize; ++j) r(i, j) = m(basis::kRelevant[i], basis::kRelevant[j]);
  return r;
}

}  // namespace

GeneratorMatrix local_term(const GeneratorMatrix& generator, const ProjectorPair& projectors) {
  const GeneratorMatrix p = projectors.relevant<double>();
  return p * generator * p;
}

MemoryKernelSamples build_kernel(const GeneratorMatrix& generator, const ProjectorPair& projectors,
                                 const TimeGrid& lags) {
  if (!generator.allFinite()) throw NumericalError("build_kernel: non-finite generator");
  const GeneratorMatrix p = projectors.relevant<double>();
  const GeneratorMatrix q = projectors.irrelevant<double>();
  const GeneratorMatrix qlq = q * generator * q;
  const GeneratorMatrix left = p * generator;
  const GeneratorMatrix right = q * generator * p;

  MemoryKernelSamples kernel{lags, {}};
  kernel.values.reserve(lags.size());
  for (double tau : lags.points()) {
    const GeneratorMatrix propagator = tau == 0.0 ? GeneratorMatrix::Identity()
                                                  : GeneratorMatrix((qlq * tau).exp());
    kernel.values.push_back(left * propagator * right);
  }
  return kernel;
}

std::vector<CoefficientVector> solve_nz(const MemoryKernelSamples& kernel,
                                        const GeneratorMatrix& local, const CoefficientVector& init,
                                        const TimeGrid& grid) {
  const std::size_t n = grid.size();
  const double dt = grid.step();
  if (grid.t_start() != 0.0) throw DomainError("solve_nz: grid must start at t = 0");
  if (n > 1) {
    const double lag_dt = kernel.lags.step();
    if (kernel.lags.t_start() != 0.0 || std::abs(lag_dt - dt) > 1e-12 * dt)
      throw DomainError("solve_nz: kernel lag step does not match the time step");
    if (kernel.values.size() < n)
      throw DomainError("solve_nz: kernel lags do not cover the time grid");
  }

  std::vector<Reduced> k;
  k.reserve(n);
  for (std::size_t j = 0; j < n; ++j) k.push_back(restrict(kernel.values[j]));
  const Reduced a = restrict(local);
  const Reduced decay = (a * dt).exp();

  std::vector<ReducedVector> y(n);
  for (int i = 0; i < kRelevantSize; ++i) y[0](i) = init(basis::kRelevant[i]);

  // Memory integral at step m, trapezoidal in s over [0, t_m].
  const auto memory = [&](std::size_t m, const ReducedVector& y_m) {
    ReducedVector acc = ReducedVector::Zero();
    if (m == 0) return acc;
    acc += 0.5 * (k[0] * y_m + k[m] * y[0]);
    for (std::size_t j = 1; j < m; ++j) acc += k[m - j] * y[j];
    return ReducedVector(dt * acc);
  };

  ReducedVector mem = ReducedVector::Zero();
  for (std::size_t m = 0; m + 1 < n; ++m) {
    const ReducedVector predicted = decay * (y[m] + dt * mem);
    const ReducedVector mem_predicted = memory(m + 1, predicted);
    y[m + 1] = decay * y[m] + 0.5 * dt * (decay * mem + mem_predicted);
    mem = mem_predicted + 0.5 * dt * (k[0] * (y[m + 1] - predicted));
  }

  std::vector<CoefficientVector> out(n, CoefficientVector::Zero());
  for (std::size_t m = 0; m < n; ++m)
    for (int i = 0; i < kRelevantSize; ++i) out[m](basis::kRelevant[i]) = y[m](i);
  return out;
}

}  // namespace nmq
