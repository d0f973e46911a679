#pragma once

// Projected (memory-kernel) form of the single-subsystem dynamics:
//
//   d(Pc)/dt = PLP (Pc)(t) + int_0^t K(t - s) (Pc)(s) ds,
//   K(tau)   = P L exp(QLQ tau) Q L P.

#include <vector>

#include <Eigen/Dense>

#include "nmq/model.hpp"
#include "nmq/time_grid.hpp"

namespace nmq {

/// K sampled on a uniform lag grid, one 9x9 matrix per lag.
struct MemoryKernelSamples {
  TimeGrid lags;
  std::vector<GeneratorMatrix> values;
};

MemoryKernelSamples build_kernel(const GeneratorMatrix& generator, const ProjectorPair& projectors,
                                 const TimeGrid& lags);

/// PLP, the memoryless part of the projected generator.
GeneratorMatrix local_term(const GeneratorMatrix& generator, const ProjectorPair& projectors);

/// Second-order solution of the projected equation on `grid`, which must be
/// uniform with the kernel's lag step and no longer than the kernel.
///
/// Each step is a predictor-corrector pair: the memory integral is evaluated
/// by the trapezoidal rule and the local term is integrated exactly through
/// the factor exp(PLP dt), whose oscillation would otherwise dominate the error.
std::vector<CoefficientVector> solve_nz(const MemoryKernelSamples& kernel,
                                        const GeneratorMatrix& local, const CoefficientVector& init,
                                        const TimeGrid& grid);

}  // namespace nmq
