#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "nmq/model.hpp"
#include "nmq/time_grid.hpp"

namespace nmq {

/// Exact evaluation of exp(L t) c for a block-diagonal generator.
///
/// Each diagonal block is diagonalised once; a block whose eigenvector matrix
/// has condition number above `kDefectiveCondition` is instead exponentiated
/// with scaling and squaring at every requested time.
class BlockPropagator {
 public:
  static constexpr double kDefectiveCondition = 1e8;

  explicit BlockPropagator(const GeneratorMatrix& generator);

  CoefficientVector apply(const CoefficientVector& init, double t) const;

  const GeneratorMatrix& generator() const { return generator_; }
  /// True when block `b` (0..3, see basis::kBlocks) uses the dense fallback.
  bool uses_fallback(int b) const { return blocks_[b].fallback; }

 private:
  struct Block {
    basis::Block range;
    bool fallback = false;
    Eigen::MatrixXcd matrix;
    Eigen::VectorXcd eigenvalues;
    Eigen::MatrixXcd vectors;
    Eigen::MatrixXcd inverse_vectors;
  };

  GeneratorMatrix generator_;
  std::array<Block, 4> blocks_;
};

std::vector<CoefficientVector> propagate(const GeneratorMatrix& generator,
                                         const CoefficientVector& init, const TimeGrid& grid);

/// The four Bell-term trajectories of one subsystem on a shared grid.
struct SubsystemTrajectory {
  TimeGrid grid;
  Subsystem subsystem;
  std::array<std::vector<CoefficientVector>, 4> terms;

  const std::vector<CoefficientVector>& term(InitialTerm m) const { return terms[index_of(m)]; }
  const CoefficientVector& at(InitialTerm m, std::size_t i) const { return term(m)[i]; }
};

SubsystemTrajectory evolve_subsystem(const ModelParams& params, Subsystem k, const TimeGrid& grid);

/// Same, for an explicitly supplied generator (used for mutation checks).
SubsystemTrajectory evolve_subsystem(const GeneratorMatrix& generator, double nbar, Subsystem k,
                                     const TimeGrid& grid);

}  // namespace nmq
