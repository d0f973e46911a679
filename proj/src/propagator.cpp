#include "nmq/propagator.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>
#include <spdlog/spdlog.h>

#include "nmq/errors.hpp"

namespace nmq {

namespace {

bool all_finite(const auto& m) { return m.allFinite(); }

void require_block_structure(const GeneratorMatrix& g) {
  for (int r = 0; r < basis::kSize; ++r) {
    for (int c = 0; c < basis::kSize; ++c) {
      bool inside = false;
      for (const auto& b : basis::kBlocks) {
        inside = inside || (r >= b.offset && r < b.offset + b.size && c >= b.offset &&
                            c < b.offset + b.size);
      }
      if (!inside && g(r, c) != std::complex<double>(0.0))
        throw DomainError("generator has entries outside its diagonal blocks");
    }
  }
}

}  // namespace

BlockPropagator::BlockPropagator(const GeneratorMatrix& generator) : generator_(generator) {
  if (!all_finite(generator)) throw NumericalError("generator contains non-finite entries");
  require_block_structure(generator);

  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    Block& block = blocks_[b];
    block.range = basis::kBlocks[b];
    block.matrix = generator.block(block.range.offset, block.range.offset, block.range.size,
                                   block.range.size);

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(block.matrix);
    if (eig.info() != Eigen::Success) {
      block.fallback = true;
    } else {
      const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(eig.eigenvectors());
      const auto& sv = svd.singularValues();
      const double cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                                  : std::numeric_limits<double>::infinity();
      if (!(cond <= kDefectiveCondition)) {
        block.fallback = true;
        spdlog::debug("block {} is near-defective (eigenvector condition {:.3e}); "
                      "using scaling-and-squaring exponential",
                      b, cond);
      } else {
        block.eigenvalues = eig.eigenvalues();
        block.vectors = eig.eigenvectors();
        block.inverse_vectors = block.vectors.inverse();
      }
    }
  }
}

CoefficientVector BlockPropagator::apply(const CoefficientVector& init, double t) const {
  if (!all_finite(init) || !std::isfinite(t))
    throw NumericalError("propagate: non-finite initial vector or time");
  if (t == 0.0) return init;

  CoefficientVector out = CoefficientVector::Zero();
  for (const Block& block : blocks_) {
    const auto segment = init.segment(block.range.offset, block.range.size);
    if (segment.isZero(0.0)) continue;

    Eigen::VectorXcd x = segment;
    if (block.fallback) {
      const Eigen::MatrixXcd scaled = block.matrix * t;
      x = scaled.exp() * x;
    } else {
      Eigen::VectorXcd modal = block.inverse_vectors * x;
      for (Eigen::Index j = 0; j < modal.size(); ++j) modal(j) *= std::exp(block.eigenvalues(j) * t);
      x = block.vectors * modal;
    }
    out.segment(block.range.offset, block.range.size) = x;
  }
  if (!all_finite(out)) throw NumericalError("propagate: result is not finite");
  return out;
}

std::vector<CoefficientVector> propagate(const GeneratorMatrix& generator,
                                         const CoefficientVector& init, const TimeGrid& grid) {
  const BlockPropagator prop(generator);
  std::vector<CoefficientVector> out;
  out.reserve(grid.size());
  for (double t : grid.points()) out.push_back(prop.apply(init, t));
  return out;
}

SubsystemTrajectory evolve_subsystem(const GeneratorMatrix& generator, double nbar, Subsystem k,
                                     const TimeGrid& grid) {
  const BlockPropagator prop(generator);
  SubsystemTrajectory traj{grid, k, {}};
  for (InitialTerm m : kInitialTerms) {
    const CoefficientVector init = initial_coefficients(m, nbar);
    auto& series = traj.terms[index_of(m)];
    series.reserve(grid.size());
    for (double t : grid.points()) series.push_back(prop.apply(init, t));
  }
  return traj;
}

SubsystemTrajectory evolve_subsystem(const ModelParams& params, Subsystem k, const TimeGrid& grid) {
  return evolve_subsystem(build_generator(params, k), params.nbar, k, grid);
}

}  // namespace nmq
