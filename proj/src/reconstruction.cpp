#include "nmq/reconstruction.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "nmq/errors.hpp"

namespace nmq {

DensityMatrix4 assemble_rho12(const std::array<CoefficientVector, 4>& first,
                              const std::array<CoefficientVector, 4>& second, double nbar) {
  DensityMatrix4 rho = DensityMatrix4::Zero();
  for (InitialTerm m : kInitialTerms) {
    const SingleAtomBlock m1 = single_atom_block(first[index_of(m)], nbar);
    const SingleAtomBlock m2 = single_atom_block(second[index_of(m)], nbar);
    rho += DensityMatrix4(Eigen::kroneckerProduct(m1, m2));
  }
  return 0.5 * rho;
}

DensityMatrix4 assemble_rho12(const SubsystemTrajectory& first, const SubsystemTrajectory& second,
                              double nbar, std::size_t t_index) {
  if (!(first.grid == second.grid))
    throw DomainError("assemble_rho12: trajectories are on different time grids");
  if (t_index >= first.grid.size()) throw DomainError("assemble_rho12: time index out of range");
  std::array<CoefficientVector, 4> a;
  std::array<CoefficientVector, 4> b;
  for (InitialTerm m : kInitialTerms) {
    a[index_of(m)] = first.at(m, t_index);
    b[index_of(m)] = second.at(m, t_index);
  }
  return assemble_rho12(a, b, nbar);
}

double x_pattern_violation(const DensityMatrix4& rho) {
  double worst = 0.0;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const bool allowed = r == c || (r == 0 && c == 3) || (r == 3 && c == 0);
      if (!allowed) worst = std::max(worst, std::abs(rho(r, c)));
    }
  }
  return worst;
}

XStateMatrix to_x_state(const DensityMatrix4& rho, double tolerance) {
  const double violation = x_pattern_violation(rho);
  if (violation > tolerance) {
    std::ostringstream msg;
    msg << "density matrix is not of X form (off-pattern magnitude " << violation << ")";
    throw StructureError(msg.str());
  }
  return {rho(0, 0).real(), rho(1, 1).real(), rho(2, 2).real(), rho(3, 3).real(), rho(0, 3)};
}

DensityMatrix4 from_x_state(const XStateMatrix& x) {
  DensityMatrix4 rho = DensityMatrix4::Zero();
  rho(0, 0) = x.a;
  rho(1, 1) = x.b;
  rho(2, 2) = x.c;
  rho(3, 3) = x.d;
  rho(0, 3) = x.f;
  rho(3, 0) = std::conj(x.f);
  return rho;
}

DensityMatrix4 bell_state() { return from_x_state({0.5, 0.0, 0.0, 0.5, 0.5}); }

Physicality check_physicality(const DensityMatrix4& rho) {
  const DensityMatrix4 herm = 0.5 * (rho + rho.adjoint());
  const Eigen::SelfAdjointEigenSolver<DensityMatrix4> eig(herm, Eigen::EigenvaluesOnly);
  return {std::abs(rho.trace() - 1.0), (rho - rho.adjoint()).cwiseAbs().maxCoeff(),
          eig.eigenvalues().minCoeff(), x_pattern_violation(rho)};
}

TwoQubitEvolution::TwoQubitEvolution(const ModelParams& params)
    : TwoQubitEvolution(build_generator(params, Subsystem::first),
                        build_generator(params, Subsystem::second), params.nbar) {}

TwoQubitEvolution::TwoQubitEvolution(const GeneratorMatrix& first, const GeneratorMatrix& second,
                                     double nbar)
    : first_(first), second_(second), nbar_(nbar) {}

DensityMatrix4 TwoQubitEvolution::rho(double t) const {
  std::array<CoefficientVector, 4> a;
  std::array<CoefficientVector, 4> b;
  for (InitialTerm m : kInitialTerms) {
    const CoefficientVector init = initial_coefficients(m, nbar_);
    a[index_of(m)] = first_.apply(init, t);
    b[index_of(m)] = second_.apply(init, t);
  }
  return assemble_rho12(a, b, nbar_);
}

}  // namespace nmq
