#pragma once

#include <array>
#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "nmq/model.hpp"
#include "nmq/propagator.hpp"

namespace nmq {

template <typename Scalar>
using SingleAtomBlockT = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
using SingleAtomBlock = SingleAtomBlockT<double>;

/// Two-qubit density matrix in the basis (|11>, |10>, |01>, |00>).
using DensityMatrix4 = Eigen::Matrix4cd;

/// The X form: populations a..d on the diagonal, f = <11|rho|00>.
struct XStateMatrix {
  double a = 0;
  double b = 0;
  double c = 0;
  double d = 0;
  std::complex<double> f{};
};

/// Atom-k factor of one Bell term, after tracing out its mini-reservoir.
/// Only m_0, m_1, m_5 and m_7 contribute; the other basis operators are
/// traceless on the partner atom.
template <typename Scalar>
SingleAtomBlockT<Scalar> single_atom_block(const CoefficientVectorT<Scalar>& m, Scalar nbar) {
  const auto [excited, ground] = thermal_populations(nbar);
  SingleAtomBlockT<Scalar> block;
  block(0, 0) = excited * m(basis::kThermal) + m(basis::kInversion);
  block(0, 1) = m(basis::kRaise);
  block(1, 0) = m(basis::kLower);
  block(1, 1) = ground * m(basis::kThermal) - m(basis::kInversion);
  return block;
}

/// rho_12 = 1/2 sum_m M1_m (x) M2_m from per-term coefficient vectors.
DensityMatrix4 assemble_rho12(const std::array<CoefficientVector, 4>& first,
                              const std::array<CoefficientVector, 4>& second, double nbar);

/// rho_12 at grid index `t_index`; both trajectories must share one grid.
DensityMatrix4 assemble_rho12(const SubsystemTrajectory& first, const SubsystemTrajectory& second,
                              double nbar, std::size_t t_index);

/// Maximum magnitude of the entries that the X form requires to vanish.
double x_pattern_violation(const DensityMatrix4& rho);

/// Throws StructureError when an off-pattern entry exceeds `tolerance`.
XStateMatrix to_x_state(const DensityMatrix4& rho, double tolerance = 1e-9);

DensityMatrix4 from_x_state(const XStateMatrix& x);

/// (|00> + |11>)/sqrt(2) as a density matrix.
DensityMatrix4 bell_state();

struct Physicality {
  double trace_error;       // |tr(rho) - 1|
  double hermiticity;       // max |rho - rho^dagger|
  double min_eigenvalue;
  double x_pattern;         // see x_pattern_violation
};

Physicality check_physicality(const DensityMatrix4& rho);

/// rho_12(t) at arbitrary times for one parameter set.
class TwoQubitEvolution {
 public:
  explicit TwoQubitEvolution(const ModelParams& params);
  TwoQubitEvolution(const GeneratorMatrix& first, const GeneratorMatrix& second, double nbar);

  DensityMatrix4 rho(double t) const;
  double nbar() const { return nbar_; }

 private:
  BlockPropagator first_;
  BlockPropagator second_;
  double nbar_;
};

}  // namespace nmq
