#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "nmq/errors.hpp"
#include "nmq/model.hpp"
#include "nmq/reconstruction.hpp"
#include "nmq/time_grid.hpp"

namespace nmq {

/// sigma_y (x) sigma_y in the (|11>, |10>, |01>, |00>) basis. It is real:
/// the anti-diagonal (-1, 1, 1, -1).
template <typename Scalar>
Eigen::Matrix<Scalar, 4, 4> sigma_yy() {
  Eigen::Matrix<Scalar, 4, 4> s = Eigen::Matrix<Scalar, 4, 4>::Zero();
  s(0, 3) = Scalar(-1);
  s(1, 2) = Scalar(1);
  s(2, 1) = Scalar(1);
  s(3, 0) = Scalar(-1);
  return s;
}

/// rho~ = (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 4, 4> spin_flip(const Eigen::MatrixBase<Derived>& rho) {
  using Real = typename Derived::RealScalar;
  using Mat = Eigen::Matrix<typename Derived::Scalar, 4, 4>;
  const Mat s = sigma_yy<Real>().template cast<typename Derived::Scalar>();
  return s * rho.conjugate() * s;
}

/// The Wootters numbers lambda_1 >= ... >= lambda_4, i.e. the square roots of
/// the eigenvalues of rho rho~.
///
/// Computed as singular values of W^T S W with rho = W W^dagger and
/// S = sigma_y (x) sigma_y; (W^T S W)^dagger (W^T S W) is similar to rho rho~,
/// and this avoids square roots of round-off-sized eigenvalues.
template <typename Derived>
std::array<typename Derived::RealScalar, 4> wootters_lambdas(const Eigen::MatrixBase<Derived>& rho) {
  using Real = typename Derived::RealScalar;
  using Complex = std::complex<Real>;
  using Mat = Eigen::Matrix<Complex, 4, 4>;
  const Mat herm = (Mat(rho) + Mat(rho).adjoint()) * Real(0.5);
  const Eigen::SelfAdjointEigenSolver<Mat> eig(herm);
  Mat w = eig.eigenvectors();
  for (int j = 0; j < 4; ++j) {
    // Tiny negative eigenvalues are round-off; rho rho~ is similar to a PSD product.
    w.col(j) *= std::sqrt(std::max(eig.eigenvalues()(j), Real(0)));
  }
  const Mat s = sigma_yy<Real>().template cast<Complex>();
  const Mat m = w.transpose() * s * w;
  const Eigen::JacobiSVD<Mat> svd(m);
  std::array<Real, 4> out;
  for (int j = 0; j < 4; ++j) out[j] = svd.singularValues()(j);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

/// Concurrence of an arbitrary two-qubit state. Rejects inputs that are not
/// Hermitian, unit trace and PSD to within `tolerance`.
template <typename Derived>
typename Derived::RealScalar concurrence_general(const Eigen::MatrixBase<Derived>& rho,
                                                 double tolerance = 1e-9) {
  using Real = typename Derived::RealScalar;
  using Complex = std::complex<Real>;
  using Mat = Eigen::Matrix<Complex, 4, 4>;
  const Mat r = rho;
  if (!r.allFinite()) throw DomainError("concurrence: non-finite density matrix");
  if ((r - r.adjoint()).cwiseAbs().maxCoeff() > tolerance)
    throw DomainError("concurrence: density matrix is not Hermitian");
  if (std::abs(r.trace() - Complex(1)) > tolerance)
    throw DomainError("concurrence: density matrix does not have unit trace");
  const Eigen::SelfAdjointEigenSolver<Mat> eig((r + r.adjoint()) * Real(0.5),
                                               Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -tolerance)
    throw DomainError("concurrence: density matrix is not positive semidefinite");

  const auto l = wootters_lambdas(r);
  return std::clamp(l[0] - l[1] - l[2] - l[3], Real(0), Real(1));
}

/// 2 (|f| - sqrt(b c)) without clamping; negative values measure how far the
/// state is from being entangled.
inline double precursor(const XStateMatrix& x) {
  return 2.0 * (std::abs(x.f) - std::sqrt(std::max(x.b * x.c, 0.0)));
}

inline double concurrence_x(const XStateMatrix& x) { return std::max(0.0, precursor(x)); }

template <typename Scalar>
Scalar entanglement_of_formation(Scalar concurrence) {
  // h((1 + sqrt(1 - C^2)) / 2) with h the binary entropy in bits, h(0) = h(1) = 0.
  using std::sqrt;
  const Scalar slack = Scalar(1e-12);
  if (!(concurrence >= -slack && concurrence <= Scalar(1) + slack))
    throw DomainError("entanglement of formation: concurrence outside [0, 1]");
  const Scalar c = std::clamp(concurrence, Scalar(0), Scalar(1));
  const Scalar root = sqrt(Scalar(1) - c * c);
  // 1 - x written without cancellation for small concurrence.
  const Scalar small = c * c / (Scalar(2) * (Scalar(1) + root));
  const Scalar large = Scalar(1) - small;
  using std::log2;
  const auto term = [](Scalar p) { return p > Scalar(0) ? -p * log2(p) : Scalar(0); };
  return term(large) + term(small);
}

/// Decay rate in the Markovian limit alpha/gamma -> 0 with alpha^2/gamma fixed.
template <typename Scalar>
Scalar markovian_rate(const BasicModelParams<Scalar>& p, Subsystem k) {
  validate(p);
  if (!(p.gamma > Scalar(0))) throw DomainError("markovian_rate requires gamma > 0");
  const Scalar a = p.alpha(k);
  const Scalar occupation = Scalar(2) * p.nbar + Scalar(1);
  return a * a / p.gamma / (occupation * occupation);
}

struct EntanglementSeries {
  TimeGrid grid;
  std::vector<double> concurrence;
  std::vector<double> precursor;
  std::vector<double> eof;
};

/// Concurrence, precursor and EoF at every grid point, via the X-state formula.
EntanglementSeries entanglement_series(const SubsystemTrajectory& first,
                                       const SubsystemTrajectory& second, double nbar);

enum class EventKind { death, revival, final_death };

const char* to_string(EventKind kind);

struct EntanglementEvent {
  EventKind kind;
  double time;
  /// Set when the crossing was bracketed by a single grid point on one side.
  bool reduced_precision = false;
};

/// Default level below which the precursor counts as "no entanglement".
inline constexpr double kEventThreshold = 1e-6;

/// Death/revival events of a precursor series.
///
/// The state is dead while precursor < threshold. Every alive->dead transition
/// is a death and every dead->alive transition a revival; a death that is not
/// followed by a revival before the end of the grid is reported as final.
/// With `precursor_at` the crossing times are refined by bisection to 1e-8,
/// otherwise they are linearly interpolated.
///
/// The grid must resolve every dead or alive interval with at least three
/// points; shorter intervals are kept but flagged `reduced_precision`.
std::vector<EntanglementEvent> extract_events(
    const EntanglementSeries& series, double threshold = kEventThreshold,
    const std::function<double(double)>& precursor_at = {});

/// Continuous-time precursor for one parameter set (for event refinement).
std::function<double(double)> precursor_function(const TwoQubitEvolution& evolution);

}  // namespace nmq
