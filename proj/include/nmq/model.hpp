#pragma once

// Single-subsystem model: atom k (principal qubit) exchange-coupled to a
// mini-reservoir atom k+2 that is itself thermally damped.
//
// Basis convention, used everywhere in this library: single-qubit matrices
// are written in the order (excited |1>, ground |0>). Consequently
// sigma^+ = |1><0| = [[0,1],[0,0]] and sigma^z = diag(1,-1). Two-qubit
// matrices use (|11>, |10>, |01>, |00>).

#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "nmq/errors.hpp"

namespace nmq {

enum class Subsystem { first = 1, second = 2 };

/// Product terms of the Bell state decomposition, named after the operator
/// on each principal atom: EE = |1><1|, GG = |0><0|, GE = |0><1|, EG = |1><0|.
enum class InitialTerm { EE = 0, GG = 1, GE = 2, EG = 3 };

inline constexpr std::array<InitialTerm, 4> kInitialTerms = {
    InitialTerm::EE, InitialTerm::GG, InitialTerm::GE, InitialTerm::EG};

inline constexpr int index_of(Subsystem k) { return k == Subsystem::first ? 0 : 1; }
inline constexpr int index_of(InitialTerm m) { return static_cast<int>(m); }

/// Indices of the nine operators X_0..X_8 spanning one subsystem's dynamics.
namespace basis {
inline constexpr int kThermal = 0;           // rho_bar (x) rho_bar
inline constexpr int kInversion = 1;         // sigma^z (x) rho_bar
inline constexpr int kExchangeOdd = 2;       // s^- (x) s^+  -  s^+ (x) s^-
inline constexpr int kExchangeEven = 3;      // s^- (x) s^+  +  s^+ (x) s^-
inline constexpr int kPartnerInversion = 4;  // rho_bar (x) sigma^z
inline constexpr int kRaise = 5;             // sigma^+ (x) rho_bar
inline constexpr int kRaisePartner = 6;
inline constexpr int kLower = 7;             // sigma^- (x) rho_bar
inline constexpr int kLowerPartner = 8;
inline constexpr int kSize = 9;

/// Diagonal blocks {0}, {1..4}, {5,6}, {7,8}.
struct Block {
  int offset;
  int size;
};
inline constexpr std::array<Block, 4> kBlocks = {{{0, 1}, {1, 4}, {5, 2}, {7, 2}}};

/// Indices kept by the relevant-part projector.
inline constexpr std::array<int, 4> kRelevant = {0, 1, 5, 7};
}  // namespace basis

template <typename Scalar>
using CoefficientVectorT = Eigen::Matrix<std::complex<Scalar>, basis::kSize, 1>;
template <typename Scalar>
using GeneratorMatrixT = Eigen::Matrix<std::complex<Scalar>, basis::kSize, basis::kSize>;
template <typename Scalar>
using ThermalStateT = Eigen::Matrix<Scalar, 2, 2>;

using CoefficientVector = CoefficientVectorT<double>;
using GeneratorMatrix = GeneratorMatrixT<double>;
using ThermalState = ThermalStateT<double>;

/// Physical parameters of both subsystems (hbar = 1).
///
/// omega1/omega2 are the principal atoms' excitation energies, omega3/omega4
/// those of their mini-reservoir partners. Both mini-reservoirs share one
/// bath, so gamma and nbar are common.
template <typename Scalar>
struct BasicModelParams {
  Scalar omega1{10};
  Scalar omega2{10};
  Scalar omega3{10};
  Scalar omega4{10};
  Scalar alpha1{0};
  Scalar alpha2{0};
  Scalar gamma{0};
  Scalar nbar{0};

  static BasicModelParams from_detunings(Scalar omega1, Scalar omega2, Scalar delta1,
                                         Scalar delta2, Scalar alpha1, Scalar alpha2,
                                         Scalar gamma, Scalar nbar) {
    return {omega1, omega2, omega1 - delta1, omega2 - delta2, alpha1, alpha2, gamma, nbar};
  }

  /// Symmetric configuration used by all presets: both subsystems alike.
  static BasicModelParams symmetric(Scalar omega, Scalar delta, Scalar alpha, Scalar gamma,
                                    Scalar nbar) {
    return from_detunings(omega, omega, delta, delta, alpha, alpha, gamma, nbar);
  }

  Scalar gamma_eff() const { return (Scalar(2) * nbar + Scalar(1)) * gamma; }
  Scalar omega(Subsystem k) const { return k == Subsystem::first ? omega1 : omega2; }
  Scalar partner_omega(Subsystem k) const { return k == Subsystem::first ? omega3 : omega4; }
  Scalar alpha(Subsystem k) const { return k == Subsystem::first ? alpha1 : alpha2; }
  Scalar delta(Subsystem k) const { return omega(k) - partner_omega(k); }

  bool operator==(const BasicModelParams&) const = default;
};

using ModelParams = BasicModelParams<double>;

/// Rejects gamma < 0, nbar < 0 and non-finite entries. alpha = 0 and detunings
/// of either sign are allowed.
template <typename Scalar>
void validate(const BasicModelParams<Scalar>& p) {
  using std::isfinite;
  const std::array<Scalar, 8> all = {p.omega1, p.omega2, p.omega3, p.omega4,
                                     p.alpha1, p.alpha2, p.gamma,  p.nbar};
  for (const Scalar& v : all) {
    if (!isfinite(v)) throw DomainError("model parameters must be finite");
  }
  if (p.gamma < Scalar(0)) throw DomainError("gamma must be non-negative");
  if (p.nbar < Scalar(0)) throw DomainError("nbar must be non-negative");
}

/// Populations of the thermal state: (excited, ground).
template <typename Scalar>
std::pair<Scalar, Scalar> thermal_populations(Scalar nbar) {
  if (!(nbar >= Scalar(0))) throw DomainError("nbar must be non-negative");
  const Scalar norm = Scalar(2) * nbar + Scalar(1);
  return {nbar / norm, (nbar + Scalar(1)) / norm};
}

template <typename Scalar>
ThermalStateT<Scalar> thermal_state(Scalar nbar) {
  const auto [excited, ground] = thermal_populations(nbar);
  ThermalStateT<Scalar> rho = ThermalStateT<Scalar>::Zero();
  rho(0, 0) = excited;
  rho(1, 1) = ground;
  return rho;
}

/// Matrix of the subsystem-k generator in the X_0..X_8 basis, with
/// L(row, col) = coefficient of X_row in L(X_col), so that dc/dt = L c.
template <typename Scalar>
GeneratorMatrixT<Scalar> build_generator(const BasicModelParams<Scalar>& p, Subsystem k) {
  validate(p);
  using C = std::complex<Scalar>;
  const C i(0, 1);
  const Scalar a = p.alpha(k);
  const Scalar d = p.delta(k);
  const Scalar g = p.gamma_eff();
  const Scalar w = p.omega(k);
  const Scalar wp = p.partner_omega(k);

  GeneratorMatrixT<Scalar> L = GeneratorMatrixT<Scalar>::Zero();
  // Populations / exchange block.
  L(1, 2) = -Scalar(2) * i * a;
  L(2, 1) = -i * a;
  L(2, 2) = C(-g);
  L(2, 3) = i * d;
  L(2, 4) = i * a;
  L(3, 2) = i * d;
  L(3, 3) = C(-g);
  L(4, 2) = Scalar(2) * i * a;
  L(4, 4) = C(-Scalar(2) * g);
  // sigma^+ coherence block.
  L(5, 5) = -i * w;
  L(5, 6) = -i * a;
  L(6, 5) = -i * a;
  L(6, 6) = -(C(g) + i * wp);
  // sigma^- coherence block, the complex conjugate of the one above.
  L(7, 7) = i * w;
  L(7, 8) = i * a;
  L(8, 7) = i * a;
  L(8, 8) = -(C(g) - i * wp);
  return L;
}

/// Coefficients of (single-atom operator) (x) rho_bar for one Bell product term.
template <typename Scalar>
CoefficientVectorT<Scalar> initial_coefficients(InitialTerm term, Scalar nbar) {
  const auto [excited, ground] = thermal_populations(nbar);
  CoefficientVectorT<Scalar> c = CoefficientVectorT<Scalar>::Zero();
  switch (term) {
    case InitialTerm::EE:
      c(basis::kThermal) = Scalar(1);
      c(basis::kInversion) = ground;
      break;
    case InitialTerm::GG:
      c(basis::kThermal) = Scalar(1);
      c(basis::kInversion) = -excited;
      break;
    case InitialTerm::GE:
      c(basis::kLower) = Scalar(1);
      break;
    case InitialTerm::EG:
      c(basis::kRaise) = Scalar(1);
      break;
  }
  return c;
}

/// Diagonal 0/1 projectors onto the relevant ({0,1,5,7}) and irrelevant parts.
struct ProjectorPair {
  using Matrix = Eigen::Matrix<int, basis::kSize, basis::kSize>;
  Matrix P;
  Matrix Q;

  template <typename Scalar>
  GeneratorMatrixT<Scalar> relevant() const {
    return P.cast<std::complex<Scalar>>();
  }
  template <typename Scalar>
  GeneratorMatrixT<Scalar> irrelevant() const {
    return Q.cast<std::complex<Scalar>>();
  }
};

inline ProjectorPair projector_pair() {
  ProjectorPair pq{ProjectorPair::Matrix::Zero(), ProjectorPair::Matrix::Identity()};
  for (int idx : basis::kRelevant) {
    pq.P(idx, idx) = 1;
    pq.Q(idx, idx) = 0;
  }
  return pq;
}

}  // namespace nmq
