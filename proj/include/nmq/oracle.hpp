#pragma once

// Brute-force reference dynamics of all four atoms, independent of the
// coefficient-space solver.

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "nmq/detail/dormand_prince.hpp"
#include "nmq/model.hpp"
#include "nmq/reconstruction.hpp"
#include "nmq/time_grid.hpp"

namespace nmq {

/// Density matrix of atoms 1..4, tensor order 1 (x) 2 (x) 3 (x) 4, excited-first per atom.
using FullDensityMatrix = Eigen::Matrix<std::complex<double>, 16, 16>;

/// Choi matrix sum_ij E_ij (x) Phi(E_ij) of a single-qubit map.
using ChoiMatrix = Eigen::Matrix4cd;

/// Four-atom Lindblad generator: Hamiltonian commutator plus thermal damping
/// of atoms 3 and 4.
class FullLiouvillian {
 public:
  explicit FullLiouvillian(const ModelParams& params);

  FullDensityMatrix apply(const FullDensityMatrix& rho) const;
  const FullDensityMatrix& hamiltonian() const { return hamiltonian_; }

 private:
  struct Jump {
    FullDensityMatrix op;
    double rate;
  };
  FullDensityMatrix hamiltonian_;
  // -i H - sum_j rate_j L_j^dagger L_j, so that drho = K rho + rho K^dagger + jumps.
  FullDensityMatrix effective_;
  std::vector<Jump> jumps_;
};

FullLiouvillian build_full_liouvillian(const ModelParams& params);

struct OracleOptions {
  detail::StepControl control{};
};

/// Adaptive integration of the 256-component master equation, sampled on `grid`.
std::vector<FullDensityMatrix> evolve_full(const ModelParams& params, const FullDensityMatrix& rho0,
                                           const TimeGrid& grid, const OracleOptions& options = {});

DensityMatrix4 partial_trace_34(const FullDensityMatrix& rho);

/// rho_12 (x) rho_bar (x) rho_bar.
FullDensityMatrix with_thermal_reservoirs(const DensityMatrix4& rho12, double nbar);

/// Single-qubit map Phi_k(t) of principal atom k, stored as the images of
/// E_ij = |i><j| for i, j in {excited = 0, ground = 1}.
struct SingleQubitMap {
  std::array<std::array<Eigen::Matrix2cd, 2>, 2> images;

  Eigen::Matrix2cd operator()(const Eigen::Matrix2cd& x) const;
};

/// Evolves E_ij (x) rho_bar for atom k and its partner and traces out the partner.
SingleQubitMap subsystem_map(const ModelParams& params, Subsystem k, double t);

ChoiMatrix choi_matrix(const SingleQubitMap& map);

ChoiMatrix choi_of_subsystem_map(const ModelParams& params, Subsystem k, double t);

/// (Phi_1 (x) Phi_2)(rho12).
DensityMatrix4 apply_product_map(const SingleQubitMap& first, const SingleQubitMap& second,
                                 const DensityMatrix4& rho12);

double min_eigenvalue(const ChoiMatrix& choi);

}  // namespace nmq
