#include "nmq/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace nmq {

namespace {

using Mat2 = Eigen::Matrix2cd;

Mat2 raising() {
  Mat2 m = Mat2::Zero();
  m(0, 1) = 1.0;
  return m;
}

Mat2 excited_projector() {
  Mat2 m = Mat2::Zero();
  m(0, 0) = 1.0;
  return m;
}

Eigen::MatrixXcd embed(const Mat2& op, int site, int num_sites) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int s = 0; s < num_sites; ++s) {
    const Eigen::MatrixXcd factor = s == site ? Eigen::MatrixXcd(op) : Eigen::MatrixXcd::Identity(2, 2);
    out = Eigen::kroneckerProduct(out, factor).eval();
  }
  return out;
}

FullDensityMatrix site_op(const Mat2& op, int site) { return embed(op, site, 4); }

// Lindblad superoperator (column-major vectorisation) for one principal atom
// (site 0) and its partner (site 1).
Eigen::MatrixXcd pair_superoperator(const ModelParams& p, Subsystem k) {
  const Mat2 up = raising();
  const Mat2 down = up.adjoint();
  const Eigen::MatrixXcd s_up = embed(up, 0, 2);
  const Eigen::MatrixXcd s_down = embed(down, 0, 2);
  const Eigen::MatrixXcd r_up = embed(up, 1, 2);
  const Eigen::MatrixXcd r_down = embed(down, 1, 2);
  const Eigen::MatrixXcd h = p.omega(k) * embed(excited_projector(), 0, 2) +
                             p.partner_omega(k) * embed(excited_projector(), 1, 2) +
                             p.alpha(k) * (s_up * r_down + s_down * r_up);

  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(4, 4);
  const std::complex<double> i(0, 1);
  // vec(A X B) = (B^T (x) A) vec(X)
  Eigen::MatrixXcd sup = -i * (Eigen::kroneckerProduct(id, h) -
                               Eigen::kroneckerProduct(h.transpose(), id))
                                  .eval();
  const auto add_jump = [&](const Eigen::MatrixXcd& l, double rate) {
    const Eigen::MatrixXcd ldl = l.adjoint() * l;
    sup += rate * (2.0 * Eigen::kroneckerProduct(l.conjugate(), l).eval() -
                   Eigen::kroneckerProduct(id, ldl).eval() -
                   Eigen::kroneckerProduct(ldl.transpose(), id).eval());
  };
  add_jump(r_down, p.gamma * (p.nbar + 1.0));
  add_jump(r_up, p.gamma * p.nbar);
  return sup;
}

}  // namespace

FullLiouvillian::FullLiouvillian(const ModelParams& p) {
  validate(p);
  const Mat2 up = raising();
  const Mat2 down = up.adjoint();
  const Mat2 excited = excited_projector();
  const std::array<double, 4> omegas = {p.omega1, p.omega2, p.omega3, p.omega4};

  hamiltonian_.setZero();
  for (int s = 0; s < 4; ++s) hamiltonian_ += omegas[s] * site_op(excited, s);
  hamiltonian_ += p.alpha1 * (site_op(up, 0) * site_op(down, 2) + site_op(down, 0) * site_op(up, 2));
  hamiltonian_ += p.alpha2 * (site_op(up, 1) * site_op(down, 3) + site_op(down, 1) * site_op(up, 3));

  for (int s : {2, 3}) {
    jumps_.push_back({site_op(down, s), p.gamma * (p.nbar + 1.0)});
    jumps_.push_back({site_op(up, s), p.gamma * p.nbar});
  }
  const std::complex<double> i(0, 1);
  effective_ = -i * hamiltonian_;
  for (const Jump& j : jumps_) effective_ -= j.rate * (j.op.adjoint() * j.op);
}

FullDensityMatrix FullLiouvillian::apply(const FullDensityMatrix& rho) const {
  FullDensityMatrix out = effective_ * rho;
  out += rho * effective_.adjoint();
  for (const Jump& j : jumps_) {
    if (j.rate == 0.0) continue;
    out += (2.0 * j.rate) * (j.op * rho * j.op.adjoint());
  }
  return out;
}

FullLiouvillian build_full_liouvillian(const ModelParams& params) { return FullLiouvillian(params); }

std::vector<FullDensityMatrix> evolve_full(const ModelParams& params, const FullDensityMatrix& rho0,
                                           const TimeGrid& grid, const OracleOptions& options) {
  const FullLiouvillian liouvillian(params);
  auto rhs = [&liouvillian](double, const FullDensityMatrix& rho) { return liouvillian.apply(rho); };
  auto stepper = detail::make_dormand_prince<FullDensityMatrix>(rhs, options.control);

  std::vector<FullDensityMatrix> out;
  out.reserve(grid.size());
  FullDensityMatrix rho = rho0;
  double t = 0.0;
  for (double target : grid.points()) {
    stepper.advance(rho, t, target);
    t = std::max(t, target);
    out.push_back(rho);
  }
  return out;
}

DensityMatrix4 partial_trace_34(const FullDensityMatrix& rho) {
  DensityMatrix4 out = DensityMatrix4::Zero();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int r = 0; r < 4; ++r) out(a, b) += rho(4 * a + r, 4 * b + r);
  return out;
}

FullDensityMatrix with_thermal_reservoirs(const DensityMatrix4& rho12, double nbar) {
  const Eigen::Matrix2cd bath = thermal_state(nbar).cast<std::complex<double>>();
  const Eigen::Matrix4cd baths = Eigen::kroneckerProduct(bath, bath);
  return Eigen::kroneckerProduct(rho12, baths);
}

Eigen::Matrix2cd SingleQubitMap::operator()(const Eigen::Matrix2cd& x) const {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out += x(i, j) * images[i][j];
  return out;
}

SingleQubitMap subsystem_map(const ModelParams& params, Subsystem k, double t) {
  validate(params);
  if (!(t >= 0.0)) throw DomainError("subsystem_map requires t >= 0");
  const Eigen::MatrixXcd propagator = (pair_superoperator(params, k) * t).exp();
  const Eigen::Matrix2cd bath = thermal_state(params.nbar).cast<std::complex<double>>();

  SingleQubitMap map;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Mat2 e = Mat2::Zero();
      e(i, j) = 1.0;
      const Eigen::Matrix4cd start = Eigen::kroneckerProduct(e, bath);
      Eigen::Matrix<std::complex<double>, 16, 1> v =
          Eigen::Map<const Eigen::Matrix<std::complex<double>, 16, 1>>(start.data());
      v = propagator * v;
      const Eigen::Map<const Eigen::Matrix4cd> evolved(v.data());
      Mat2 reduced = Mat2::Zero();
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int r = 0; r < 2; ++r) reduced(a, b) += evolved(2 * a + r, 2 * b + r);
      map.images[i][j] = reduced;
    }
  }
  return map;
}

ChoiMatrix choi_matrix(const SingleQubitMap& map) {
  ChoiMatrix choi = ChoiMatrix::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) choi.block<2, 2>(2 * i, 2 * j) = map.images[i][j];
  return choi;
}

ChoiMatrix choi_of_subsystem_map(const ModelParams& params, Subsystem k, double t) {
  return choi_matrix(subsystem_map(params, k, t));
}

DensityMatrix4 apply_product_map(const SingleQubitMap& first, const SingleQubitMap& second,
                                 const DensityMatrix4& rho12) {
  DensityMatrix4 out = DensityMatrix4::Zero();
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l) {
          const std::complex<double> w = rho12(2 * i + k, 2 * j + l);
          if (w == std::complex<double>(0.0)) continue;
          out += w * DensityMatrix4(Eigen::kroneckerProduct(first.images[i][j], second.images[k][l]));
        }
  return out;
}

double min_eigenvalue(const ChoiMatrix& choi) {
  const Eigen::SelfAdjointEigenSolver<ChoiMatrix> eig(0.5 * (choi + choi.adjoint()),
                                                      Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

}  // namespace nmq
