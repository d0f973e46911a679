#include <doctest.h>

#include <unsupported/Eigen/KroneckerProduct>

#include "nmq/model.hpp"
#include "support.hpp"

using namespace nmq;
using nmq::testing::max_abs;
using Complex = std::complex<double>;
using Pair = Eigen::Matrix4cd;

namespace {

const Complex I(0, 1);

Pair kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  return Pair(Eigen::kroneckerProduct(a, b));
}

// Atom k and its partner: Hamiltonian part plus thermal damping of the partner.
Pair pair_liouvillian(const ModelParams& p, Subsystem k, const Pair& rho) {
  Eigen::Matrix2cd sp, sm, up, id = Eigen::Matrix2cd::Identity();
  sp << 0, 1, 0, 0;
  sm = sp.adjoint();
  up << 1, 0, 0, 0;
  const Pair h = p.omega(k) * kron(up, id) + p.partner_omega(k) * kron(id, up) +
                 p.alpha(k) * (kron(sp, sm) + kron(sm, sp));
  const auto dissipator = [&](const Pair& a) {
    return Pair(2.0 * a * rho * a.adjoint() - a.adjoint() * a * rho - rho * a.adjoint() * a);
  };
  return -I * (h * rho - rho * h) + p.gamma * (p.nbar + 1) * dissipator(kron(id, sm)) +
         p.gamma * p.nbar * dissipator(kron(id, sp));
}

std::array<Pair, 9> basis_operators(double nbar) {
  const auto [e, g] = thermal_populations(nbar);
  Eigen::Matrix2cd sp, sm, sz, rb, m6;
  sp << 0, 1, 0, 0;
  sm = sp.adjoint();
  sz << 1, 0, 0, -1;
  rb << e, 0, 0, g;
  m6 << -e, 0, 0, g;
  return {kron(rb, rb),
          kron(sz, rb),
          kron(sm, sp) - kron(sp, sm),
          kron(sm, sp) + kron(sp, sm),
          kron(rb, sz),
          kron(sp, rb),
          kron(m6, sp),
          kron(sm, rb),
          kron(m6, sm)};
}

}  // namespace

TEST_CASE("thermal_state populations") {
  CHECK(max_abs(thermal_state(0.0) - Eigen::Vector2d(0, 1).asDiagonal().toDenseMatrix()) == 0.0);
  const ThermalState warm = thermal_state(0.2);
  CHECK(warm(0, 0) == doctest::Approx(1.0 / 7).epsilon(1e-15));
  CHECK(warm(1, 1) == doctest::Approx(6.0 / 7).epsilon(1e-15));
  const ThermalState hot = thermal_state(1e7);
  CHECK(std::abs(hot(0, 0) - 0.5) < 1e-6);
  CHECK(std::abs(hot(1, 1) - 0.5) < 1e-6);
  CHECK_THROWS_AS(thermal_state(-0.1), DomainError);
}

TEST_CASE("generator entries for a detuned subsystem") {
  const ModelParams p = ModelParams::from_detunings(10, 10, 2, 2, 2, 2, 0.5, 0);
  CHECK(p.omega3 == 8.0);
  const GeneratorMatrix L = build_generator(p, Subsystem::first);
  CHECK(L(2, 1) == Complex(0, -2));
  CHECK(L(2, 2) == Complex(-0.5, 0));
  CHECK(L(1, 2) == Complex(0, -4));
  CHECK(L(4, 4) == Complex(-1, 0));
  CHECK(L(2, 3) == Complex(0, 2));
  CHECK(L(5, 5) == Complex(0, -10));
  CHECK(L(6, 6) == Complex(-0.5, -8));
}

TEST_CASE("generator column 0 vanishes") {
  nmq::testing::Sampler s(11);
  for (int n = 0; n < 50; ++n) {
    const ModelParams p = s.params();
    for (Subsystem k : {Subsystem::first, Subsystem::second})
      CHECK(max_abs(build_generator(p, k).col(0)) == 0.0);
  }
}

TEST_CASE("generator without coupling is decay only") {
  const ModelParams p = ModelParams::symmetric(10, 1.5, 0, 0.5, 0.2);
  const GeneratorMatrix L = build_generator(p, Subsystem::first);
  const double g = p.gamma_eff();
  CHECK(L(2, 2) == Complex(-g));
  CHECK(L(3, 3) == Complex(-g));
  CHECK(L(4, 4) == Complex(-2 * g));
  CHECK(L(1, 2) == Complex(0));
  CHECK(L(2, 1) == Complex(0));
  CHECK(L(2, 4) == Complex(0));
  CHECK(L(4, 2) == Complex(0));
}

TEST_CASE("generator reproduces the pair master equation on every basis operator") {
  nmq::testing::Sampler s(12);
  for (int n = 0; n < 25; ++n) {
    const ModelParams p = s.params();
    for (Subsystem k : {Subsystem::first, Subsystem::second}) {
      const GeneratorMatrix L = build_generator(p, k);
      const auto x = basis_operators(p.nbar);
      for (int col = 0; col < basis::kSize; ++col) {
        Pair expected = Pair::Zero();
        for (int row = 0; row < basis::kSize; ++row) expected += L(row, col) * x[row];
        CHECK(max_abs(pair_liouvillian(p, k, x[col]) - expected) < 1e-12);
      }
    }
  }
}

TEST_CASE("lowering block is the conjugate of the raising block") {
  nmq::testing::Sampler s(13);
  for (int n = 0; n < 50; ++n) {
    const GeneratorMatrix L = build_generator(s.params(), Subsystem::first);
    CHECK(max_abs(L.block<2, 2>(7, 7) - L.block<2, 2>(5, 5).conjugate()) == 0.0);
  }
}

TEST_CASE("generator spectrum is contractive") {
  nmq::testing::Sampler s(14);
  for (int n = 0; n < 200; ++n) {
    const ModelParams p = s.params();
    const Eigen::ComplexEigenSolver<GeneratorMatrix> eig(build_generator(p, Subsystem::second),
                                                         false);
    CHECK(eig.eigenvalues().real().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("generator templated on long double") {
  const auto p = BasicModelParams<long double>::symmetric(10, 2, 2, 0.5, 0.2);
  const auto L = build_generator(p, Subsystem::first);
  const GeneratorMatrix Ld = build_generator(ModelParams::symmetric(10, 2, 2, 0.5, 0.2), Subsystem::first);
  CHECK(max_abs(L.cast<Complex>() - Ld) < 1e-15);
}

TEST_CASE("parameter validation") {
  ModelParams p = ModelParams::symmetric(10, 0, 2, 0.5, 0);
  CHECK_NOTHROW(validate(p));
  p.alpha1 = 0;
  p.omega3 = 14;
  CHECK_NOTHROW(validate(p));
  p.gamma = -0.1;
  CHECK_THROWS_AS(build_generator(p, Subsystem::first), DomainError);
  p.gamma = 0.5;
  p.nbar = -1;
  CHECK_THROWS_AS(validate(p), DomainError);
  p.nbar = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(validate(p), DomainError);
}

TEST_CASE("initial coefficient vectors") {
  CoefficientVector ee = CoefficientVector::Zero();
  ee(0) = ee(1) = 1;
  CHECK(initial_coefficients(InitialTerm::EE, 0.0) == ee);

  const CoefficientVector gg = initial_coefficients(InitialTerm::GG, 0.2);
  CHECK(gg(0) == Complex(1));
  CHECK(std::abs(gg(1) + 1.0 / 7) < 1e-16);
  CHECK(max_abs(gg.tail<7>()) == 0.0);

  CHECK(initial_coefficients(InitialTerm::GE, 0.3) == CoefficientVector::Unit(7));
  CHECK(initial_coefficients(InitialTerm::EG, 0.3) == CoefficientVector::Unit(5));
}

TEST_CASE("projector pair") {
  const ProjectorPair pq = projector_pair();
  CHECK((pq.P * pq.P) == pq.P);
  CHECK((pq.Q * pq.Q) == pq.Q);
  CHECK((pq.P * pq.Q) == ProjectorPair::Matrix::Zero());
  CHECK((pq.P + pq.Q) == ProjectorPair::Matrix::Identity());
  for (int i = 0; i < basis::kSize; ++i) {
    const bool relevant = i == 0 || i == 1 || i == 5 || i == 7;
    CHECK(pq.P(i, i) == (relevant ? 1 : 0));
  }
  CoefficientVector v = CoefficientVector::Zero();
  v(0) = v(1) = 1;
  CHECK(pq.relevant<double>() * v == v);
  CHECK(max_abs(pq.irrelevant<double>() * v) == 0.0);
}
