#include <doctest.h>

#include <unsupported/Eigen/KroneckerProduct>

#include "nmq/oracle.hpp"
#include "support.hpp"

using namespace nmq;
using nmq::testing::max_abs;
using Complex = std::complex<double>;

namespace {

FullDensityMatrix random_hermitian(nmq::testing::Sampler& s) {
  FullDensityMatrix m;
  for (int i = 0; i < 256; ++i) m(i / 16, i % 16) = s.gaussian_complex();
  return (m + m.adjoint()) / 2.0;
}

FullDensityMatrix random_state(nmq::testing::Sampler& s) {
  FullDensityMatrix m;
  for (int i = 0; i < 256; ++i) m(i / 16, i % 16) = s.gaussian_complex();
  const FullDensityMatrix rho = m * m.adjoint();
  return rho / rho.trace();
}

}  // namespace

TEST_CASE("four-atom generator preserves trace") {
  nmq::testing::Sampler s(51);
  const FullLiouvillian L(s.params());
  for (int n = 0; n < 10; ++n) CHECK(std::abs(L.apply(random_hermitian(s)).trace()) < 1e-12);
}

TEST_CASE("uncoupled and undamped evolution keeps populations") {
  ModelParams p = ModelParams::symmetric(10, 1, 0, 0, 0.3);
  nmq::testing::Sampler s(52);
  const FullDensityMatrix drho = build_full_liouvillian(p).apply(random_state(s));
  CHECK(max_abs(drho.diagonal()) < 1e-12);
}

TEST_CASE("ground state with thermal partners is stationary") {
  DensityMatrix4 ground = DensityMatrix4::Zero();
  ground(3, 3) = 1;
  const ModelParams p = ModelParams::symmetric(10, 2, 0, 0.5, 0.2);
  CHECK(max_abs(FullLiouvillian(p).apply(with_thermal_reservoirs(ground, 0.2))) < 1e-15);
}

TEST_CASE("partial trace") {
  nmq::testing::Sampler s(53);
  const DensityMatrix4 rho = from_x_state(s.x_state());
  CHECK(max_abs(partial_trace_34(with_thermal_reservoirs(rho, 0.7)) - rho) < 1e-15);
  CHECK(max_abs(partial_trace_34(FullDensityMatrix::Identity() / 16.0) - DensityMatrix4::Identity() / 4.0) <
        1e-16);
  CHECK(max_abs(partial_trace_34(with_thermal_reservoirs(bell_state(), 0.2)) - bell_state()) < 1e-15);
}

TEST_CASE("full evolution keeps trace and starts at the initial state") {
  const ModelParams p = ModelParams::symmetric(10, 2, 2, 0.5, 0.2);
  const FullDensityMatrix rho0 = with_thermal_reservoirs(bell_state(), p.nbar);
  const auto out = evolve_full(p, rho0, TimeGrid(0, 2, 5));
  CHECK(out[0] == rho0);
  for (const auto& rho : out) CHECK(std::abs(rho.trace() - 1.0) < 1e-9);
}

TEST_CASE("full evolution matches the coefficient path at sample times") {
  const ModelParams p = ModelParams::symmetric(10, 2, 2, 0.5, 0);
  const TimeGrid grid(0, 2, 5);
  const auto full = evolve_full(p, with_thermal_reservoirs(bell_state(), 0.0), grid);
  const TwoQubitEvolution ev(p);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(max_abs(partial_trace_34(full[i]) - ev.rho(grid[i])) < 1e-8);
}

TEST_CASE("integrator failure carries diagnostics") {
  const ModelParams p = ModelParams::symmetric(10, 2, 2, 0.5, 0);
  OracleOptions options;
  options.control.max_steps = 3;
  try {
    evolve_full(p, with_thermal_reservoirs(bell_state(), 0.0), TimeGrid(0, 5, 2), options);
    FAIL("expected failure");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("t = ") != std::string::npos);
  }
}

TEST_CASE("Choi matrix of the identity map") {
  const ChoiMatrix choi = choi_of_subsystem_map(ModelParams::symmetric(10, 0, 2, 0.5, 0.2),
                                                Subsystem::first, 0.0);
  const Eigen::SelfAdjointEigenSolver<ChoiMatrix> eig(choi);
  CHECK(eig.eigenvalues()(3) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(eig.eigenvalues().head<3>().sum()) < 1e-14);
  CHECK(min_eigenvalue(choi) > -1e-14);
}

TEST_CASE("Choi matrices are positive and trace two") {
  for (double nbar : {0.0, 0.2}) {
    for (double alpha : {0.5, 1.0, 2.0, 3.0, 5.0}) {
      for (double t : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        const ChoiMatrix choi =
            choi_of_subsystem_map(ModelParams::symmetric(10, 0, alpha, 0.5, nbar), Subsystem::first, t);
        CHECK(min_eigenvalue(choi) >= -1e-8);
        CHECK(std::abs(choi.trace() - 2.0) < 1e-8);
        CHECK(max_abs(choi - choi.adjoint()) < 1e-12);
      }
    }
  }
}

TEST_CASE("closed pair dynamics is completely positive") {
  const ModelParams p = ModelParams::symmetric(10, 1.3, 2.5, 0, 0.4);
  for (double t : {0.3, 1.1, 4.2})
    CHECK(min_eigenvalue(choi_of_subsystem_map(p, Subsystem::second, t)) >= -1e-8);
}

TEST_CASE("product of subsystem maps reproduces the four-atom evolution") {
  const ModelParams p = ModelParams::from_detunings(10, 9, 2, -1, 2, 1.5, 0.5, 0.2);
  const TimeGrid grid(0, 2, 5);
  const auto full = evolve_full(p, with_thermal_reservoirs(bell_state(), p.nbar), grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const DensityMatrix4 mapped = apply_product_map(subsystem_map(p, Subsystem::first, grid[i]),
                                                    subsystem_map(p, Subsystem::second, grid[i]),
                                                    bell_state());
    CHECK(max_abs(mapped - partial_trace_34(full[i])) < 1e-8);
  }
  CHECK_THROWS_AS(subsystem_map(p, Subsystem::first, -1.0), DomainError);
}
