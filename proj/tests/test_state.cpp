#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "xyquench/errors.hpp"
#include "xyquench/kernels.hpp"
#include "xyquench/state.hpp"

using namespace xyq;

TEST_CASE("assembled state has the X form fixed by the correlators") {
  const auto c = correlators(1.0, ModelParams(0.5, 0.5));
  const auto rho = assemble_state(c);
  const auto& m = rho.matrix();
  CHECK(rho.is_x_form());
  CHECK(std::abs(m.trace() - 1.0) < 1e-15);
  CHECK(m(0, 0).real() == doctest::Approx((1 + 2 * c.mz + c.l_zz) / 4));
  CHECK(m(3, 3).real() == doctest::Approx((1 - 2 * c.mz + c.l_zz) / 4));
  CHECK(m(1, 1) == m(2, 2));
  CHECK(m(1, 2).real() == doctest::Approx((c.g_minus + c.g_plus) / 4));
  CHECK(m(0, 3).real() == doctest::Approx((c.g_minus - c.g_plus) / 4));
  CHECK(m(0, 3).imag() == doctest::Approx(-c.s / 2));
  CHECK((m - m.adjoint()).norm() == 0.0);
  CHECK(validate_state(rho).pass());
}

TEST_CASE("pauli expectation values come back out of the state") {
  const auto c = correlators(2.0, ModelParams(0.4, 1.3));
  const Matrix4c m = assemble_state(c).matrix();
  Matrix2c x, y, z;
  x << 0, 1, 1, 0;
  y << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
  z << 1, 0, 0, -1;
  auto kron = [](const Matrix2c& a, const Matrix2c& b) {
    Matrix4c k;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return k;
  };
  auto ev = [&](const Matrix4c& op) { return (m * op).trace().real(); };
  CHECK(ev(kron(x, x)) == doctest::Approx(c.g_minus).epsilon(1e-13));
  CHECK(ev(kron(y, y)) == doctest::Approx(c.g_plus).epsilon(1e-13));
  CHECK(ev(kron(x, y)) == doctest::Approx(c.s).epsilon(1e-13));
  CHECK(ev(kron(y, x)) == doctest::Approx(c.s).epsilon(1e-13));
  CHECK(ev(kron(z, z)) == doctest::Approx(c.l_zz).epsilon(1e-13));
  CHECK(ev(kron(z, Matrix2c::Identity())) == doctest::Approx(c.mz).epsilon(1e-13));
}

TEST_CASE("non-physical correlators are rejected") {
  CorrelatorSet bad;
  bad.mz = 1.5;
  bad.l_zz = 0.0;
  CHECK_THROWS_AS(assemble_state(bad), NonPhysicalState);
  const auto report = validate_state(assemble_state_unchecked(bad));
  CHECK_FALSE(report.psd_ok);
  CHECK(report.trace_ok);
}

TEST_CASE("validation reports each defect separately") {
  Matrix4c m = Matrix4c::Identity() / 4.0;
  m(0, 0) += 1e-9;
  auto r = validate_state(TwoQubitState(m));
  CHECK_FALSE(r.trace_ok);
  CHECK(r.hermitian_ok);

  m = Matrix4c::Identity() / 4.0;
  m(0, 1) = 0.1;
  r = validate_state(TwoQubitState(m));
  CHECK_FALSE(r.hermitian_ok);
}

TEST_CASE("partial traces and party swap") {
  const auto c = correlators(0.7, ModelParams(0.8, 0.9));
  const Matrix4c m = assemble_state(c).matrix();
  const Matrix2c r1 = reduced_first(m), r2 = reduced_second(m);
  CHECK(r1(0, 0).real() == doctest::Approx((1 + c.mz) / 2));
  CHECK(std::abs(r1(0, 1)) < 1e-15);
  CHECK((r1 - r2).norm() < 1e-15);
  CHECK((swap_parties(m) - m).norm() < 1e-15);

  Matrix4c product = Matrix4c::Zero();
  product(1, 1) = 1.0;  // |01>
  const Matrix4c swapped = swap_parties(product);
  CHECK(swapped(2, 2) == 1.0);
  CHECK(reduced_first(product)(0, 0) == 1.0);
  CHECK(reduced_second(product)(1, 1) == 1.0);
}

TEST_CASE("default state is maximally mixed") {
  const TwoQubitState rho;
  CHECK(rho.matrix().isApprox(Matrix4c::Identity() / 4.0));
  CHECK(rho.is_x_form());
}
