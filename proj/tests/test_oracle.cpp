#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "xyquench/errors.hpp"
#include "xyquench/kernels.hpp"
#include "xyquench/oracle.hpp"
#include "xyquench/state.hpp"

using namespace xyq;
using cd = std::complex<double>;

namespace {

double max_dev(const CorrelatorSet& a, const CorrelatorSet& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < 5; ++i) d = std::max(d, std::abs(a.as_array()[i] - b.as_array()[i]));
  return d;
}

// Dense ring Hamiltonian from Kronecker products, no symmetry reduction.
Eigen::MatrixXcd dense_hamiltonian(int n, double gamma, double a) {
  Eigen::Matrix2cd x, y, z, id = Eigen::Matrix2cd::Identity();
  x << 0, 1, 1, 0;
  y << 0, cd(0, -1), cd(0, 1), 0;
  z << 1, 0, 0, -1;
  auto site_op = [&](const std::vector<std::pair<int, Eigen::Matrix2cd>>& ops) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Ones(1, 1);
    for (int s = 0; s < n; ++s) {
      Eigen::Matrix2cd f = id;
      for (const auto& [site, m] : ops)
        if (site == s) f = m;
      Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) next.block(i * out.rows(), j * out.cols(), out.rows(), out.cols()) = f(i, j) * out;
      out = next;
    }
    return out;
  };
  // Site 0 is the most significant factor.
  auto op = [&](std::vector<std::pair<int, Eigen::Matrix2cd>> ops) {
    for (auto& p : ops) p.first = n - 1 - p.first;
    return site_op(ops);
  };
  const int dim = 1 << n;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (int j = 0; j < n; ++j) {
    const int k = (j + 1) % n;
    h += 0.25 * (1 + gamma) * op({{j, x}, {k, x}}) + 0.25 * (1 - gamma) * op({{j, y}, {k, y}});
    h -= 0.5 * a * op({{j, z}});
  }
  return h;
}

// Quenched two-site state averaged over the (possibly degenerate) ground space.
Matrix4c dense_quench(int n, double gamma, double a, double t, int* degeneracy) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> pre(dense_hamiltonian(n, gamma, a));
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> post(dense_hamiltonian(n, gamma, 0.0));
  const auto& e = pre.eigenvalues();
  int g = 1;
  while (g < e.size() && e(g) - e(0) <= 1e-9 * std::max(1.0, std::abs(e(0)))) ++g;
  *degeneracy = g;
  const int rest = 1 << (n - 2);
  Matrix4c rho = Matrix4c::Zero();
  for (int v = 0; v < g; ++v) {
    Eigen::VectorXcd c = post.eigenvectors().adjoint() * pre.eigenvectors().col(v);
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) *= std::polar(1.0, -post.eigenvalues()(i) * t);
    const Eigen::VectorXcd psi = post.eigenvectors() * c;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int r = 0; r < rest; ++r) rho(i, j) += psi(i * rest + r) * std::conj(psi(j * rest + r));
  }
  return rho / double(g);
}

}  // namespace

TEST_CASE("ring sums match the adaptive quadrature") {
  for (double a : {0.0, 0.5, 1.0, 1.7}) {
    for (double t : {0.0, 1.0, 4.5}) {
      const ModelParams p(0.5, a);
      CHECK(max_dev(oracle::ring_correlators(t, p), correlators(t, p)) < 1e-8);
    }
  }
}

TEST_CASE("ring sums converge rapidly away from the critical field") {
  const ModelParams p(0.5, 0.5);
  const auto ref = correlators(1.0, p);
  double previous = INFINITY;
  for (int n : {8, 16, 32}) {
    const double d = max_dev(oracle::ring_correlators(1.0, p, {n}), ref);
    CHECK(d * 10.0 <= previous);
    previous = d;
  }
}

TEST_CASE("ring sums: zero field is stationary and small rings are rejected") {
  const ModelParams p(0.7, 0.0);
  CHECK(max_dev(oracle::ring_correlators(0.0, p, {256}), oracle::ring_correlators(8.0, p, {256})) < 1e-14);
  CHECK_THROWS_AS(oracle::ring_correlators(1.0, p, {4}), ParameterError);
}

TEST_CASE("symmetry-sector ED equals brute-force ED") {
  for (double a : {0.3, 0.8, 1.5}) {
    const auto ed = oracle::ed_quench(1.3, ModelParams(0.6, a), {6});
    int degeneracy = 0;
    const Matrix4c dense = dense_quench(6, 0.6, a, 1.3, &degeneracy);
    CHECK(ed.ground_degeneracy == degeneracy);
    CHECK((ed.averaged.matrix() - dense).cwiseAbs().maxCoeff() < 1e-10);
    if (degeneracy == 1) CHECK((ed.lowest.matrix() - dense).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("ED states are physical") {
  const auto ed = oracle::ed_quench(2.0, ModelParams(0.5, 0.8), {10});
  CHECK(validate_state(ed.lowest).pass());
  CHECK(validate_state(ed.averaged).pass());
  CHECK(ed.gap >= 0.0);
}

TEST_CASE("ED: strong field polarizes, zero field is stationary") {
  const auto polarized = oracle::ed_quench(0.0, ModelParams(0.5, 100.0), {10});
  CHECK(polarized.lowest(0, 0).real() > 0.999);

  const ModelParams zero(0.5, 0.0);
  const auto a = oracle::ed_quench(0.0, zero, {8});
  const auto b = oracle::ed_quench(4.0, zero, {8});
  CHECK((a.averaged.matrix() - b.averaged.matrix()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((a.lowest.matrix() - b.lowest.matrix()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("ED approaches the infinite chain as the ring grows") {
  const ModelParams p(0.5, 0.8);
  const auto c = correlators(1.0, p);
  const Matrix4c inf = assemble_state(c).matrix();
  double previous = INFINITY, previous_mz = INFINITY;
  for (int n : {8, 10, 12}) {
    const Matrix4c rho = oracle::ed_quench(1.0, p, {n}).lowest.matrix();
    const double d = (rho - inf).cwiseAbs().maxCoeff();
    const double mz = (rho(0, 0) - rho(3, 3)).real();
    CHECK(d < previous);
    CHECK(std::abs(mz - c.mz) < previous_mz);
    previous = d;
    previous_mz = std::abs(mz - c.mz);
  }
}

TEST_CASE("ED size bounds") {
  CHECK_THROWS_AS(oracle::ed_quench(0.0, ModelParams(0.5, 0.5), {4}), ParameterError);
  CHECK_THROWS_AS(oracle::ed_quench(0.0, ModelParams(0.5, 0.5), {16}), ParameterError);
}

TEST_CASE("grid oracle on reference states") {
  Matrix4c bell = Matrix4c::Zero();
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
  CHECK(std::abs(oracle::qwd_grid_oracle(TwoQubitState(bell), DeficitVariant::GlobalDephased).value - 1.0) < 1e-9);
  CHECK(std::abs(oracle::qwd_grid_oracle(TwoQubitState(), DeficitVariant::GlobalDephased).value) < 1e-12);
}

TEST_CASE("grid oracle brackets the optimizer on pipeline states") {
  for (double a : {0.2, 0.9, 1.4}) {
    const auto rho = assemble_state(correlators(3.0, ModelParams(0.8, a)));
    for (auto v : {DeficitVariant::LocalSum, DeficitVariant::GlobalDephased}) {
      const auto g1 = oracle::qwd_grid_oracle(rho, v, 64, 128);
      const auto g2 = oracle::qwd_grid_oracle(rho, v, 64, 128);
      CHECK(g1.value == g2.value);
      const double refined = work_deficit(rho, v).value;
      const double grid = oracle::qwd_grid_oracle(rho, v).value;
      CHECK(refined <= grid + 1e-9);
      CHECK(refined >= grid - 1e-4);
    }
  }
}
