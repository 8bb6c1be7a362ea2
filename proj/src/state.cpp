#include "xyquench/state.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "xyquench/errors.hpp"

namespace xyq {

bool TwoQubitState::is_x_form(double tol) const {
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if (r == c || r + c == 3) continue;
      if (std::abs(rho_(r, c)) > tol) return false;
    }
  }
  return true;
}

ValidationReport validate_state(const TwoQubitState& rho) {
  const Matrix4c& m = rho.matrix();
  ValidationReport report;
  report.trace_deviation = std::abs(m.trace() - std::complex<double>(1.0, 0.0));
  report.hermiticity_deviation = (m - m.adjoint()).cwiseAbs().maxCoeff();

  const Matrix4c herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4c> solver(herm, Eigen::EigenvaluesOnly);
  report.min_eigenvalue = solver.eigenvalues().minCoeff();

  report.trace_ok = report.trace_deviation <= kTraceSlack;
  report.hermitian_ok = report.hermiticity_deviation <= kHermiticitySlack;
  report.psd_ok = report.min_eigenvalue >= -kEigenvalueSlack;
  return report;
}

double lzz_from_wick(const CorrelatorSet& c, double mz) {
  return mz * mz - c.g_plus * c.g_minus + c.s * c.s;
}

TwoQubitState assemble_state_unchecked(const CorrelatorSet& c) {
  using cd = std::complex<double>;
  Matrix4c rho = Matrix4c::Zero();
  rho(0, 0) = (1.0 + 2.0 * c.mz + c.l_zz) / 4.0;
  rho(1, 1) = (1.0 - c.l_zz) / 4.0;
  rho(2, 2) = (1.0 - c.l_zz) / 4.0;
  rho(3, 3) = (1.0 - 2.0 * c.mz + c.l_zz) / 4.0;
  rho(1, 2) = rho(2, 1) = cd((c.g_minus + c.g_plus) / 4.0, 0.0);
  rho(0, 3) = cd((c.g_minus - c.g_plus) / 4.0, -c.s / 2.0);
  rho(3, 0) = std::conj(rho(0, 3));
  return TwoQubitState(rho);
}

TwoQubitState assemble_state(const CorrelatorSet& c) {
  TwoQubitState rho = assemble_state_unchecked(c);
  const ValidationReport report = validate_state(rho);
  if (!report.pass()) {
    throw NonPhysicalState("assembled state is not physical: trace deviation " +
                           std::to_string(report.trace_deviation) + ", min eigenvalue " +
                           std::to_string(report.min_eigenvalue));
  }
  return rho;
}

Matrix4c swap_parties(const Matrix4c& rho) {
  Eigen::PermutationMatrix<4> swap;
  swap.indices() << 0, 2, 1, 3;
  return swap * rho * swap.transpose();
}

Matrix2c reduced_first(const Matrix4c& rho) {
  Matrix2c out;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      out(a, b) = rho(2 * a, 2 * b) + rho(2 * a + 1, 2 * b + 1);
    }
  }
  return out;
}

Matrix2c reduced_second(const Matrix4c& rho) {
  Matrix2c out;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      out(a, b) = rho(a, b) + rho(2 + a, 2 + b);
    }
  }
  return out;
}

}  // namespace xyq
