#include "xyquench/measures.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numbers>

#include "xyquench/simplex.hpp"

namespace xyq {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

void require_valid(const TwoQubitState& rho, const char* where) {
  const ValidationReport report = validate_state(rho);
  if (!report.pass()) {
    throw InvalidState(std::string(where) + ": not a valid density matrix (trace deviation " +
                       std::to_string(report.trace_deviation) + ", min eigenvalue " +
                       std::to_string(report.min_eigenvalue) + ")");
  }
}

// Eigenvalues of the Hermitian 2x2 [[x, z], [conj(z), y]].
std::array<double, 2> hermitian_eigenvalues_2x2(double x, double y, cd z) {
  const double mean = 0.5 * (x + y);
  const double radius = std::hypot(0.5 * (x - y), std::abs(z));
  return {mean + radius, mean - radius};
}

double negative_part(double lambda) { return lambda < 0.0 ? -lambda : 0.0; }

Matrix4c local_projector(const Eigen::Vector2cd& u, Party party) {
  const Matrix2c p = u * u.adjoint();
  Matrix4c out = Matrix4c::Zero();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        if (party == Party::Second) {
          out(2 * a + b, 2 * a + c) = p(b, c);
        } else {
          out(2 * b + a, 2 * c + a) = p(b, c);
        }
      }
    }
  }
  return out;
}

}  // namespace

Matrix4c partial_transpose_first(const Matrix4c& rho) {
  Matrix4c out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp) out(2 * a + b, 2 * ap + bp) = rho(2 * ap + b, 2 * a + bp);
  return out;
}

double negativity_eigen(const TwoQubitState& rho) {
  require_valid(rho, "negativity");
  const Matrix4c pt = partial_transpose_first(rho.matrix());
  Eigen::SelfAdjointEigenSolver<Matrix4c> solver(0.5 * (pt + pt.adjoint()),
                                                 Eigen::EigenvaluesOnly);
  double n = 0.0;
  for (int i = 0; i < 4; ++i) n += negative_part(solver.eigenvalues()(i));
  return n;
}

double negativity(const TwoQubitState& rho) {
  if (!rho.is_x_form()) return negativity_eigen(rho);
  require_valid(rho, "negativity");
  const Matrix4c& m = rho.matrix();
  // The partial transpose of an X state is again an X state with the two
  // anti-diagonal pairs exchanged.
  const auto outer = hermitian_eigenvalues_2x2(m(0, 0).real(), m(3, 3).real(), m(1, 2));
  const auto inner = hermitian_eigenvalues_2x2(m(1, 1).real(), m(2, 2).real(), m(0, 3));
  return negative_part(outer[1]) + negative_part(inner[1]);
}

double log_negativity(const TwoQubitState& rho) { return std::log2(2.0 * negativity(rho) + 1.0); }

double concurrence(const TwoQubitState& rho) {
  require_valid(rho, "concurrence");
  const Matrix4c& m = rho.matrix();
  Matrix4c yy = Matrix4c::Zero();
  yy(0, 3) = yy(3, 0) = -1.0;
  yy(1, 2) = yy(2, 1) = 1.0;
  const Matrix4c flipped = yy * m.conjugate() * yy;

  Eigen::SelfAdjointEigenSolver<Matrix4c> root_solver(0.5 * (m + m.adjoint()));
  const Eigen::Vector4d roots = root_solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix4c sqrt_rho =
      root_solver.eigenvectors() * roots.cast<cd>().asDiagonal() *
      root_solver.eigenvectors().adjoint();
  const Matrix4c r = sqrt_rho * flipped * sqrt_rho;
  Eigen::SelfAdjointEigenSolver<Matrix4c> solver(0.5 * (r + r.adjoint()), Eigen::EigenvaluesOnly);

  std::array<double, 4> lambda;
  for (int i = 0; i < 4; ++i) lambda[i] = std::sqrt(std::max(solver.eigenvalues()(i), 0.0));
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

Eigen::Vector2cd MeasurementBasis::first() const {
  return {cd(std::cos(theta / 2.0), 0.0), std::polar(1.0, phi) * std::sin(theta / 2.0)};
}

Eigen::Vector2cd MeasurementBasis::second() const {
  return {-std::polar(1.0, -phi) * std::sin(theta / 2.0), cd(std::cos(theta / 2.0), 0.0)};
}

Matrix2c MeasurementBasis::unitary() const {
  Matrix2c u;
  u.col(0) = first();
  u.col(1) = second();
  return u;
}

MeasurementBasis MeasurementBasis::canonical() const {
  constexpr double two_pi = 2.0 * kPi;
  double th = std::fmod(theta, two_pi);
  if (th < 0.0) th += two_pi;
  double ph = phi;
  // (theta, phi) and (2 pi - theta, phi + pi) give the same projectors, as do
  // (theta, phi) and (theta + 2 pi, phi).
  if (th > kPi) {
    th = two_pi - th;
    ph += kPi;
  }
  ph = std::fmod(ph, two_pi);
  if (ph < 0.0) ph += two_pi;
  if (ph >= two_pi) ph = 0.0;
  return {th, ph};
}

std::string_view to_string(DeficitVariant variant) {
  return variant == DeficitVariant::LocalSum ? "local-sum" : "global-dephased";
}

DeficitVariant parse_deficit_variant(std::string_view text) {
  if (text == "local-sum") return DeficitVariant::LocalSum;
  if (text == "global-dephased") return DeficitVariant::GlobalDephased;
  throw ParameterError("unknown deficit variant '" + std::string(text) +
                       "' (expected local-sum or global-dephased)");
}

TwoQubitState dephase(const TwoQubitState& rho, const MeasurementBasis& basis, Party party) {
  const Matrix4c p1 = local_projector(basis.first(), party);
  const Matrix4c p2 = local_projector(basis.second(), party);
  const Matrix4c& m = rho.matrix();
  return TwoQubitState(p1 * m * p1 + p2 * m * p2);
}

double clocc_objective(const TwoQubitState& rho, const MeasurementBasis& basis, Party party,
                       DeficitVariant variant) {
  require_valid(rho, "clocc_objective");
  const Matrix4c m = party == Party::Second ? rho.matrix() : swap_parties(rho.matrix());
  return detail::DephasingObjective(m, variant)(basis.theta, basis.phi);
}

void OptimizerSpec::validate() const {
  if (n_theta < 2) throw ParameterError("optimizer n_theta must be >= 2");
  if (n_phi < 1) throw ParameterError("optimizer n_phi must be >= 1");
  if (!(x_tol > 0.0) || !(f_tol > 0.0)) throw ParameterError("optimizer tolerances must be > 0");
  if (max_iterations < 0) throw ParameterError("optimizer max_iterations must be >= 0");
}

namespace detail {

DephasingObjective::DephasingObjective(const Matrix4c& rho, DeficitVariant variant)
    : rho_(rho), variant_(variant) {
  if (variant_ == DeficitVariant::LocalSum) {
    const Matrix2c r1 = reduced_first(rho_);
    const auto ev = hermitian_eigenvalues_2x2(r1(0, 0).real(), r1(1, 1).real(), r1(0, 1));
    first_site_entropy_ = entropy_term(ev[0]) + entropy_term(ev[1]);
  }
}

double DephasingObjective::operator()(double theta, double phi) const {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const cd e = std::polar(1.0, phi);
  const std::array<Eigen::Vector2cd, 2> basis = {Eigen::Vector2cd(c, e * s),
                                                 Eigen::Vector2cd(-std::conj(e) * s, c)};
  double total = 0.0;
  std::array<double, 2> weight{};
  for (int k = 0; k < 2; ++k) {
    const Eigen::Vector2cd& u = basis[k];
    // Conditional (unnormalized) state of site 1: (I (x) <u|) rho (I (x) |u>).
    auto element = [&](int a, int ap) {
      cd acc = 0.0;
      for (int b = 0; b < 2; ++b)
        for (int bp = 0; bp < 2; ++bp)
          acc += std::conj(u(b)) * rho_(2 * a + b, 2 * ap + bp) * u(bp);
      return acc;
    };
    const double b00 = element(0, 0).real();
    const double b11 = element(1, 1).real();
    weight[k] = b00 + b11;
    if (variant_ == DeficitVariant::GlobalDephased) {
      const auto ev = hermitian_eigenvalues_2x2(b00, b11, element(0, 1));
      total += entropy_term(ev[0]) + entropy_term(ev[1]);
    }
  }
  if (variant_ == DeficitVariant::LocalSum) {
    total = first_site_entropy_ + entropy_term(weight[0]) + entropy_term(weight[1]);
  }
  return total;
}

bool is_swap_symmetric(const Matrix4c& rho, double tol) {
  return (rho - swap_parties(rho)).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace detail

WorkDeficitResult work_deficit(const TwoQubitState& rho, DeficitVariant variant,
                               const OptimizerSpec& opt) {
  opt.validate();
  require_valid(rho, "work_deficit");
  const double s_rho = von_neumann_entropy(rho.matrix());

  std::vector<Party> parties{Party::Second};
  if (!detail::is_swap_symmetric(rho.matrix())) parties.push_back(Party::First);

  const double d_theta = kPi / static_cast<double>(opt.n_theta - 1);
  const double d_phi = 2.0 * kPi / static_cast<double>(opt.n_phi);

  WorkDeficitResult best;
  best.value = std::numeric_limits<double>::infinity();
  best.grid_value = std::numeric_limits<double>::infinity();
  int evaluations = 0;

  for (const Party party : parties) {
    const Matrix4c m = party == Party::Second ? rho.matrix() : swap_parties(rho.matrix());
    const detail::DephasingObjective objective(m, variant);

    double grid_best = std::numeric_limits<double>::infinity();
    Eigen::Vector2d grid_arg(0.0, 0.0);
    for (int i = 0; i < opt.n_theta; ++i) {
      const double theta = d_theta * i;
      for (int j = 0; j < opt.n_phi; ++j) {
        const double phi = d_phi * j;
        const double v = objective(theta, phi);
        if (v < grid_best) {
          grid_best = v;
          grid_arg = {theta, phi};
        }
      }
    }
    evaluations += opt.n_theta * opt.n_phi;
    if (!std::isfinite(grid_best)) {
      throw OptimizerFailure("work_deficit: objective is not finite on the measurement grid");
    }

    // Running minimum over everything the simplex probes.
    double run_best = grid_best;
    Eigen::Vector2d run_arg = grid_arg;
    auto tracked = [&](const Eigen::Vector2d& x) {
      const double v = objective(x(0), x(1));
      ++evaluations;
      if (v < run_best) {
        run_best = v;
        run_arg = x;
      }
      return v;
    };
    SimplexOptions simplex;
    simplex.x_tol = opt.x_tol;
    simplex.f_tol = opt.f_tol;
    simplex.max_iterations = opt.max_iterations;
    const auto refined = nelder_mead<2>(tracked, grid_arg, Eigen::Vector2d(d_theta, d_phi), simplex);
    const bool refinement_ok = std::isfinite(refined.value);
    if (!refinement_ok) {
      run_best = grid_best;
      run_arg = grid_arg;
    }

    const double value = run_best - s_rho;
    if (value < best.value) {
      best.value = value;
      best.argmin = MeasurementBasis{run_arg(0), run_arg(1)}.canonical();
      best.party = party;
      best.refined = refinement_ok;
    }
    best.grid_value = std::min(best.grid_value, grid_best - s_rho);
  }

  best.evaluations = evaluations;
  if (variant == DeficitVariant::GlobalDephased) {
    if (best.value < 0.0 && best.value >= -1e-9) best.value = 0.0;
    if (best.grid_value < 0.0 && best.grid_value >= -1e-9) best.grid_value = 0.0;
  }
  return best;
}

}  // namespace xyq
