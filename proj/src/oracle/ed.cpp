// Exact diagonalization of the periodic XY ring, block-diagonalized by
// spin-flip parity and lattice momentum.

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <vector>

#include "xyquench/errors.hpp"
#include "xyquench/oracle.hpp"

namespace xyq::oracle {

namespace {

using cd = std::complex<double>;
using State = std::uint32_t;

// Site j sits at bit n-1-j; bit value 1 is spin down (sz = -1).
struct Lattice {
  int n;
  State dim;

  State translate(State s) const { return (s >> 1) | ((s & 1u) << (n - 1)); }
  int site_bit(int j) const { return n - 1 - j; }
};

struct Orbits {
  std::vector<int> orbit_of;    // per basis state
  std::vector<int> shift_of;    // s = T^shift(rep)
  std::vector<State> rep;       // per orbit
  std::vector<int> length;      // per orbit
};

Orbits build_orbits(const Lattice& lat) {
  Orbits o;
  o.orbit_of.assign(lat.dim, -1);
  o.shift_of.assign(lat.dim, 0);
  for (State s = 0; s < lat.dim; ++s) {
    if (o.orbit_of[s] >= 0) continue;
    const int id = static_cast<int>(o.rep.size());
    State x = s;
    int j = 0;
    do {
      o.orbit_of[x] = id;
      o.shift_of[x] = j++;
      x = lat.translate(x);
    } while (x != s);
    o.rep.push_back(s);
    o.length.push_back(j);
  }
  return o;
}

// One (parity, momentum) block of the Hamiltonian in the orthonormal basis
// |o, k> = R_o^{-1/2} sum_j e^{-i k j} T^j |rep_o>.
struct Sector {
  int parity = 0;
  int momentum = 0;
  std::vector<int> orbits;      // column -> orbit
  Eigen::MatrixXcd h_int;       // interaction part
  Eigen::VectorXd field_diag;   // -(1/2) sum_j sz_j per column
};

Sector build_sector(const Lattice& lat, const Orbits& orb, int parity, int momentum,
                    double gamma) {
  Sector sec;
  sec.parity = parity;
  sec.momentum = momentum;
  std::vector<int> column(orb.rep.size(), -1);
  for (std::size_t o = 0; o < orb.rep.size(); ++o) {
    if (std::popcount(orb.rep[o]) % 2 != parity) continue;
    if ((momentum * orb.length[o]) % lat.n != 0) continue;
    column[o] = static_cast<int>(sec.orbits.size());
    sec.orbits.push_back(static_cast<int>(o));
  }
  const auto d = static_cast<Eigen::Index>(sec.orbits.size());
  sec.h_int = Eigen::MatrixXcd::Zero(d, d);
  sec.field_diag = Eigen::VectorXd::Zero(d);
  if (d == 0) return sec;

  const double k = 2.0 * std::numbers::pi * momentum / lat.n;
  auto amplitude = [&](State s) {
    const int o = orb.orbit_of[s];
    return std::polar(1.0 / std::sqrt(static_cast<double>(orb.length[o])), -k * orb.shift_of[s]);
  };

  for (Eigen::Index a = 0; a < d; ++a) {
    const int o = sec.orbits[static_cast<std::size_t>(a)];
    sec.field_diag(a) = -0.5 * (lat.n - 2 * std::popcount(orb.rep[static_cast<std::size_t>(o)]));
    State s = orb.rep[static_cast<std::size_t>(o)];
    for (int j = 0; j < orb.length[static_cast<std::size_t>(o)]; ++j, s = lat.translate(s)) {
      const cd va = amplitude(s);
      for (int site = 0; site < lat.n; ++site) {
        const int b1 = lat.site_bit(site);
        const int b2 = lat.site_bit((site + 1) % lat.n);
        const bool same = ((s >> b1) & 1u) == ((s >> b2) & 1u);
        const State target = s ^ ((State{1} << b1) | (State{1} << b2));
        const double h = same ? 0.5 * gamma : 0.5;
        const int col = column[static_cast<std::size_t>(orb.orbit_of[target])];
        if (col < 0) continue;
        sec.h_int(col, a) += std::conj(amplitude(target)) * h * va;
      }
    }
  }
  return sec;
}

struct Eigenpair {
  double energy;
  int sector;
  Eigen::Index index;
};

Matrix4c reduce_to_first_pair(const Lattice& lat, const Eigen::VectorXcd& psi) {
  const State rest = State{1} << (lat.n - 2);
  Matrix4c rho = Matrix4c::Zero();
  for (int i = 0; i < 4; ++i) {
    for (int ip = 0; ip < 4; ++ip) {
      cd acc = 0.0;
      for (State r = 0; r < rest; ++r) acc += psi(i * rest + r) * std::conj(psi(ip * rest + r));
      rho(i, ip) = acc;
    }
  }
  return rho;
}

}  // namespace

EDResult ed_quench(double t_tilde, const ModelParams& params, const EDSpec& ed) {
  require_valid_time(t_tilde);
  if (ed.n_sites < 6 || ed.n_sites > 14) {
    throw ParameterError("ED needs 6 <= n_sites <= 14, got " + std::to_string(ed.n_sites));
  }
  const Lattice lat{ed.n_sites, State{1} << ed.n_sites};
  const Orbits orb = build_orbits(lat);
  const double a = params.a_tilde();

  std::vector<Sector> sectors;
  std::vector<Eigenpair> spectrum;
  auto pre_quench_h = [&](const Sector& sec) {
    Eigen::MatrixXcd h0 = sec.h_int;
    h0.diagonal() += (a * sec.field_diag).cast<cd>();
    return h0;
  };
  for (int parity = 0; parity < 2; ++parity) {
    for (int m = 0; m < lat.n; ++m) {
      Sector sec = build_sector(lat, orb, parity, m, params.gamma());
      if (sec.orbits.empty()) continue;
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> levels(pre_quench_h(sec),
                                                                   Eigen::EigenvaluesOnly);
      const int id = static_cast<int>(sectors.size());
      for (Eigen::Index i = 0; i < levels.eigenvalues().size(); ++i) {
        spectrum.push_back({levels.eigenvalues()(i), id, i});
      }
      sectors.push_back(std::move(sec));
    }
  }
  std::stable_sort(spectrum.begin(), spectrum.end(),
                   [](const Eigenpair& x, const Eigenpair& y) { return x.energy < y.energy; });

  EDResult result;
  result.ground_energy = spectrum.front().energy;
  result.gap = spectrum.size() > 1 ? spectrum[1].energy - spectrum[0].energy : 0.0;
  const double tol = 1e-9 * std::max(1.0, std::abs(result.ground_energy));
  std::vector<Eigenpair> ground;
  for (const auto& e : spectrum) {
    if (e.energy - result.ground_energy <= tol) ground.push_back(e);
  }
  result.ground_degeneracy = static_cast<int>(ground.size());
  result.degenerate = ground.size() > 1;

  std::map<int, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>> pre_quench, post_quench;
  auto evolve = [&](const Eigenpair& g) {
    const Sector& sec = sectors[static_cast<std::size_t>(g.sector)];
    auto pre = pre_quench.find(g.sector);
    if (pre == pre_quench.end()) pre = pre_quench.emplace(g.sector, pre_quench_h(sec)).first;
    auto it = post_quench.find(g.sector);
    if (it == post_quench.end()) it = post_quench.emplace(g.sector, sec.h_int).first;
    const auto& w = it->second.eigenvectors();
    const Eigen::VectorXcd c0 = pre->second.eigenvectors().col(g.index);
    Eigen::VectorXcd coeffs = w.adjoint() * c0;
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
      coeffs(i) *= std::polar(1.0, -it->second.eigenvalues()(i) * t_tilde);
    }
    const Eigen::VectorXcd ct = w * coeffs;

    const double k = 2.0 * std::numbers::pi * sec.momentum / lat.n;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(lat.dim));
    for (std::size_t col = 0; col < sec.orbits.size(); ++col) {
      const auto o = static_cast<std::size_t>(sec.orbits[col]);
      const double norm = 1.0 / std::sqrt(static_cast<double>(orb.length[o]));
      State s = orb.rep[o];
      for (int j = 0; j < orb.length[o]; ++j, s = lat.translate(s)) {
        psi(s) += ct(static_cast<Eigen::Index>(col)) * std::polar(norm, -k * j);
      }
    }
    return reduce_to_first_pair(lat, psi);
  };

  const Matrix4c lowest = evolve(ground.front());
  result.lowest = TwoQubitState(lowest);
  if (result.degenerate) {
    Matrix4c avg = Matrix4c::Zero();
    for (const auto& g : ground) avg += evolve(g);
    result.averaged = TwoQubitState(avg / static_cast<double>(ground.size()));
  } else {
    result.averaged = result.lowest;
  }
  return result;
}

}  // namespace xyq::oracle
