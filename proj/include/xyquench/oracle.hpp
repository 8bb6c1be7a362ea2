#pragma once

// Independent cross-checks for the main pipeline: finite momentum sums for
// the correlators, exact diagonalization of small periodic rings, and an
// exhaustive measurement grid for the work-deficit optimizer.

#include "xyquench/measures.hpp"
#include "xyquench/model.hpp"
#include "xyquench/state.hpp"

namespace xyq::oracle {

struct RingSpec {
  int n_modes = 8192;  // >= 8
};

/// Midpoint sums (1/n) sum_k f(phi_k), phi_k = pi (k - 1/2) / n, of the
/// correlator integrands, written out independently of the kernels module.
CorrelatorSet ring_correlators(double t_tilde, const ModelParams& params, const RingSpec& ring = {});

enum class Boundary { Periodic };

struct EDSpec {
  int n_sites = 10;  // in [6, 14]
  Boundary boundary = Boundary::Periodic;
};

struct EDResult {
  TwoQubitState lowest;    // from the single lowest eigenvector of H(0)
  TwoQubitState averaged;  // equal-weight mixture over the degenerate ground space
  bool degenerate = false;
  int ground_degeneracy = 1;
  double ground_energy = 0.0;
  double gap = 0.0;        // E1 - E0 over all symmetry sectors
};

/// Ground state of H(0) = H_int - a sum S^z on a ring of n sites, evolved
/// with exp(-i H_int t) and reduced to sites (0, 1). H_int couples nearest
/// neighbours by (1 + gamma) S^x S^x + (1 - gamma) S^y S^y, J = 1.
/// Throws ParameterError for n outside [6, 14].
EDResult ed_quench(double t_tilde, const ModelParams& params, const EDSpec& ed = {});

struct GridOracleResult {
  double value = 0.0;
  MeasurementBasis basis;
  Party party = Party::Second;
};

/// Minimum of clocc_objective over the grid theta_i = pi i / n_theta,
/// phi_j = 2 pi j / n_phi, minus S(rho).
GridOracleResult qwd_grid_oracle(const TwoQubitState& rho, DeficitVariant variant,
                                 int n_theta = 256, int n_phi = 512);

}  // namespace xyq::oracle
