#include <limits>
#include <numbers>
#include <vector>

#include "xyquench/errors.hpp"
#include "xyquench/oracle.hpp"

namespace xyq::oracle {

GridOracleResult qwd_grid_oracle(const TwoQubitState& rho, DeficitVariant variant, int n_theta,
                                 int n_phi) {
  if (n_theta < 2 || n_phi < 1) throw ParameterError("grid oracle needs n_theta >= 2, n_phi >= 1");
  if (!validate_state(rho).pass()) throw InvalidState("grid oracle: not a valid density matrix");
  const double s_rho = von_neumann_entropy(rho.matrix());

  std::vector<Party> parties{Party::Second};
  if (!detail::is_swap_symmetric(rho.matrix())) parties.push_back(Party::First);

  GridOracleResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (const Party party : parties) {
    const detail::DephasingObjective objective(
        party == Party::Second ? rho.matrix() : swap_parties(rho.matrix()), variant);
    // theta = pi is the same projector pair as theta = 0.
    for (int i = 0; i < n_theta; ++i) {
      const double theta = std::numbers::pi * i / n_theta;
      for (int j = 0; j < n_phi; ++j) {
        const double phi = 2.0 * std::numbers::pi * j / n_phi;
        const double v = objective(theta, phi) - s_rho;
        if (v < best.value) best = {v, MeasurementBasis{theta, phi}, party};
      }
    }
  }
  return best;
}

}  // namespace xyq::oracle
