#include "xyquench/model.hpp"

#include <cmath>
#include <string>

#include "xyquench/errors.hpp"

namespace xyq {

ModelParams::ModelParams(double gamma, double a_tilde) : gamma_(gamma), a_tilde_(a_tilde) {
  if (!std::isfinite(gamma) || gamma == 0.0) {
    throw ParameterError("gamma must be finite and nonzero (gamma != 0), got " +
                         std::to_string(gamma));
  }
  if (!std::isfinite(a_tilde) || a_tilde < 0.0) {
    throw ParameterError("a_tilde must be finite and >= 0, got " + std::to_string(a_tilde));
  }
}

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0)) throw ParameterError("quadrature abs_tol must be > 0");
  if (!(rel_tol > 0.0)) throw ParameterError("quadrature rel_tol must be > 0");
  if (max_subdivisions < 1) throw ParameterError("quadrature max_subdivisions must be >= 1");
}

void require_valid_time(double t_tilde) {
  if (!std::isfinite(t_tilde) || t_tilde < 0.0) {
    throw ParameterError("t_tilde must be finite and >= 0, got " + std::to_string(t_tilde));
  }
}

}  // namespace xyq
