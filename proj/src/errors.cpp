#include "xyquench/errors.hpp"

namespace xyq {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parameter: return "ParameterError";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::NonPhysicalState: return "NonPhysicalState";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::OptimizerFailure: return "OptimizerFailure";
    case ErrorKind::InsufficientResolution: return "InsufficientResolution";
    case ErrorKind::NoRevivalInGrid: return "NoRevivalInGrid";
    case ErrorKind::NonpositiveScale: return "NonpositiveScale";
  }
  return "Error";
}

void rethrow_with_context(const Error& e, const std::string& context) {
  const std::string msg = context + ": " + e.what();
  switch (e.kind()) {
    case ErrorKind::Parameter: throw ParameterError(msg);
    case ErrorKind::QuadratureFailure: throw QuadratureFailure(msg);
    case ErrorKind::NonPhysicalState: throw NonPhysicalState(msg);
    case ErrorKind::InvalidState: throw InvalidState(msg);
    case ErrorKind::OptimizerFailure: throw OptimizerFailure(msg);
    case ErrorKind::InsufficientResolution: throw InsufficientResolution(msg);
    case ErrorKind::NoRevivalInGrid: throw NoRevivalInGrid(msg);
    case ErrorKind::NonpositiveScale: throw NonpositiveScale(msg);
  }
  throw Error(e.kind(), msg);
}

}  // namespace xyq
