#pragma once

#include <stdexcept>
#include <string>

namespace xyq {

enum class ErrorKind {
  Parameter,
  QuadratureFailure,
  NonPhysicalState,
  InvalidState,
  OptimizerFailure,
  InsufficientResolution,
  NoRevivalInGrid,
  NonpositiveScale,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define XYQ_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                   \
   public:                                                      \
    explicit Name(const std::string& what)                      \
        : Error(ErrorKind::Name, what) {}                       \
  };

// ErrorKind::Parameter is spelled ParameterError for readability at call sites.
class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what)
      : Error(ErrorKind::Parameter, what) {}
};

XYQ_DEFINE_ERROR(QuadratureFailure)
XYQ_DEFINE_ERROR(NonPhysicalState)
XYQ_DEFINE_ERROR(InvalidState)
XYQ_DEFINE_ERROR(OptimizerFailure)
XYQ_DEFINE_ERROR(InsufficientResolution)
XYQ_DEFINE_ERROR(NoRevivalInGrid)
XYQ_DEFINE_ERROR(NonpositiveScale)

#undef XYQ_DEFINE_ERROR

/// Rethrows `e` as the same concrete error type with `context` prepended to
/// its message.
[[noreturn]] void rethrow_with_context(const Error& e, const std::string& context);

}  // namespace xyq
