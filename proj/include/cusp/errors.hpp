#ifndef CUSP_ERRORS_HPP
#define CUSP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cusp {

/// Failure kinds surfaced by the library. Mirrors the error vocabulary of
/// the public operations; the CLI maps these onto exit codes.
enum class Errc {
  SumMismatch,
  NotOpen,
  IndexOutOfRange,
  ShapeMismatch,
  InfiniteValue,
  DomainMismatch,
  NotWayBelow,
  NegativeMultiplicity,
  NegativeRank,
  Infeasible,
  PostconditionFailure,
  BoundaryMisalignment,
  StageOutOfRange,
  StageExhausted,
  ValidationFailed,
  ParseError,
  Internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace cusp

#endif
