#pragma once

#include <stdexcept>
#include <string>

namespace cmap {

// Every failure raised by the library carries one of these codes. The C API
// and the CLI map them onto exit/status categories (see category()).
enum class ErrorCode {
  ParseError,
  InvalidArgument,
  // geometry
  NotClosed,
  SelfIntersecting,
  BadQuadMarking,
  CuspCorner,
  ZeroPoints,
  // basis
  PurposeMismatch,
  CenterOutside,
  EvalAtSingularity,
  // laplace
  Underdetermined,
  RankCollapse,
  NoQuadMarking,
  // maps
  NotSimplyConnected,
  WrongConnectivity,
  TolUnreachable,
  EvalAtCenter,
  PointOutsideDomain,
  TargetOutsideCanonical,
  NewtonDiverged,
  // rational
  TooFewSamples,
  BadTol,
  DegreeExhausted,
  // diagnostics
  NegativeL,
  NonpositiveMu,
  NonpositiveInput,
  // rendering
  WrongTarget,
  BadRenderSpec,
};

enum class ErrorCategory { parse, geometry, solver, tolerance, render, argument };

const char* to_string(ErrorCode code) noexcept;
ErrorCategory category(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Short %g formatting for messages.
std::string num(double v);

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

}  // namespace cmap
