#include "cmap/error.hpp"

#include <cstdio>

namespace cmap {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::SelfIntersecting: return "SelfIntersecting";
    case ErrorCode::BadQuadMarking: return "BadQuadMarking";
    case ErrorCode::CuspCorner: return "CuspCorner";
    case ErrorCode::ZeroPoints: return "ZeroPoints";
    case ErrorCode::PurposeMismatch: return "PurposeMismatch";
    case ErrorCode::CenterOutside: return "CenterOutside";
    case ErrorCode::EvalAtSingularity: return "EvalAtSingularity";
    case ErrorCode::Underdetermined: return "Underdetermined";
    case ErrorCode::RankCollapse: return "RankCollapse";
    case ErrorCode::NoQuadMarking: return "NoQuadMarking";
    case ErrorCode::NotSimplyConnected: return "NotSimplyConnected";
    case ErrorCode::WrongConnectivity: return "WrongConnectivity";
    case ErrorCode::TolUnreachable: return "TolUnreachable";
    case ErrorCode::EvalAtCenter: return "EvalAtCenter";
    case ErrorCode::PointOutsideDomain: return "PointOutsideDomain";
    case ErrorCode::TargetOutsideCanonical: return "TargetOutsideCanonical";
    case ErrorCode::NewtonDiverged: return "NewtonDiverged";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::BadTol: return "BadTol";
    case ErrorCode::DegreeExhausted: return "DegreeExhausted";
    case ErrorCode::NegativeL: return "NegativeL";
    case ErrorCode::NonpositiveMu: return "NonpositiveMu";
    case ErrorCode::NonpositiveInput: return "NonpositiveInput";
    case ErrorCode::WrongTarget: return "WrongTarget";
    case ErrorCode::BadRenderSpec: return "BadRenderSpec";
  }
  return "Unknown";
}

ErrorCategory category(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError:
      return ErrorCategory::parse;
    case ErrorCode::NotClosed:
    case ErrorCode::SelfIntersecting:
    case ErrorCode::BadQuadMarking:
    case ErrorCode::CuspCorner:
    case ErrorCode::ZeroPoints:
    case ErrorCode::PurposeMismatch:
    case ErrorCode::CenterOutside:
    case ErrorCode::NoQuadMarking:
    case ErrorCode::NotSimplyConnected:
    case ErrorCode::WrongConnectivity:
    case ErrorCode::PointOutsideDomain:
    case ErrorCode::TargetOutsideCanonical:
      return ErrorCategory::geometry;
    case ErrorCode::TolUnreachable:
    case ErrorCode::DegreeExhausted:
      return ErrorCategory::tolerance;
    case ErrorCode::WrongTarget:
    case ErrorCode::BadRenderSpec:
      return ErrorCategory::render;
    case ErrorCode::InvalidArgument:
    case ErrorCode::BadTol:
    case ErrorCode::NegativeL:
    case ErrorCode::NonpositiveMu:
    case ErrorCode::NonpositiveInput:
      return ErrorCategory::argument;
    default:
      return ErrorCategory::solver;
  }
}

}  // namespace cmap
