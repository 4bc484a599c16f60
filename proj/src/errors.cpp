#include "pcone/errors.hpp"

namespace pcone {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotPointed: return "NotPointed";
    case Errc::NotFullDimensional: return "NotFullDimensional";
    case Errc::AxisInvalid: return "AxisInvalid";
    case Errc::NormalOutsideDomain: return "NormalOutsideDomain";
    case Errc::NonpositiveValue: return "NonpositiveValue";
    case Errc::HeightTooSmall: return "HeightTooSmall";
    case Errc::DegenerateIntersection: return "DegenerateIntersection";
    case Errc::InactiveConstraint: return "InactiveConstraint";
    case Errc::DirectionOutsideOmegaC: return "DirectionOutsideOmegaC";
    case Errc::DirectionOnBoundary: return "DirectionOnBoundary";
    case Errc::OriginTooClose: return "OriginTooClose";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::EmptyRegion: return "EmptyRegion";
    case Errc::EmptyOmega: return "EmptyOmega";
    case Errc::ZeroMeasure: return "ZeroMeasure";
    case Errc::LineSearchStalled: return "LineSearchStalled";
    case Errc::CorridorViolation: return "CorridorViolation";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Unsupported: return "Unsupported";
  }
  return "UnknownError";
}

}  // namespace pcone
