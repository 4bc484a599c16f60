#pragma once

#include <stdexcept>
#include <string>

namespace pcone {

enum class Errc {
  NotPointed,
  NotFullDimensional,
  AxisInvalid,
  NormalOutsideDomain,
  NonpositiveValue,
  HeightTooSmall,
  DegenerateIntersection,
  InactiveConstraint,
  DirectionOutsideOmegaC,
  DirectionOnBoundary,
  OriginTooClose,
  BudgetExceeded,
  EmptyRegion,
  EmptyOmega,
  ZeroMeasure,
  LineSearchStalled,
  CorridorViolation,
  InvalidArgument,
  Unsupported,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg),
        code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace pcone
