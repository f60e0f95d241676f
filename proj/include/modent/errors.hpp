#pragma once

#include <stdexcept>
#include <string>

namespace modent {

// Base class for all contract violations reported by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define MODENT_DEFINE_ERROR(NAME)                        \
  class NAME : public Error {                            \
   public:                                               \
    explicit NAME(const std::string& what)               \
        : Error(std::string(#NAME) + ": " + what) {}     \
  }

MODENT_DEFINE_ERROR(DimensionMismatch);
MODENT_DEFINE_ERROR(NotStandard);
MODENT_DEFINE_ERROR(NotFactorial);
MODENT_DEFINE_ERROR(NotAbelian);
MODENT_DEFINE_ERROR(NumericallySingular);
MODENT_DEFINE_ERROR(DominationViolated);
MODENT_DEFINE_ERROR(NonPositiveParameters);
MODENT_DEFINE_ERROR(InvalidKnots);
MODENT_DEFINE_ERROR(KinkPoint);
MODENT_DEFINE_ERROR(GridTooCoarse);
MODENT_DEFINE_ERROR(CutoffTooSmall);
MODENT_DEFINE_ERROR(NotThermalForm);
MODENT_DEFINE_ERROR(OutsideChart);
MODENT_DEFINE_ERROR(LeavesChart);
MODENT_DEFINE_ERROR(DifferentSpheres);
MODENT_DEFINE_ERROR(AmbiguousRoot);
MODENT_DEFINE_ERROR(RootNotBracketed);
MODENT_DEFINE_ERROR(EmptySample);
MODENT_DEFINE_ERROR(SchemaError);
MODENT_DEFINE_ERROR(IoError);

#undef MODENT_DEFINE_ERROR

}  // namespace modent
