#pragma once

#include <stdexcept>
#include <string>

namespace cstar {

// Base class for every library error, so callers can catch the family.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define CSTAR_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

CSTAR_DEFINE_ERROR(DimensionMismatch);
CSTAR_DEFINE_ERROR(NotPointed);
CSTAR_DEFINE_ERROR(InvalidFan);
CSTAR_DEFINE_ERROR(NotCartier);
CSTAR_DEFINE_ERROR(TorusFactor);
CSTAR_DEFINE_ERROR(ConeNotInFan);
CSTAR_DEFINE_ERROR(NotCompactCurve);
CSTAR_DEFINE_ERROR(NotSmoothCone);
CSTAR_DEFINE_ERROR(RankMismatch);
CSTAR_DEFINE_ERROR(InadmissibleType);
CSTAR_DEFINE_ERROR(InvalidNode);
CSTAR_DEFINE_ERROR(NodeInMarking);
CSTAR_DEFINE_ERROR(CertificationFailure);
CSTAR_DEFINE_ERROR(ZeroVector);
CSTAR_DEFINE_ERROR(NonPrimitiveVector);
CSTAR_DEFINE_ERROR(InvalidType);
CSTAR_DEFINE_ERROR(NotCayley);
CSTAR_DEFINE_ERROR(NotASimplex);
CSTAR_DEFINE_ERROR(ParseError);
CSTAR_DEFINE_ERROR(NoIsomorphism);

#undef CSTAR_DEFINE_ERROR

}  // namespace cstar
