#pragma once

#include <stdexcept>
#include <string>

namespace colombeau {

// Base class for every library error so callers can catch the whole
// family with one handler while tests can still match exact types.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define COLOMBEAU_DEFINE_ERROR(Name)                                         \
  class Name : public Error {                                                \
  public:                                                                    \
    explicit Name(const std::string& what) : Error(what) {}                  \
  }

COLOMBEAU_DEFINE_ERROR(TooFewSamples);
COLOMBEAU_DEFINE_ERROR(AmbiguousValuation);
COLOMBEAU_DEFINE_ERROR(NonModerateNet);
COLOMBEAU_DEFINE_ERROR(InvalidNet);
COLOMBEAU_DEFINE_ERROR(QuadratureNotConverged);
COLOMBEAU_DEFINE_ERROR(PointEscapesDomain);
COLOMBEAU_DEFINE_ERROR(NoCompactSupport);
COLOMBEAU_DEFINE_ERROR(WindowEmpty);
COLOMBEAU_DEFINE_ERROR(OrderTooHigh);
COLOMBEAU_DEFINE_ERROR(TailNotCertified);
COLOMBEAU_DEFINE_ERROR(CutoffDoesNotCoverTail);
COLOMBEAU_DEFINE_ERROR(CutoffDoesNotCoverSupport);
COLOMBEAU_DEFINE_ERROR(MomentCertificationFailed);
COLOMBEAU_DEFINE_ERROR(TailBoundViolated);
COLOMBEAU_DEFINE_ERROR(UnsupportedDistribution);
COLOMBEAU_DEFINE_ERROR(UnknownCheck);
COLOMBEAU_DEFINE_ERROR(InvalidConfig);

#undef COLOMBEAU_DEFINE_ERROR

}  // namespace colombeau
