#pragma once

#include <stdexcept>
#include <string>

namespace horoball {

// Exit-code buckets used by the CLI: config errors map to 2, resource
// caps to 3, everything else that escapes is a check failure (1).
enum class ErrorKind { Config, Resource, Domain };

struct Error : std::runtime_error {
  Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
  ErrorKind kind;
};

#define HOROBALL_ERROR(Name, Kind)                                  \
  struct Name : Error {                                             \
    explicit Name(const std::string& msg)                           \
        : Error(ErrorKind::Kind, std::string(#Name) + ": " + msg) {} \
  }

HOROBALL_ERROR(InvalidSpec, Config);
HOROBALL_ERROR(ConfigError, Config);
HOROBALL_ERROR(MixedGroups, Domain);
HOROBALL_ERROR(IdentityGenerator, Config);
HOROBALL_ERROR(MemoryBudgetExceeded, Resource);
HOROBALL_ERROR(OutOfBall, Domain);
HOROBALL_ERROR(HorizonTooSmall, Domain);
HOROBALL_ERROR(NotAGeodesic, Domain);
HOROBALL_ERROR(RayTooShort, Domain);
HOROBALL_ERROR(UncertifiedLimit, Domain);
HOROBALL_ERROR(RadiusMismatch, Domain);
HOROBALL_ERROR(DomainTooSmall, Domain);
HOROBALL_ERROR(NoFiniteOrbit, Domain);
HOROBALL_ERROR(PreconditionFailed, Domain);
HOROBALL_ERROR(OutOfDomain, Domain);
HOROBALL_ERROR(ArithmeticOverflow, Domain);

#undef HOROBALL_ERROR

}  // namespace horoball
