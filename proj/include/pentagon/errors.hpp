#pragma once

#include <stdexcept>

namespace pentagon {

// Base class for all library errors. Each subclass names the condition it
// reports via kind(), so front ends can print the violated precondition.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
  virtual const char* kind() const { return "Error"; }
};

#define PENTAGON_DEFINE_ERROR(NAME)                         \
  struct NAME : Error {                                     \
    using Error::Error;                                     \
    const char* kind() const override { return #NAME; }     \
  }

PENTAGON_DEFINE_ERROR(DomainError);       // argument outside a representation's domain
PENTAGON_DEFINE_ERROR(StripViolation);    // |Im x| too close to the strip boundary
PENTAGON_DEFINE_ERROR(PoleHit);           // evaluation within tolerance of a pole
PENTAGON_DEFINE_ERROR(TruncationFailure); // tolerance not met within the term budget
PENTAGON_DEFINE_ERROR(QuadratureFailure); // adaptive refinement stalled above tolerance
PENTAGON_DEFINE_ERROR(NoDecay);           // integrand/summand envelope does not decay
PENTAGON_DEFINE_ERROR(PoleNearContour);   // contour node too close to a pole
PENTAGON_DEFINE_ERROR(SamplerExhausted);  // no admissible point within the attempt budget
PENTAGON_DEFINE_ERROR(ParseError);        // malformed CLI or config input

#undef PENTAGON_DEFINE_ERROR

}  // namespace pentagon
