#pragma once

#include <stdexcept>
#include <string>

namespace qmflow {

// Base class for all library errors. Every failure mode callers are expected
// to handle has its own type so they can be told apart without string parsing.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid argument or configuration detected before any computation ran.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Density vanished at the requested point; log-density and phase are undefined there.
class NodalPointError : public Error {
 public:
  using Error::Error;
};

// Point falls inside the exclusion zone around a field singularity (the OZ axis
// for vortex-type fields).
class PoleError : public Error {
 public:
  using Error::Error;
};

// A finite-difference stencil point could not be evaluated.
class StencilError : public Error {
 public:
  using Error::Error;
};

// A quadrature node landed on (or inside the exclusion zone of) a field pole.
class PoleOnPathError : public Error {
 public:
  using Error::Error;
};

// Improper integral whose domain cannot be truncated (diverges).
class DivergentDomainError : public Error {
 public:
  using Error::Error;
};

// Tail estimate of a truncated improper integral exceeds the requested accuracy.
class TruncationError : public Error {
 public:
  using Error::Error;
};

// Path refinement hit its subdivision budget, usually because the curve passes
// arbitrarily close to the origin of the complex plane.
class NearPoleError : public Error {
 public:
  using Error::Error;
};

// Accumulated phase of a closed path is too far from an integer multiple of 2*pi.
class UnresolvedWindingError : public Error {
 public:
  using Error::Error;
};

// Open path handed to an operation that requires a closed loop, or endpoints
// disagree with the declared transition.
class EndpointMismatchError : public Error {
 public:
  using Error::Error;
};

// Orbit parameters give a degenerate loop (zero winding or zero radius).
class DegenerateOrbitError : public Error {
 public:
  using Error::Error;
};

// Scenario configuration file is malformed; message carries the field path.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qmflow
