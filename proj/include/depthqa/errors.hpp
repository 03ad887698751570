// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 depthqa contributors.

#pragma once

#include <stdexcept>
#include <string>

namespace depthqa {

// Base class for all domain errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- frame / file format ---
struct FormatError : Error {
  using Error::Error;
};
struct TruncatedFile : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};

// --- region / metric preconditions ---
struct OutOfBounds : Error {
  using Error::Error;
};
struct EmptyRegion : Error {
  using Error::Error;
};
struct EmptyFrame : Error {
  using Error::Error;
};
struct AllZeroFrame : Error {
  using Error::Error;
};
struct TooFewFrames : Error {
  using Error::Error;
};
struct NoAdjacentPairs : Error {
  using Error::Error;
};

// --- trilateration ---
struct DegenerateGeometry : Error {
  using Error::Error;
};
struct DegenerateTriangle : Error {
  using Error::Error;
};
struct NoFiniteSolution : Error {
  using Error::Error;
};
struct DivisionByZero : Error {
  using Error::Error;
};
struct InvalidObservation : Error {
  using Error::Error;
};

// --- simulator / plans ---
struct NoIntersection : Error {
  using Error::Error;
};
struct InvalidModel : Error {
  using Error::Error;
};
struct InvalidPlan : Error {
  using Error::Error;
};

}  // namespace depthqa
