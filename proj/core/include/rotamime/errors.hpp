#pragma once

#include <stdexcept>
#include <string>

namespace rotamime {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid numeric input (non-finite argument, value outside the domain,
/// fraction not in lowest terms, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Evaluation requested at a point where the map is deliberately undefined
/// (the rotation model at 0, or an orbit passing through 0).
class UndefinedPointError : public Error {
public:
  using Error::Error;
};

/// Schwarzian derivative requested at (or too close to) a critical point.
class CriticalPointError : public Error {
public:
  using Error::Error;
};

/// Steepness below the threshold where the critical points exist.
class NoCriticalPointsError : public Error {
public:
  using Error::Error;
};

/// No recurrence found within the allowed period; signals a chaotic or
/// long-period regime rather than a program failure.
class NoOrbitError : public Error {
public:
  using Error::Error;
};

/// A bisection bracket did not contain a sign change.
class BracketError : public Error {
public:
  using Error::Error;
};

/// A refinement or inversion step broke down numerically.
class NumericError : public Error {
public:
  using Error::Error;
};

/// Orbit points coincide within tolerance; spatial order is meaningless.
class DegenerateOrbitError : public Error {
public:
  using Error::Error;
};

/// Return-map itineraries are ambiguous (an image touches a cell boundary)
/// or the requested interval structure does not exist at these parameters.
class DegenerateConfigError : public Error {
public:
  using Error::Error;
};

} // namespace rotamime
