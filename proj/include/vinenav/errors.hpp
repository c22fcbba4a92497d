#pragma once

#include <stdexcept>
#include <string>

namespace vinenav {

/// Base for every error raised by the navigation library.
class NavError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidConfig : public NavError {
 public:
  using NavError::NavError;
};

class InvalidInput : public NavError {
 public:
  using NavError::NavError;
};

/// Fewer than two distinct points were supplied to a row fit.
class InsufficientPoints : public NavError {
 public:
  using NavError::NavError;
};

/// Point spread is isotropic, so no principal axis exists.
class AmbiguousFit : public NavError {
 public:
  using NavError::NavError;
};

class InconsistentPlan : public NavError {
 public:
  using NavError::NavError;
};

class AlreadyVisited : public NavError {
 public:
  using NavError::NavError;
};

/// The initial search ended without two confirmed work-side trunks.
class SearchFailed : public NavError {
 public:
  using NavError::NavError;
};

class IoError : public NavError {
 public:
  using NavError::NavError;
};

}  // namespace vinenav
