#pragma once

#include <stdexcept>
#include <string>

namespace epstein {

// Invalid arguments use std::invalid_argument directly. The types below are
// numerical failures that callers may want to tell apart.

/// Requested accuracy cannot be delivered (e.g. |Im s| beyond the configured
/// height, or a coefficient table too short for the requested tolerance).
class AccuracyNotMet : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The function vanishes (numerically) on a counting contour and the allowed
/// perturbations are exhausted.
class ContourZero : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Newton refinement did not converge for a zero candidate.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A zero of some L_j lies too close to the horizontal continuation path that
/// defines arg L_j.
class BranchAmbiguous : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace epstein
