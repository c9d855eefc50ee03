#pragma once

#include <stdexcept>
#include <string>

namespace evassoc {

/// Thrown when Dempster combination meets contradictory certain evidence:
/// every focal intersection is empty, so no renormalization exists.
class TotalConflictError : public std::runtime_error {
 public:
  explicit TotalConflictError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown by scenario loading when a file fails to parse or violates an
/// invariant. The message names the offending field.
class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace evassoc
