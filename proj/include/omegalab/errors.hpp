#pragma once

#include <stdexcept>
#include <string>

namespace omegalab {

// Scenario / operation preconditions (size caps, regime limits).
class GuardError : public std::runtime_error {
 public:
  explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

// An oracle answered Unknown where a scenario needed a decision.
class OracleUnknownError : public std::runtime_error {
 public:
  explicit OracleUnknownError(const std::string& what) : std::runtime_error(what) {}
};

// A sampler or scan exceeded its hard cap.
class CapExceededError : public std::runtime_error {
 public:
  explicit CapExceededError(const std::string& what) : std::runtime_error(what) {}
};

// Bad data fed to the analysis layer (degenerate fits, malformed CSV).
class AnalysisError : public std::runtime_error {
 public:
  explicit AnalysisError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace omegalab
