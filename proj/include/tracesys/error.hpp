#pragma once

#include <stdexcept>
#include <string>

namespace tracesys {

// Malformed input: unknown names, duplicate entries, bad JSON shape.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structurally valid input that violates a semantic law (commutation
// coherence of an action table or of a valuation). `witness` names the
// offending state and letters in human-readable form.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, std::string witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

class NotProbabilisticError : public std::runtime_error {
 public:
  NotProbabilisticError(const std::string& what, std::string witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

// A reachable marking would put a second token in some place.
class UnsafeNetError : public std::runtime_error {
 public:
  UnsafeNetError(const std::string& what, std::string marking, std::string transition)
      : std::runtime_error(what), marking_(std::move(marking)), transition_(std::move(transition)) {}
  const std::string& marking() const noexcept { return marking_; }
  const std::string& transition() const noexcept { return transition_; }

 private:
  std::string marking_;
  std::string transition_;
};

// Analysis preconditions not met (e.g. uniform measure of a reducible system,
// root requested where none exists in (0,1]).
class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tracesys
