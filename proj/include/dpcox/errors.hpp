#ifndef DPCOX_ERRORS_HPP
#define DPCOX_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace dpcox {

// Caller broke a documented precondition (rank mismatch, wrong degree, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class UnsupportedRank : public ContractViolation {
 public:
  using ContractViolation::ContractViolation;
};

// Something that must hold by construction did not. Always a bug or a finding.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed external data: certificates, JSON, labels.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GeneralPositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CertificationFailed : public std::runtime_error {
 public:
  CertificationFailed(const std::string& what, std::vector<std::string> stuck_state)
      : std::runtime_error(what), stuck_state_(std::move(stuck_state)) {}

  // Labels of the curves captured when the closure stalled.
  const std::vector<std::string>& stuck_state() const noexcept { return stuck_state_; }

 private:
  std::vector<std::string> stuck_state_;
};

}  // namespace dpcox

#endif  // DPCOX_ERRORS_HPP
