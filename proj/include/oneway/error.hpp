#pragma once

#include <stdexcept>
#include <string>

namespace oneway {

enum class Errc {
  invalid_operator,
  invalid_state,
  invalid_povm,
  dimension_mismatch,
  label_mismatch,
  invalid_argument,
  unsupported,
  unsupported_exact,
  unsupported_size,
  configuration,
  generation_failed,
  infinite_dmax,
  precondition,
  internal_consistency,
  plan_inconsistency,
  parse,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Thrown by the random protocol generator when the retry budget runs out.
class GenerationFailed : public Error {
 public:
  GenerationFailed(const std::string& what, double best_epsilon)
      : Error(Errc::generation_failed, what), best_epsilon_(best_epsilon) {}

  double best_epsilon() const noexcept { return best_epsilon_; }

 private:
  double best_epsilon_;
};

inline const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_operator: return "invalid-operator";
    case Errc::invalid_state: return "invalid-state";
    case Errc::invalid_povm: return "invalid-povm";
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::label_mismatch: return "label-mismatch";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::unsupported: return "unsupported";
    case Errc::unsupported_exact: return "unsupported-exact";
    case Errc::unsupported_size: return "unsupported-size";
    case Errc::configuration: return "configuration";
    case Errc::generation_failed: return "generation-failed";
    case Errc::infinite_dmax: return "infinite-dmax";
    case Errc::precondition: return "precondition";
    case Errc::internal_consistency: return "internal-consistency";
    case Errc::plan_inconsistency: return "plan-inconsistency";
    case Errc::parse: return "parse";
  }
  return "unknown";
}

}  // namespace oneway
