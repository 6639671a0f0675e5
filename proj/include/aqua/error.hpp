#pragma once

#include <stdexcept>
#include <string>

namespace aqua {

enum class ErrorCode {
  invalid_size,
  invalid_graph,
  invalid_vertex,
  invalid_move,
  invalid_spec,
  invalid_region,
  invalid_precondition,
  out_of_range,
  unsupported_structure,
  non_convergence,
  stage_convergence,
  resource_budget,
  contract_violation,
  config,
};

const char* to_string(ErrorCode code);

/// Every library failure is reported through this type; `code()` says which
/// contract was broken.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace aqua
