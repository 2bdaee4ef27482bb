#pragma once

#include <stdexcept>
#include <string>

namespace sgq {

// Error taxonomy shared across the library. The CLI maps categories to
// process exit codes: input/validation errors -> 2, budget -> 3.
enum class errc {
  axiom_violation,
  invalid_modulus,
  non_unit_constant_term,
  unassigned_generator,
  invalid_table,
  syntax_error,
  port_reuse,
  dangling_port,
  bad_crossing_orientation,
  endpoint_in_closed_diagram,
  invalid_site,
  not_applicable,
  tangle_not_supported,
  missing_arc,
  budget_exceeded,
  unknown_endpoint,
  same_endpoint,
  incomplete_table,
  incompatible_cocycle,
  not_special_coloring,
  bad_argument,
};

class error : public std::runtime_error {
public:
  error(errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  errc code() const noexcept { return code_; }

  bool is_budget() const noexcept { return code_ == errc::budget_exceeded; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw error(code, message);
}

} // namespace sgq
