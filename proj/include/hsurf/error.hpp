#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hsurf {

enum class errc {
  non_prime,
  too_large,
  division_by_zero,
  zero_vector,
  equal_points,
  not_base_rational,
  not_on_surface,
  inconsistent_level,
  not_a_configuration,
  bad_lambda,
  degenerate_parameter,
  line_not_on_surface,
  hyperplane_misses_line,
  wrong_characteristic,
  non_unitary_generator,
  internal_check,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
 public:
  Error(errc c, const std::string& what)
      : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc c, const std::string& what) { throw Error(c, what); }

// For invariants that are mathematically forced; a failure is a bug, not bad input.
inline void check_internal(bool ok, const char* what) {
  if (!ok) throw Error(errc::internal_check, what);
}

// Resource caps overridable from the environment (decimal integer).
uint64_t env_cap(const char* name, uint64_t fallback);

}  // namespace hsurf
