#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sl2zn {

enum class Errc {
  not_invertible,
  no_shift,
  not_coprime,
  modulus_mismatch,
  modulus_out_of_range,
  not_in_group,
  unsupported,
  not_a_factor,
  not_a_divisor,
  no_solution,
  c_not_invertible,
  bad_row,
  not_prime_power,
  unknown_key,
  cap_exceeded,
  division_by_zero,
  conductor_mismatch,
  not_root_of_unity,
  insufficient_conductor,
  parse_error,
  overflow,
};

std::string_view errc_name(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace sl2zn
