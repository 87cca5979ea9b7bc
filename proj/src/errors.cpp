#include "sl2zn/errors.hpp"

namespace sl2zn {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::not_invertible: return "NotInvertible";
    case Errc::no_shift: return "NoShift";
    case Errc::not_coprime: return "NotCoprime";
    case Errc::modulus_mismatch: return "ModulusMismatch";
    case Errc::modulus_out_of_range: return "ModulusOutOfRange";
    case Errc::not_in_group: return "NotInGroup";
    case Errc::unsupported: return "Unsupported";
    case Errc::not_a_factor: return "NotAFactor";
    case Errc::not_a_divisor: return "NotADivisor";
    case Errc::no_solution: return "NoSolution";
    case Errc::c_not_invertible: return "CNotInvertible";
    case Errc::bad_row: return "BadRow";
    case Errc::not_prime_power: return "NotPrimePower";
    case Errc::unknown_key: return "UnknownKey";
    case Errc::cap_exceeded: return "CapExceeded";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::conductor_mismatch: return "ConductorMismatch";
    case Errc::not_root_of_unity: return "NotRootOfUnity";
    case Errc::insufficient_conductor: return "InsufficientConductor";
    case Errc::parse_error: return "ParseError";
    case Errc::overflow: return "Overflow";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

}  // namespace sl2zn
