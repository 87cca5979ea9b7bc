#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace sl2zn {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

}  // namespace sl2zn
