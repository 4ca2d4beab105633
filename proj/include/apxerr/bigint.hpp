#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace apxerr {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigInt pow2(unsigned e) { return BigInt(1) << e; }

BigInt pow10(unsigned e);

/// Renders an exact rational as a decimal string with `sigDigits` significant
/// digits (round half away from zero). Fixed notation for exponents in
/// [-4, sigDigits), scientific otherwise; trailing fraction zeros trimmed.
std::string to_decimal(const BigRational& value, int sigDigits);

} // namespace apxerr
