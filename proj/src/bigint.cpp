#include "apxerr/bigint.hpp"

#include <cassert>
#include <stdexcept>

namespace apxerr {

BigInt pow10(unsigned e) {
  BigInt r = 1;
  BigInt b = 10;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

namespace {

int decimal_digits(const BigInt& v) {
  assert(v > 0);
  return static_cast<int>(v.str().size());
}

// floor(a * 10^k / b) with k possibly negative, plus half-away rounding.
BigInt scaled_round(const BigInt& a, const BigInt& b, int k) {
  BigInt num = a;
  BigInt den = b;
  if (k >= 0)
    num *= pow10(static_cast<unsigned>(k));
  else
    den *= pow10(static_cast<unsigned>(-k));
  BigInt q = num / den;
  BigInt rem = num - q * den;
  if (2 * rem >= den) ++q;
  return q;
}

} // namespace

std::string to_decimal(const BigRational& value, int sigDigits) {
  if (sigDigits < 1) throw std::invalid_argument("sigDigits must be >= 1");
  if (value == 0) return "0";

  BigInt num = boost::multiprecision::numerator(value);
  BigInt den = boost::multiprecision::denominator(value);
  bool neg = num < 0;
  if (neg) num = -num;

  // exponent E with 10^E <= num/den < 10^(E+1); digit-count estimate, then fix up
  int e = decimal_digits(num) - decimal_digits(den);
  BigInt digits = scaled_round(num, den, sigDigits - 1 - e);
  BigInt lo = pow10(static_cast<unsigned>(sigDigits - 1));
  BigInt hi = lo * 10;
  while (digits >= hi) {
    ++e;
    digits = scaled_round(num, den, sigDigits - 1 - e);
  }
  while (digits < lo) {
    --e;
    digits = scaled_round(num, den, sigDigits - 1 - e);
  }
  if (digits >= hi) { // rounding pushed it back over (e.g. 999.96 -> 1000.0)
    ++e;
    digits = scaled_round(num, den, sigDigits - 1 - e);
  }

  std::string d = digits.str();
  std::string out;
  if (e >= -4 && e < sigDigits) {
    if (e >= 0) {
      out = d.substr(0, static_cast<size_t>(e) + 1);
      std::string frac = d.substr(static_cast<size_t>(e) + 1);
      while (!frac.empty() && frac.back() == '0') frac.pop_back();
      if (!frac.empty()) out += "." + frac;
    } else {
      std::string frac = std::string(static_cast<size_t>(-e - 1), '0') + d;
      while (!frac.empty() && frac.back() == '0') frac.pop_back();
      out = "0." + frac;
    }
  } else {
    std::string frac = d.substr(1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    out = d.substr(0, 1);
    if (!frac.empty()) out += "." + frac;
    out += "e";
    out += (e < 0) ? "-" : "+";
    out += std::to_string(e < 0 ? -e : e);
  }
  return neg ? "-" + out : out;
}

} // namespace apxerr
