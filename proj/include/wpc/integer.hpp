#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace wpc {

using Integer = mpz_class;
using Rational = mpq_class;

/// Prime factorization n = ∏ p^e for |n| ≥ 1, keyed by prime. Sign is dropped.
using Factorization = std::map<Integer, int>;

/// Floor division toward −∞ (so floor_div(−1, 2) == −1).
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

bool is_probable_prime(const Integer& n);

/// Trial division by all primes below 10^6, then Brent/Pollard rho on whatever
/// composite cofactor remains. Throws std::invalid_argument for n == 0.
Factorization factor(const Integer& n);

/// p-adic valuation of a nonzero integer.
int valuation(const Integer& n, const Integer& p);

/// Builds a canonical rational from "n", "n/d" or a decimal "a.b" in base 10.
Rational parse_rational(std::string_view text);

/// "n" when the denominator is 1, otherwise "n/d".
std::string to_string(const Rational& x);

/// Always "n/d", even for integers ("1/1").
std::string to_fraction_string(const Rational& x);

bool is_integral(const Rational& x);

}  // namespace wpc
