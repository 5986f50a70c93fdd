#include "wpc/integer.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <vector>

namespace wpc {
namespace {

constexpr std::uint32_t kTrialLimit = 1'000'000;

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= kTrialLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

// Brent's variant of Pollard rho; returns a nontrivial divisor of composite n.
Integer rho_divisor(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    auto f = [&](const Integer& x) -> Integer { return (x * x + c) % n; };
    Integer y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 128;
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          Integer diff = abs(x - y);
          q = (q * diff) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        Integer diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_large(const Integer& n, Factorization& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  Integer d = rho_divisor(n);
  factor_large(d, out);
  factor_large(Integer(n / d), out);
}

}  // namespace

bool is_probable_prime(const Integer& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

Factorization factor(const Integer& n) {
  if (n == 0) throw std::invalid_argument("factor: zero has no factorization");
  Integer m = abs(n);
  Factorization out;
  for (std::uint32_t p : small_primes()) {
    if (Integer(p) * p > m) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p) == 0) continue;
    int e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p) != 0) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++e;
    }
    out[Integer(p)] = e;
  }
  if (m == 1) return out;
  if (m < Integer(kTrialLimit) * kTrialLimit) {
    ++out[m];
    return out;
  }
  Factorization rest;
  factor_large(m, rest);
  for (const auto& [p, e] : rest) out[p] += e;
  return out;
}

int valuation(const Integer& n, const Integer& p) {
  if (n == 0) throw std::invalid_argument("valuation: zero");
  Integer m = n;
  int e = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t()) != 0) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    ++e;
  }
  return e;
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
    for (std::size_t j = i; j < s.size(); ++j) {
      if (!std::isdigit(static_cast<unsigned char>(s[j]))) {
        throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
      }
    }
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return Integer(digits, 10);
  };
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    std::string_view whole = text.substr(0, dot);
    bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole = "0";
    if (frac.empty()) throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Rational r(abs(parse_int(whole)) * scale + parse_int(frac), scale);
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Integer num = parse_int(trim(text.substr(0, slash)));
  Integer den = parse_int(trim(text.substr(slash + 1)));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }

std::string to_fraction_string(const Rational& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

bool is_integral(const Rational& x) { return x.get_den() == 1; }

}  // namespace wpc
