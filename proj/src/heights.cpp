#include "wpc/heights.hpp"

#include <map>
#include <tuple>
#include <vector>

namespace wpc {

Rational power(const Rational& x, std::int64_t n) {
  if (n < 0) {
    if (is_zero(x)) throw std::domain_error("negative power of zero");
    return power(Rational(1) / x, -n);
  }
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(n));
  mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

RatFunc power(const RatFunc& x, std::int64_t n) {
  if (n < 0) {
    if (x.is_zero()) throw std::domain_error("negative power of zero");
    return power(RatFunc(x.den(), x.num()), -n);
  }
  RatFunc result(Poly::constant(x.modulus(), 1));
  RatFunc base = x;
  for (; n > 0; n >>= 1) {
    if (n & 1) result *= base;
    base *= base;
  }
  return result;
}

namespace {

template <class E>
auto finite_places(const WeightedTriple<E>& x) {
  using Place = decltype(support(x.x0))::value_type;
  std::vector<Place> places;
  for (std::size_t i = 0; i < 3; ++i) {
    if (is_zero(x[i])) continue;
    for (auto& v : support(x[i])) {
      if (std::find(places.begin(), places.end(), v) == places.end()) places.push_back(std::move(v));
    }
  }
  return places;
}

// Places that could divide every nonzero coordinate of an integral triple.
std::vector<Integer> common_primes(const RationalTriple& x) {
  Integer g = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!is_zero(x[i])) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x[i].get_num_mpz_t());
  }
  std::vector<Integer> out;
  for (const auto& [p, e] : factor(g)) out.push_back(p);
  return out;
}

std::vector<Poly> common_irreducibles(const FunctionTriple& x) {
  Poly g(x.x0.modulus());
  for (std::size_t i = 0; i < 3; ++i) {
    if (!is_zero(x[i])) g = gcd(g, x[i].num());
  }
  std::vector<Poly> out;
  if (g.degree() < 1) return out;
  for (auto& [pi, e] : factor(g)) out.push_back(pi);
  return out;
}

std::uint32_t field_modulus(const FunctionTriple& x) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (!is_zero(x[i])) return x[i].modulus();
  }
  return x.x0.modulus();
}

void check_same_field(const FunctionTriple& x) {
  std::uint32_t q = field_modulus(x);
  for (std::size_t i = 0; i < 3; ++i) {
    if (x[i].modulus() != q) throw std::invalid_argument("triple coordinates over different fields");
  }
}

using Encoding = std::tuple<std::vector<Poly::Coeff>, std::vector<Poly::Coeff>, std::vector<Poly::Coeff>>;

Encoding encode(const FunctionTriple& x) {
  return {x.x0.num().coeffs(), x.x1.num().coeffs(), x.x2.num().coeffs()};
}

}  // namespace

Rational height12(const RationalTriple& x) {
  require_valid(x);
  Rational finite = 1;
  for (const auto& v : finite_places(x)) {
    finite *= power(Rational(v.p), -12 * local_size_exp(x, v));
  }
  return finite * canonical_height12(x);
}

FunctionHeight height12(const FunctionTriple& x) {
  require_valid(x);
  check_same_field(x);
  std::int64_t m = 0;
  for (const auto& v : finite_places(x)) m -= local_size_exp(x, v) * v.place_degree();
  m -= local_size_exp(x, FunctionPlace::degree_place());
  return {field_modulus(x), m};
}

Rational canonical_height12(const RationalTriple& x) {
  require_valid(x);
  Rational best = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (is_zero(x[i])) continue;
    best = std::max(best, power(Rational(abs(x[i])), 12 / kWeights[i]));
  }
  return best;
}

FunctionHeight canonical_height12(const FunctionTriple& x) {
  require_valid(x);
  return {field_modulus(x), -local_size_exp(x, FunctionPlace::degree_place())};
}

bool is_minimal(const RationalTriple& x) {
  require_valid(x);
  for (std::size_t i = 0; i < 3; ++i) {
    if (!is_integral(x[i])) throw std::invalid_argument("is_minimal: non-integral coordinate");
  }
  for (const auto& p : common_primes(x)) {
    if (local_size_exp(x, RationalPlace{RationalPlace::Kind::Finite, p}) >= 1) return false;
  }
  return true;
}

bool is_minimal(const FunctionTriple& x) {
  require_valid(x);
  check_same_field(x);
  for (std::size_t i = 0; i < 3; ++i) {
    if (!is_integral(x[i])) throw std::invalid_argument("is_minimal: non-integral coordinate");
  }
  for (const auto& pi : common_irreducibles(x)) {
    if (local_size_exp(x, FunctionPlace{FunctionPlace::Kind::Finite, pi}) >= 1) return false;
  }
  return true;
}

RationalTriple normalize(const RationalTriple& x) {
  require_valid(x);
  Rational lambda = 1;
  for (const auto& v : finite_places(x)) lambda *= power(Rational(v.p), -local_size_exp(x, v));
  RationalTriple y = scale(lambda, x);
  if (sgn(y.x1) < 0) y.x1 = -y.x1;
  return y;
}

bool is_unit_canonical(const FunctionTriple& x) {
  const std::uint32_t q = field_modulus(x);
  const Encoding own = encode(x);
  for (std::uint32_t c = 2; c < q; ++c) {
    if (encode(scale(RatFunc(Poly::constant(q, c)), x)) < own) return false;
  }
  return true;
}

FunctionTriple normalize(const FunctionTriple& x) {
  require_valid(x);
  check_same_field(x);
  const std::uint32_t q = field_modulus(x);
  RatFunc lambda(Poly::constant(q, 1));
  for (const auto& v : finite_places(x)) lambda *= power(RatFunc(v.pi), -local_size_exp(x, v));
  const FunctionTriple stripped = scale(lambda, x);
  FunctionTriple best = stripped;
  Encoding best_code = encode(best);
  for (std::uint32_t c = 2; c < q; ++c) {
    FunctionTriple y = scale(RatFunc(Poly::constant(q, c)), stripped);
    if (Encoding code = encode(y); code < best_code) {
      best_code = std::move(code);
      best = std::move(y);
    }
  }
  return best;
}

bool equivalent(const RationalTriple& a, const RationalTriple& b) { return normalize(a) == normalize(b); }

bool equivalent(const FunctionTriple& a, const FunctionTriple& b) {
  require_valid(a);
  require_valid(b);
  if (field_modulus(a) != field_modulus(b)) throw std::invalid_argument("equivalent: triples over different fields");
  return normalize(a) == normalize(b);
}

namespace {

std::array<std::string_view, 3> split_triple(std::string_view text) {
  std::array<std::string_view, 3> parts;
  std::size_t start = 0, n = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    char c = i < text.size() ? text[i] : ',';
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      if (n == 3) throw std::invalid_argument("triple must have exactly three coordinates: '" + std::string(text) + "'");
      parts[n++] = text.substr(start, i - start);
      start = i + 1;
    }
  }
  if (n != 3) throw std::invalid_argument("triple must have exactly three coordinates: '" + std::string(text) + "'");
  return parts;
}

template <class K>
auto parse_with(const K& k, std::string_view text) {
  auto parts = split_triple(text);
  WeightedTriple<typename K::Elem> x{k.parse(parts[0]), k.parse(parts[1]), k.parse(parts[2])};
  require_valid(x);
  return x;
}

}  // namespace

RationalTriple parse_triple(const Rationals& k, std::string_view text) { return parse_with(k, text); }
FunctionTriple parse_triple(const FunctionField& k, std::string_view text) { return parse_with(k, text); }

std::string format_triple(const Rationals& k, const RationalTriple& x) {
  return k.format(x.x0) + "," + k.format(x.x1) + "," + k.format(x.x2);
}

std::string format_triple(const FunctionField& k, const FunctionTriple& x) {
  return k.format(x.x0) + "," + k.format(x.x1) + "," + k.format(x.x2);
}

std::string format_height(const Rational& h) { return to_fraction_string(h); }

std::string format_height(const FunctionHeight& h) {
  return std::to_string(h.q) + "^" + std::to_string(h.exponent);
}

}  // namespace wpc
