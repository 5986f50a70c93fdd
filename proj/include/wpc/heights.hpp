#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "wpc/fields.hpp"

namespace wpc {

/// Weights of P(2,3,4): λ·(x0, x1, x2) = (λ²x0, λ³x1, λ⁴x2).
inline constexpr std::array<int, 3> kWeights{2, 3, 4};

/// A representative (x0, x1, x2) of a point of P(2,3,4), not all zero.
template <class E>
struct WeightedTriple {
  E x0, x1, x2;

  const E& operator[](std::size_t i) const { return i == 0 ? x0 : (i == 1 ? x1 : x2); }
  E& operator[](std::size_t i) { return i == 0 ? x0 : (i == 1 ? x1 : x2); }
  bool is_zero() const { return wpc::is_zero(x0) && wpc::is_zero(x1) && wpc::is_zero(x2); }
  friend bool operator==(const WeightedTriple&, const WeightedTriple&) = default;
};

using RationalTriple = WeightedTriple<Rational>;
using FunctionTriple = WeightedTriple<RatFunc>;

/// Ht = q^exponent over F_q(t).
struct FunctionHeight {
  std::uint32_t q = 0;
  std::int64_t exponent = 0;
  friend bool operator==(const FunctionHeight&, const FunctionHeight&) = default;
  friend auto operator<=>(const FunctionHeight& a, const FunctionHeight& b) { return a.exponent <=> b.exponent; }
};

template <class E>
void require_valid(const WeightedTriple<E>& x) {
  if (x.is_zero()) throw std::invalid_argument("(0,0,0) is not a point of P(2,3,4)");
}

Rational power(const Rational& x, std::int64_t n);
RatFunc power(const RatFunc& x, std::int64_t n);

template <class E>
WeightedTriple<E> scale(const E& lambda, const WeightedTriple<E>& x) {
  if (is_zero(lambda)) throw std::invalid_argument("scaling by zero");
  E l2 = lambda * lambda;
  return {l2 * x.x0, l2 * lambda * x.x1, l2 * l2 * x.x2};
}

/// e_v = min over nonzero x_i of ⌊v(x_i)/w_i⌋, so |x|_{(2,3,4),v} = q_v^{−e_v}.
/// Throws for the archimedean place of ℚ.
template <class E, class Place>
std::int64_t local_size_exp(const WeightedTriple<E>& x, const Place& v) {
  require_valid(x);
  if constexpr (std::is_same_v<Place, RationalPlace>) {
    if (!v.is_finite()) throw std::invalid_argument("local_size_exp: archimedean place");
  }
  std::int64_t e = INT64_MAX;
  for (std::size_t i = 0; i < 3; ++i) {
    Valuation vi = valuation(x[i], v);
    if (vi) e = std::min(e, floor_div(*vi, kWeights[i]));
  }
  return e;
}

/// Ht^12 from the full product over places: the finite places in the support
/// of the coordinates, times max(|x0|^6, |x1|^4, |x2|^3) at infinity.
/// Valid for any representative.
Rational height12(const RationalTriple& x);
/// Ht = q^m with m = Σ_v −e_v·deg v over the finite support and the degree place.
FunctionHeight height12(const FunctionTriple& x);

/// Fast path for canonical representatives, where every finite factor is 1.
Rational canonical_height12(const RationalTriple& x);
FunctionHeight canonical_height12(const FunctionTriple& x);

/// Integral and no finite place with e_v ≥ 1. Throws on non-integral input.
bool is_minimal(const RationalTriple& x);
bool is_minimal(const FunctionTriple& x);

/// Unique representative of [x]: integral, minimal, then a fixed unit.
/// Over ℚ the unit makes x1 ≥ 0. Over F_q(t) the unit λ ∈ F_q* is chosen so
/// the coefficient encoding (x0 coeffs, x1 coeffs, x2 coeffs), each ascending,
/// is lexicographically least.
RationalTriple normalize(const RationalTriple& x);
FunctionTriple normalize(const FunctionTriple& x);

/// For integral minimal triples over F_q(t): is the coefficient encoding least in its F_q* orbit?
bool is_unit_canonical(const FunctionTriple& x);

bool equivalent(const RationalTriple& a, const RationalTriple& b);
/// Throws if a and b live over different constant fields.
bool equivalent(const FunctionTriple& a, const FunctionTriple& b);

/// "x0,x1,x2" in the field's element syntax. Commas inside [...] belong to polynomials.
RationalTriple parse_triple(const Rationals& k, std::string_view text);
FunctionTriple parse_triple(const FunctionField& k, std::string_view text);
std::string format_triple(const Rationals& k, const RationalTriple& x);
std::string format_triple(const FunctionField& k, const FunctionTriple& x);

/// "n/d" for ℚ, "q^m" for F_q(t).
std::string format_height(const Rational& h);
std::string format_height(const FunctionHeight& h);

}  // namespace wpc
