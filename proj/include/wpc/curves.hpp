#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "wpc/heights.hpp"

namespace wpc {

/// Point of a short Weierstrass curve: affine (x, y) or the identity O.
template <class E>
struct CurvePoint {
  E x, y;
  bool identity = true;

  static CurvePoint zero() { return {}; }
  static CurvePoint affine(E x, E y) { return {std::move(x), std::move(y), false}; }
  bool is_identity() const { return identity; }
  CurvePoint operator-() const { return identity ? *this : affine(x, -y); }
  friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
    if (a.identity || b.identity) return a.identity == b.identity;
    return a.x == b.x && a.y == b.y;
  }
};

/// y² = x³ + a4·x + a6 together with a marked affine point P = (px, py).
template <class E>
struct MarkedCurve {
  E a4, a6, px, py;

  CurvePoint<E> marked() const { return CurvePoint<E>::affine(px, py); }
  bool contains(const CurvePoint<E>& p) const {
    return p.is_identity() || p.y * p.y == p.x * p.x * p.x + a4 * p.x + a6;
  }
  friend bool operator==(const MarkedCurve&, const MarkedCurve&) = default;
};

/// The chart P(2,3,4) → M_{1,2}: a4 = x2, P = (x0, x1), a6 = x1² − x0³ − x2·x0.
/// λ-scaling of the triple becomes the isomorphism (x, y) ↦ (λ²x, λ³y).
template <class E>
MarkedCurve<E> to_marked_curve(const WeightedTriple<E>& x) {
  return {x.x2, x.x1 * x.x1 - x.x0 * x.x0 * x.x0 - x.x2 * x.x0, x.x0, x.x1};
}

/// Δ = −16(4·a4³ + 27·a6²).
template <class E>
E discriminant(const MarkedCurve<E>& c) {
  return scale_int(scale_int(c.a4 * c.a4 * c.a4, 4) + scale_int(c.a6 * c.a6, 27), -16);
}

namespace detail {

template <class E>
CurvePoint<E> add_unchecked(const MarkedCurve<E>& c, const CurvePoint<E>& p, const CurvePoint<E>& q) {
  if (p.is_identity()) return q;
  if (q.is_identity()) return p;
  E slope;
  if (p.x == q.x) {
    if (p.y != q.y || is_zero(p.y)) return CurvePoint<E>::zero();
    E xx = p.x * p.x;
    slope = (xx + xx + xx + c.a4) / (p.y + p.y);
  } else {
    slope = (q.y - p.y) / (q.x - p.x);
  }
  E x3 = slope * slope - p.x - q.x;
  E y3 = slope * (p.x - x3) - p.y;
  return CurvePoint<E>::affine(std::move(x3), std::move(y3));
}

template <class E>
void require_on_curve(const MarkedCurve<E>& c, const CurvePoint<E>& p) {
  if (!c.contains(p)) throw std::invalid_argument("point is not on the curve");
}

}  // namespace detail

/// Chord-tangent addition. Throws std::invalid_argument for off-curve inputs.
template <class E>
CurvePoint<E> ec_add(const MarkedCurve<E>& c, const CurvePoint<E>& p, const CurvePoint<E>& q) {
  detail::require_on_curve(c, p);
  detail::require_on_curve(c, q);
  return detail::add_unchecked(c, p, q);
}

/// n·p by double-and-add; 0·p = O.
template <class E>
CurvePoint<E> ec_mul(const MarkedCurve<E>& c, std::uint64_t n, const CurvePoint<E>& p) {
  detail::require_on_curve(c, p);
  CurvePoint<E> acc = CurvePoint<E>::zero();
  CurvePoint<E> base = p;
  for (; n > 0; n >>= 1) {
    if (n & 1) acc = detail::add_unchecked(c, acc, base);
    if (n > 1) base = detail::add_unchecked(c, base, base);
  }
  return acc;
}

/// Order(n), NonTorsion, or Singular (Δ = 0, not an elliptic curve).
struct TorsionClass {
  enum class Kind { Order, NonTorsion, Singular };
  Kind kind = Kind::NonTorsion;
  int order = 0;

  static TorsionClass of_order(int n) { return {Kind::Order, n}; }
  static TorsionClass non_torsion() { return {Kind::NonTorsion, 0}; }
  static TorsionClass singular() { return {Kind::Singular, 0}; }
  bool is_torsion() const { return kind == Kind::Order; }
  friend bool operator==(const TorsionClass&, const TorsionClass&) = default;
};

/// What settled a torsion decision.
enum class Decision {
  Singular,          // Δ = 0
  OrderFound,        // n·P = O for the first time at n ≤ cap
  LutzNagell,        // py ≠ 0 and py² ∤ Δ on an integral model over ℚ
  NonIntegral,       // some multiple left ℤ² on an integral model over ℚ
  CapExhausted,      // no n ≤ cap with n·P = O
};

struct TorsionResult {
  TorsionClass cls;
  Decision decided_by = Decision::CapExhausted;
  int cap = 0;
};

/// Largest rational torsion order is 12, and there is none of order 11.
inline constexpr int kRationalTorsionCap = 12;
inline constexpr int kDefaultFunctionFieldCap = 24;

struct TorsionOptions {
  /// Lutz–Nagell prefilter and the integrality early exit (ℚ, integral models only).
  bool fast_paths = true;
};

/// Order of the marked point, checking n·P = O for n = 2..cap. Over ℚ with an
/// integral model, non-torsion can be certified early (see TorsionOptions).
/// Throws std::invalid_argument if P is off the curve or cap < 1.
template <class E>
TorsionResult torsion_order(const MarkedCurve<E>& c, int cap, TorsionOptions opts = {}) {
  if (cap < 1) throw std::invalid_argument("torsion cap must be at least 1");
  const CurvePoint<E> p = c.marked();
  detail::require_on_curve(c, p);
  const E delta = discriminant(c);
  if (is_zero(delta)) return {TorsionClass::singular(), Decision::Singular, cap};

  bool integral_model = false;
  if constexpr (std::is_same_v<E, Rational>) {
    integral_model = opts.fast_paths && is_integral(c.a4) && is_integral(c.a6) && is_integral(c.px) &&
                     is_integral(c.py);
    if (integral_model && !is_zero(c.py)) {
      Integer y2 = c.py.get_num() * c.py.get_num();
      if (mpz_divisible_p(delta.get_num_mpz_t(), y2.get_mpz_t()) == 0) {
        return {TorsionClass::non_torsion(), Decision::LutzNagell, cap};
      }
    }
  }

  CurvePoint<E> q = p;
  for (int n = 2; n <= cap; ++n) {
    q = detail::add_unchecked(c, q, p);
    if (q.is_identity()) return {TorsionClass::of_order(n), Decision::OrderFound, cap};
    if constexpr (std::is_same_v<E, Rational>) {
      if (integral_model && (!is_integral(q.x) || !is_integral(q.y))) {
        return {TorsionClass::non_torsion(), Decision::NonIntegral, cap};
      }
    }
  }
  return {TorsionClass::non_torsion(), Decision::CapExhausted, cap};
}

using IntegralTriple = std::array<std::int64_t, 3>;

/// Census fast path for a canonical integral triple over ℚ: singularity and the
/// Lutz–Nagell prefilter run in 128-bit arithmetic, everything else falls
/// through to torsion_order. Same answer as classifying to_marked_curve(x).
TorsionResult classify_integral(const IntegralTriple& x, int cap);

/// Exact Δ ≠ 0 test for an integral triple, without building rationals.
bool is_nonsingular_integral(const IntegralTriple& x);

RationalTriple to_rational(const IntegralTriple& x);

/// "singular", "order N" or "nontorsion(cap=N)".
std::string describe(const TorsionResult& r);

}  // namespace wpc
