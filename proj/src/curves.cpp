#include "wpc/curves.hpp"

#include <cstdlib>

namespace wpc {
namespace {

using i128 = __int128;

struct SmallModel {
  i128 a6;
  i128 delta;
};

// Bounds keep |Δ| < 2^110.
bool fits_small(const IntegralTriple& x) {
  return std::llabs(x[0]) <= (1LL << 15) && std::llabs(x[1]) <= (1LL << 22) && std::llabs(x[2]) <= (1LL << 30);
}

SmallModel small_model(const IntegralTriple& x) {
  const i128 x0 = x[0], x1 = x[1], a4 = x[2];
  const i128 a6 = x1 * x1 - x0 * x0 * x0 - a4 * x0;
  return {a6, -16 * (4 * a4 * a4 * a4 + 27 * a6 * a6)};
}

}  // namespace

RationalTriple to_rational(const IntegralTriple& x) {
  return {Rational(static_cast<long>(x[0])), Rational(static_cast<long>(x[1])), Rational(static_cast<long>(x[2]))};
}

bool is_nonsingular_integral(const IntegralTriple& x) {
  if (fits_small(x)) return small_model(x).delta != 0;
  return !is_zero(discriminant(to_marked_curve(to_rational(x))));
}

TorsionResult classify_integral(const IntegralTriple& x, int cap) {
  if (cap < 1) throw std::invalid_argument("torsion cap must be at least 1");
  if (fits_small(x)) {
    const SmallModel m = small_model(x);
    if (m.delta == 0) return {TorsionClass::singular(), Decision::Singular, cap};
    const i128 y = x[1];
    if (y != 0 && m.delta % (y * y) != 0) return {TorsionClass::non_torsion(), Decision::LutzNagell, cap};
  }
  return torsion_order(to_marked_curve(to_rational(x)), cap);
}

std::string describe(const TorsionResult& r) {
  switch (r.cls.kind) {
    case TorsionClass::Kind::Singular:
      return "singular";
    case TorsionClass::Kind::Order:
      return "order " + std::to_string(r.cls.order);
    case TorsionClass::Kind::NonTorsion:
      break;
  }
  return "nontorsion(cap=" + std::to_string(r.cap) + ")";
}

}  // namespace wpc
