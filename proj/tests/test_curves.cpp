#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "wpc/curves.hpp"

using namespace wpc;

namespace {

RationalTriple qt(long a, long b, long c) { return {Rational(a), Rational(b), Rational(c)}; }

// Independent oracle: homogeneous projective group law on y²z = x³ + a x z² + b z³.
struct Proj {
  Rational X, Y, Z;
};

Proj proj_add(const Rational& a, const Proj& p, const Proj& q) {
  if (p.Z == 0) return q;
  if (q.Z == 0) return p;
  Rational u = q.Y * p.Z - p.Y * q.Z;
  Rational v = q.X * p.Z - p.X * q.Z;
  if (v == 0) {
    if (u != 0 || p.Y == 0) return {0, 1, 0};
    Rational w = a * p.Z * p.Z + 3 * p.X * p.X;
    Rational s = p.Y * p.Z;
    Rational B = p.X * p.Y * s;
    Rational h = w * w - 8 * B;
    return {2 * h * s, w * (4 * B - h) - 8 * p.Y * p.Y * s * s, 8 * s * s * s};
  }
  Rational w = u * u * p.Z * q.Z - v * v * v - 2 * v * v * p.X * q.Z;
  return {v * w, u * (v * v * p.X * q.Z - w) - v * v * v * p.Y * q.Z, v * v * v * p.Z * q.Z};
}

Proj proj_mul(const Rational& a, int n, const Proj& p) {
  Proj acc{0, 1, 0};
  for (int i = 0; i < n; ++i) acc = proj_add(a, acc, p);
  return acc;
}

bool same_point(const Proj& p, const CurvePoint<Rational>& q) {
  if (p.Z == 0) return q.is_identity();
  return !q.is_identity() && p.X / p.Z == q.x && p.Y / p.Z == q.y;
}

int oracle_order(const MarkedCurve<Rational>& c, int cap) {
  Proj p{c.px, c.py, 1};
  for (int n = 1; n <= cap; ++n) {
    if (proj_mul(c.a4, n, p).Z == 0) return n;
  }
  return 0;
}

}  // namespace

TEST_CASE("moduli chart examples") {
  auto c = to_marked_curve(qt(3, 5, 0));
  CHECK(c.a4 == 0);
  CHECK(c.a6 == -2);
  CHECK(c.marked() == CurvePoint<Rational>::affine(3, 5));
  auto d = to_marked_curve(qt(0, 0, 1));
  CHECK(d.a4 == 1);
  CHECK(d.a6 == 0);
  auto e = to_marked_curve(qt(1, 1, 0));
  CHECK(e.a4 == 0);
  CHECK(e.a6 == 0);
  CHECK(discriminant(e) == 0);
}

TEST_CASE("discriminant examples") {
  CHECK(discriminant(MarkedCurve<Rational>{0, -2, 3, 5}) == -1728);
  CHECK(4 * 0 + 27 * 4 == 108);
  CHECK(discriminant(MarkedCurve<Rational>{0, 0, 0, 0}) == 0);
  CHECK(discriminant(MarkedCurve<Rational>{1, 0, 0, 0}) == -64);
}

TEST_CASE("group law examples") {
  auto c = to_marked_curve(qt(3, 5, 0));
  auto p = c.marked();
  auto o = CurvePoint<Rational>::zero();
  CHECK(ec_add(c, p, o) == p);
  CHECK(ec_add(c, o, p) == p);
  CHECK(ec_add(c, p, -p).is_identity());
  CHECK(ec_mul(c, 0, p).is_identity());

  auto two_p = ec_mul(c, 2, p);
  CHECK(two_p == CurvePoint<Rational>::affine(Rational(129, 100), Rational(-383, 1000)));
  CHECK(c.contains(two_p));
  CHECK(same_point(proj_mul(0, 2, Proj{3, 5, 1}), two_p));

  CHECK_THROWS_AS(ec_add(c, p, CurvePoint<Rational>::affine(1, 1)), std::invalid_argument);
}

TEST_CASE("torsion examples") {
  auto r2 = torsion_order(to_marked_curve(qt(0, 0, 1)), kRationalTorsionCap);
  CHECK(r2.cls == TorsionClass::of_order(2));

  auto c5 = to_marked_curve(qt(-12, 108, -432));
  CHECK(c5.a6 == 8208);
  CHECK(Rational(108 * 108) == Rational(-12 * -12 * -12) + Rational(-432) * -12 + 8208);
  CHECK(torsion_order(c5, kRationalTorsionCap).cls == TorsionClass::of_order(5));
  CHECK(oracle_order(c5, 12) == 5);
  CHECK(ec_mul(c5, 5, c5.marked()).is_identity());

  auto rank1 = torsion_order(to_marked_curve(qt(3, 5, 0)), kRationalTorsionCap);
  CHECK(rank1.cls == TorsionClass::non_torsion());
  CHECK(rank1.decided_by == Decision::LutzNagell);  // 25 does not divide 1728
  CHECK_FALSE(is_integral(ec_mul(to_marked_curve(qt(3, 5, 0)), 2, CurvePoint<Rational>::affine(3, 5)).x));
  CHECK(oracle_order(to_marked_curve(qt(3, 5, 0)), 12) == 0);
  auto slow = torsion_order(to_marked_curve(qt(3, 5, 0)), kRationalTorsionCap, {.fast_paths = false});
  CHECK(slow.cls == TorsionClass::non_torsion());
  CHECK(slow.decided_by == Decision::CapExhausted);

  CHECK(torsion_order(to_marked_curve(qt(1, 1, 0)), 12).cls == TorsionClass::singular());
  CHECK(describe(torsion_order(to_marked_curve(qt(1, 1, 0)), 12)) == "singular");
  CHECK(describe(rank1) == "nontorsion(cap=12)");
  CHECK(describe(r2) == "order 2");

  CHECK_THROWS(torsion_order(to_marked_curve(qt(0, 0, 1)), 0));
  MarkedCurve<Rational> off{0, 1, 1, 1};
  CHECK_THROWS(torsion_order(off, 12));
}

TEST_CASE("chart equivariance") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> coord(-30, 30), lam(1, 20);
  for (int i = 0; i < 500; ++i) {
    RationalTriple x = qt(coord(rng), coord(rng), coord(rng));
    if (x.is_zero()) continue;
    Rational l(lam(rng) * (rng() % 2 ? 1 : -1), lam(rng));
    l.canonicalize();
    auto c = to_marked_curve(x);
    auto d = to_marked_curve(scale(l, x));
    Rational l2 = l * l;
    REQUIRE(d.a4 == c.a4 * l2 * l2);
    REQUIRE(d.a6 == c.a6 * l2 * l2 * l2);
    REQUIRE(d.px == c.px * l2);
    REQUIRE(d.py == c.py * l2 * l);
    REQUIRE(discriminant(d) == discriminant(c) * l2 * l2 * l2 * l2 * l2 * l2);
  }
  FunctionField k(7);
  RatFunc t = k.t();
  for (int i = 0; i < 100; ++i) {
    FunctionTriple x{t + k.from_int(i), t * t * k.from_int(i % 5), k.from_int(i % 3 + 1)};
    RatFunc l = (t + k.from_int(i)) / (t * t + k.from_int(3));
    auto c = to_marked_curve(x);
    auto d = to_marked_curve(scale(l, x));
    RatFunc l2 = l * l;
    REQUIRE(d.a4 == c.a4 * l2 * l2);
    REQUIRE(d.a6 == c.a6 * l2 * l2 * l2);
    REQUIRE(d.px == c.px * l2);
    REQUIRE(d.py == c.py * l2 * l);
  }
}

TEST_CASE("group law properties") {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<long> coord(-6, 6);
  std::uniform_int_distribution<int> small(0, 20);
  int additions = 0;
  while (additions < 10000) {
    RationalTriple x = qt(coord(rng), coord(rng), coord(rng));
    if (x.is_zero()) continue;
    auto c = to_marked_curve(x);
    if (discriminant(c) == 0) continue;
    auto p = c.marked();
    std::vector<CurvePoint<Rational>> pts{CurvePoint<Rational>::zero(), p};
    for (int n = 2; n <= 6; ++n) pts.push_back(ec_add(c, pts.back(), p));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = 0; j < pts.size(); ++j) {
        auto s = ec_add(c, pts[i], pts[j]);
        REQUIRE(c.contains(s));
        REQUIRE(s == ec_add(c, pts[j], pts[i]));
        REQUIRE(s == ec_mul(c, i + j, p));
        ++additions;
      }
      REQUIRE(ec_add(c, pts[i], -pts[i]).is_identity());
    }
    auto a = pts[2], b = pts[3], d = pts[5];
    REQUIRE(ec_add(c, ec_add(c, a, b), d) == ec_add(c, a, ec_add(c, b, d)));
    int m = small(rng), n = small(rng);
    REQUIRE(ec_mul(c, m + n, p) == ec_add(c, ec_mul(c, m, p), ec_mul(c, n, p)));
  }
}

TEST_CASE("group law against projective oracle") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> coord(-5, 5);
  for (int i = 0; i < 200; ++i) {
    RationalTriple x = qt(coord(rng), coord(rng), coord(rng));
    if (x.is_zero()) continue;
    auto c = to_marked_curve(x);
    if (discriminant(c) == 0) continue;
    for (int n = 0; n <= 7; ++n) {
      REQUIRE(same_point(proj_mul(c.a4, n, Proj{c.px, c.py, 1}), ec_mul(c, n, c.marked())));
    }
  }
}

TEST_CASE("fast paths agree with multiples-only on a box") {
  for (long a = -9; a <= 9; ++a) {
    for (long b = 0; b <= 27; ++b) {
      for (long c = -30; c <= 30; ++c) {
        IntegralTriple x{a, b, c};
        if (a == 0 && b == 0 && c == 0) continue;
        auto curve = to_marked_curve(to_rational(x));
        auto fast = classify_integral(x, 12);
        auto slow = torsion_order(curve, 12, {.fast_paths = false});
        REQUIRE(fast.cls == slow.cls);
        REQUIRE(torsion_order(curve, 12).cls == slow.cls);
        REQUIRE(is_nonsingular_integral(x) == (discriminant(curve) != 0));
      }
    }
  }
}

TEST_CASE("torsion over a function field") {
  // constant curves over F_5: every point has finite order, at most q + 1 + 2√q
  FunctionField k(5);
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      for (int c = 0; c < 5; ++c) {
        FunctionTriple x{k.from_int(a), k.from_int(b), k.from_int(c)};
        if (x.is_zero()) continue;
        auto curve = to_marked_curve(x);
        auto r = torsion_order(curve, kDefaultFunctionFieldCap);
        if (is_zero(discriminant(curve))) {
          CHECK(r.cls == TorsionClass::singular());
          continue;
        }
        REQUIRE(r.cls.is_torsion());
        CHECK(r.cls.order <= 10);
        CHECK(ec_mul(curve, static_cast<std::uint64_t>(r.cls.order), curve.marked()).is_identity());
      }
    }
  }
  // t-dependent point on a non-isotrivial curve
  RatFunc t = k.t();
  auto curve = to_marked_curve(FunctionTriple{t, k.from_int(1), t});
  CHECK(!is_zero(discriminant(curve)));
  auto r = torsion_order(curve, kDefaultFunctionFieldCap);
  CHECK(r.cls == TorsionClass::non_torsion());
  CHECK(r.decided_by == Decision::CapExhausted);
  CHECK(r.cap == 24);
}
