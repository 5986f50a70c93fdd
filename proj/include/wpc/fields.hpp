#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wpc/integer.hpp"
#include "wpc/poly.hpp"

namespace wpc {

/// Element of F_q(t) kept as num/den with gcd(num, den) = 1 and den monic.
/// Zero is 0/1, so equality is structural.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(Poly num);
  RatFunc(Poly num, Poly den);

  std::uint32_t modulus() const { return num_.modulus(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }

  RatFunc operator-() const { return RatFunc(-num_, den_, canonical_tag{}); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  friend bool operator==(const RatFunc&, const RatFunc&) = default;

 private:
  struct canonical_tag {};
  RatFunc(Poly num, Poly den, canonical_tag) : num_(std::move(num)), den_(std::move(den)) {}
  void canonicalize();

  Poly num_;
  Poly den_;
};

/// A place of ℚ: a prime p, or the archimedean place.
struct RationalPlace {
  enum class Kind { Finite, Archimedean };
  Kind kind = Kind::Archimedean;
  Integer p;

  static RationalPlace prime(Integer p);
  static RationalPlace archimedean() { return {}; }
  bool is_finite() const { return kind == Kind::Finite; }
  /// Residue field size q_v (finite places only).
  Integer residue_size() const;
  friend bool operator==(const RationalPlace&, const RationalPlace&) = default;
};

/// A place of F_q(t): a monic irreducible pi, or the degree place (uniformizer 1/t).
/// F_q(t) has no archimedean places.
struct FunctionPlace {
  enum class Kind { Finite, Degree };
  Kind kind = Kind::Degree;
  Poly pi;

  static FunctionPlace irreducible(Poly pi);
  static FunctionPlace degree_place() { return {}; }
  bool is_finite() const { return kind == Kind::Finite; }
  /// deg pi at finite places, 1 at the degree place; q_v = q^{place_degree}.
  int place_degree() const { return kind == Kind::Finite ? pi.degree() : 1; }
  friend bool operator==(const FunctionPlace&, const FunctionPlace&) = default;
};

/// Normalized valuation; std::nullopt stands for +∞ (the valuation of zero).
using Valuation = std::optional<std::int64_t>;

/// q_v^exponent, an exact nonarchimedean magnitude.
struct PowerMagnitude {
  Integer base;
  std::int64_t exponent = 0;
  friend bool operator==(const PowerMagnitude&, const PowerMagnitude&) = default;
};

/// Exact |x|_v: either q_v^e or, at the archimedean place of ℚ, a rational.
struct AbsValue {
  std::optional<PowerMagnitude> power;
  Rational archimedean;
  bool is_power() const { return power.has_value(); }
};

/// ℚ. Elements are canonical GMP rationals.
struct Rationals {
  using Elem = Rational;
  using Place = RationalPlace;

  Elem zero() const { return 0; }
  Elem from_int(std::int64_t n) const { return Rational(static_cast<long>(n)); }
  Elem parse(std::string_view text) const { return parse_rational(text); }
  std::string format(const Elem& x) const { return to_string(x); }
  /// Places at infinity: the single archimedean place.
  std::vector<Place> infinite_places() const { return {RationalPlace::archimedean()}; }
  friend bool operator==(const Rationals&, const Rationals&) = default;
};

/// F_q(t) for a prime q ∉ {2, 3}.
class FunctionField {
 public:
  using Elem = RatFunc;
  using Place = FunctionPlace;

  /// Throws std::invalid_argument unless q is a prime other than 2 and 3.
  explicit FunctionField(std::uint32_t q);

  std::uint32_t q() const { return q_; }
  Elem zero() const { return RatFunc(Poly(q_)); }
  Elem from_int(std::int64_t n) const { return RatFunc(Poly::constant(q_, n)); }
  Elem t() const { return RatFunc(Poly::monomial(q_, 1)); }
  Elem from_poly(Poly p) const;
  /// "num" or "num/den", each in the "[c0,c1,...]" polynomial syntax.
  Elem parse(std::string_view text) const;
  std::string format(const Elem& x) const;
  std::vector<Place> infinite_places() const { return {FunctionPlace::degree_place()}; }
  friend bool operator==(const FunctionField&, const FunctionField&) = default;

 private:
  std::uint32_t q_;
};

/// Runtime field selector (CLI, configs). Dispatch to Rationals or FunctionField.
struct GlobalFieldCtx {
  enum class Kind { Rationals, FunctionField };
  Kind kind = Kind::Rationals;
  std::uint32_t q = 0;

  static GlobalFieldCtx rationals() { return {}; }
  /// Validates q (prime, not 2 or 3).
  static GlobalFieldCtx function_field(std::uint32_t q);
  /// "Q" (or "QQ") for ℚ, otherwise a prime q.
  static GlobalFieldCtx parse(std::string_view text);
  std::string name() const;
  friend bool operator==(const GlobalFieldCtx&, const GlobalFieldCtx&) = default;
};

Valuation valuation(const Rational& x, const RationalPlace& v);
Valuation valuation(const RatFunc& x, const FunctionPlace& v);

AbsValue abs_value_exact(const Rational& x, const RationalPlace& v);
AbsValue abs_value_exact(const RatFunc& x, const FunctionPlace& v);

/// Finite places where x has nonzero valuation. Throws on x == 0.
std::vector<RationalPlace> support(const Rational& x);
std::vector<FunctionPlace> support(const RatFunc& x);

/// Multiplication by an integer; for F_q(t) the integer is reduced mod q.
inline Rational scale_int(const Rational& x, std::int64_t n) { return x * static_cast<long>(n); }
RatFunc scale_int(const RatFunc& x, std::int64_t n);

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const RatFunc& x) { return x.is_zero(); }
inline bool is_integral(const RatFunc& x) { return x.is_polynomial(); }

}  // namespace wpc
