#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wpc {

/// Dense polynomial over the prime field F_q, coefficients ascending
/// (c[0] + c[1] t + ...). The coefficient vector never has a trailing zero,
/// so the zero polynomial is the empty vector and equality is structural.
class Poly {
 public:
  using Coeff = std::uint32_t;

  Poly() = default;
  explicit Poly(std::uint32_t q) : q_(q) {}
  Poly(std::uint32_t q, std::vector<Coeff> coeffs);
  Poly(std::uint32_t q, std::initializer_list<std::int64_t> coeffs);

  static Poly constant(std::uint32_t q, std::int64_t c);
  static Poly monomial(std::uint32_t q, int degree, Coeff c = 1);

  std::uint32_t modulus() const { return q_; }
  /// −1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Coeff leading() const { return c_.empty() ? 0 : c_.back(); }
  Coeff operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  const std::vector<Coeff>& coeffs() const { return c_; }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }

  Poly scaled(Coeff c) const;
  /// Divides by the leading coefficient; zero stays zero.
  Poly monic() const;

  friend bool operator==(const Poly&, const Poly&) = default;
  /// Orders by modulus, then degree, then coefficients from the top down.
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b);

 private:
  void trim();
  void check_same_field(const Poly& o) const;

  std::uint32_t q_ = 0;
  std::vector<Coeff> c_;
};

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t q);

/// (quotient, remainder); throws std::domain_error on a zero divisor.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(Poly a, Poly b);
bool divides(const Poly& d, const Poly& a);
/// Exact power of the monic irreducible pi dividing nonzero a.
int multiplicity(const Poly& a, const Poly& pi);

/// No monic divisor of degree 1..⌊deg/2⌋.
bool is_irreducible(const Poly& f);

/// Monic irreducible factors with multiplicity, by trial division with monic
/// polynomials in increasing degree. The unit part (leading coefficient) is dropped.
std::vector<std::pair<Poly, int>> factor(const Poly& f);

/// "[c0,c1,...,cn]"; the zero polynomial is "[]".
std::string to_string(const Poly& f);
/// Accepts "[c0,...]" with 0 ≤ ci < q, or a bare integer constant.
Poly parse_poly(std::string_view text, std::uint32_t q);

}  // namespace wpc
