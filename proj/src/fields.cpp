#include "wpc/fields.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace wpc {

// ---- RatFunc ---------------------------------------------------------------

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.modulus(), 1)) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num_.modulus() != den_.modulus()) throw std::invalid_argument("numerator/denominator over different fields");
  canonicalize();
}

void RatFunc::canonicalize() {
  const std::uint32_t q = num_.modulus();
  if (num_.is_zero()) {
    den_ = Poly::constant(q, 1);
    return;
  }
  Poly g = gcd(num_, den_);
  if (!g.is_one()) {
    num_ = divmod(num_, g).first;
    den_ = divmod(den_, g).first;
  }
  if (!den_.is_monic()) {
    std::uint32_t inv = inverse_mod(den_.leading(), q);
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw std::domain_error("division by zero in F_q(t)");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc scale_int(const RatFunc& x, std::int64_t n) {
  std::int64_t q = x.modulus();
  std::int64_t r = ((n % q) + q) % q;
  return x * RatFunc(Poly::constant(x.modulus(), r));
}

// ---- places ----------------------------------------------------------------

RationalPlace RationalPlace::prime(Integer p) {
  if (p < 2 || !is_probable_prime(p)) throw std::invalid_argument("place: " + p.get_str() + " is not prime");
  return {Kind::Finite, std::move(p)};
}

Integer RationalPlace::residue_size() const {
  if (!is_finite()) throw std::invalid_argument("archimedean place has no residue field");
  return p;
}

FunctionPlace FunctionPlace::irreducible(Poly pi) {
  if (!pi.is_monic() || !is_irreducible(pi)) {
    throw std::invalid_argument("place: " + to_string(pi) + " is not monic irreducible");
  }
  return {Kind::Finite, std::move(pi)};
}

// ---- field contexts --------------------------------------------------------

namespace {

bool is_small_prime(std::uint32_t q) {
  if (q < 2) return false;
  for (std::uint32_t d = 2; std::uint64_t{d} * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

void check_q(std::uint32_t q) {
  if (!is_small_prime(q)) throw std::invalid_argument("constant field size " + std::to_string(q) + " is not prime");
  if (q == 2 || q == 3) throw std::invalid_argument("characteristic 2 and 3 are not supported");
}

}  // namespace

FunctionField::FunctionField(std::uint32_t q) : q_(q) { check_q(q); }

RatFunc FunctionField::from_poly(Poly p) const {
  if (p.modulus() != q_) throw std::invalid_argument("polynomial over a different constant field");
  return RatFunc(std::move(p));
}

RatFunc FunctionField::parse(std::string_view text) const {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return RatFunc(parse_poly(text, q_));
  Poly den = parse_poly(text.substr(slash + 1), q_);
  if (den.is_zero()) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return RatFunc(parse_poly(text.substr(0, slash), q_), std::move(den));
}

std::string FunctionField::format(const RatFunc& x) const {
  if (x.is_polynomial()) return to_string(x.num());
  return to_string(x.num()) + "/" + to_string(x.den());
}

GlobalFieldCtx GlobalFieldCtx::function_field(std::uint32_t q) {
  check_q(q);
  return {Kind::FunctionField, q};
}

GlobalFieldCtx GlobalFieldCtx::parse(std::string_view text) {
  if (text == "Q" || text == "QQ") return rationals();
  std::uint32_t q = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), q);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("field must be Q or a prime q, got '" + std::string(text) + "'");
  }
  return function_field(q);
}

std::string GlobalFieldCtx::name() const {
  return kind == Kind::Rationals ? "Q" : "F_" + std::to_string(q) + "(t)";
}

// ---- valuations ------------------------------------------------------------

Valuation valuation(const Rational& x, const RationalPlace& v) {
  if (!v.is_finite()) throw std::invalid_argument("valuation at the archimedean place is undefined");
  if (is_zero(x)) return std::nullopt;
  return valuation(x.get_num(), v.p) - valuation(x.get_den(), v.p);
}

Valuation valuation(const RatFunc& x, const FunctionPlace& v) {
  if (x.is_zero()) return std::nullopt;
  if (!v.is_finite()) return std::int64_t{x.den().degree()} - x.num().degree();
  if (v.pi.modulus() != x.modulus()) throw std::invalid_argument("place over a different constant field");
  return std::int64_t{multiplicity(x.num(), v.pi)} - multiplicity(x.den(), v.pi);
}

AbsValue abs_value_exact(const Rational& x, const RationalPlace& v) {
  if (is_zero(x)) throw std::invalid_argument("absolute value of zero is not a finite magnitude");
  if (!v.is_finite()) return {std::nullopt, abs(x)};
  return {PowerMagnitude{v.p, -*valuation(x, v)}, 0};
}

AbsValue abs_value_exact(const RatFunc& x, const FunctionPlace& v) {
  if (x.is_zero()) throw std::invalid_argument("absolute value of zero is not a finite magnitude");
  Integer qv;
  mpz_ui_pow_ui(qv.get_mpz_t(), x.modulus(), static_cast<unsigned long>(v.place_degree()));
  return {PowerMagnitude{qv, -*valuation(x, v)}, 0};
}

std::vector<RationalPlace> support(const Rational& x) {
  if (is_zero(x)) throw std::invalid_argument("support of zero");
  std::vector<RationalPlace> out;
  for (const Integer* part : {&x.get_num(), &x.get_den()}) {
    for (const auto& [p, e] : factor(*part)) out.push_back({RationalPlace::Kind::Finite, p});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.p < b.p; });
  return out;
}

std::vector<FunctionPlace> support(const RatFunc& x) {
  if (x.is_zero()) throw std::invalid_argument("support of zero");
  std::vector<FunctionPlace> out;
  for (const Poly* part : {&x.num(), &x.den()}) {
    if (part->is_constant()) continue;
    for (auto& [pi, e] : factor(*part)) out.push_back({FunctionPlace::Kind::Finite, pi});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.pi < b.pi; });
  return out;
}

}  // namespace wpc
