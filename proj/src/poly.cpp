#include "wpc/poly.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace wpc {
namespace {

std::uint32_t reduce(std::int64_t c, std::uint32_t q) {
  std::int64_t r = c % static_cast<std::int64_t>(q);
  return static_cast<std::uint32_t>(r < 0 ? r + q : r);
}

std::uint32_t mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
  return static_cast<std::uint32_t>((std::uint64_t{a} * b) % q);
}

}  // namespace

Poly::Poly(std::uint32_t q, std::vector<Coeff> coeffs) : q_(q), c_(std::move(coeffs)) {
  for (auto& c : c_) c %= q_;
  trim();
}

Poly::Poly(std::uint32_t q, std::initializer_list<std::int64_t> coeffs) : q_(q) {
  c_.reserve(coeffs.size());
  for (auto c : coeffs) c_.push_back(reduce(c, q));
  trim();
}

Poly Poly::constant(std::uint32_t q, std::int64_t c) { return Poly(q, {c}); }

Poly Poly::monomial(std::uint32_t q, int degree, Coeff c) {
  std::vector<Coeff> v(static_cast<std::size_t>(degree) + 1, 0);
  v.back() = c;
  return Poly(q, std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void Poly::check_same_field(const Poly& o) const {
  if (q_ != o.q_) throw std::invalid_argument("polynomials over different fields");
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = c == 0 ? 0 : q_ - c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  check_same_field(o);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) {
    c_[i] += o.c_[i];
    if (c_[i] >= q_) c_[i] -= q_;
  }
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly& Poly::operator*=(const Poly& o) {
  check_same_field(o);
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<std::uint64_t> acc(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      acc[i + j] = (acc[i + j] + std::uint64_t{c_[i]} * o.c_[j]) % q_;
    }
  }
  c_.assign(acc.begin(), acc.end());
  trim();
  return *this;
}

Poly Poly::scaled(Coeff c) const {
  Poly r = *this;
  for (auto& x : r.c_) x = mulmod(x, c % q_, q_);
  r.trim();
  return r;
}

Poly Poly::monic() const {
  if (is_zero() || is_monic()) return *this;
  return scaled(inverse_mod(leading(), q_));
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
  if (auto c = a.q_ <=> b.q_; c != 0) return c;
  if (auto c = a.c_.size() <=> b.c_.size(); c != 0) return c;
  for (std::size_t i = a.c_.size(); i-- > 0;) {
    if (auto c = a.c_[i] <=> b.c_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t q) {
  std::int64_t t = 0, new_t = 1, r = q, new_r = a % q;
  while (new_r != 0) {
    std::int64_t quot = r / new_r;
    t = std::exchange(new_t, t - quot * new_t);
    r = std::exchange(new_r, r - quot * new_r);
  }
  if (r != 1) throw std::domain_error("inverse_mod: not invertible");
  return reduce(t, q);
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.modulus() != b.modulus()) throw std::invalid_argument("polynomials over different fields");
  const std::uint32_t q = a.modulus();
  if (a.degree() < b.degree()) return {Poly(q), a};
  std::vector<Poly::Coeff> rem = a.coeffs();
  std::vector<Poly::Coeff> quot(static_cast<std::size_t>(a.degree() - b.degree()) + 1, 0);
  const std::uint32_t inv_lead = inverse_mod(b.leading(), q);
  const auto& bc = b.coeffs();
  for (int i = a.degree(); i >= b.degree(); --i) {
    std::uint32_t coef = rem[static_cast<std::size_t>(i)];
    if (coef == 0) continue;
    std::uint32_t factor = mulmod(coef, inv_lead, q);
    std::size_t shift = static_cast<std::size_t>(i - b.degree());
    quot[shift] = factor;
    for (std::size_t j = 0; j < bc.size(); ++j) {
      std::uint32_t sub = mulmod(factor, bc[j], q);
      auto& r = rem[shift + j];
      r = r >= sub ? r - sub : r + q - sub;
    }
  }
  return {Poly(q, std::move(quot)), Poly(q, std::move(rem))};
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

bool divides(const Poly& d, const Poly& a) { return divmod(a, d).second.is_zero(); }

int multiplicity(const Poly& a, const Poly& pi) {
  if (a.is_zero()) throw std::invalid_argument("multiplicity of zero polynomial");
  int e = 0;
  Poly cur = a;
  for (;;) {
    auto [quot, rem] = divmod(cur, pi);
    if (!rem.is_zero()) return e;
    cur = std::move(quot);
    ++e;
  }
}

namespace {

// Visits every monic polynomial of the given degree, in increasing coefficient order.
template <class F>
bool for_each_monic(std::uint32_t q, int degree, F&& f) {
  std::vector<Poly::Coeff> c(static_cast<std::size_t>(degree) + 1, 0);
  c.back() = 1;
  for (;;) {
    if (f(Poly(q, c))) return true;
    std::size_t i = 0;
    while (i < static_cast<std::size_t>(degree) && ++c[i] == q) c[i++] = 0;
    if (i == static_cast<std::size_t>(degree)) return false;
  }
}

}  // namespace

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) return false;
  for (int d = 1; d <= f.degree() / 2; ++d) {
    bool found = for_each_monic(f.modulus(), d, [&](const Poly& g) { return divides(g, f); });
    if (found) return false;
  }
  return true;
}

std::vector<std::pair<Poly, int>> factor(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("factor: zero polynomial");
  std::vector<std::pair<Poly, int>> out;
  Poly rest = f.monic();
  for (int d = 1; 2 * d <= rest.degree(); ++d) {
    for_each_monic(f.modulus(), d, [&](const Poly& g) {
      if (2 * d > rest.degree()) return true;
      int e = 0;
      for (;;) {
        auto [quot, rem] = divmod(rest, g);
        if (!rem.is_zero()) break;
        rest = std::move(quot);
        ++e;
      }
      if (e > 0) out.emplace_back(g, e);
      return false;
    });
  }
  if (rest.degree() >= 1) {
    // Whatever survives has no factor of degree ≤ deg/2, so it is irreducible.
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& pe) { return pe.first == rest; });
    if (it != out.end()) {
      ++it->second;
    } else {
      out.emplace_back(rest, 1);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(const Poly& f) {
  std::string s = "[";
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (i) s += ',';
    s += std::to_string(f.coeffs()[i]);
  }
  return s + "]";
}

Poly parse_poly(std::string_view text, std::uint32_t q) {
  auto bad = [&](const char* why) {
    return std::invalid_argument(std::string("malformed polynomial '") + std::string(text) + "': " + why);
  };
  auto parse_coeff = [&](std::string_view s, bool allow_sign) -> std::int64_t {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    std::int64_t v = 0;
    const char* first = s.data();
    if (allow_sign && !s.empty() && s[0] == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) throw bad("bad coefficient");
    return v;
  };
  std::string_view body = text;
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front()))) body.remove_prefix(1);
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.remove_suffix(1);
  if (body.empty()) throw bad("empty");
  if (body.front() != '[') return Poly::constant(q, parse_coeff(body, true));
  if (body.back() != ']') throw bad("missing ']'");
  body = body.substr(1, body.size() - 2);
  std::vector<Poly::Coeff> coeffs;
  bool blank = body.find_first_not_of(" \t") == std::string_view::npos;
  while (!blank) {
    auto comma = body.find(',');
    std::int64_t v = parse_coeff(body.substr(0, comma), false);
    if (v < 0 || v >= static_cast<std::int64_t>(q)) throw bad("coefficient out of range [0, q)");
    coeffs.push_back(static_cast<Poly::Coeff>(v));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return Poly(q, std::move(coeffs));
}

}  // namespace wpc
