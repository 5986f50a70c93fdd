#include "wpc/enumerate.hpp"

#include <limits>

namespace wpc {
namespace {

std::int64_t floor_to_int64(const Rational& x) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  if (!f.fits_slong_p()) throw std::invalid_argument("height bound too large to enumerate");
  return f.get_si();
}

std::size_t checked_pow(std::uint32_t q, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (r > (std::size_t{1} << 48) / q) throw std::invalid_argument("function field box too large to enumerate");
    r *= q;
  }
  return r;
}

}  // namespace

bool NorthcottBox::contains(const IntegralTriple& x) const {
  return !empty() && std::llabs(x[0]) <= x0 && std::llabs(x[1]) <= x1 && std::llabs(x[2]) <= x2;
}

NorthcottBox northcott_box(const Rational& bound) {
  if (bound < 1) return {};
  Rational b2 = bound * bound;
  return {floor_to_int64(b2), floor_to_int64(b2 * bound), floor_to_int64(b2 * b2)};
}

RationalPointSource::RationalPointSource(const Rational& bound) : box_(northcott_box(bound)) {
  if (box_.empty()) return;
  const std::int64_t limit = floor_to_int64(bound);
  for (std::int64_t p = 2; p <= limit; ++p) {
    bool prime = true;
    for (std::int64_t d = 2; d * d <= p && prime; ++d) prime = p % d != 0;
    if (!prime) continue;
    // a prime beyond B has p² > B² ≥ |x0|, p³ > |x1|, p⁴ > |x2|: it cannot divide through
    primes_.push_back(p);
    p2_.push_back(p * p);
    p3_.push_back(p * p * p);
    p4_.push_back(p * p * p * p);
  }
}

FunctionPointSource::FunctionPointSource(const FunctionField& k, DegreeBound bound) : q_(k.q()) {
  if (bound.degree < 0) {
    empty_ = true;
    return;
  }
  for (int i = 0; i < 3; ++i) {
    length_[i] = static_cast<std::size_t>(kWeights[i] * bound.degree + 1);
    count_[i] = checked_pow(q_, length_[i]);
  }
}

std::vector<Poly::Coeff> FunctionPointSource::digits(std::size_t index, int coord) const {
  std::vector<Poly::Coeff> c(length_[coord]);
  for (auto& x : c) {
    x = static_cast<Poly::Coeff>(index % q_);
    index /= q_;
  }
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

bool FunctionPointSource::unit_canonical(const std::vector<Poly::Coeff>& c0, const std::vector<Poly::Coeff>& c1,
                                         const std::vector<Poly::Coeff>& c2) const {
  const std::vector<Poly::Coeff>* coords[3] = {&c0, &c1, &c2};
  for (std::uint64_t lambda = 2; lambda < q_; ++lambda) {
    std::uint64_t mult[3];
    mult[0] = lambda * lambda % q_;
    mult[1] = mult[0] * lambda % q_;
    mult[2] = mult[1] * lambda % q_;
    // lexicographic comparison of (λ²c0, λ³c1, λ⁴c2) against (c0, c1, c2)
    int cmp = 0;
    for (int i = 0; i < 3 && cmp == 0; ++i) {
      for (Poly::Coeff c : *coords[i]) {
        auto scaled = static_cast<Poly::Coeff>(c * mult[i] % q_);
        if (scaled != c) {
          cmp = scaled < c ? -1 : 1;
          break;
        }
      }
    }
    if (cmp < 0) return false;
  }
  return true;
}

std::uint64_t count_points(const Rationals& k, const Rational& bound, EnumOptions opts) {
  return reduce_points(
      k, bound, std::uint64_t{0}, [](const IntegralTriple&, std::uint64_t& n) { ++n; },
      [](std::uint64_t& a, std::uint64_t b) { a += b; }, opts);
}

std::uint64_t count_points(const FunctionField& k, DegreeBound bound, EnumOptions opts) {
  return reduce_points(
      k, bound, std::uint64_t{0}, [](const FunctionTriple&, std::uint64_t& n) { ++n; },
      [](std::uint64_t& a, std::uint64_t b) { a += b; }, opts);
}

void check_scaling_invariance(const SubstackPredicate<Rational>& pred, const RationalTriple& x, bool expected) {
  for (const Rational& lambda : {Rational(-1), Rational(2), Rational(1, 3)}) {
    if (pred.test(scale(lambda, x)) != expected) {
      throw ContractError("predicate '" + pred.name + "' is not invariant under weighted scaling");
    }
  }
}

void check_scaling_invariance(const SubstackPredicate<RatFunc>& pred, const FunctionTriple& x, bool expected) {
  FunctionField k(x.x0.modulus());
  RatFunc t = k.t();
  for (const RatFunc& lambda : {t, k.from_int(1) / t, scale_int(t + k.from_int(1), 2)}) {
    if (pred.test(scale(lambda, x)) != expected) {
      throw ContractError("predicate '" + pred.name + "' is not invariant under weighted scaling");
    }
  }
}

namespace {

struct CountAcc {
  PredicateCount counts;
  std::uint64_t seen = 0;
};

void merge_counts(CountAcc& a, const CountAcc& b) {
  a.counts.n_pred += b.counts.n_pred;
  a.counts.n_total += b.counts.n_total;
}

}  // namespace

PredicateCount count_with_predicate(const Rationals& k, const Rational& bound,
                                    const SubstackPredicate<Rational>& pred, EnumOptions opts) {
  return reduce_points(
             k, bound, CountAcc{},
             [&](const IntegralTriple& p, CountAcc& acc) {
               bool hit;
               if (acc.seen++ % kScalingCheckStride == 0) {
                 RationalTriple x = to_rational(p);
                 hit = pred.test(x);
                 if (pred.integral_test && pred.integral_test(p) != hit) {
                   throw ContractError("predicate '" + pred.name + "': integral and generic forms disagree");
                 }
                 check_scaling_invariance(pred, x, hit);
               } else {
                 hit = pred.integral_test ? pred.integral_test(p) : pred.test(to_rational(p));
               }
               acc.counts.n_pred += hit;
               ++acc.counts.n_total;
             },
             merge_counts, opts)
      .counts;
}

PredicateCount count_with_predicate(const FunctionField& k, DegreeBound bound,
                                    const SubstackPredicate<RatFunc>& pred, EnumOptions opts) {
  return reduce_points(
             k, bound, CountAcc{},
             [&](const FunctionTriple& x, CountAcc& acc) {
               bool hit = pred.test(x);
               if (acc.seen++ % kScalingCheckStride == 0) check_scaling_invariance(pred, x, hit);
               acc.counts.n_pred += hit;
               ++acc.counts.n_total;
             },
             merge_counts, opts)
      .counts;
}

}  // namespace wpc
