#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "wpc/curves.hpp"
#include "wpc/heights.hpp"
#include "wpc/parallel.hpp"

namespace wpc {

/// B = q^degree over F_q(t).
struct DegreeBound {
  std::int64_t degree = 0;
  friend bool operator==(const DegreeBound&, const DegreeBound&) = default;
};

/// A bound on Ht: a positive rational B over ℚ, or q^d over F_q(t).
using HeightBound = std::variant<Rational, DegreeBound>;

struct EnumOptions {
  /// Worker count; 0 means all hardware threads.
  unsigned threads = 1;
};

/// Raised when a caller-supplied predicate turns out not to be scaling invariant.
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Half-widths of the Northcott box: a canonical integral triple has Ht ≤ B
/// iff |x0| ≤ ⌊B²⌋, |x1| ≤ ⌊B³⌋, |x2| ≤ ⌊B⁴⌋. Empty for B < 1.
struct NorthcottBox {
  std::int64_t x0 = -1, x1 = -1, x2 = -1;
  bool empty() const { return x0 < 0; }
  bool contains(const IntegralTriple& x) const;
};

NorthcottBox northcott_box(const Rational& bound);

/// Canonical ℚ-points with Ht ≤ B, cut into chunks by x2 (chunk c ↔ x2 = c − X2).
/// Within a chunk the order is x0 ascending, then x1 ascending. Minimality
/// is decided by a sieve over the primes p ≤ B: inside the box a nonzero
/// coordinate with p^w | x_i forces p^w ≤ B^w.
class RationalPointSource {
 public:
  explicit RationalPointSource(const Rational& bound);

  const NorthcottBox& box() const { return box_; }
  const std::vector<std::int64_t>& sieve_primes() const { return primes_; }
  std::size_t chunks() const { return box_.empty() ? 0 : static_cast<std::size_t>(2 * box_.x2 + 1); }

  template <class F>
  void for_each_in_chunk(std::size_t chunk, F&& f) const {
    const std::int64_t x2 = static_cast<std::int64_t>(chunk) - box_.x2;
    // primes whose fourth power divides x2 are the only ones that can still reject
    std::vector<std::size_t> live, live0;
    for (std::size_t i = 0; i < primes_.size(); ++i) {
      if (x2 % p4_[i] == 0) live.push_back(i);
    }
    for (std::int64_t x0 = -box_.x0; x0 <= box_.x0; ++x0) {
      live0.clear();
      for (std::size_t i : live) {
        if (x0 % p2_[i] == 0) live0.push_back(i);
      }
      for (std::int64_t x1 = 0; x1 <= box_.x1; ++x1) {
        if (x2 == 0 && x0 == 0 && x1 == 0) continue;
        bool minimal = true;
        for (std::size_t j = 0; j < live0.size() && minimal; ++j) minimal = x1 % p3_[live0[j]] != 0;
        if (minimal) f(IntegralTriple{x0, x1, x2});
      }
    }
  }

 private:
  NorthcottBox box_;
  std::vector<std::int64_t> primes_, p2_, p3_, p4_;
};

/// Canonical F_q(t)-points with Ht ≤ q^d: integral, deg x_i ≤ w_i·d, minimal,
/// and unit canonical. Coordinates are indexed by the base-q number whose digits
/// are the ascending coefficients (c0 least significant). Chunk c is the x2
/// with index c; inside a chunk the order is x0 index, then x1 index.
class FunctionPointSource {
 public:
  FunctionPointSource(const FunctionField& k, DegreeBound bound);

  std::size_t chunks() const { return empty_ ? 0 : count_[2]; }

  template <class F>
  void for_each_in_chunk(std::size_t chunk, F&& f) const {
    std::vector<Poly::Coeff> c2 = digits(chunk, 2);
    for (std::size_t i0 = 0; i0 < count_[0]; ++i0) {
      std::vector<Poly::Coeff> c0 = digits(i0, 0);
      for (std::size_t i1 = 0; i1 < count_[1]; ++i1) {
        if (i0 == 0 && i1 == 0 && chunk == 0) continue;
        std::vector<Poly::Coeff> c1 = digits(i1, 1);
        if (!unit_canonical(c0, c1, c2)) continue;
        FunctionTriple x{RatFunc(Poly(q_, c0)), RatFunc(Poly(q_, c1)), RatFunc(Poly(q_, std::vector(c2)))};
        if (is_minimal(x)) f(x);
      }
    }
  }

 private:
  std::vector<Poly::Coeff> digits(std::size_t index, int coord) const;
  bool unit_canonical(const std::vector<Poly::Coeff>& c0, const std::vector<Poly::Coeff>& c1,
                      const std::vector<Poly::Coeff>& c2) const;

  std::uint32_t q_;
  bool empty_ = false;
  std::size_t length_[3]{};
  std::size_t count_[3]{};
};

/// Visits every point with Ht ≤ B exactly once, as its canonical representative,
/// in the order (x2, x0, x1) described on the point sources, for any thread count.
template <class Visitor>
void enumerate_points(const Rationals&, const Rational& bound, Visitor&& visit, EnumOptions opts = {}) {
  RationalPointSource src(bound);
  ordered_chunks<IntegralTriple>(
      src.chunks(), opts.threads,
      [&](std::size_t c, std::vector<IntegralTriple>& out) {
        src.for_each_in_chunk(c, [&](const IntegralTriple& x) { out.push_back(x); });
      },
      visit);
}

template <class Visitor>
void enumerate_points(const FunctionField& k, DegreeBound bound, Visitor&& visit, EnumOptions opts = {}) {
  FunctionPointSource src(k, bound);
  ordered_chunks<FunctionTriple>(
      src.chunks(), opts.threads,
      [&](std::size_t c, std::vector<FunctionTriple>& out) {
        src.for_each_in_chunk(c, [&](const FunctionTriple& x) { out.push_back(x); });
      },
      visit);
}

/// Census mode: body(point, acc) runs concurrently on per-worker accumulators
/// that are merged with merge(acc, other). merge must be commutative and associative.
template <class Acc, class Body, class Merge>
Acc reduce_points(const Rationals&, const Rational& bound, const Acc& identity, Body&& body, Merge&& merge,
                  EnumOptions opts = {}) {
  RationalPointSource src(bound);
  return reduce_chunks(
      src.chunks(), opts.threads, identity,
      [&](std::size_t c, Acc& acc) { src.for_each_in_chunk(c, [&](const IntegralTriple& x) { body(x, acc); }); },
      merge);
}

template <class Acc, class Body, class Merge>
Acc reduce_points(const FunctionField& k, DegreeBound bound, const Acc& identity, Body&& body, Merge&& merge,
                  EnumOptions opts = {}) {
  FunctionPointSource src(k, bound);
  return reduce_chunks(
      src.chunks(), opts.threads, identity,
      [&](std::size_t c, Acc& acc) { src.for_each_in_chunk(c, [&](const FunctionTriple& x) { body(x, acc); }); },
      merge);
}

/// N(B).
std::uint64_t count_points(const Rationals& k, const Rational& bound, EnumOptions opts = {});
std::uint64_t count_points(const FunctionField& k, DegreeBound bound, EnumOptions opts = {});

/// A decidable, scaling-invariant condition on points (an open or closed substack).
/// `test` must accept any representative. Over ℚ an optional `integral_test`
/// on canonical integral triples replaces `test` on the hot path.
template <class E>
struct SubstackPredicate {
  std::string name;
  std::function<bool(const WeightedTriple<E>&)> test;
  std::function<bool(const IntegralTriple&)> integral_test;
};

template <class E>
SubstackPredicate<E> always_true() {
  return {"true", [](const WeightedTriple<E>&) { return true; }, [](const IntegralTriple&) { return true; }};
}

template <class E>
SubstackPredicate<E> always_false() {
  return {"false", [](const WeightedTriple<E>&) { return false; }, [](const IntegralTriple&) { return false; }};
}

/// Δ ≠ 0: the image of M_{1,2}.
template <class E>
SubstackPredicate<E> nonsingular() {
  return {"nonsingular", [](const WeightedTriple<E>& x) { return !is_zero(discriminant(to_marked_curve(x))); },
          [](const IntegralTriple& x) { return is_nonsingular_integral(x); }};
}

struct PredicateCount {
  std::uint64_t n_pred = 0;
  std::uint64_t n_total = 0;
  friend bool operator==(const PredicateCount&, const PredicateCount&) = default;
};

/// One visited point in this many is re-tested on λ-scaled representatives.
inline constexpr std::uint64_t kScalingCheckStride = 509;

/// Counts points satisfying pred alongside the total, in one pass. Throws
/// ContractError if a sampled orbit shows pred is not scaling invariant.
PredicateCount count_with_predicate(const Rationals& k, const Rational& bound,
                                    const SubstackPredicate<Rational>& pred, EnumOptions opts = {});
PredicateCount count_with_predicate(const FunctionField& k, DegreeBound bound,
                                    const SubstackPredicate<RatFunc>& pred, EnumOptions opts = {});

/// Re-tests pred on λ·x for a fixed set of scalars λ; throws ContractError on a mismatch.
void check_scaling_invariance(const SubstackPredicate<Rational>& pred, const RationalTriple& x, bool expected);
void check_scaling_invariance(const SubstackPredicate<RatFunc>& pred, const FunctionTriple& x, bool expected);

}  // namespace wpc
