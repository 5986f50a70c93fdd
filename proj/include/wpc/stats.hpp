#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "wpc/enumerate.hpp"

namespace wpc {

/// Census record for one height bound.
struct DensityRow {
  GlobalFieldCtx field;
  HeightBound bound;
  std::uint64_t n_total = 0;
  std::uint64_t n_singular = 0;
  /// order → count. Order 1 never occurs: the marked point is affine.
  std::map<int, std::uint64_t> n_torsion_by_order;
  std::uint64_t n_nontorsion = 0;
  /// Points left unclassified by sampling (F_q(t) only); zero at rate 1.
  std::uint64_t n_unlabeled = 0;
  int cap = 0;

  std::uint64_t n_torsion() const;
  /// n_total = n_singular + Σ torsion + n_nontorsion + n_unlabeled.
  bool conserved() const;
  Rational frac_nontorsion() const;
  /// "n" or "n/d" over ℚ, "q^d" over F_q(t).
  std::string bound_label() const;
  double log_bound() const;
  friend bool operator==(const DensityRow&, const DensityRow&) = default;
};

enum class OutputFormat { Csv, Json, Text };

struct ExperimentConfig {
  GlobalFieldCtx field;
  /// Strictly increasing; Rational entries over ℚ, DegreeBound entries over F_q(t).
  std::vector<HeightBound> bounds;
  int cap = kRationalTorsionCap;
  unsigned threads = 1;
  std::string output_path;
  OutputFormat format = OutputFormat::Csv;
  /// Fraction of F_q(t) points that get a torsion label; must be 1 over ℚ.
  double sample_rate = 1.0;
  std::uint64_t seed = 0x5eed;
  /// Drop singular points from the density denominator instead of counting them as non-generic.
  bool exclude_singular = false;

  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
};

/// One enumeration pass at the largest bound; each point is classified once
/// (chart, Δ, torsion order) and binned to the smallest bound it satisfies.
/// Deterministic for any thread count when sample_rate = 1.
std::vector<DensityRow> run_census(const ExperimentConfig& cfg);

struct Theorem1Entry {
  std::string bound;
  /// (torsion + singular) / total, or torsion / (total − singular) when singular points are excluded.
  Rational non_generic;
  Rational positive_rank;
};

struct Theorem1Report {
  std::vector<Theorem1Entry> entries;
  bool nonincreasing = true;
  bool strictly_decreasing = true;
};

/// Throws std::logic_error on an empty row list or a row with n_total = 0.
Theorem1Report theorem1_report(const std::vector<DensityRow>& rows, bool exclude_singular = false);

struct EquidistributionEntry {
  std::string bound;
  PredicateCount counts;
  Rational ratio;
};

/// n_pred / n_total per bound; ContractError propagates from count_with_predicate.
std::vector<EquidistributionEntry> equidistribution_report(const Rationals& k, const std::vector<Rational>& bounds,
                                                           const SubstackPredicate<Rational>& pred,
                                                           EnumOptions opts = {});
std::vector<EquidistributionEntry> equidistribution_report(const FunctionField& k,
                                                           const std::vector<DegreeBound>& bounds,
                                                           const SubstackPredicate<RatFunc>& pred,
                                                           EnumOptions opts = {});

/// Least-squares slope of log n_total against log bound. Needs ≥ 2 distinct
/// bounds and nonzero counts.
double fit_growth_exponent(const std::vector<DensityRow>& rows);

/// Orders with their own CSV column, in column order.
inline constexpr std::array<int, 10> kCsvOrders{2, 3, 4, 5, 6, 7, 8, 9, 10, 12};

/// CSV header plus one line per row. Orders outside kCsvOrders and the
/// n_unlabeled column are appended after `cap` only when some row needs them.
void write_csv(std::ostream& out, const std::vector<DensityRow>& rows);
/// Array of objects with the CSV keys, in CSV column order.
void write_json(std::ostream& out, const std::vector<DensityRow>& rows);
/// Human-readable table with the non-generic fractions f(B).
void write_text(std::ostream& out, const std::vector<DensityRow>& rows, bool exclude_singular = false);

/// Decimal rendering of an exact fraction with `digits` places.
std::string decimal(const Rational& x, int digits = 6);

}  // namespace wpc
