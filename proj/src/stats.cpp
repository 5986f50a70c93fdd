#include "wpc/stats.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace wpc {

// ---- DensityRow -------------------------------------------------------------

std::uint64_t DensityRow::n_torsion() const {
  std::uint64_t n = 0;
  for (const auto& [order, count] : n_torsion_by_order) n += count;
  return n;
}

bool DensityRow::conserved() const {
  return n_total == n_singular + n_torsion() + n_nontorsion + n_unlabeled;
}

Rational DensityRow::frac_nontorsion() const {
  if (n_total == 0) return 0;
  Rational r(static_cast<unsigned long>(n_nontorsion), static_cast<unsigned long>(n_total));
  r.canonicalize();
  return r;
}

std::string DensityRow::bound_label() const {
  if (const auto* b = std::get_if<Rational>(&bound)) return to_string(*b);
  return std::to_string(field.q) + "^" + std::to_string(std::get<DegreeBound>(bound).degree);
}

double DensityRow::log_bound() const {
  if (const auto* b = std::get_if<Rational>(&bound)) return std::log(b->get_d());
  return static_cast<double>(std::get<DegreeBound>(bound).degree) * std::log(static_cast<double>(field.q));
}

// ---- configuration ----------------------------------------------------------

void ExperimentConfig::validate() const {
  const bool rational = field.kind == GlobalFieldCtx::Kind::Rationals;
  if (!rational) GlobalFieldCtx::function_field(field.q);
  if (cap < 1) throw std::invalid_argument("torsion cap must be at least 1");
  if (!(sample_rate > 0.0 && sample_rate <= 1.0)) throw std::invalid_argument("sample rate must lie in (0, 1]");
  if (rational && sample_rate != 1.0) throw std::invalid_argument("sampling is only available over F_q(t)");
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (rational != std::holds_alternative<Rational>(bounds[i])) {
      throw std::invalid_argument("bound type does not match the field");
    }
    if (i == 0) continue;
    bool increasing = rational ? std::get<Rational>(bounds[i - 1]) < std::get<Rational>(bounds[i])
                               : std::get<DegreeBound>(bounds[i - 1]).degree < std::get<DegreeBound>(bounds[i]).degree;
    if (!increasing) throw std::invalid_argument("bounds must be strictly increasing");
  }
}

// ---- census -----------------------------------------------------------------

namespace {

// Per-bucket tallies; bucket k holds points whose smallest satisfied bound is bounds[k].
struct Tally {
  std::uint64_t total = 0, singular = 0, nontorsion = 0, unlabeled = 0;
  std::vector<std::uint64_t> by_order;
};

using Buckets = std::vector<Tally>;

Buckets empty_buckets(std::size_t n, int cap) {
  Buckets b(n);
  for (auto& t : b) t.by_order.assign(static_cast<std::size_t>(cap) + 1, 0);
  return b;
}

void add(Tally& a, const Tally& b) {
  a.total += b.total;
  a.singular += b.singular;
  a.nontorsion += b.nontorsion;
  a.unlabeled += b.unlabeled;
  for (std::size_t n = 0; n < a.by_order.size(); ++n) a.by_order[n] += b.by_order[n];
}

void merge_buckets(Buckets& a, const Buckets& b) {
  for (std::size_t i = 0; i < a.size(); ++i) add(a[i], b[i]);
}

void record(Tally& t, const TorsionClass& cls) {
  ++t.total;
  switch (cls.kind) {
    case TorsionClass::Kind::Singular:
      ++t.singular;
      break;
    case TorsionClass::Kind::NonTorsion:
      ++t.nontorsion;
      break;
    case TorsionClass::Kind::Order:
      ++t.by_order.at(static_cast<std::size_t>(cls.order));
      break;
  }
}

std::vector<DensityRow> cumulate(const ExperimentConfig& cfg, const Buckets& buckets) {
  std::vector<DensityRow> rows;
  Tally running;
  running.by_order.assign(static_cast<std::size_t>(cfg.cap) + 1, 0);
  for (std::size_t i = 0; i < buckets.size(); ++i) {
    add(running, buckets[i]);
    DensityRow row{cfg.field, cfg.bounds[i]};
    row.n_total = running.total;
    row.n_singular = running.singular;
    row.n_nontorsion = running.nontorsion;
    row.n_unlabeled = running.unlabeled;
    row.cap = cfg.cap;
    for (int n = 1; n <= cfg.cap; ++n) {
      if (running.by_order[static_cast<std::size_t>(n)] != 0) row.n_torsion_by_order[n] = running.by_order[static_cast<std::size_t>(n)];
    }
    if (!row.conserved()) throw std::logic_error("census row violates count conservation");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Sampling decision that depends only on (seed, point), never on scheduling.
bool sampled(const FunctionTriple& x, std::uint64_t seed, double rate) {
  if (rate >= 1.0) return true;
  std::uint64_t h = splitmix64(seed);
  for (std::size_t i = 0; i < 3; ++i) {
    h = splitmix64(h ^ 0x100 ^ i);
    for (Poly::Coeff c : x[i].num().coeffs()) h = splitmix64(h ^ c);
  }
  return static_cast<double>(h >> 11) * 0x1.0p-53 < rate;
}

std::vector<DensityRow> census_rationals(const ExperimentConfig& cfg) {
  std::vector<NorthcottBox> boxes;
  for (const auto& b : cfg.bounds) boxes.push_back(northcott_box(std::get<Rational>(b)));
  Buckets result = reduce_points(
      Rationals{}, std::get<Rational>(cfg.bounds.back()), empty_buckets(boxes.size(), cfg.cap),
      [&](const IntegralTriple& x, Buckets& acc) {
        std::size_t k = 0;
        while (!boxes[k].contains(x)) ++k;
        record(acc[k], classify_integral(x, cfg.cap).cls);
      },
      merge_buckets, {cfg.threads});
  return cumulate(cfg, result);
}

std::vector<DensityRow> census_function_field(const ExperimentConfig& cfg) {
  FunctionField k(cfg.field.q);
  std::vector<std::int64_t> degrees;
  for (const auto& b : cfg.bounds) degrees.push_back(std::get<DegreeBound>(b).degree);
  Buckets result = reduce_points(
      k, std::get<DegreeBound>(cfg.bounds.back()), empty_buckets(degrees.size(), cfg.cap),
      [&](const FunctionTriple& x, Buckets& acc) {
        const std::int64_t m = canonical_height12(x).exponent;
        std::size_t b = 0;
        while (degrees[b] < m) ++b;
        if (!sampled(x, cfg.seed, cfg.sample_rate)) {
          ++acc[b].total;
          ++acc[b].unlabeled;
          return;
        }
        record(acc[b], torsion_order(to_marked_curve(x), cfg.cap).cls);
      },
      merge_buckets, {cfg.threads});
  return cumulate(cfg, result);
}

}  // namespace

std::vector<DensityRow> run_census(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.bounds.empty()) return {};
  if (cfg.field.kind == GlobalFieldCtx::Kind::Rationals) return census_rationals(cfg);
  return census_function_field(cfg);
}

// ---- reports ----------------------------------------------------------------

Theorem1Report theorem1_report(const std::vector<DensityRow>& rows, bool exclude_singular) {
  if (rows.empty()) throw std::logic_error("theorem1_report: no rows");
  Theorem1Report report;
  for (const auto& row : rows) {
    if (row.n_total == 0) throw std::logic_error("theorem1_report: row " + row.bound_label() + " has no points");
    if (!row.conserved()) throw std::logic_error("theorem1_report: row " + row.bound_label() + " is not conserved");
    const std::uint64_t labeled = row.n_total - row.n_unlabeled;
    std::uint64_t num = row.n_torsion() + row.n_singular;
    std::uint64_t den = labeled;
    if (exclude_singular) {
      num = row.n_torsion();
      den = labeled - row.n_singular;
    }
    if (den == 0) throw std::logic_error("theorem1_report: row " + row.bound_label() + " has no elliptic curves");
    Rational f(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
    f.canonicalize();
    if (!report.entries.empty()) {
      const Rational& prev = report.entries.back().non_generic;
      report.nonincreasing = report.nonincreasing && f <= prev;
      report.strictly_decreasing = report.strictly_decreasing && f < prev;
    }
    report.entries.push_back({row.bound_label(), f, Rational(1 - f)});
  }
  return report;
}

namespace {

EquidistributionEntry make_entry(std::string bound, PredicateCount c) {
  Rational r = c.n_total == 0 ? Rational(0)
                              : Rational(static_cast<unsigned long>(c.n_pred), static_cast<unsigned long>(c.n_total));
  r.canonicalize();
  return {std::move(bound), c, r};
}

}  // namespace

std::vector<EquidistributionEntry> equidistribution_report(const Rationals& k, const std::vector<Rational>& bounds,
                                                           const SubstackPredicate<Rational>& pred, EnumOptions opts) {
  std::vector<EquidistributionEntry> out;
  for (const auto& b : bounds) out.push_back(make_entry(to_string(b), count_with_predicate(k, b, pred, opts)));
  return out;
}

std::vector<EquidistributionEntry> equidistribution_report(const FunctionField& k,
                                                           const std::vector<DegreeBound>& bounds,
                                                           const SubstackPredicate<RatFunc>& pred, EnumOptions opts) {
  std::vector<EquidistributionEntry> out;
  for (const auto& b : bounds) {
    out.push_back(make_entry(std::to_string(k.q()) + "^" + std::to_string(b.degree), count_with_predicate(k, b, pred, opts)));
  }
  return out;
}

double fit_growth_exponent(const std::vector<DensityRow>& rows) {
  if (rows.size() < 2) throw std::invalid_argument("growth fit needs at least two rows");
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    if (r.n_total == 0) throw std::invalid_argument("growth fit: row " + r.bound_label() + " has no points");
    xs.push_back(r.log_bound());
    ys.push_back(std::log(static_cast<double>(r.n_total)));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / n;
    my += ys[i] / n;
  }
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0) throw std::invalid_argument("growth fit needs at least two distinct bounds");
  return sxy / sxx;
}

// ---- output -----------------------------------------------------------------

namespace {

struct Columns {
  std::vector<int> extra_orders;
  bool unlabeled = false;
};

Columns columns_for(const std::vector<DensityRow>& rows) {
  std::set<int> extra;
  Columns cols;
  for (const auto& r : rows) {
    for (const auto& [order, count] : r.n_torsion_by_order) {
      if (count != 0 && std::find(kCsvOrders.begin(), kCsvOrders.end(), order) == kCsvOrders.end()) extra.insert(order);
    }
    cols.unlabeled = cols.unlabeled || r.n_unlabeled != 0;
  }
  cols.extra_orders.assign(extra.begin(), extra.end());
  return cols;
}

std::uint64_t order_count(const DensityRow& r, int order) {
  auto it = r.n_torsion_by_order.find(order);
  return it == r.n_torsion_by_order.end() ? 0 : it->second;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<DensityRow>& rows) {
  const Columns cols = columns_for(rows);
  out << "bound,n_total,n_singular";
  for (int n : kCsvOrders) out << ",t" << n;
  out << ",n_nontorsion,frac_nontorsion,cap";
  for (int n : cols.extra_orders) out << ",t" << n;
  if (cols.unlabeled) out << ",n_unlabeled";
  out << '\n';
  for (const auto& r : rows) {
    out << r.bound_label() << ',' << r.n_total << ',' << r.n_singular;
    for (int n : kCsvOrders) out << ',' << order_count(r, n);
    out << ',' << r.n_nontorsion << ',' << to_fraction_string(r.frac_nontorsion()) << ',' << r.cap;
    for (int n : cols.extra_orders) out << ',' << order_count(r, n);
    if (cols.unlabeled) out << ',' << r.n_unlabeled;
    out << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<DensityRow>& rows) {
  const Columns cols = columns_for(rows);
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    o["bound"] = r.bound_label();
    o["n_total"] = r.n_total;
    o["n_singular"] = r.n_singular;
    for (int n : kCsvOrders) o["t" + std::to_string(n)] = order_count(r, n);
    o["n_nontorsion"] = r.n_nontorsion;
    o["frac_nontorsion"] = to_fraction_string(r.frac_nontorsion());
    o["cap"] = r.cap;
    for (int n : cols.extra_orders) o["t" + std::to_string(n)] = order_count(r, n);
    if (cols.unlabeled) o["n_unlabeled"] = r.n_unlabeled;
    doc.push_back(std::move(o));
  }
  out << doc.dump(2) << '\n';
}

std::string decimal(const Rational& x, int digits) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Rational scaled = abs(x) * scale;
  // round half up on the magnitude
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), Integer(scaled.get_num() * 2 + scaled.get_den()).get_mpz_t(),
             Integer(scaled.get_den() * 2).get_mpz_t());
  std::string digits_str = r.get_str();
  if (digits_str.size() <= static_cast<std::size_t>(digits)) {
    digits_str.insert(0, static_cast<std::size_t>(digits) + 1 - digits_str.size(), '0');
  }
  std::string out = digits_str.substr(0, digits_str.size() - static_cast<std::size_t>(digits));
  if (digits > 0) out += "." + digits_str.substr(digits_str.size() - static_cast<std::size_t>(digits));
  return (sgn(x) < 0 && r != 0 ? "-" : "") + out;
}

void write_text(std::ostream& out, const std::vector<DensityRow>& rows, bool exclude_singular) {
  out << std::left << std::setw(10) << "bound" << std::right << std::setw(14) << "n_total" << std::setw(12)
      << "singular" << std::setw(12) << "torsion" << std::setw(14) << "nontorsion" << std::setw(14) << "f(B)"
      << std::setw(14) << "1-f(B)" << '\n';
  if (rows.empty()) return;
  Theorem1Report rep = theorem1_report(rows, exclude_singular);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out << std::left << std::setw(10) << r.bound_label() << std::right << std::setw(14) << r.n_total << std::setw(12)
        << r.n_singular << std::setw(12) << r.n_torsion() << std::setw(14) << r.n_nontorsion << std::setw(14)
        << decimal(rep.entries[i].non_generic) << std::setw(14) << decimal(rep.entries[i].positive_rank) << '\n';
  }
  out << "torsion orders:";
  std::map<int, std::uint64_t> last = rows.back().n_torsion_by_order;
  for (const auto& [order, count] : last) out << ' ' << order << ':' << count;
  out << " (at " << rows.back().bound_label() << ", cap " << rows.back().cap << ")\n";
  out << "f(B) nonincreasing: " << (rep.nonincreasing ? "yes" : "no") << '\n';
  if (rows.size() >= 2) out << "growth exponent: " << std::fixed << std::setprecision(4) << fit_growth_exponent(rows) << '\n';
}

}  // namespace wpc
