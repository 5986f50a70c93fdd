#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "json.hpp"
#include "oracle.hpp"
#include "wpc/stats.hpp"

using namespace wpc;

namespace {

ExperimentConfig rational_config(std::vector<long> bounds, unsigned threads = 1) {
  ExperimentConfig cfg;
  for (long b : bounds) cfg.bounds.emplace_back(Rational(b));
  cfg.threads = threads;
  return cfg;
}

// Rows built from the naive oracle set and multiples-only classification.
std::vector<DensityRow> naive_rows(const std::vector<long>& bounds, int cap) {
  std::vector<DensityRow> rows;
  for (long B : bounds) {
    DensityRow row{GlobalFieldCtx::rationals(), Rational(B)};
    row.cap = cap;
    for (const auto& x : oracle::rational_points(B)) {
      ++row.n_total;
      auto cls = oracle::multiples_only(x, cap);
      if (cls.kind == TorsionClass::Kind::Singular) ++row.n_singular;
      if (cls.kind == TorsionClass::Kind::NonTorsion) ++row.n_nontorsion;
      if (cls.is_torsion()) ++row.n_torsion_by_order[cls.order];
    }
    rows.push_back(row);
  }
  return rows;
}

DensityRow synthetic(long B, std::uint64_t n) {
  DensityRow r{GlobalFieldCtx::rationals(), Rational(B)};
  r.n_total = n;
  r.n_nontorsion = n;
  return r;
}

}  // namespace

TEST_CASE("census with no bounds") { CHECK(run_census(rational_config({})).empty()); }

TEST_CASE("census at B = 1") {
  auto rows = run_census(rational_config({1}));
  REQUIRE(rows.size() == 1);
  const auto& r = rows[0];
  CHECK(r.n_total == 17);
  CHECK(r.n_singular == 1);
  CHECK(r.conserved());
  CHECK(r.n_torsion_by_order.count(1) == 0);
  CHECK(rows == naive_rows({1}, 12));
}

TEST_CASE("census matches the naive pipeline for B <= 3") {
  auto rows = run_census(rational_config({1, 2, 3}));
  CHECK(rows == naive_rows({1, 2, 3}, 12));
  for (const auto& r : rows) CHECK(r.conserved());
}

TEST_CASE("census is deterministic across thread counts") {
  auto one = run_census(rational_config({1, 2, 3}, 1));
  CHECK(run_census(rational_config({1, 2, 3}, 8)) == one);
  std::ostringstream a, b;
  write_csv(a, one);
  write_csv(b, run_census(rational_config({1, 2, 3}, 3)));
  CHECK(a.str() == b.str());
}

TEST_CASE("census over F_5(t)") {
  ExperimentConfig cfg;
  cfg.field = GlobalFieldCtx::function_field(5);
  cfg.bounds = {DegreeBound{0}};
  cfg.cap = kDefaultFunctionFieldCap;
  auto rows = run_census(cfg);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].n_total == 39);
  CHECK(rows[0].conserved());
  CHECK(rows[0].n_nontorsion == 0);  // constant curves over a finite field
  CHECK(rows[0].bound_label() == "5^0");

  cfg.sample_rate = 0.5;
  cfg.threads = 1;
  auto sampled = run_census(cfg);
  CHECK(sampled[0].n_total == 39);
  CHECK(sampled[0].conserved());
  CHECK(sampled[0].n_unlabeled > 0);
  CHECK(sampled[0].n_unlabeled < 39);
  cfg.threads = 4;
  CHECK(run_census(cfg) == sampled);
}

TEST_CASE("config validation") {
  auto cfg = rational_config({2, 1});
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = rational_config({1, 2});
  cfg.sample_rate = 0.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.sample_rate = 1.0;
  cfg.cap = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.cap = 12;
  cfg.bounds.push_back(DegreeBound{3});
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  ExperimentConfig ff;
  ff.field = GlobalFieldCtx::function_field(7);
  ff.bounds = {DegreeBound{0}, DegreeBound{0}};
  CHECK_THROWS_AS(ff.validate(), std::invalid_argument);
  ff.bounds = {DegreeBound{0}};
  ff.sample_rate = 0.0;
  CHECK_THROWS_AS(ff.validate(), std::invalid_argument);
}

TEST_CASE("theorem1_report") {
  auto rep = theorem1_report({synthetic(2, 10)});
  CHECK(rep.entries[0].non_generic == 0);
  CHECK(rep.entries[0].positive_rank == 1);
  CHECK_THROWS_AS(theorem1_report({}), std::logic_error);
  CHECK_THROWS_AS(theorem1_report({synthetic(2, 0)}), std::logic_error);

  auto rows = run_census(rational_config({1, 2}));
  auto r = theorem1_report(rows);
  const auto& row = rows[1];
  Rational f(static_cast<unsigned long>(row.n_torsion() + row.n_singular), static_cast<unsigned long>(row.n_total));
  f.canonicalize();
  CHECK(r.entries[1].non_generic == f);
  CHECK(r.entries[1].non_generic + r.entries[1].positive_rank == 1);
  auto ex = theorem1_report(rows, true);
  Rational g(static_cast<unsigned long>(row.n_torsion()), static_cast<unsigned long>(row.n_total - row.n_singular));
  g.canonicalize();
  CHECK(ex.entries[1].non_generic == g);
}

TEST_CASE("equidistribution_report") {
  const Rationals QQ;
  auto all = equidistribution_report(QQ, {Rational(1), Rational(2)}, always_true<Rational>());
  for (const auto& e : all) CHECK(e.ratio == 1);
  auto ns = equidistribution_report(QQ, {Rational(1)}, nonsingular<Rational>());
  CHECK(ns[0].ratio == Rational(16, 17));
  SubstackPredicate<Rational> bad{"x1 > 0", [](const RationalTriple& x) { return sgn(x.x1) > 0; }, nullptr};
  CHECK_THROWS_AS(equidistribution_report(QQ, {Rational(2)}, bad), ContractError);
  FunctionField k(5);
  auto fe = equidistribution_report(k, {DegreeBound{0}}, always_true<RatFunc>());
  CHECK(fe[0].bound == "5^0");
  CHECK(fe[0].counts.n_total == 39);
}

TEST_CASE("fit_growth_exponent") {
  CHECK(fit_growth_exponent({synthetic(2, 4 * 512), synthetic(4, 4 * 262144), synthetic(8, 4 * 134217728)}) ==
        doctest::Approx(9.0).epsilon(1e-12));
  CHECK(fit_growth_exponent({synthetic(2, 7), synthetic(4, 7), synthetic(8, 7)}) == doctest::Approx(0.0));
  CHECK_THROWS(fit_growth_exponent({synthetic(2, 7)}));
  CHECK_THROWS(fit_growth_exponent({synthetic(2, 7), synthetic(2, 9)}));
}

TEST_CASE("csv and json output") {
  auto rows = run_census(rational_config({1}));
  std::ostringstream csv;
  write_csv(csv, rows);
  const auto& r = rows[0];
  std::ostringstream expected;
  expected << "bound,n_total,n_singular,t2,t3,t4,t5,t6,t7,t8,t9,t10,t12,n_nontorsion,frac_nontorsion,cap\n";
  expected << "1,17,1";
  for (int n : kCsvOrders) expected << ',' << (r.n_torsion_by_order.count(n) ? r.n_torsion_by_order.at(n) : 0);
  expected << ',' << r.n_nontorsion << ',' << r.n_nontorsion << "/17,12\n";
  CHECK(csv.str() == expected.str());

  std::ostringstream js;
  write_json(js, rows);
  auto doc = nlohmann::json::parse(js.str());
  REQUIRE(doc.size() == 1);
  CHECK(doc[0]["bound"] == "1");
  CHECK(doc[0]["n_total"] == 17);
  CHECK(doc[0]["n_singular"] == 1);
  CHECK(doc[0]["cap"] == 12);
  CHECK(doc[0].size() == 16);

  // orders without a fixed column are appended
  DensityRow odd = synthetic(3, 5);
  odd.n_nontorsion = 3;
  odd.n_torsion_by_order[11] = 2;
  std::ostringstream extra;
  write_csv(extra, {odd});
  CHECK(extra.str().rfind("bound,n_total,n_singular,t2,t3,t4,t5,t6,t7,t8,t9,t10,t12,n_nontorsion,frac_nontorsion,cap,t11\n", 0) == 0);
}

TEST_CASE("decimal rendering") {
  CHECK(decimal(Rational(16, 17)) == "0.941176");
  CHECK(decimal(Rational(1)) == "1.000000");
  CHECK(decimal(Rational(-1, 3), 3) == "-0.333");
  CHECK(decimal(Rational(2, 3), 2) == "0.67");
}
