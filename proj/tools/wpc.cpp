// wpc: heights, normalization, torsion classification, enumeration and
// census statistics for points of P(2,3,4) over Q and F_q(t).

#include <fstream>
#include <optional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wpc/stats.hpp"

namespace {

using namespace wpc;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string field = "Q";
  std::string triple;
  std::string bound;
  std::vector<std::string> bounds;
  std::optional<int> cap;  // unset: field default
  unsigned threads = 1;
  std::string out;
  std::string format = "csv";
  bool count_only = false;
  double sample_rate = 1.0;
  std::uint64_t seed = 0x5eed;
  bool exclude_singular = false;
};

// Fills every option the command line did not set from the JSON config file.
void apply_config(const std::string& path, CLI::App& sub, Options& o) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file '" + path + "': " + e.what());
  }
  if (!doc.is_object()) throw UsageError("config file must hold a JSON object");
  auto unset = [&](const char* flag) {
    const CLI::Option* opt = sub.get_option_no_throw(flag);
    return opt != nullptr && opt->count() == 0;
  };
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "field") {
        if (unset("--field")) o.field = value.is_string() ? value.get<std::string>() : std::to_string(value.get<unsigned>());
      } else if (key == "triple") {
        if (unset("--triple")) o.triple = value.get<std::string>();
      } else if (key == "bound") {
        if (unset("--bound")) o.bound = value.is_string() ? value.get<std::string>() : value.dump();
      } else if (key == "bounds") {
        if (unset("--bounds")) {
          o.bounds.clear();
          for (const auto& b : value) o.bounds.push_back(b.is_string() ? b.get<std::string>() : b.dump());
        }
      } else if (key == "cap") {
        if (unset("--cap")) o.cap = value.get<int>();
      } else if (key == "threads") {
        if (unset("--threads")) o.threads = value.get<unsigned>();
      } else if (key == "out") {
        if (unset("--out")) o.out = value.get<std::string>();
      } else if (key == "format") {
        if (unset("--format")) o.format = value.get<std::string>();
      } else if (key == "count_only") {
        if (unset("--count-only")) o.count_only = value.get<bool>();
      } else if (key == "sample_rate") {
        if (unset("--sample-rate")) o.sample_rate = value.get<double>();
      } else if (key == "seed") {
        if (unset("--seed")) o.seed = value.get<std::uint64_t>();
      } else if (key == "exclude_singular") {
        if (unset("--exclude-singular")) o.exclude_singular = value.get<bool>();
      } else {
        throw UsageError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file '" + path + "': " + e.what());
  }
}

int default_cap(const GlobalFieldCtx& f) {
  return f.kind == GlobalFieldCtx::Kind::Rationals ? kRationalTorsionCap : kDefaultFunctionFieldCap;
}

// Over F_q(t) a bound is a degree d (B = q^d), written "d" or "q^d".
HeightBound parse_bound(const GlobalFieldCtx& f, const std::string& text) {
  if (text.empty()) throw UsageError("missing height bound");
  if (f.kind == GlobalFieldCtx::Kind::Rationals) {
    Rational b = parse_rational(text);
    if (sgn(b) <= 0) throw UsageError("height bound must be positive");
    return b;
  }
  std::string digits = text;
  if (auto caret = text.find('^'); caret != std::string::npos) {
    if (text.substr(0, caret) != std::to_string(f.q)) throw UsageError("bound base must equal q = " + std::to_string(f.q));
    digits = text.substr(caret + 1);
  }
  std::size_t used = 0;
  long long d = 0;
  try {
    d = std::stoll(digits, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != digits.size()) throw UsageError("function field bound must be an integer degree, got '" + text + "'");
  return DegreeBound{d};
}

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  if (s == "text") return OutputFormat::Text;
  throw UsageError("format must be csv, json or text");
}

// Writes the whole document at once, so a failure never leaves a partial file.
void emit(const Options& o, const std::string& document) {
  if (o.out.empty()) {
    std::cout << document;
    std::cout.flush();
    if (!std::cout) throw std::runtime_error("failed writing to standard output");
    return;
  }
  std::ofstream file(o.out, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open '" + o.out + "' for writing");
  file << document;
  file.close();
  if (!file) throw std::runtime_error("failed writing '" + o.out + "'");
}

template <class K>
int run_height(const K& k, const Options& o) {
  auto x = parse_triple(k, o.triple);
  std::cout << format_height(height12(x)) << '\n';
  return 0;
}

template <class K>
int run_normalize(const K& k, const Options& o) {
  std::cout << format_triple(k, normalize(parse_triple(k, o.triple))) << '\n';
  return 0;
}

template <class K>
int run_classify(const K& k, const Options& o, int cap) {
  auto x = normalize(parse_triple(k, o.triple));
  auto curve = to_marked_curve(x);
  TorsionResult r = torsion_order(curve, cap);
  std::cout << describe(r) << '\n'
            << "triple " << format_triple(k, x) << '\n'
            << "a4 " << k.format(curve.a4) << '\n'
            << "a6 " << k.format(curve.a6) << '\n'
            << "delta " << k.format(discriminant(curve)) << '\n'
            << "point " << k.format(curve.px) << ',' << k.format(curve.py) << '\n';
  return 0;
}

int run_enumerate(const GlobalFieldCtx& f, const Options& o) {
  HeightBound b = parse_bound(f, o.bound);
  EnumOptions opts{o.threads};
  std::ostringstream doc;
  if (f.kind == GlobalFieldCtx::Kind::Rationals) {
    const Rational& B = std::get<Rational>(b);
    if (o.count_only) {
      doc << count_points(Rationals{}, B, opts) << '\n';
    } else {
      enumerate_points(
          Rationals{}, B, [&](const IntegralTriple& x) { doc << x[0] << ',' << x[1] << ',' << x[2] << '\n'; }, opts);
    }
  } else {
    FunctionField k(f.q);
    DegreeBound d = std::get<DegreeBound>(b);
    if (o.count_only) {
      doc << count_points(k, d, opts) << '\n';
    } else {
      enumerate_points(k, d, [&](const FunctionTriple& x) { doc << format_triple(k, x) << '\n'; }, opts);
    }
  }
  emit(o, doc.str());
  return 0;
}

int run_census_cmd(const GlobalFieldCtx& f, const Options& o, int cap) {
  ExperimentConfig cfg;
  cfg.field = f;
  for (const auto& b : o.bounds) cfg.bounds.push_back(parse_bound(f, b));
  cfg.cap = cap;
  cfg.threads = o.threads;
  cfg.output_path = o.out;
  cfg.format = parse_format(o.format);
  cfg.sample_rate = o.sample_rate;
  cfg.seed = o.seed;
  cfg.exclude_singular = o.exclude_singular;
  cfg.validate();
  auto rows = run_census(cfg);
  std::ostringstream doc;
  switch (cfg.format) {
    case OutputFormat::Csv:
      write_csv(doc, rows);
      break;
    case OutputFormat::Json:
      write_json(doc, rows);
      break;
    case OutputFormat::Text:
      write_text(doc, rows, cfg.exclude_singular);
      break;
  }
  emit(o, doc.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heights, enumeration and torsion census on P(2,3,4) over Q and F_q(t)"};
  app.require_subcommand(1);
  Options o;
  std::string config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--field", o.field, "Q (default) or a prime q >= 5 for F_q(t)");
    sub->add_option("--config", config_path, "JSON file mirroring the flags; flags take precedence");
  };
  auto* height = app.add_subcommand("height", "print Ht^12 as n/d (Q) or q^m (F_q(t))");
  height->add_option("--triple", o.triple, "x0,x1,x2");
  auto* norm = app.add_subcommand("normalize", "print the canonical representative");
  norm->add_option("--triple", o.triple, "x0,x1,x2");
  auto* classify = app.add_subcommand("classify", "torsion order of the marked point");
  classify->add_option("--triple", o.triple, "x0,x1,x2");
  classify->add_option("--cap", o.cap, "largest order tried (default 12 over Q, 24 over F_q(t))");
  auto* enumerate = app.add_subcommand("enumerate", "list canonical points with Ht <= B");
  enumerate->add_option("--bound", o.bound, "B over Q; degree d (or q^d) over F_q(t)");
  enumerate->add_option("--threads", o.threads, "worker threads, 0 = all");
  enumerate->add_option("--out", o.out, "output file (default stdout)");
  enumerate->add_flag("--count-only", o.count_only, "print N(B) only");
  auto* census = app.add_subcommand("census", "torsion census per bound");
  census->add_option("--bounds", o.bounds, "increasing bounds, comma separated")->delimiter(',');
  census->add_option("--cap", o.cap, "largest order tried (default 12 over Q, 24 over F_q(t))");
  census->add_option("--threads", o.threads, "worker threads, 0 = all");
  census->add_option("--out", o.out, "output file (default stdout)");
  census->add_option("--format", o.format, "csv (default), json or text");
  census->add_option("--sample-rate", o.sample_rate, "fraction of F_q(t) points to classify");
  census->add_option("--seed", o.seed, "sampling seed");
  census->add_flag("--exclude-singular", o.exclude_singular, "leave singular points out of the f(B) denominator");
  for (auto* sub : {height, norm, classify, enumerate, census}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (!config_path.empty()) apply_config(config_path, *sub, o);
    const GlobalFieldCtx field = GlobalFieldCtx::parse(o.field);
    const int cap = o.cap.value_or(default_cap(field));
    if (cap < 1) throw UsageError("--cap must be at least 1");
    const bool needs_triple = sub == height || sub == norm || sub == classify;
    if (needs_triple && o.triple.empty()) throw UsageError("--triple is required");
    if (sub == enumerate && o.bound.empty()) throw UsageError("--bound is required");

    const bool rational = field.kind == GlobalFieldCtx::Kind::Rationals;
    if (sub == height) return rational ? run_height(Rationals{}, o) : run_height(FunctionField(field.q), o);
    if (sub == norm) return rational ? run_normalize(Rationals{}, o) : run_normalize(FunctionField(field.q), o);
    if (sub == classify) {
      return rational ? run_classify(Rationals{}, o, cap) : run_classify(FunctionField(field.q), o, cap);
    }
    if (sub == enumerate) return run_enumerate(field, o);
    return run_census_cmd(field, o, cap);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
