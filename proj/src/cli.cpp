#include "eisenfact/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "eisenfact/verify.hpp"

namespace eisenfact {

namespace {

struct CommonOpts {
  long depth = 0;  // 0 = unset
  std::string mode = "exact";
  std::string format = "human";
  std::string cache_dir;
  std::string catalog_path;
  std::string out_path;
  uint64_t seed = 0;
  int jobs = 1;
  int primes = 3;
  double tol = 0.0;  // 0 = default
  bool serial_kernels = false;
};

void add_common(CLI::App* cmd, CommonOpts* o) {
  cmd->add_option("--depth", o->depth,
                  "minimum verification depth in q-units (beats EISEN_DEPTH)");
  cmd->add_option("--seed", o->seed, "seed for sample points and primes");
  cmd->add_option("--cache", o->cache_dir, "series cache directory");
  cmd->add_flag("--serial-kernels", o->serial_kernels,
                "force the serial convolution kernels");
}

VerifyConfig make_config(const CommonOpts& o) {
  VerifyConfig cfg;
  if (const char* env = std::getenv("EISEN_DEPTH")) {
    long v = std::atol(env);
    if (v > 0) cfg.min_depth = v;
  }
  if (o.depth > 0) cfg.min_depth = o.depth;
  cfg.mode = o.mode == "multimodular" ? VerifyConfig::Mode::Multimodular
                                      : VerifyConfig::Mode::Exact;
  cfg.seed = o.seed;
  cfg.jobs = o.jobs;
  cfg.num_primes = o.primes;
  if (o.tol > 0) {
    cfg.transform_tol = o.tol;
    cfg.zero_tol = o.tol;
  }
  if (o.serial_kernels) kernels::set_mode(kernels::Mode::ForceSerial);
  return cfg;
}

std::string coeff_pretty(const RingElem& c) {
  if (c.is_rational()) return rational_str(c.rational_value());
  // r*i prints as the familiar "4i" / "-i" forms.
  RingElem imag_part = c * const_i().inverse();
  if (imag_part.is_rational()) {
    Rational r = imag_part.rational_value();
    if (r == 1) return "i";
    if (r == -1) return "-i";
    return rational_str(r) + "i";
  }
  return c.to_string();
}

std::string exponent_label(long n, int d) {
  Rational e = exponent_q(n, d);
  if (e == 0) return "";
  if (e == 1) return "q";
  if (is_integer(e)) return "q^" + rational_str(e);
  return "q^{" + rational_str(e) + "}";
}

int cmd_expand(const std::string& expr_text, long depth,
               const std::string& format, const std::string& cache_dir) {
  Registry reg(cache_dir);
  ExprPtr e = parse_expr(expr_text);
  ExactGenSource src(reg);
  Series<ExactRing> s = eval_series_expr(reg.ring(), e, depth, src);
  long hi = std::min(s.known, depth * s.denom);
  if (format == "json") {
    nlohmann::json j;
    j["expr"] = print_expr(e);
    j["denom"] = s.denom;
    j["known_below"] = rational_str(s.known_qunits());
    j["terms"] = nlohmann::json::array();
    for (long n = s.low; n < hi; ++n) {
      const RingElem* c = s.stored(n);
      RingElem v = c ? *c : RingElem();
      auto emb = v.embed();
      j["terms"].push_back({{"exponent", rational_str(exponent_q(n, s.denom))},
                            {"coefficient", v.to_string()},
                            {"approx_re", emb.real()},
                            {"approx_im", emb.imag()}});
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::ostringstream os;
  bool first = true;
  for (long n = s.low; n < hi; ++n) {
    const RingElem* c = s.stored(n);
    RingElem v = c ? *c : RingElem();
    if (!first) os << ", ";
    first = false;
    std::string lab = exponent_label(n, s.denom);
    if (lab.empty())
      os << coeff_pretty(v);
    else
      os << lab << ":" << coeff_pretty(v);
  }
  if (first) os << "0 (to order " << rational_str(exponent_q(hi, s.denom)) << ")";
  std::cout << os.str() << "\n";
  return 0;
}

void print_report(const Report& r, const std::string& format) {
  if (format == "json") {
    CatalogRun one;
    one.reports.push_back(r);
    one.total = 1;
    one.pass = r.status == Report::Status::Pass;
    one.fail = r.status == Report::Status::Fail;
    one.error = r.status == Report::Status::Error;
    std::cout << catalog_run_to_json(one) << "\n";
  } else {
    std::cout << report_line(r) << "\n";
  }
}

int report_exit(const Report& r) {
  switch (r.status) {
    case Report::Status::Pass: return 0;
    case Report::Status::Fail: return 1;
    case Report::Status::Error: return 2;
  }
  return 2;
}

IdentityEntry find_entry(const std::string& path, const std::string& id) {
  for (auto& e : load_catalog_file(path))
    if (e.id == id) return e;
  throw Error(ErrorCode::BadEntry, "no entry with id " + id + " in " + path);
}

int cmd_verify(const CommonOpts& o, const std::string& expr_text,
               const std::string& id, long level, const std::string& weight) {
  VerifyConfig cfg = make_config(o);
  Registry reg(o.cache_dir);
  IdentityEntry entry;
  if (!id.empty()) {
    entry = find_entry(o.catalog_path.empty() ? "catalog/paper.cat"
                                              : o.catalog_path,
                       id);
  } else {
    entry.id = "cli";
    entry.kind = EntryKind::ExactZero;
    entry.level = static_cast<int>(level);
    std::size_t slash = weight.find('/');
    entry.weight = slash == std::string::npos
                       ? Rational(std::stol(weight))
                       : make_rational(std::stol(weight),
                                       std::stol(weight.substr(slash + 1)));
    entry.expr = parse_expr(expr_text);
  }
  NumericEvaluator ev(reg, cfg.numeric);
  std::vector<ModRing> rings;
  if (entry.kind == EntryKind::ExactZero &&
      cfg.mode == VerifyConfig::Mode::Multimodular)
    rings = sample_mod_rings(cfg.num_primes, cfg.seed);
  Report r = verify_entry(entry, reg, rings, ev, cfg);
  print_report(r, o.format);
  return report_exit(r);
}

int cmd_catalog(const CommonOpts& o, const std::string& path) {
  VerifyConfig cfg = make_config(o);
  Registry reg(o.cache_dir);
  std::vector<IdentityEntry> entries = load_catalog_file(path);
  CatalogRun run = run_catalog(entries, reg, cfg);
  if (o.format == "json") {
    std::cout << catalog_run_to_json(run) << "\n";
  } else {
    for (const Report& r : run.reports) std::cout << report_line(r) << "\n";
    std::cout << run.pass << "/" << run.total << " pass";
    if (run.fail) std::cout << ", " << run.fail << " fail";
    if (run.error) std::cout << ", " << run.error << " error";
    std::cout << "\n";
  }
  if (!o.out_path.empty()) {
    std::ofstream out(o.out_path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + o.out_path);
    out << catalog_run_to_json(run) << "\n";
  }
  return run.all_pass() ? 0 : 1;
}

int cmd_eval(const CommonOpts& o, const std::string& expr_text, double re,
             double im, long depth) {
  VerifyConfig cfg = make_config(o);
  if (im <= 0)
    throw Error(ErrorCode::NonConvergent,
                "evaluation point must have positive imaginary part");
  if (depth > 0) cfg.numeric.depth = depth;
  Registry reg(o.cache_dir);
  NumericEvaluator ev(reg, cfg.numeric);
  ExprPtr e = parse_expr(expr_text);
  auto v = ev.eval(e, std::complex<double>(re, im));
  std::cout.precision(15);
  std::cout << "value = " << v.v.real()
            << (v.v.imag() < 0 ? " - " : " + ") << std::abs(v.v.imag())
            << "i  |value| = " << std::abs(v.v) << "  tail <= " << v.tail
            << "\n";
  return 0;
}

int cmd_transform_check(const CommonOpts& o, const std::string& id,
                        const std::string& lhs, const std::string& rhs,
                        const std::string& multiplier, long level, int points) {
  VerifyConfig cfg = make_config(o);
  cfg.sample_count = points;
  Registry reg(o.cache_dir);
  IdentityEntry entry;
  if (!id.empty()) {
    entry = find_entry(o.catalog_path.empty() ? "catalog/paper.cat"
                                              : o.catalog_path,
                       id);
    if (entry.kind != EntryKind::NumericTransform)
      throw Error(ErrorCode::BadEntry, id + " is not a numeric-transform entry");
  } else {
    entry.id = "cli";
    entry.kind = EntryKind::NumericTransform;
    entry.level = static_cast<int>(level);
    entry.lhs = parse_expr(lhs);
    entry.rhs = parse_expr(rhs);
    entry.multiplier = parse_expr(multiplier);
  }
  NumericEvaluator ev(reg, cfg.numeric);
  Report r = check_transform(entry, ev, cfg);
  print_report(r, o.format);
  return report_exit(r);
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"exact q-expansion engine for Eisenstein-series factorizations"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string expr_text, id, weight = "1";
  long level = 1, depth = 16;
  double tau_re = 0.0, tau_im = 1.0;
  int points = 16;
  std::string path;

  auto* expand = app.add_subcommand("expand", "print a q-expansion");
  expand->add_option("expr", expr_text, "generator or expression")->required();
  expand->add_option("--depth", depth, "q-units to print (default 16)");
  expand->add_option("--format", o.format, "human|json");
  expand->add_option("--cache", o.cache_dir, "series cache directory");

  auto* verify = app.add_subcommand("verify", "verify an exact identity");
  verify->add_option("expr", expr_text, "expression asserted to vanish");
  verify->add_option("--id", id, "catalog entry id instead of an expression");
  verify->add_option("--catalog", o.catalog_path, "catalog file for --id");
  verify->add_option("--level", level, "Gamma(N) annotation (default 1)");
  verify->add_option("--weight", weight, "weight annotation (default 1)");
  verify->add_option("--mode", o.mode, "exact|multimodular");
  verify->add_option("--primes", o.primes, "primes for multimodular mode");
  verify->add_option("--format", o.format, "human|json");
  add_common(verify, &o);

  auto* catalog = app.add_subcommand("catalog", "run a catalog of identities");
  catalog->add_option("path", path, "catalog file")->required();
  catalog->add_option("--mode", o.mode, "exact|multimodular");
  catalog->add_option("--jobs", o.jobs, "concurrent entry verifications");
  catalog->add_option("--out", o.out_path, "write the JSON report here");
  catalog->add_option("--primes", o.primes, "primes for multimodular mode");
  catalog->add_option("--format", o.format, "human|json");
  catalog->add_option("--tol", o.tol, "numeric tolerance override");
  add_common(catalog, &o);

  auto* eval = app.add_subcommand("eval", "evaluate at a point in H");
  eval->add_option("expr", expr_text, "expression")->required();
  eval->add_option("--tau", [&tau_re, &tau_im](CLI::results_t res) {
        tau_re = std::stod(res.at(0));
        tau_im = std::stod(res.at(1));
        return true;
      },
      "evaluation point: re im")
      ->expected(2)
      ->required();
  eval->add_option("--depth", depth, "series depth in q-units");
  eval->add_option("--cache", o.cache_dir, "series cache directory");

  auto* tc = app.add_subcommand("transform-check",
                                "check a Fricke transformation law numerically");
  std::string lhs, rhs, multiplier;
  tc->add_option("--id", id, "catalog entry id");
  tc->add_option("--catalog", o.catalog_path, "catalog file for --id");
  tc->add_option("--lhs", lhs, "left side, e.g. \"F(1,0)[-1/(1*t)]\"");
  tc->add_option("--rhs", rhs, "right side, e.g. \"F(1,1)\"");
  tc->add_option("--multiplier", multiplier, "multiplier in t, e.g. \"t^6\"");
  tc->add_option("--level", level, "Fricke level fallback");
  tc->add_option("--points", points, "sample point count (default 16)");
  tc->add_option("--tol", o.tol, "relative tolerance (default 1e-9)");
  tc->add_option("--format", o.format, "human|json");
  add_common(tc, &o);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (expand->parsed()) return cmd_expand(expr_text, depth, o.format, o.cache_dir);
    if (verify->parsed()) {
      if (expr_text.empty() && id.empty()) {
        std::cerr << "verify: need an expression or --id\n";
        return 2;
      }
      return cmd_verify(o, expr_text, id, level, weight);
    }
    if (catalog->parsed()) return cmd_catalog(o, path);
    if (eval->parsed()) return cmd_eval(o, expr_text, tau_re, tau_im, depth);
    if (tc->parsed()) {
      if (id.empty() && (lhs.empty() || rhs.empty() || multiplier.empty())) {
        std::cerr << "transform-check: need --id or --lhs/--rhs/--multiplier\n";
        return 2;
      }
      return cmd_transform_check(o, id, lhs, rhs, multiplier, level, points);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace eisenfact
