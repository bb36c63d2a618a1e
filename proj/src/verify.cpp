#include "eisenfact/verify.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eisenfact {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

class ModGenSource : public GenSource<ModRing> {
 public:
  ModGenSource(Registry& reg, const ModRing& ring) : reg_(reg), ring_(ring) {}
  Series<ModRing> generator(const GeneratorId& id, long depth) override {
    return reduce_series(ring_, reg_.generate(id, depth));
  }

 private:
  Registry& reg_;
  const ModRing& ring_;
};

}  // namespace

const char* status_name(Report::Status s) {
  switch (s) {
    case Report::Status::Pass: return "pass";
    case Report::Status::Fail: return "fail";
    case Report::Status::Error: return "error";
  }
  return "?";
}

Rational sturm_depth(long level, const Rational& weight) {
  if (level < 1)
    throw Error(ErrorCode::BadEntry, "sturm_depth: level must be >= 1");
  Rational w = is_integer(weight) ? weight : Rational(ceil_long(weight));
  Rational mu(1);
  if (level > 1) {
    mu = Rational(level) * level * level;
    long n = level;
    for (long p = 2; p * p <= n; ++p) {
      if (n % p) continue;
      mu *= make_rational(p * p - 1, p * p);
      while (n % p == 0) n /= p;
    }
    if (n > 1) mu *= make_rational(n * n - 1, n * n);
  }
  Rational d = w * mu / (12 * level);
  d.canonicalize();
  return d;
}

long exact_check_depth(const IdentityEntry& e, const VerifyConfig& cfg) {
  long depth = ceil_long(sturm_depth(e.level, e.weight)) + cfg.margin;
  depth = std::max(depth, cfg.min_depth);
  if (e.depth_override) depth = std::max(depth, ceil_long(*e.depth_override));
  return depth;
}

Report verify_exact(const IdentityEntry& e, Registry& reg,
                    const VerifyConfig& cfg) {
  Report r;
  r.id = e.id;
  r.mode = "exact";
  auto t0 = Clock::now();
  try {
    long depth = exact_check_depth(e, cfg);
    r.depth_used = Rational(depth);
    ExactGenSource src(reg);
    Series<ExactRing> s =
        eval_series_expr(reg.ring(), e.expr, depth, src);
    auto w = series_is_zero_to(reg.ring(), s, Rational(depth));
    if (w.zero) {
      r.status = Report::Status::Pass;
    } else {
      r.status = Report::Status::Fail;
      r.witness_exponent = w.exponent;
      r.witness_value = w.value.to_string();
    }
  } catch (const Error& err) {
    r.status = Report::Status::Error;
    r.message = err.what();
  }
  r.ms = ms_since(t0);
  return r;
}

Report verify_multimodular(const IdentityEntry& e, Registry& reg,
                           const std::vector<ModRing>& rings,
                           const VerifyConfig& cfg) {
  Report r;
  r.id = e.id;
  auto t0 = Clock::now();
  std::ostringstream mode;
  mode << "multimodular(";
  try {
    long depth = exact_check_depth(e, cfg);
    r.depth_used = Rational(depth);
    bool zero = true;
    std::optional<Rational> first_exp;
    std::string first_val;
    int used = 0;
    for (const ModRing& ring : rings) {
      try {
        ModGenSource src(reg, ring);
        Series<ModRing> s = eval_series_expr(ring, e.expr, depth, src);
        auto w = series_is_zero_to(ring, s, Rational(depth));
        if (used++) mode << ",";
        mode << ring.p;
        if (!w.zero) {
          zero = false;
          if (!first_exp || w.exponent < *first_exp) {
            first_exp = w.exponent;
            first_val = std::to_string(w.value) + " (mod " +
                        std::to_string(ring.p) + ")";
          }
        }
      } catch (const Error& err) {
        if (err.code() != ErrorCode::PrimeGenerationFailure) throw;
        // Prime divides a denominator; skip it (the remaining primes still
        // decide, and sampling is 62-bit so this is effectively unreachable).
      }
    }
    mode << ")";
    r.mode = mode.str();
    if (used == 0)
      throw Error(ErrorCode::PrimeGenerationFailure, "no usable primes");
    if (zero) {
      r.status = Report::Status::Pass;
    } else {
      r.status = Report::Status::Fail;
      r.witness_exponent = first_exp;
      r.witness_value = first_val;
    }
  } catch (const Error& err) {
    r.mode = "multimodular()";
    r.status = Report::Status::Error;
    r.message = err.what();
  }
  r.ms = ms_since(t0);
  return r;
}

namespace {

long fricke_level_of(const ExprPtr& e, long fallback) {
  std::vector<std::pair<GeneratorId, ArgTransform>> gens;
  collect_generators(e, &gens);
  for (const auto& [id, t] : gens)
    if (t.kind == ArgTransform::Kind::Fricke) return t.fricke_n;
  return fallback;
}

}  // namespace

Report check_transform(const IdentityEntry& e, NumericEvaluator& ev,
                       const VerifyConfig& cfg) {
  Report r;
  r.id = e.id;
  r.mode = "numeric";
  auto t0 = Clock::now();
  try {
    double tol = e.tol_override.value_or(cfg.transform_tol);
    long n = fricke_level_of(e.lhs, e.level);
    auto points = transform_sample_points(cfg.sample_count, cfg.seed, n);
    double worst = 0.0;
    std::complex<double> worst_tau;
    long depth = 0;
    for (const auto& tau : points) {
      auto lhs = ev.eval(e.lhs, tau);
      auto mult = ev.eval(e.multiplier, tau);
      auto rhs = ev.eval(e.rhs, tau);
      depth = std::max({depth, lhs.depth, rhs.depth});
      std::complex<double> expect = mult.v * rhs.v;
      double denom = std::max({std::abs(lhs.v), std::abs(expect), 1e-300});
      double err = std::abs(lhs.v - expect) / denom;
      if (err > worst) {
        worst = err;
        worst_tau = tau;
      }
    }
    r.depth_used = Rational(depth);
    std::ostringstream msg;
    msg << "max relative error " << worst << " at tau = (" << worst_tau.real()
        << ", " << worst_tau.imag() << ") over " << points.size()
        << " points, tol " << tol;
    r.message = msg.str();
    r.status = worst <= tol ? Report::Status::Pass : Report::Status::Fail;
    if (r.status == Report::Status::Fail) r.witness_value = msg.str();
  } catch (const Error& err) {
    r.status = Report::Status::Error;
    r.message = err.what();
  }
  r.ms = ms_since(t0);
  return r;
}

Report check_zero(const IdentityEntry& e, NumericEvaluator& ev,
                  const VerifyConfig& cfg) {
  Report r;
  r.id = e.id;
  r.mode = "numeric";
  auto t0 = Clock::now();
  try {
    double tol = e.tol_override.value_or(cfg.zero_tol);
    std::complex<double> pt = eval_const_expr(e.point).embed();
    std::complex<double> ref_pt(0.0, 2.0);
    auto ref_val = ev.eval(e.expr, ref_pt);
    double ref = std::abs(ref_val.v);
    if (ref < 1e-30)
      throw Error(ErrorCode::NonConvergent,
                  "reference magnitude at 2i is degenerate");
    auto at_pt = ev.eval(e.expr, pt);
    double v = std::abs(at_pt.v);
    double guard = std::abs(ev.eval(e.expr, pt + 0.01).v);
    r.depth_used = Rational(std::max(ref_val.depth, at_pt.depth));
    std::ostringstream msg;
    msg << "|f(point)|/|f(2i)| = " << v / ref << " (tol " << tol
        << "), simple-zero guard " << guard / ref << " (> " << tol * 1e3
        << ")";
    if (e.alt_point) {
      double alt = std::abs(ev.eval(e.expr, eval_const_expr(e.alt_point).embed()).v);
      msg << "; alternate reading residual " << alt / ref;
    }
    r.message = msg.str();
    bool vanishes = v <= tol * ref;
    bool simple = guard > tol * 1e3 * ref;
    r.status = (vanishes && simple) ? Report::Status::Pass
                                    : Report::Status::Fail;
    if (r.status == Report::Status::Fail) r.witness_value = msg.str();
  } catch (const Error& err) {
    r.status = Report::Status::Error;
    r.message = err.what();
  }
  r.ms = ms_since(t0);
  return r;
}

Report verify_entry(const IdentityEntry& e, Registry& reg,
                    const std::vector<ModRing>& rings, NumericEvaluator& ev,
                    const VerifyConfig& cfg) {
  switch (e.kind) {
    case EntryKind::ExactZero:
      return cfg.mode == VerifyConfig::Mode::Multimodular
                 ? verify_multimodular(e, reg, rings, cfg)
                 : verify_exact(e, reg, cfg);
    case EntryKind::NumericTransform:
      return check_transform(e, ev, cfg);
    case EntryKind::NumericZero:
      return check_zero(e, ev, cfg);
  }
  Report r;
  r.id = e.id;
  r.message = "unknown entry kind";
  return r;
}

CatalogRun run_catalog(const std::vector<IdentityEntry>& entries,
                       Registry& reg, const VerifyConfig& cfg) {
  std::vector<ModRing> rings;
  bool any_exact = false;
  for (const auto& e : entries)
    any_exact |= (e.kind == EntryKind::ExactZero);
  if (any_exact && cfg.mode == VerifyConfig::Mode::Multimodular)
    rings = sample_mod_rings(cfg.num_primes, cfg.seed);
  NumericEvaluator ev(reg, cfg.numeric);

  // Pre-warm the generator memo serially so parallel entries hit the cache.
  std::map<GeneratorId, long> need;
  for (const auto& e : entries) {
    long base = e.kind == EntryKind::ExactZero ? exact_check_depth(e, cfg) + 10
                                               : cfg.numeric.depth;
    std::vector<std::pair<GeneratorId, ArgTransform>> gens;
    for (const ExprPtr& x : {e.expr, e.lhs, e.rhs})
      if (x) collect_generators(x, &gens);
    for (const auto& [id, t] : gens) {
      long d = base;
      if (t.kind == ArgTransform::Kind::Affine && t.a >= 1)
        d = (base * t.c) / t.a + 4;
      auto it = need.find(id.canonical());
      if (it == need.end() || it->second < d) need[id.canonical()] = d;
    }
  }
  for (const auto& [id, d] : need) reg.generate(id, d);

  CatalogRun run;
  run.reports.resize(entries.size());
  const int jobs = std::max(cfg.jobs, 1);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(jobs) if (jobs > 1)
#endif
  for (long i = 0; i < static_cast<long>(entries.size()); ++i) {
    run.reports[static_cast<std::size_t>(i)] =
        verify_entry(entries[static_cast<std::size_t>(i)], reg, rings, ev, cfg);
  }
  std::sort(run.reports.begin(), run.reports.end(),
            [](const Report& a, const Report& b) { return a.id < b.id; });
  run.total = static_cast<int>(run.reports.size());
  for (const Report& r : run.reports) {
    switch (r.status) {
      case Report::Status::Pass: ++run.pass; break;
      case Report::Status::Fail: ++run.fail; break;
      case Report::Status::Error: ++run.error; break;
    }
  }
  return run;
}

std::string catalog_run_to_json(const CatalogRun& run) {
  nlohmann::json j;
  j["summary"] = {{"total", run.total},
                  {"pass", run.pass},
                  {"fail", run.fail},
                  {"error", run.error}};
  j["entries"] = nlohmann::json::array();
  for (const Report& r : run.reports) {
    nlohmann::json e;
    e["id"] = r.id;
    e["status"] = status_name(r.status);
    e["mode"] = r.mode;
    e["depth_used"] = rational_to_double(r.depth_used);
    if (r.witness_exponent)
      e["witness_exponent"] = rational_str(*r.witness_exponent);
    else
      e["witness_exponent"] = nullptr;
    if (r.witness_value.empty())
      e["witness_value"] = nullptr;
    else
      e["witness_value"] = r.witness_value;
    e["ms"] = r.ms;
    if (!r.message.empty()) e["message"] = r.message;
    j["entries"].push_back(std::move(e));
  }
  return j.dump(2);
}

std::string report_line(const Report& r) {
  std::ostringstream os;
  os << (r.status == Report::Status::Pass
             ? "PASS "
             : (r.status == Report::Status::Fail ? "FAIL " : "ERROR"))
     << " " << r.id << "  [" << r.mode << ", depth "
     << rational_str(r.depth_used) << ", " << r.ms << " ms]";
  if (r.witness_exponent)
    os << "  witness q^" << rational_str(*r.witness_exponent) << " = "
       << r.witness_value;
  if (r.status != Report::Status::Pass && !r.message.empty())
    os << "  " << r.message;
  return os.str();
}

}  // namespace eisenfact
