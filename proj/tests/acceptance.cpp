// Acceptance suite: runs every criterion the engine must meet against the
// shipped catalog and prints one PASS/FAIL line per criterion.
//
// Usage: acceptance <path-to-catalog>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "eisenfact/verify.hpp"
#include "oracles.hpp"

using namespace eisenfact;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  std::printf("%s criterion-%d: %s\n", ok ? "PASS" : "FAIL", criterion,
              what.c_str());
  if (!ok) ++g_failures;
}

struct Harness {
  Registry reg;
  VerifyConfig cfg;
  std::vector<IdentityEntry> entries;
  std::map<std::string, IdentityEntry> by_id;
  std::vector<ModRing> rings;
  std::string catalog_text;

  explicit Harness(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    catalog_text = buf.str();
    entries = parse_catalog_text(catalog_text, path);
    for (const auto& e : entries) by_id[e.id] = e;
    rings = sample_mod_rings(cfg.num_primes, cfg.seed);
  }

  const IdentityEntry& entry(const std::string& id) {
    auto it = by_id.find(id);
    if (it == by_id.end())
      throw Error(ErrorCode::BadEntry, "missing catalog entry " + id);
    return it->second;
  }

  Report exact(const std::string& id) {
    return verify_exact(entry(id), reg, cfg);
  }

  bool all_exact_pass(const std::vector<std::string>& ids, std::string* why,
                      long min_depth = 0) {
    for (const auto& id : ids) {
      Report r = exact(id);
      if (r.status != Report::Status::Pass) {
        *why = id + " " + status_name(r.status) + " " + r.message;
        return false;
      }
      if (r.depth_used < Rational(min_depth)) {
        *why = id + " ran at depth " + rational_str(r.depth_used) +
               " < " + std::to_string(min_depth);
        return false;
      }
    }
    return true;
  }

  std::vector<std::string> ids_with(const std::string& needle) {
    std::vector<std::string> out;
    for (const auto& e : entries)
      if (e.id.find(needle) != std::string::npos) out.push_back(e.id);
    return out;
  }
};

// --- criterion 1: basic formulas at all levels ------------------------------

void criterion_basic_formulas(Harness& h) {
  std::string why;
  bool ok = h.all_exact_pass(
      {"L1-basic", "L2-basic", "L3-basic-1", "L3-basic-1-div", "L3-basic-2",
       "L4-etaq-4", "L4-etaq-4-quot"},
      &why, 2);
  report(1, ok,
         ok ? "basic formulas of all four levels vanish exactly at "
              "Sturm-justified depth"
            : why);
}

// --- criterion 2: eta-quotient identities and the theta product -------------

void criterion_eta_quotients(Harness& h) {
  std::string why;
  std::vector<std::string> ids = {"L2-etaq-1", "L2-etaq-2", "L4-etaq-1a",
                                  "L4-etaq-1b", "L4-etaq-2",  "L4-etaq-3",
                                  "L4-etaq-4",  "L4-etaq-5",  "L4-theta-prod"};
  bool ok = h.all_exact_pass(ids, &why, 50);

  // Independent finite-product oracle for the theta product formula:
  // theta = prod (1-q^{2n})(1+q^{2n-1})^2, checked coefficientwise to q^50.
  if (ok) {
    const long T = 51;
    auto prod = oracles::theta_triple_product(T);
    Series<ExactRing> th = h.reg.generate(GeneratorId::parse("theta"), T);
    for (long n = 0; n < T && ok; ++n) {
      RingElem c = series_coefficient(h.reg.ring(), th, Rational(n));
      if (c != RingElem(Rational((long)prod[static_cast<std::size_t>(n)]))) {
        ok = false;
        why = "theta product oracle mismatch at q^" + std::to_string(n);
      }
    }
  }
  report(2, ok,
         ok ? "eta-quotient identities and the theta triple product hold to "
              "depth >= 50"
            : why);
}

// --- criterion 3: square/structure identities -------------------------------

void criterion_squares(Harness& h) {
  std::string why;
  bool ok = h.all_exact_pass(
      {"theta-sq-E1m4", "L3-sq-E32", "L3-def-E34", "L3-sq-Q3"}, &why);
  report(3, ok,
         ok ? "theta^2 = 4*E1m4, E32 = (6*E1m3)^2 and the cleared E34 "
              "factorization hold exactly"
            : why);
}

// --- criterion 4: proposition products and translation laws -----------------

void criterion_products_translations(Harness& h) {
  std::string why;
  auto prods = h.ids_with("-prop-");
  auto trans = h.ids_with("-trans-");
  bool ok = prods.size() >= 20 && trans.size() >= 41;
  if (!ok) why = "catalog slice incomplete";
  if (ok) ok = h.all_exact_pass(prods, &why);
  if (ok) ok = h.all_exact_pass(trans, &why);
  std::ostringstream what;
  what << prods.size() << " product identities and " << trans.size()
       << " translation laws verify exactly over every index";
  report(4, ok, ok ? what.str() : why);
}

// --- criterion 5: theorem identities ----------------------------------------

void criterion_theorems(Harness& h) {
  std::string why;
  auto thms = h.ids_with("-thm-");
  bool ok = thms.size() >= 23;
  if (!ok) why = "catalog slice incomplete";
  if (ok) ok = h.all_exact_pass(thms, &why);
  std::ostringstream what;
  what << thms.size()
       << " theorem identities (cubes, quartics, conjugate products, "
          "F'3 = 6*E1m3*F3) verify exactly for every index";
  report(5, ok, ok ? what.str() : why);
}

// --- criterion 6: Fricke transformation laws --------------------------------

void criterion_fricke(Harness& h) {
  NumericEvaluator ev(h.reg, h.cfg.numeric);
  auto ids = h.ids_with("-fricke-");
  std::set<std::string> families;
  for (const auto& id : ids)
    families.insert(id.substr(0, id.find_last_of('-')));
  bool ok = families.size() == 17;
  std::string why = "expected 17 transformation-law families, have " +
                    std::to_string(families.size());
  if (ok) {
    for (const auto& id : ids) {
      Report r = check_transform(h.entry(id), ev, h.cfg);
      if (r.status != Report::Status::Pass) {
        ok = false;
        why = id + ": " + r.message;
        break;
      }
    }
  }
  std::ostringstream what;
  what << "all 17 Fricke law families (" << ids.size()
       << " entries) pass at 16 seeded points, relative error <= 1e-9";
  report(6, ok, ok ? what.str() : why);
}

// --- criterion 7: zero locations --------------------------------------------

void criterion_zeros(Harness& h) {
  NumericEvaluator ev(h.reg, h.cfg.numeric);
  auto ids = h.ids_with("-zero-");
  std::set<std::string> families;
  for (const auto& id : ids)
    families.insert(id.substr(0, id.find_last_of('-')));
  bool ok = families.size() == 5;
  std::string why = "expected 5 zero families, have " +
                    std::to_string(families.size());
  if (ok) {
    for (const auto& id : ids) {
      Report r = check_zero(h.entry(id), ev, h.cfg);
      if (r.status != Report::Status::Pass) {
        ok = false;
        why = id + ": " + r.message;
        break;
      }
    }
  }
  std::ostringstream what;
  what << "all 5 zero families (" << ids.size()
       << " points) vanish to 1e-8 with the simple-zero guard above 1e-5";
  report(7, ok, ok ? what.str() : why);
}

// --- criterion 8: mutation suite --------------------------------------------

struct Mutation {
  std::string entry_id;
  std::string from, to;
};

void criterion_mutations(Harness& h) {
  const Mutation mutations[] = {
      {"L1-basic", "1728*", "1729*"},
      {"L3-basic-1", "108*", "109*"},
      {"L4-etaq-5", "16*", "17*"},
      {"L1-def-F-0", "+ 24*sqrt(-3)", "- 24*sqrt(-3)"},
  };
  bool ok = true;
  std::string why;
  for (const auto& m : mutations) {
    // Rewrite exactly one constant inside the target entry's block.
    std::string text = h.catalog_text;
    std::size_t at = text.find("id: " + m.entry_id + "\n");
    if (at == std::string::npos) {
      ok = false;
      why = "missing entry " + m.entry_id;
      break;
    }
    std::size_t hit = text.find(m.from, at);
    if (hit == std::string::npos) {
      ok = false;
      why = m.entry_id + " lacks constant " + m.from;
      break;
    }
    text.replace(hit, m.from.size(), m.to);
    auto mutated = parse_catalog_text(text, "mutated");
    std::vector<IdentityEntry> exact;
    for (auto& e : mutated)
      if (e.kind == EntryKind::ExactZero) exact.push_back(e);
    CatalogRun run = run_catalog(exact, h.reg, h.cfg);
    if (run.fail != 1 || run.error != 0) {
      ok = false;
      why = m.entry_id + " mutation produced " + std::to_string(run.fail) +
            " failures, " + std::to_string(run.error) + " errors";
      break;
    }
    for (const Report& r : run.reports) {
      if (r.status != Report::Status::Fail) continue;
      if (r.id != m.entry_id) {
        ok = false;
        why = "mutation of " + m.entry_id + " failed entry " + r.id;
      } else if (!r.witness_exponent ||
                 *r.witness_exponent > r.depth_used) {
        ok = false;
        why = m.entry_id + " witness exponent missing or beyond depth";
      }
    }
    if (!ok) break;
  }
  report(8, ok,
         ok ? "each single-constant mutation fails exactly its own entry "
              "with a finite witness exponent"
            : why);
}

// --- criterion 9: multimodular agreement ------------------------------------

void criterion_multimodular(Harness& h) {
  bool ok = true;
  std::string why;
  VerifyConfig mm = h.cfg;
  mm.mode = VerifyConfig::Mode::Multimodular;
  for (const auto& e : h.entries) {
    if (e.kind != EntryKind::ExactZero) continue;
    Report ex = verify_exact(e, h.reg, h.cfg);
    Report md = verify_multimodular(e, h.reg, h.rings, mm);
    if (ex.status != md.status) {
      ok = false;
      why = e.id + " statuses differ between exact and multimodular";
      break;
    }
  }
  if (ok) {
    // Mutants must fail with identical witness exponents in both modes.
    IdentityEntry m;
    m.id = "mutant";
    m.kind = EntryKind::ExactZero;
    m.level = 1;
    m.weight = Rational(12);
    for (const char* expr :
         {"E4^3 - E6^2 - 1729*eta^24", "E22^4 - E24^2 - 255*eta2^8",
          "E32^4 - E34^2 - 109*eta3^6*E32",
          "eta[2*t]^24 - (eta*eta[4*t])^8*(eta^8 + 17*eta[4*t]^8)"}) {
      m.expr = parse_expr(expr);
      Report ex = verify_exact(m, h.reg, h.cfg);
      Report md = verify_multimodular(m, h.reg, h.rings, h.cfg);
      if (ex.status != Report::Status::Fail ||
          md.status != Report::Status::Fail ||
          !ex.witness_exponent || !md.witness_exponent ||
          *ex.witness_exponent != *md.witness_exponent) {
        ok = false;
        why = std::string("witness mismatch for mutant ") + expr;
        break;
      }
    }
  }
  report(9, ok,
         ok ? "multimodular mode agrees with exact mode on every catalog "
              "entry and on mutant witnesses"
            : why);
}

// --- criterion 10: oracle equivalence to 200 terms ---------------------------

void criterion_oracles(Harness& h) {
  const long T = 200;
  bool ok = true;
  std::string why;
  const ExactRing& R = h.reg.ring();
  auto coeff = [&](const Series<ExactRing>& s, long num, long den) {
    return series_coefficient(R, s, exponent_q(num, den));
  };

  auto fail = [&](const std::string& name, long n) {
    ok = false;
    why = name + " mismatches its oracle at term " + std::to_string(n);
  };

  Series<ExactRing> e2 = h.reg.generate(GeneratorId::parse("E2"), T);
  Series<ExactRing> e4 = h.reg.generate(GeneratorId::parse("E4"), T);
  Series<ExactRing> e6 = h.reg.generate(GeneratorId::parse("E6"), T);
  for (long n = 1; n < T && ok; ++n) {
    if (coeff(e2, n, 1) != RingElem(Rational(-24 * oracles::sigma(n, 1))))
      fail("E2", n);
    if (coeff(e4, n, 1) != RingElem(Rational(240 * oracles::sigma(n, 3))))
      fail("E4", n);
    if (coeff(e6, n, 1) !=
        RingElem(Rational(mpz_class(-504) * mpz_class(oracles::sigma(n, 5)))))
      fail("E6", n);
  }

  if (ok) {
    Series<ExactRing> eta = h.reg.generate(GeneratorId::parse("eta"), T);
    auto prod = oracles::euler_product(T - 1);
    for (long n = 0; n + 1 < T - 1 && ok; ++n)
      if (coeff(eta, 24 * n + 1, 24) !=
          RingElem(Rational((long)prod[static_cast<std::size_t>(n)])))
        fail("eta", n);
  }

  if (ok) {
    Series<ExactRing> th = h.reg.generate(GeneratorId::parse("theta"), T);
    for (long n = 0; n < T && ok; ++n) {
      long r = std::lround(std::sqrt(double(n)));
      long expect = (r * r == n) ? (n == 0 ? 1 : 2) : 0;
      if (coeff(th, n, 1) != RingElem(expect)) fail("theta", n);
    }
  }

  struct CC {
    const char* name;
    long D;
    int pw;
    bool codiv;
  };
  for (const CC& cc : {CC{"E1m3", -3, 0, false}, CC{"E1m4", -4, 0, false},
                       CC{"E1m8", -8, 0, false}, CC{"E3m31", -3, 2, false},
                       CC{"E31m3", -3, 2, true}}) {
    if (!ok) break;
    Series<ExactRing> s = h.reg.generate(GeneratorId::parse(cc.name), T);
    for (long n = 1; n < T && ok; ++n) {
      long acc = 0;
      for (long d = 1; d <= n; ++d) {
        if (n % d) continue;
        long w = cc.codiv ? oracles::kronecker(cc.D, n / d)
                               : oracles::kronecker(cc.D, d);
        for (int k = 0; k < cc.pw; ++k) w *= d;
        acc += w;
      }
      if (coeff(s, n, 1) != RingElem(Rational((long)acc))) fail(cc.name, n);
    }
  }

  report(10, ok,
         ok ? "E2/E4/E6/eta/theta and all character series match independent "
              "brute-force oracles for 200 terms"
            : why);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <catalog-file>\n");
    return 2;
  }
  auto t0 = std::chrono::steady_clock::now();
  try {
    Harness h(argv[1]);
    criterion_basic_formulas(h);
    criterion_eta_quotients(h);
    criterion_squares(h);
    criterion_products_translations(h);
    criterion_theorems(h);
    criterion_fricke(h);
    criterion_zeros(h);
    criterion_mutations(h);
    criterion_multimodular(h);
    criterion_oracles(h);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance harness error: %s\n", e.what());
    return 2;
  }
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  std::printf("%s: 10 criteria, %d failed, %.1f s\n",
              g_failures ? "FAILED" : "OK", g_failures, secs);
  return g_failures == 0 ? 0 : 1;
}
