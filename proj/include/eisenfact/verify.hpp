#ifndef EISENFACT_VERIFY_HPP
#define EISENFACT_VERIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "eisenfact/catalog.hpp"
#include "eisenfact/modring.hpp"
#include "eisenfact/numeric.hpp"

namespace eisenfact {

struct Report {
  enum class Status { Pass, Fail, Error };

  std::string id;
  Status status = Status::Error;
  std::string mode;  // "exact" | "multimodular(p,...)" | "numeric"
  Rational depth_used{0};
  std::optional<Rational> witness_exponent;
  std::string witness_value;
  double ms = 0.0;
  std::string message;
};

const char* status_name(Report::Status s);

// q-exponent bound w*mu(N)/(12N) with mu(N) = N^3 * prod_{p|N} (1 - p^-2):
// a weight-w form on Gamma(N) vanishing strictly beyond this order vanishes
// identically. Half-integral weights are rounded up before applying the
// formula.
Rational sturm_depth(long level, const Rational& weight);

struct VerifyConfig {
  enum class Mode { Exact, Multimodular };
  Mode mode = Mode::Exact;
  long min_depth = 50;  // q-units; CLI maps EISEN_DEPTH/--depth onto this
  long margin = 8;
  int num_primes = 3;
  uint64_t seed = 0;
  int jobs = 1;
  int sample_count = 16;
  double transform_tol = 1e-9;
  double zero_tol = 1e-8;
  NumericOptions numeric;
};

// Depth policy for an exact entry: max(ceil(sturm) + margin, min_depth,
// entry depth override).
long exact_check_depth(const IdentityEntry& e, const VerifyConfig& cfg);

Report verify_exact(const IdentityEntry& e, Registry& reg,
                    const VerifyConfig& cfg);
Report verify_multimodular(const IdentityEntry& e, Registry& reg,
                           const std::vector<ModRing>& rings,
                           const VerifyConfig& cfg);
Report check_transform(const IdentityEntry& e, NumericEvaluator& ev,
                       const VerifyConfig& cfg);
Report check_zero(const IdentityEntry& e, NumericEvaluator& ev,
                  const VerifyConfig& cfg);

// Dispatches one entry according to its kind and the configured mode.
Report verify_entry(const IdentityEntry& e, Registry& reg,
                    const std::vector<ModRing>& rings, NumericEvaluator& ev,
                    const VerifyConfig& cfg);

struct CatalogRun {
  std::vector<Report> reports;  // sorted by entry id
  int total = 0, pass = 0, fail = 0, error = 0;
  bool all_pass() const { return fail == 0 && error == 0 && total >= 0; }
};

CatalogRun run_catalog(const std::vector<IdentityEntry>& entries,
                       Registry& reg, const VerifyConfig& cfg);

std::string catalog_run_to_json(const CatalogRun& run);
std::string report_line(const Report& r);

}  // namespace eisenfact

#endif
