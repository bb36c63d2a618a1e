#ifndef EISENFACT_NUMERIC_HPP
#define EISENFACT_NUMERIC_HPP

#include <complex>
#include <map>
#include <mutex>
#include <vector>

#include "eisenfact/catalog.hpp"
#include "eisenfact/evaluate.hpp"

namespace eisenfact {

struct NumericOptions {
  long depth = 96;        // starting truncation depth in q-units
  long max_depth = 768;   // retry ceiling on InsufficientDepth
  double im_floor = 0.05; // NonConvergent below this imaginary part
  double tail_tol = 1e-12;
};

// Complex evaluation of catalog expressions at points in the upper
// half-plane, through the exact expansions and complex_embed. binary64 with
// an explicit geometric tail estimate per series evaluation.
class NumericEvaluator {
 public:
  struct Value {
    std::complex<double> v{0.0, 0.0};
    double scale = 0.0;  // termwise absolute bound, the "relative" yardstick
    double tail = 0.0;   // worst series tail estimate in the subtree
    long depth = 0;      // truncation depth the evaluation settled on
  };

  explicit NumericEvaluator(Registry& reg, NumericOptions opt = {})
      : reg_(reg), opt_(opt) {}

  // Evaluates with internal depth retries; throws NonConvergent when a
  // (transformed) argument drops below the imaginary-part floor, or
  // InsufficientDepth when max_depth cannot push the tail under tolerance.
  Value eval(const ExprPtr& e, std::complex<double> tau);

  const NumericOptions& options() const { return opt_; }

 private:
  struct Embedded {
    int denom = 1;
    long low = 0;
    long known = 0;
    std::vector<std::complex<double>> c;
    std::vector<double> absc;
  };

  Value eval_rec(const Expr& e, std::complex<double> tau, long depth);
  Value eval_gen(const Expr& e, std::complex<double> tau, long depth);
  const Embedded& embedded(const GeneratorId& id, long depth);

  Registry& reg_;
  NumericOptions opt_;
  std::mutex mu_;
  std::map<std::pair<GeneratorId, long>, Embedded> cache_;
};

// Deterministic sample points in the box Re in [-1,1], Im in [0.5,2],
// avoiding the Fricke fixed point i/sqrt(N); the two fixed extra points are
// appended last.
std::vector<std::complex<double>> transform_sample_points(int count,
                                                          uint64_t seed,
                                                          long fricke_n);

}  // namespace eisenfact

#endif
