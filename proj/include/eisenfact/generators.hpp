#ifndef EISENFACT_GENERATORS_HPP
#define EISENFACT_GENERATORS_HPP

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "eisenfact/series.hpp"

namespace eisenfact {

// Kronecker symbol (D/n) for the discriminants driving the weight-1/3
// character Eisenstein series. Throws UnsupportedDiscriminant otherwise.
int kronecker(long D, long n);

enum class GenName {
  E2, E4, E6,
  Eta, Theta,
  E1m3, E1m4, E1m8,
  E3m31, E31m3,
  EN2,   // (N*E2(N tau) - E2(tau))/(N-1), N in {2,3,4}
  EN4,   // (N^2*E4(N tau) - E4(tau))/(N^2-1), N in {2,3}
  E42p,  // 4*E2(4 tau) - 4*E2(2 tau) + E2(tau)
  Eta2, Eta3, Eta4,
  Q3,    // -9*(E3m31 + 3*E31m3)
  FamF, FamG, FamFp3, FamGp3, Famf, Famg,
};

struct GeneratorId {
  GenName name = GenName::E2;
  int level = 0;  // N for EN2/EN4 and the F/G/f/g families
  int index = 0;  // j, stored reduced modulo the family period

  bool is_family() const;
  int period() const;           // throws NotAFamily for non-families
  Rational weight() const;
  GeneratorId canonical() const;

  // DSL naming contract: E2 E4 E6 eta theta E1m3 E1m4 E1m8 E3m31 E31m3
  // E22 E24 E32 E34 E42 E42p eta2 eta3 eta4 Q3 F(N,j) G(N,j) Fp3(j) Gp3(j)
  // f(N,j) g(N,j).
  std::string str() const;
  static GeneratorId parse(const std::string& name);
  static GeneratorId make(GenName n, int level = 0, int index = 0);

  bool operator==(const GeneratorId& o) const {
    return name == o.name && level == o.level && index == o.index;
  }
  bool operator<(const GeneratorId& o) const {
    if (name != o.name) return name < o.name;
    if (level != o.level) return level < o.level;
    return index < o.index;
  }
};

// j -> j+1 reduced modulo the family period. Throws NotAFamily.
GeneratorId translate_index(const GeneratorId& id);

// Memoizing constructor of q-expansions. generate() returns a series whose
// known order is at least `order` q-units. Thread-safe: the memo map takes a
// lock around lookup/insert; expansions are computed outside the lock and
// returned by value.
class Registry {
 public:
  Registry() = default;
  explicit Registry(std::string cache_dir) : cache_dir_(std::move(cache_dir)) {}

  Series<ExactRing> generate(const GeneratorId& id, const Rational& order);
  Series<ExactRing> generate(const GeneratorId& id, long order_qunits);

  const ExactRing& ring() const { return ring_; }

 private:
  Series<ExactRing> build(const GeneratorId& id, long depth);
  Series<ExactRing> cached_or_build(const GeneratorId& id, long depth);

  ExactRing ring_;
  std::mutex mu_;
  std::map<GeneratorId, Series<ExactRing>> memo_;
  std::string cache_dir_;
};

// Serialized-series cache format helpers (used by Registry when a cache
// directory is configured, and by the CLI tests).
void write_series_file(const std::string& path, const GeneratorId& id,
                       const Series<ExactRing>& s);
bool read_series_file(const std::string& path, Series<ExactRing>* out);

}  // namespace eisenfact

#endif
