#ifndef EISENFACT_CATALOG_HPP
#define EISENFACT_CATALOG_HPP

#include <optional>
#include <string>
#include <vector>

#include "eisenfact/expr.hpp"

namespace eisenfact {

enum class EntryKind { ExactZero, NumericTransform, NumericZero };

// One catalog item. Exact entries assert expr == 0 coefficient-by-coefficient
// to the Sturm-justified depth; numeric-transform entries assert
// lhs(tau) == multiplier(tau) * rhs(tau) at sampled points (lhs carries the
// Fricke substitution); numeric-zero entries assert |expr(point)| vanishes
// relative to a reference point.
struct IdentityEntry {
  std::string id;
  EntryKind kind = EntryKind::ExactZero;
  int level = 1;            // Gamma(N) annotation for the depth bound
  Rational weight{1};
  ExprPtr expr;             // exact-zero / numeric-zero
  ExprPtr lhs, rhs, multiplier;  // numeric-transform
  ExprPtr point;            // numeric-zero: constant expression, Im > 0
  ExprPtr alt_point;        // optional second reading, reported as info
  std::optional<Rational> depth_override;
  std::optional<double> tol_override;
};

// Catalog file: UTF-8 text, '#' starts a comment, blank-line-separated
// blocks of `key: value` lines. Keys: id, kind (exact-zero |
// numeric-transform | numeric-zero), level, weight, expr | lhs/rhs/multiplier
// | expr/point [alt-point], optional depth, tol.
std::vector<IdentityEntry> parse_catalog_text(const std::string& text,
                                              const std::string& source_name);
std::vector<IdentityEntry> load_catalog_file(const std::string& path);

}  // namespace eisenfact

#endif
