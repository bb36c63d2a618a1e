#include "eisenfact/catalog.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "eisenfact/evaluate.hpp"

namespace eisenfact {

namespace {

Rational parse_weight(const std::string& s) {
  std::size_t slash = s.find('/');
  long num = std::stol(s);
  long den = 1;
  if (slash != std::string::npos) den = std::stol(s.substr(slash + 1));
  return make_rational(num, den);
}

void finish_entry(std::vector<IdentityEntry>& out, IdentityEntry& e,
                  std::set<std::string>& ids, const std::string& where) {
  if (e.id.empty())
    throw Error(ErrorCode::BadEntry, where + ": entry without id");
  if (!ids.insert(e.id).second)
    throw Error(ErrorCode::BadEntry, where + ": duplicate id " + e.id);
  if (e.level < 1 || e.level > 24)
    throw Error(ErrorCode::BadEntry, e.id + ": level must be in 1..24");
  if (e.weight < make_rational(1, 2))
    throw Error(ErrorCode::BadEntry, e.id + ": weight must be >= 1/2");
  switch (e.kind) {
    case EntryKind::ExactZero:
      if (!e.expr) throw Error(ErrorCode::BadEntry, e.id + ": missing expr");
      break;
    case EntryKind::NumericTransform:
      if (!e.lhs || !e.rhs || !e.multiplier)
        throw Error(ErrorCode::BadEntry,
                    e.id + ": transform entry needs lhs, rhs and multiplier");
      break;
    case EntryKind::NumericZero: {
      if (!e.expr || !e.point)
        throw Error(ErrorCode::BadEntry,
                    e.id + ": zero entry needs expr and point");
      RingElem p = eval_const_expr(e.point);
      if (p.embed().imag() <= 0)
        throw Error(ErrorCode::BadEntry,
                    e.id + ": point must lie in the upper half-plane");
      break;
    }
  }
  out.push_back(std::move(e));
  e = IdentityEntry{};
}

}  // namespace

std::vector<IdentityEntry> parse_catalog_text(const std::string& text,
                                              const std::string& source_name) {
  std::vector<IdentityEntry> out;
  std::set<std::string> ids;
  IdentityEntry cur;
  bool in_entry = false;
  std::istringstream in(text);
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) {
      if (in_entry)
        finish_entry(out, cur, ids, source_name + ":" + std::to_string(lineno));
      in_entry = false;
      continue;
    }
    std::size_t colon = line.find(':');
    std::string where = source_name + ":" + std::to_string(lineno);
    if (colon == std::string::npos)
      throw Error(ErrorCode::BadEntry, where + ": expected 'key: value'");
    std::string key = line.substr(a, colon - a);
    std::size_t v = line.find_first_not_of(" \t", colon + 1);
    std::string value =
        v == std::string::npos ? std::string() : line.substr(v);
    while (!value.empty() && (value.back() == ' ' || value.back() == '\t' ||
                              value.back() == '\r'))
      value.pop_back();
    in_entry = true;
    try {
      if (key == "id") {
        cur.id = value;
      } else if (key == "kind") {
        if (value == "exact-zero")
          cur.kind = EntryKind::ExactZero;
        else if (value == "numeric-transform")
          cur.kind = EntryKind::NumericTransform;
        else if (value == "numeric-zero")
          cur.kind = EntryKind::NumericZero;
        else
          throw Error(ErrorCode::BadEntry, "unknown kind " + value);
      } else if (key == "level") {
        cur.level = std::stoi(value);
      } else if (key == "weight") {
        cur.weight = parse_weight(value);
      } else if (key == "expr") {
        cur.expr = parse_expr(value);
      } else if (key == "lhs") {
        cur.lhs = parse_expr(value);
      } else if (key == "rhs") {
        cur.rhs = parse_expr(value);
      } else if (key == "multiplier") {
        cur.multiplier = parse_expr(value);
      } else if (key == "point") {
        cur.point = parse_expr(value);
      } else if (key == "alt-point") {
        cur.alt_point = parse_expr(value);
      } else if (key == "depth") {
        cur.depth_override = parse_weight(value);
      } else if (key == "tol") {
        cur.tol_override = std::stod(value);
      } else {
        throw Error(ErrorCode::BadEntry, "unknown key " + key);
      }
    } catch (const Error& err) {
      throw Error(err.code(), where + ": " + err.what());
    }
  }
  if (in_entry) finish_entry(out, cur, ids, source_name + ":end");
  return out;
}

std::vector<IdentityEntry> load_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open catalog " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_catalog_text(buf.str(), path);
}

}  // namespace eisenfact
