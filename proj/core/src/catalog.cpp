#include "pfk3/catalog.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pfk3/expr.hpp"

namespace pfk3 {

namespace detail {
extern const std::string_view kEmbeddedCatalog;
}

namespace {

std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t p = s.find(sep, start);
    out.push_back(trim(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start)));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

}  // namespace

std::string fnv1a64_hex(std::string_view data) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Catalog Catalog::parse(std::string_view text) {
  Catalog c;
  std::string digest_input;
  int lineno = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    // The expression may not contain '|', so the first two bars delimit the fields.
    size_t b1 = line.find('|');
    size_t b2 = b1 == std::string::npos ? b1 : line.find('|', b1 + 1);
    if (b2 == std::string::npos)
      throw StructuralError("catalog line " + std::to_string(lineno) + ": expected 'key | vars | expression'");
    std::string key = trim(std::string_view(line).substr(0, b1));
    std::string vars = trim(std::string_view(line).substr(b1 + 1, b2 - b1 - 1));
    std::string expr = trim(std::string_view(line).substr(b2 + 1));
    if (key == "checksum") {
      if (vars != "fnv1a64") throw StructuralError("catalog: unsupported checksum kind '" + vars + "'");
      c.stored_ = expr;
      continue;
    }
    if (key.empty() || expr.empty()) throw StructuralError("catalog line " + std::to_string(lineno) + ": empty field");
    if (c.index_.count(key)) throw StructuralError("catalog: duplicate key '" + key + "'");
    CatalogRecord r{key, {}, expr};
    if (!vars.empty()) r.vars = split(vars, ',');
    c.index_.emplace(key, c.records_.size());
    c.records_.push_back(std::move(r));
    digest_input += line;
    digest_input += '\n';
  }
  c.computed_ = fnv1a64_hex(digest_input);
  if (c.stored_.empty()) throw StructuralError("catalog: missing checksum line");
  if (c.stored_ != c.computed_)
    throw StructuralError("catalog checksum mismatch: stored " + c.stored_ + ", computed " + c.computed_);
  return c;
}

std::string_view Catalog::embedded_text() { return detail::kEmbeddedCatalog; }

const Catalog& Catalog::instance() {
  static const Catalog cat = [] {
    const char* path = std::getenv("PFK3_CATALOG");
    if (path && *path) {
      std::ifstream in(path);
      if (!in) throw StructuralError(std::string("cannot read catalog file ") + path);
      std::stringstream ss;
      ss << in.rdbuf();
      Catalog c = parse(ss.str());
      c.origin_ = path;
      return c;
    }
    return parse(detail::kEmbeddedCatalog);
  }();
  return cat;
}

bool Catalog::contains(std::string_view key) const { return index_.find(key) != index_.end(); }

const CatalogRecord& Catalog::record(std::string_view key) const {
  auto it = index_.find(key);
  if (it == index_.end()) throw StructuralError("catalog has no record '" + std::string(key) + "'");
  return records_[it->second];
}

VarsPtr Catalog::ring(std::string_view key) const { return make_vars(record(key).vars); }

RatFunc Catalog::ratfunc(std::string_view key) const { return ratfunc(key, ring(key)); }

RatFunc Catalog::ratfunc(std::string_view key, const VarsPtr& ring) const {
  return parse_ratfunc(record(key).source, ring);
}

RatFunc Catalog::evaluate(std::string_view key, const std::map<std::string, RatFunc>& env) const {
  const auto& r = record(key);
  std::set<std::string> declared(r.vars.begin(), r.vars.end());
  return to_ratfunc(parse_expr(r.source, &declared), env);
}

Poly Catalog::poly(std::string_view key, const VarsPtr& ring) const {
  RatFunc f = ratfunc(key, ring);
  if (!f.is_polynomial()) throw StructuralError("catalog record '" + std::string(key) + "' is not a polynomial");
  Poly p = f.num().scale(Rational(1) / f.den().constant_value());
  return p.is_zero() ? Poly(ring) : p.with_vars(ring);
}

DiffOperator Catalog::op(std::string_view key, const VarsPtr& ring) const {
  return parse_operator(record(key).source, ring);
}

Polynomial<Cyclo3> Catalog::cyclo_poly(std::string_view key, const VarsPtr& ring) const {
  std::set<std::string> declared(ring->names().begin(), ring->names().end());
  declared.insert("zeta3");
  return to_cyclo_poly(parse_expr(record(key).source, &declared), ring);
}

}  // namespace pfk3
