#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pfk3/cyclo3.hpp"
#include "pfk3/operators.hpp"
#include "pfk3/ratfunc.hpp"

namespace pfk3 {

struct CatalogRecord {
  std::string key;
  std::vector<std::string> vars;
  std::string source;
};

/// 64-bit FNV-1a digest as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view data);

/**
 * @brief Checksummed table of exact expressions.
 *
 * Lines are "key | vars | expression"; '#' starts a comment. A "checksum | fnv1a64 | hex"
 * line covers the concatenation of every record line followed by a newline.
 */
class Catalog {
 public:
  /// Throws StructuralError on malformed lines, duplicate keys or a checksum mismatch.
  static Catalog parse(std::string_view text);
  /// The file named by PFK3_CATALOG if set, otherwise the compiled-in copy.
  static const Catalog& instance();
  static std::string_view embedded_text();

  bool contains(std::string_view key) const;
  const CatalogRecord& record(std::string_view key) const;
  const std::vector<CatalogRecord>& records() const { return records_; }
  const std::string& stored_checksum() const { return stored_; }
  const std::string& computed_checksum() const { return computed_; }
  /// Where the text came from: "embedded" or a path.
  const std::string& origin() const { return origin_; }

  /// Ring of the record's declared variables.
  VarsPtr ring(std::string_view key) const;
  RatFunc ratfunc(std::string_view key) const;
  /// Read in another ring; every identifier of the record must be a variable of ring.
  RatFunc ratfunc(std::string_view key, const VarsPtr& ring) const;
  /// Evaluate with identifiers bound to values (for records with many symbols).
  RatFunc evaluate(std::string_view key, const std::map<std::string, RatFunc>& env) const;
  Poly poly(std::string_view key, const VarsPtr& ring) const;
  DiffOperator op(std::string_view key, const VarsPtr& ring) const;
  Polynomial<Cyclo3> cyclo_poly(std::string_view key, const VarsPtr& ring) const;

 private:
  std::vector<CatalogRecord> records_;
  std::map<std::string, size_t, std::less<>> index_;
  std::string stored_;
  std::string computed_;
  std::string origin_ = "embedded";
};

}  // namespace pfk3
