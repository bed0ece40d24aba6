#include "pfk3/monomial.hpp"

#include <algorithm>
#include <functional>

#include "pfk3/errors.hpp"

namespace pfk3 {

Vars::Vars(std::vector<std::string> names) : names_(std::move(names)) {
  if (static_cast<int>(names_.size()) > kMaxVars)
    throw StructuralError("at most " + std::to_string(kMaxVars) + " variables are supported");
  for (size_t i = 0; i < names_.size(); ++i)
    for (size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j]) throw StructuralError("duplicate variable '" + names_[i] + "'");
}

int Vars::index(std::string_view name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

VarsPtr make_vars(std::vector<std::string> names) { return std::make_shared<const Vars>(std::move(names)); }

bool same_vars(const VarsPtr& a, const VarsPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

VarsPtr unify_vars(const VarsPtr& a, const VarsPtr& b) {
  if (!a) return b;
  if (!b || a == b) return a;
  if (*a == *b) return a;
  std::string la;
  std::string lb;
  for (const auto& n : a->names()) la += n + " ";
  for (const auto& n : b->names()) lb += n + " ";
  throw StructuralError("variable lists differ: [" + la + "] vs [" + lb + "]");
}

std::string monomial_to_string(const Monomial& m, const Vars& vars) {
  std::string out;
  for (int i = 0; i < vars.size(); ++i) {
    unsigned e = m[i];
    if (!e) continue;
    if (!out.empty()) out += "*";
    out += vars.name(i);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

std::vector<Monomial> monomials_of_degree(int n, int d) {
  std::vector<Monomial> out;
  Monomial cur;
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n - 1) {
      cur.e[static_cast<size_t>(i)] = static_cast<uint16_t>(left);
      cur.deg = static_cast<uint32_t>(d);
      out.push_back(cur);
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur.e[static_cast<size_t>(i)] = static_cast<uint16_t>(k);
      rec(i + 1, left - k);
    }
  };
  if (n == 0) {
    if (d == 0) out.push_back(Monomial{});
    return out;
  }
  rec(0, d);
  std::sort(out.begin(), out.end(), MonomialGreater{});
  return out;
}

}  // namespace pfk3
