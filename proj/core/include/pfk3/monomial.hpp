#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace pfk3 {

inline constexpr int kMaxVars = 8;

/// Ordered variable names shared by every polynomial of one ring.
class Vars {
 public:
  explicit Vars(std::vector<std::string> names);
  const std::vector<std::string>& names() const { return names_; }
  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_[static_cast<size_t>(i)]; }
  /// -1 when absent.
  int index(std::string_view name) const;
  bool operator==(const Vars& o) const { return names_ == o.names_; }

 private:
  std::vector<std::string> names_;
};

using VarsPtr = std::shared_ptr<const Vars>;

VarsPtr make_vars(std::vector<std::string> names);

/// Null pointers stand for "constant, any ring". Throws StructuralError on a real mismatch.
VarsPtr unify_vars(const VarsPtr& a, const VarsPtr& b);
bool same_vars(const VarsPtr& a, const VarsPtr& b);

struct Monomial {
  std::array<uint16_t, kMaxVars> e{};
  uint32_t deg = 0;

  static Monomial var(int i, unsigned power = 1) {
    Monomial m;
    m.e[static_cast<size_t>(i)] = static_cast<uint16_t>(power);
    m.deg = power;
    return m;
  }

  unsigned operator[](int i) const { return e[static_cast<size_t>(i)]; }
  bool is_one() const { return deg == 0; }

  bool divides(const Monomial& o) const {
    if (deg > o.deg) return false;
    for (int i = 0; i < kMaxVars; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<uint16_t>(e[i] + o.e[i]);
    r.deg = deg + o.deg;
    return r;
  }

  /// Caller guarantees o divides *this.
  Monomial operator/(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<uint16_t>(e[i] - o.e[i]);
    r.deg = deg - o.deg;
    return r;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.deg = 0;
    for (int i = 0; i < kMaxVars; ++i) {
      r.e[i] = a.e[i] > b.e[i] ? a.e[i] : b.e[i];
      r.deg += r.e[i];
    }
    return r;
  }

  static Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.deg = 0;
    for (int i = 0; i < kMaxVars; ++i) {
      r.e[i] = a.e[i] < b.e[i] ? a.e[i] : b.e[i];
      r.deg += r.e[i];
    }
    return r;
  }

  bool coprime(const Monomial& o) const {
    for (int i = 0; i < kMaxVars; ++i)
      if (e[i] != 0 && o.e[i] != 0) return false;
    return true;
  }

  bool operator==(const Monomial& o) const { return e == o.e; }
};

/// Graded reverse lexicographic: >0 when a > b.
inline int grevlex_cmp(const Monomial& a, const Monomial& b) {
  if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
  for (int i = kMaxVars - 1; i >= 0; --i) {
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
  }
  return 0;
}

struct MonomialHash {
  size_t operator()(const Monomial& m) const {
    uint64_t lo = 0;
    uint64_t hi = 0;
    std::memcpy(&lo, m.e.data(), 8);
    std::memcpy(&hi, m.e.data() + 4, 8);
    uint64_t h = lo * 0x9E3779B97F4A7C15ULL ^ (hi + 0x632BE59BD9B4E019ULL + (lo << 6) + (lo >> 2));
    return static_cast<size_t>(h ^ (h >> 29));
  }
};

struct MonomialGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_cmp(a, b) > 0; }
};

std::string monomial_to_string(const Monomial& m, const Vars& vars);

/// All monomials of total degree d in n variables, in decreasing grevlex order.
std::vector<Monomial> monomials_of_degree(int n, int d);

}  // namespace pfk3
