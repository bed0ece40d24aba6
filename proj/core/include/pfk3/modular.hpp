#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfk3/holonomic.hpp"
#include "pfk3/ratfunc.hpp"

namespace pfk3 {

/// W1 = a^3/d, W2 = b^2/d.
struct WInvariants {
  RatFunc W1;
  RatFunc W2;
};

WInvariants w_invariants(const RatFunc& a, const RatFunc& b_sq, const RatFunc& d);
/// W1 = j1 j2, W2 = (j1 - 1)(j2 - 1).
WInvariants w_from_j_pair(const RatFunc& j1, const RatFunc& j2);

struct ModularParametrization {
  int level = 0;
  VarsPtr ring;
  std::optional<std::pair<RatFunc, RatFunc>> j_pair;
  std::optional<RatFunc> b_sq;
  std::optional<RatFunc> d;
  std::string source;

  static ModularParametrization from_j_pair(const RatFunc& j1, const RatFunc& j2, const VarsPtr& ring);
  static ModularParametrization from_symmetric(const RatFunc& b_sq, const RatFunc& d, const VarsPtr& ring);
};

/// Weighted-homogeneous polynomial in (a, b, d) with weights (2, 3, 6).
struct PsiPolynomial {
  int level = 0;
  Poly poly;
  int weight = 0;
};

PsiPolynomial catalog_psi(int n);
/// The catalog family (b^2(t), d(t)) for n in {2, 3, 6}.
ModularParametrization catalog_parametrization(int n);

/// Weighted degree of every term; throws when p is not weighted homogeneous.
int weighted_degree(const Poly& p, const std::vector<int>& weights);

/**
 * @brief Element u + v X of Q(t)[X]/(X^2 - sigma X + pi).
 */
struct QuadElement {
  RatFunc u;
  RatFunc v;
};

/// Arithmetic and the t-derivation in Q(t)[X]/(X^2 - sigma X + pi); disc = sigma^2 - 4 pi != 0.
class QuadraticExtension {
 public:
  QuadraticExtension(RatFunc sigma, RatFunc pi, std::string var);

  QuadElement generator() const { return {RatFunc(), RatFunc(1)}; }
  QuadElement conjugate_generator() const { return {sigma_, RatFunc(-1)}; }
  QuadElement constant(const RatFunc& c) const { return {c, RatFunc()}; }
  QuadElement add(const QuadElement& a, const QuadElement& b) const;
  QuadElement sub(const QuadElement& a, const QuadElement& b) const;
  QuadElement mul(const QuadElement& a, const QuadElement& b) const;
  QuadElement inverse(const QuadElement& a) const;
  QuadElement derivative(const QuadElement& a) const;
  /// Box of an element j (same formula as for rational j).
  QuadElement box(const QuadElement& j) const;
  static bool is_zero(const QuadElement& a) { return a.u.is_zero() && a.v.is_zero(); }

 private:
  RatFunc sigma_;
  RatFunc pi_;
  std::string var_;
  QuadElement dx_;  // derivative of the generator
};

struct JPairResult {
  RatFunc sigma;
  RatFunc pi;
  RatFunc discriminant;
  bool rational = false;
  std::optional<std::pair<RatFunc, RatFunc>> roots;
};

/// j1, j2 as the roots of X^2 - sigma X + pi with pi = 1/d and sigma = 1 + (1 - b^2)/d.
JPairResult symmetric_to_j_pair(const ModularParametrization& m);

struct MasterEquationReport {
  bool holds = false;
  bool in_extension = false;
  RatFunc box1;  // Box(j1) when rational
  RatFunc box2;
  QuadElement difference;  // Box(j1) - Box(j2) in extension coordinates
};

MasterEquationReport master_equation_report(const ModularParametrization& m);
bool master_equation_check(const ModularParametrization& m);

/// Psi_n(1, b, d) with b^2 -> b_sq(t) and d -> d(t).
RatFunc psi_substituted(int n, const RatFunc& b_sq, const RatFunc& d);
bool psi_vanishing_check(int n);
bool psi_vanishing_check(int n, const RatFunc& b_sq, const RatFunc& d);

struct HauptmodulRecord {
  std::string label;
  RatFunc q_value;
};

HauptmodulRecord qvalue_catalog(const std::string& label);
std::vector<std::string> qvalue_labels();

struct Level2Report {
  bool phi_vanishes = false;
  bool transports_agree = false;
  bool matches_record = false;
  RatFunc phi_value;
  RatFunc transport1;
  RatFunc transport2;
  RatFunc expected;
  bool all() const { return phi_vanishes && transports_agree && matches_record; }
};

/// The Gamma0(3)+3 example; overrides replace h2 or the Q-value record used for the transport.
Level2Report level2_hauptmodul_example(std::optional<RatFunc> h2_override = std::nullopt,
                                       const std::string& qvalue_label = "Gamma0(3)+3");

}  // namespace pfk3
