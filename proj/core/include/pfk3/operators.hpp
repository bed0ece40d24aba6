#pragma once

#include <map>
#include <string>
#include <vector>

#include "pfk3/ratfunc.hpp"

namespace pfk3 {

using MultiIndex = std::vector<int>;

/// Graded order: total degree first, then lexicographic.
struct MultiIndexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/**
 * @brief Linear differential operator sum c_alpha * D^alpha with RatFunc coefficients.
 *
 * Coefficients multiply from the left. D^alpha is the product of partials in the operator's
 * variables; all partials commute.
 */
class DiffOperator {
 public:
  using Terms = std::map<MultiIndex, RatFunc, MultiIndexLess>;

  DiffOperator() = default;
  explicit DiffOperator(VarsPtr vars) : vars_(std::move(vars)) {}
  DiffOperator(VarsPtr vars, Terms terms);

  static DiffOperator identity(const VarsPtr& vars);
  static DiffOperator multiplication(const VarsPtr& vars, const RatFunc& c);
  static DiffOperator partial(const VarsPtr& vars, int i, int power = 1);
  static DiffOperator partial(const VarsPtr& vars, std::string_view name, int power = 1);

  const VarsPtr& vars() const { return vars_; }
  int nvars() const { return vars_ ? vars_->size() : 0; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int order() const;
  RatFunc coeff(const MultiIndex& a) const;
  /// Largest multi-index in the graded order.
  const MultiIndex& leading_index() const;

  DiffOperator operator-() const;
  friend DiffOperator operator+(const DiffOperator& a, const DiffOperator& b);
  friend DiffOperator operator-(const DiffOperator& a, const DiffOperator& b);
  /// Composition in the Weyl algebra.
  friend DiffOperator operator*(const DiffOperator& a, const DiffOperator& b);
  friend bool operator==(const DiffOperator& a, const DiffOperator& b);
  /// Left multiplication by a function.
  DiffOperator scale(const RatFunc& c) const;

  RatFunc apply(const RatFunc& f) const;
  /// Leading coefficient 1, then cleared to coprime integer polynomial coefficients.
  DiffOperator normalized() const;

  std::string to_string(const std::string& fn = "F") const;
  std::string to_latex(const std::string& fn = "F") const;

 private:
  VarsPtr vars_;
  Terms terms_;
};

/// Partial derivative of f of multi-index a, indices referring to vars.
RatFunc partial_derivative(const RatFunc& f, const VarsPtr& vars, const MultiIndex& a);

struct PicardFuchsSystem {
  VarsPtr params;
  std::vector<DiffOperator> equations;
};

/// Ordinary operator sum_i coefficients[i] * (d/dvar)^i.
struct LinearODE {
  VarsPtr ring;
  std::string var;
  std::vector<RatFunc> coefficients;
  bool normalized = false;

  int order() const { return static_cast<int>(coefficients.size()) - 1; }
  const RatFunc& leading() const { return coefficients.back(); }
  LinearODE normalize() const;
  /// Divide by the leading coefficient.
  std::vector<RatFunc> monic() const;
  RatFunc apply(const RatFunc& f) const;
  DiffOperator as_operator() const;
  std::string to_string(const std::string& fn = "f") const;
  std::string to_latex(const std::string& fn = "f") const;
};

bool same_up_to_factor(const LinearODE& a, const LinearODE& b);

/**
 * @brief Clear denominators, divide by the polynomial gcd and rational content.
 *
 * The sign makes the leading integer coefficient of the last nonzero entry positive.
 */
std::vector<RatFunc> normalize_coefficients(const std::vector<RatFunc>& c);

/// Least common multiple of denominators.
Poly denominator_lcm(const std::vector<RatFunc>& c);

}  // namespace pfk3
