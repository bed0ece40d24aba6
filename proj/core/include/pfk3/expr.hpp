#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>

#include <map>

#include "pfk3/cyclo3.hpp"
#include "pfk3/operators.hpp"
#include "pfk3/ratfunc.hpp"

namespace pfk3 {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Node of the expression grammar: integers, identifiers, + - * / ^, unary minus, parentheses.
struct Expr {
  enum class Kind { Integer, Variable, Neg, Add, Sub, Mul, Div, Pow };
  Kind kind;
  Integer value;     // Integer literal, or the exponent of Pow
  std::string name;  // Variable
  ExprPtr lhs;
  ExprPtr rhs;
};

/**
 * @brief Parse src. With a non-null declared set every identifier must be in it.
 *
 * Precedence: ^ above unary minus above * / above + -; binary operators associate left.
 * Exponents are nonnegative integer literals. Errors carry line and column.
 */
ExprPtr parse_expr(std::string_view src, const std::set<std::string>* declared = nullptr);

/// Canonical text with the fewest parentheses that reparse to the same tree.
std::string print_expr(const ExprPtr& e);
bool expr_equal(const ExprPtr& a, const ExprPtr& b);
/// Identifiers occurring in e.
std::set<std::string> expr_variables(const ExprPtr& e);

/// Lowering into Q(ring); identifiers must be variables of ring.
RatFunc to_ratfunc(const ExprPtr& e, const VarsPtr& ring);
/// Lowering with every identifier bound to a value.
RatFunc to_ratfunc(const ExprPtr& e, const std::map<std::string, RatFunc>& env);
/**
 * @brief Lowering into the Weyl algebra over Q(ring).
 *
 * D<v> stands for d/dv and T<v> for v*d/dv; products compose, so coefficients written on the
 * left multiply from the left. Division is only by functions.
 */
DiffOperator to_operator(const ExprPtr& e, const VarsPtr& ring);
/// Lowering into Q(zeta3)[ring]; the identifier zeta3 denotes a primitive cube root of unity.
Polynomial<Cyclo3> to_cyclo_poly(const ExprPtr& e, const VarsPtr& ring);

/// Parse and lower in one step; the ring's names are the declared identifiers.
RatFunc parse_ratfunc(std::string_view src, const VarsPtr& ring);
DiffOperator parse_operator(std::string_view src, const VarsPtr& ring);

}  // namespace pfk3
