#pragma once

#include <map>
#include <string>
#include <vector>

#include "pfk3/linalg.hpp"
#include "pfk3/operators.hpp"

namespace pfk3 {

/**
 * @brief Rewrite a system from parameter p to s = p^2 using D_p = 2p D_s.
 *
 * Every resulting coefficient must be even in p (or odd in both numerator and denominator);
 * otherwise the operator is not defined over the field with s and ComputationError is thrown.
 */
PicardFuchsSystem square_rewrite(const PicardFuchsSystem& sys, std::string_view p, std::string_view s);
DiffOperator square_rewrite(const DiffOperator& op, std::string_view p, std::string_view s);

/**
 * @brief Chain rule for old parameters given as rational functions of new ones.
 *
 * values maps every old parameter name to a RatFunc in new_params. Throws StructuralError
 * when the Jacobian determinant vanishes.
 */
PicardFuchsSystem change_parameters(const PicardFuchsSystem& sys, const VarsPtr& new_params,
                                    const std::map<std::string, RatFunc>& values);
DiffOperator change_parameters(const DiffOperator& op, const VarsPtr& new_params,
                               const std::map<std::string, RatFunc>& values);

/// True when op is a RatFunc-linear combination of the equations (left coefficients).
bool in_function_span(const std::vector<DiffOperator>& equations, const DiffOperator& op);

/**
 * @brief Rank-4 system in two variables with basis (F, F_x, F_y, F_xy).
 *
 * connection[i] row b holds the coordinates of D_i applied to basis element b.
 */
struct HolonomicSystem {
  VarsPtr params;
  std::vector<MultiIndex> basis;
  Matrix<RatFunc> connection[2];

  /// Coordinates of D^alpha F in the basis, |alpha| <= 3.
  std::vector<RatFunc> reduce(const MultiIndex& alpha) const;
};

/// Solve two second-order equations for F_xx and F_yy and close the system.
HolonomicSystem holonomic_from_pair(const PicardFuchsSystem& sys);

struct CurveRestriction {
  std::vector<std::vector<RatFunc>> jets;  // coordinates of d^k F/dt^k, k = 0..4
  RatFunc wronskian;                       // det of jets 0..3
  LinearODE ode;                           // minimal order, normalized
  LinearODE cramer;                        // order-4 relation by cofactors (leading = wronskian)
};

/// Restrict F(x(t), y(t)) for a curve given as RatFuncs in the ring t_ring.
CurveRestriction restrict_to_curve(const HolonomicSystem& sys, const RatFunc& x, const RatFunc& y, const VarsPtr& t_ring);

/// Leading coefficient split into squarefree parts.
struct OrderDropReport {
  int order = 0;
  RatFunc leading;
  Rational unit;
  std::vector<std::pair<Poly, int>> leading_factors;
  bool order_dropped = false;
};

OrderDropReport order_drop_report(const LinearODE& ode);

}  // namespace pfk3
