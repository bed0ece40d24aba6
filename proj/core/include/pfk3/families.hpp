#pragma once

#include <memory>
#include <string_view>
#include <utility>
#include <vector>

#include "pfk3/griffiths_dwork.hpp"
#include "pfk3/holonomic.hpp"

namespace pfk3 {

/// Weierstrass cubic y^2 z - 4x^3 + g2 x z^2 + g3 z^3 with g2, g3 in Q(params).
Hypersurface weierstrass_family(const RatFunc& g2, const RatFunc& g3, const VarsPtr& params);

/**
 * @brief Coefficients (A2, A1, A0) of the second-order t-equation for (g2(t), g3(t)).
 *
 * Uses the closed formulas of the catalog, not Griffiths-Dwork.
 */
std::vector<RatFunc> weierstrass_closed_form(const RatFunc& g2, const RatFunc& g3, std::string_view t);
/// (B1, B0) of the monic equation under j = g2^3 / Delta.
std::pair<RatFunc, RatFunc> weierstrass_monic_closed_form(const RatFunc& g2, const RatFunc& g3, std::string_view t);

/**
 * @brief Griffiths-Dwork data of the Inose quartic Q(1, b, d) and its derived systems.
 *
 * bd holds the order <= 2 relations in (b, d); ud the same system in u = b^2; jj its
 * pullback along u = (j1-1)(j2-1)/(j1 j2), d = 1/(j1 j2).
 */
struct K3Family {
  std::unique_ptr<Hypersurface> hypersurface;
  DerivativeTable table;
  PicardFuchsSystem bd;
  PicardFuchsSystem ud;
  PicardFuchsSystem jj;
  HolonomicSystem hol_ud;
  HolonomicSystem hol_jj;
  double seconds = 0;
};

/// Computed on first use; later calls return the same object.
const K3Family& inose_family();

/// Period ODE of the family (b^2(t), d(t)).
CurveRestriction restrict_symmetric(const RatFunc& b_sq, const RatFunc& d, const VarsPtr& t_ring);
/// Period ODE of the family with j-invariants (j1(t), j2(t)).
CurveRestriction restrict_j_pair(const RatFunc& j1, const RatFunc& j2, const VarsPtr& t_ring);

}  // namespace pfk3
