#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pfk3/cyclo3.hpp"
#include "pfk3/operators.hpp"
#include "pfk3/ratfunc.hpp"

namespace pfk3 {

using CPoly = Polynomial<Cyclo3>;

/// Ring (x, y, z, alpha, beta) of the fibered cubic S'.
VarsPtr hadano_ring();
/// y^2 z - 2(alpha+beta) x y z + 2 alpha beta^2 y z^2 + x^3 at base (a, b).
CPoly hadano_cubic(const CPoly& x, const CPoly& y, const CPoly& z, const CPoly& a, const CPoly& b);

/**
 * @brief Remainder of p modulo s, exact over Q(zeta3).
 *
 * When s is monic in some variable the remainder is taken in that variable (a canonical
 * form that keeps intermediate sizes small); otherwise ordinary sparse division is used.
 * Either way the remainder is zero iff s divides p.
 */
CPoly remainder_mod(const CPoly& p, const CPoly& s);

struct IsogenyMap {
  int level = 0;
  CPoly x, y, z;
  CPoly alpha, beta;
};

/// Coordinates as displayed; variant "display" keeps the displayed zeta3 term of y'_3.
IsogenyMap isogeny_map(int n, bool conjugate_zeta = false, bool display_reading = false);
/// phi_3 after phi_2 (with phi_2 landing on the base representative where it is verified).
IsogenyMap compose(const IsogenyMap& outer, const IsogenyMap& inner);

struct IsogenyReport {
  int level = 0;
  bool holds = false;
  /// +1 when the target fiber is at the displayed base representative, -1 for its negative.
  int representative = 0;
  bool base_matches = false;  // base map equals the displayed one as a point of P^1
  bool homogeneous = true;    // coordinate images are homogeneous of one degree
  std::string base_map;
  std::string residual;  // empty when divisible
};

/**
 * @brief Pulled-back target cubic divisible by the source cubic.
 *
 * The fiber over [alpha : beta] depends on the representative only up to y -> -y, so the
 * check accepts the displayed base or its negative and reports which one.
 */
IsogenyReport verify_isogeny(int n, bool conjugate_zeta = false, bool display_reading = false);
IsogenyReport verify_isogeny_map(const IsogenyMap& m, const CPoly& expected_alpha, const CPoly& expected_beta);

struct BeauvilleReport {
  bool holds = false;
  std::string quotient;
  std::string residual;
};

/// With drop_xzy the x(z+y) term of the middle coordinate is removed (mutation witness).
BeauvilleReport verify_beauville_iso(bool drop_xzy = false);

struct ToricCurveReport {
  bool equation_matches = false;
  std::string pullback_ratio;  // image(phi) / f, a unit on the torus
  RatFunc j_computed;          // g2^3/Delta with t = -16 lambda2
  RatFunc j_display;
  bool j_display_matches = false;
  LinearODE gd_ode;
  bool ode_matches = false;
  Rational closed_form_factor;  // A2 / (t(432t-1)), the displayed 1/393216
  bool factor_matches = false;
};

ToricCurveReport toric_to_weierstrass();

struct ToricK3Report {
  bool image_display_sign = false;    // with the displayed x-shift -lambda0^2/48
  bool image_flipped_sign = false;    // with +lambda0^2/48
  bool image_homogeneous = false;     // the displayed image is of one degree in (x, y, z, w)
  bool inose_match = false;           // image equals Inose(a, b, 1) on w = 1
  RatFunc a, b;                       // Inose parameters read off the image
  bool z1_display = false;
  bool z2_display = false;
  bool a_cubed_map = false;           // a^3 = 1/(144^3 z1^2 z2) with z2 = l1 l2 / l5^2
  bool b_sq_map_display = false;      // b^2 = (864 z1 - 1)/(144^3 z1^2 z2)
  bool b_sq_map_squared = false;      // b^2 = (864 z1 - 1)^2/(144^3 z1^2 z2)
  bool patch_display = false;         // (b^2, d) = (864 z1 - 1, 144^3 z1^2 z2) on a = 1
  bool patch_as_b = false;            // (b, d) = (864 z1 - 1, 144^3 z1^2 z2) on a = 1
  bool perturbed_lambda3 = false;     // image still matches after lambda3 -> lambda3 + 1
  bool holds() const {
    return image_flipped_sign && inose_match && a_cubed_map && b_sq_map_squared && patch_as_b && !perturbed_lambda3;
  }
};

ToricK3Report toric_to_inose();

struct GkzReport {
  bool curve_identity = false;
  DiffOperator pulled1, pulled2;  // (GDbd1), (GDbd2) in (z1, z2)
  bool identity1 = false;         // pulled1 proportional to the displayed combination
  RatFunc factor1;
  bool identity2_display = false;  // pulled2 proportional to -(1/z1) L1 + 1728 L2
  std::optional<RatFunc> constant2;  // c with pulled2 proportional to -(1/z1) L1 + c L2
  RatFunc factor2;
  bool identity2_computed = false;
  bool mutation_1729 = false;        // proportional to -(1/z1) L1 + 1729 L2
  bool display_in_span = false;      // both displayed combinations annihilate the pulled system
  bool holds() const { return curve_identity && identity1 && identity2_computed && display_in_span && !mutation_1729; }
};

GkzReport gkz_agreement();

/// Coefficients c with op = sum c_i basis_i (left multiplication), if any.
std::optional<std::vector<RatFunc>> express_in(const std::vector<DiffOperator>& basis, const DiffOperator& op);
/// op = f * target for a function f.
std::optional<RatFunc> proportionality(const DiffOperator& op, const DiffOperator& target);

}  // namespace pfk3
