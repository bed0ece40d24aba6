#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pfk3/polynomial.hpp"
#include "pfk3/rational.hpp"

namespace pfk3 {

using Poly = Polynomial<Rational>;

/// Rational c with p/c an integer polynomial of content 1 and positive leading coefficient.
Rational rational_content(const Poly& p);
Poly primitive_part(const Poly& p);

/// Monic gcd over Q (leading coefficient 1 in grevlex); gcd(0,0) = 0.
Poly poly_gcd(const Poly& a, const Poly& b);

/// Squarefree decomposition of a univariate polynomial: p = c * prod f_i^{m_i}, f_i monic.
struct SquarefreeFactor {
  Poly factor;
  int multiplicity;
};
std::vector<SquarefreeFactor> squarefree_decomposition(const Poly& p, Rational* unit = nullptr);

/// Square root of a univariate polynomial over Q if one exists.
std::optional<Poly> poly_sqrt(const Poly& p);

/// Dense univariate helpers over Z, coefficients low to high.
using DenseZ = std::vector<Integer>;
DenseZ dense_gcd_z(const DenseZ& a, const DenseZ& b);

}  // namespace pfk3
