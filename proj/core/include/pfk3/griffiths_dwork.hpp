#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pfk3/groebner.hpp"
#include "pfk3/linalg.hpp"
#include "pfk3/operators.hpp"
#include "pfk3/ratfunc.hpp"

namespace pfk3 {

/// Polynomial in the homogeneous coordinates with coefficients rational in the parameters.
using GeoPoly = Polynomial<RatFunc>;

/**
 * @brief Cohomology class sum_k P_k * Omega_0 / Q^k.
 *
 * Omega_0 is implicit. Each P_k must be homogeneous of degree k*deg(Q) - N.
 */
struct FormClass {
  std::map<int, GeoPoly> parts;

  FormClass() = default;
  FormClass(const GeoPoly& numerator, int pole_order);

  bool is_zero() const;
  /// Highest pole order with a nonzero numerator; 0 for the zero class.
  int pole_order() const;
  GeoPoly numerator(int k) const;

  FormClass& operator+=(const FormClass& o);
  FormClass& operator-=(const FormClass& o);
  friend FormClass operator+(FormClass a, const FormClass& b) { return a += b; }
  friend FormClass operator-(FormClass a, const FormClass& b) { return a -= b; }
  FormClass scale(const RatFunc& c) const;
  friend bool operator==(const FormClass& a, const FormClass& b);
};

/// One application of the pole-order reduction to the top part of a class.
struct ReductionStep {
  FormClass input;
  int order = 0;
  std::vector<GeoPoly> cofactors;  // ideal part of the top numerator = sum A_i dQ/dx_i
  GeoPoly remainder;               // normal form, kept at the top order
  FormClass output;
};

/**
 * @brief Projective hypersurface Q = 0 whose coefficients depend rationally on parameters.
 *
 * Holds the Groebner basis of the Jacobian ideal and a memo of reduced monomial classes.
 * Not safe for concurrent use (the memo is filled lazily).
 */
class Hypersurface {
 public:
  Hypersurface(GeoPoly q, VarsPtr params);

  const GeoPoly& polynomial() const { return q_; }
  const VarsPtr& coordinates() const { return q_.vars(); }
  const VarsPtr& params() const { return params_; }
  int degree() const { return degree_; }
  int ambient_count() const { return coordinates()->size(); }
  int numerator_degree(int k) const { return k * degree_ - ambient_count(); }
  const GroebnerBasis<RatFunc>& jacobian() const { return gb_; }
  const std::vector<GeoPoly>& gradient() const { return dq_; }
  /// True when V(J(Q)) is empty in projective space (every coordinate has a pure power in LT(J)).
  bool jacobian_zero_dimensional() const { return gb_.zero_dimensional(); }

  /// The class of Omega_0 / Q.
  FormClass period() const;
  FormClass differentiate(const FormClass& f, std::string_view param) const;
  ReductionStep reduce_pole_order(const FormClass& f) const;
  /// Fully reduced representative: every part is a combination of standard monomials.
  FormClass reduce(const FormClass& f) const;
  void check_homogeneous(const FormClass& f) const;

 private:
  struct Key {
    int order;
    Monomial m;
    bool operator<(const Key& o) const {
      if (order != o.order) return order < o.order;
      return grevlex_cmp(m, o.m) < 0;
    }
  };
  const FormClass& reduced_monomial(const Monomial& m, int k) const;

  GeoPoly q_;
  VarsPtr params_;
  int degree_ = 0;
  std::vector<GeoPoly> dq_;
  GroebnerBasis<RatFunc> gb_;
  mutable std::map<Key, FormClass> memo_;
};

/**
 * @brief Coordinates of reduced classes up to a pole order, modulo the exact relations.
 *
 * Columns are (order, standard monomial), higher orders first. When J(Q) is not
 * zero-dimensional, the divergence relations k*[mu dQ/dx_i / Q^{k+1}] = [d mu/dx_i / Q^k]
 * are imposed; the quotient coordinates are the non-pivot columns of their row echelon form.
 */
class ClassSpace {
 public:
  ClassSpace(const Hypersurface& h, int max_order);

  size_t coordinate_count() const { return columns_.size(); }
  size_t relation_rank() const { return echelon_.pivots.size(); }
  size_t dimension() const { return free_.size(); }
  size_t relations_generated() const { return generated_; }
  const std::vector<std::pair<int, Monomial>>& columns() const { return columns_; }
  std::vector<std::pair<int, Monomial>> basis() const;

  /// Coordinates of an already reduced class.
  std::vector<RatFunc> coordinates(const FormClass& reduced) const;
  /// Reduce, then express in the quotient basis.
  std::vector<RatFunc> project(const FormClass& f) const;

 private:
  void eliminate(std::vector<std::vector<RatFunc>> rows);

  const Hypersurface& h_;
  int max_order_;
  std::vector<std::pair<int, Monomial>> columns_;
  std::map<std::pair<int, std::vector<uint16_t>>, size_t> index_;
  RowEchelon<RatFunc> echelon_;
  std::vector<size_t> free_;
  size_t generated_ = 0;
};

/// Classes of the partial derivatives D^alpha [Omega_0/Q] for all |alpha| <= max_total_order.
struct DerivativeTable {
  std::vector<MultiIndex> indices;
  std::vector<std::vector<RatFunc>> vectors;  // quotient coordinates, one per index
  size_t space_dimension = 0;
  size_t relation_rank = 0;
};

DerivativeTable derivative_table(const Hypersurface& h, int max_total_order);

/**
 * @brief Basis of the linear PDE relations of total order <= max_total_order
 * satisfied by the period of Omega_0/Q, each normalized.
 */
PicardFuchsSystem picard_fuchs_system(const Hypersurface& h, int max_total_order = 2);

/// True when sum_alpha c_alpha D^alpha annihilates the class of Omega_0/Q.
bool annihilates_period(const DerivativeTable& table, const DiffOperator& op);

/**
 * @brief Minimal-order ODE in the single parameter of h for the period of Omega_0/Q.
 *
 * Throws ComputationError when no relation exists up to max_order.
 */
LinearODE picard_fuchs_ode(const Hypersurface& h, int max_order);

/**
 * @brief Read f as a polynomial in coords with coefficients in Q(params).
 *
 * The denominator of f may only involve params.
 */
GeoPoly geometric_polynomial(const RatFunc& f, const VarsPtr& coords, const VarsPtr& params);

/// Evaluate every coefficient at a rational point of the parameters.
std::vector<Rational> specialize(const std::vector<RatFunc>& v, const std::vector<Rational>& point);

/// Deterministic sample points for rank guidance.
std::vector<Rational> sample_point(size_t n, int attempt);

}  // namespace pfk3
