#pragma once

#include <cstddef>
#include <vector>

#include "pfk3/errors.hpp"
#include "pfk3/ratfunc.hpp"

namespace pfk3 {

template <class K>
using Matrix = std::vector<std::vector<K>>;

/// Cost used to pick pivots: smaller is simpler.
inline size_t pivot_cost(const Rational& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}
inline size_t pivot_cost(const RatFunc& f) {
  size_t c = 0;
  for (const auto& t : f.num().terms()) c += 4 + pivot_cost(t.second) / 16;
  for (const auto& t : f.den().terms()) c += 4 + pivot_cost(t.second) / 16;
  return c;
}

template <class K>
struct RowEchelon {
  Matrix<K> rows;           // reduced rows; rows[i][pivots[i]] == 1
  std::vector<size_t> pivots;
  std::vector<size_t> source;  // original index of the row that became rows[i]
};

/// Gauss-Jordan elimination. Within a column, the simplest nonzero entry is the pivot.
template <class K>
RowEchelon<K> rref(Matrix<K> m) {
  RowEchelon<K> out;
  if (m.empty()) return out;
  const size_t ncols = m[0].size();
  std::vector<size_t> src(m.size());
  for (size_t i = 0; i < src.size(); ++i) src[i] = i;
  size_t r = 0;
  for (size_t c = 0; c < ncols && r < m.size(); ++c) {
    size_t best = m.size();
    size_t best_cost = 0;
    for (size_t i = r; i < m.size(); ++i) {
      if (is_zero(m[i][c])) continue;
      size_t cost = pivot_cost(m[i][c]);
      if (best == m.size() || cost < best_cost) {
        best = i;
        best_cost = cost;
      }
    }
    if (best == m.size()) continue;
    std::swap(m[r], m[best]);
    std::swap(src[r], src[best]);
    K inv = K(1) / m[r][c];
    for (size_t j = c; j < ncols; ++j)
      if (!is_zero(m[r][j])) m[r][j] *= inv;
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == r || is_zero(m[i][c])) continue;
      K f = m[i][c];
      for (size_t j = c; j < ncols; ++j)
        if (!is_zero(m[r][j])) m[i][j] -= f * m[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  src.resize(r);
  out.rows = std::move(m);
  out.source = std::move(src);
  return out;
}

template <class K>
size_t rank(const Matrix<K>& m) {
  return rref(m).pivots.size();
}

/// Basis of {v : m v = 0}; each vector has a 1 in one free column.
template <class K>
Matrix<K> nullspace(const Matrix<K>& m, size_t ncols) {
  RowEchelon<K> e = rref(m);
  std::vector<bool> is_pivot(ncols, false);
  for (size_t p : e.pivots) is_pivot[p] = true;
  Matrix<K> basis;
  for (size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<K> v(ncols, K(0));
    v[f] = K(1);
    for (size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class K>
K determinant(Matrix<K> m) {
  const size_t n = m.size();
  K det(1);
  for (size_t c = 0; c < n; ++c) {
    size_t best = n;
    size_t best_cost = 0;
    for (size_t i = c; i < n; ++i) {
      if (is_zero(m[i][c])) continue;
      size_t cost = pivot_cost(m[i][c]);
      if (best == n || cost < best_cost) {
        best = i;
        best_cost = cost;
      }
    }
    if (best == n) return K(0);
    if (best != c) {
      std::swap(m[c], m[best]);
      det = -det;
    }
    det *= m[c][c];
    K inv = K(1) / m[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (is_zero(m[i][c])) continue;
      K f = m[i][c] * inv;
      for (size_t j = c; j < n; ++j)
        if (!is_zero(m[c][j])) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

template <class K>
Matrix<K> inverse(const Matrix<K>& m) {
  const size_t n = m.size();
  Matrix<K> aug(n, std::vector<K>(2 * n, K(0)));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = K(1);
  }
  RowEchelon<K> e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw ComputationError("matrix is singular");
  Matrix<K> out(n, std::vector<K>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out[i][j] = e.rows[i][n + j];
  return out;
}

template <class K>
Matrix<K> transpose(const Matrix<K>& m) {
  if (m.empty()) return {};
  Matrix<K> t(m[0].size(), std::vector<K>(m.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

}  // namespace pfk3
