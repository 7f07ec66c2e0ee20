#pragma once

#include "mcflab/core.hpp"

namespace mcflab {

enum class MatKind { forward, inverse };

/// Dense integer matrix attached to a cylinder of the map, or a finite
/// product of such matrices of the same kind.
struct TransitionMatrix {
  int n = 0;
  MatKind kind = MatKind::forward;
  std::vector<Int> e;  // row-major

  TransitionMatrix() = default;
  TransitionMatrix(int n_, MatKind k) : n(n_), kind(k), e(n_ * n_, 0) {}

  Int& at(int i, int j) { return e[i * n + j]; }
  const Int& at(int i, int j) const { return e[i * n + j]; }

  bool operator==(const TransitionMatrix& o) const {
    return n == o.n && e == o.e;
  }

  static TransitionMatrix identity(int n, MatKind k) {
    TransitionMatrix m(n, k);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  bool is_identity() const {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }

  bool nonnegative() const {
    for (const auto& v : e)
      if (v < 0) return false;
    return true;
  }
};

/// Forward cylinder matrix: row pi(i) is e_i for i <= a and e_i - e_a for
/// i > a, so that L x^T equals the step image for points of the cylinder.
inline TransitionMatrix forward_matrix(const Shuffle& pi, const MapParams& p) {
  if (!pi.valid_for(p)) throw usage_error("shuffle is not valid for (a, b)");
  int n = p.dim(), a = p.a;
  TransitionMatrix m(n, MatKind::forward);
  for (int i = 0; i < n; ++i) {
    int row = pi.dest[i];
    m.at(row, i) = 1;
    if (i >= a) m.at(row, a - 1) -= 1;
  }
  return m;
}

/// Inverse branch matrix: column pi(i) is e_i for i != a and
/// e_a + e_{a+1} + ... + e_{a+b} for i == a. Nonnegative, unimodular.
inline TransitionMatrix inverse_matrix(const Shuffle& pi, const MapParams& p) {
  if (!pi.valid_for(p)) throw usage_error("shuffle is not valid for (a, b)");
  int n = p.dim(), a = p.a;
  TransitionMatrix m(n, MatKind::inverse);
  for (int i = 0; i < n; ++i) {
    int col = pi.dest[i];
    if (i == a - 1) {
      for (int r = a - 1; r < n; ++r) m.at(r, col) = 1;
    } else {
      m.at(i, col) = 1;
    }
  }
  return m;
}

/// Product restricted to like kinds; the column-sum facts below concern
/// words of forward matrices and words of inverse matrices separately.
inline TransitionMatrix multiply(const TransitionMatrix& lhs,
                                 const TransitionMatrix& rhs) {
  if (lhs.n != rhs.n) throw usage_error("matrix size mismatch");
  if (lhs.kind != rhs.kind)
    throw usage_error("cannot multiply matrices of different kinds");
  TransitionMatrix out(lhs.n, lhs.kind);
  for (int i = 0; i < lhs.n; ++i)
    for (int k = 0; k < lhs.n; ++k) {
      const Int& v = lhs.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < lhs.n; ++j) out.at(i, j) += v * rhs.at(k, j);
    }
  return out;
}

/// L * M == I, computed directly (the kind guard does not apply here).
inline bool is_inverse_pair(const TransitionMatrix& l, const TransitionMatrix& m) {
  if (l.n != m.n) return false;
  for (int i = 0; i < l.n; ++i)
    for (int j = 0; j < l.n; ++j) {
      Int s = 0;
      for (int k = 0; k < l.n; ++k) s += l.at(i, k) * m.at(k, j);
      if (s != (i == j ? 1 : 0)) return false;
    }
  return true;
}

template <class T>
Vec<T> apply(const TransitionMatrix& m, const Vec<T>& x) {
  if (static_cast<int>(x.size()) != m.n) throw usage_error("matrix/point size mismatch");
  Vec<T> out(m.n, T(0));
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      if (m.at(i, j) != 0) out[i] += T(m.at(i, j)) * x[j];
  return out;
}

/// Exact determinant, fraction-free Bareiss elimination.
inline Int determinant(const TransitionMatrix& m) {
  int n = m.n;
  std::vector<Int> a = m.e;
  auto at = [&](int i, int j) -> Int& { return a[i * n + j]; };
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (at(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        at(i, j) = (at(k, k) * at(i, j) - at(i, k) * at(k, j)) / prev;
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

inline Vec<Int> column_sums(const TransitionMatrix& m) {
  if (!m.nonnegative())
    throw usage_error("column sums are defined for nonnegative matrices only");
  Vec<Int> c(m.n, 0);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) c[j] += m.at(i, j);
  return c;
}

struct ColumnClaims {
  bool max_property = false;  // max over all columns is attained on columns a..a+b
  bool prefix_bound = false;  // c_1+...+c_{a-1} <= (a-1)(c_a+...+c_{a+b})
};

/// The two column-sum facts proved for words of inverse matrices.
inline ColumnClaims check_column_claims(const TransitionMatrix& m,
                                        const MapParams& p) {
  Vec<Int> c = column_sums(m);
  int a = p.a, n = p.dim();
  Int max_all = c[0], max_tail = c[a - 1];
  for (int i = 1; i < n; ++i) max_all = std::max(max_all, c[i]);
  for (int i = a; i < n; ++i) max_tail = std::max(max_tail, c[i]);
  Int prefix = 0, tail = 0;
  for (int i = 0; i < a - 1; ++i) prefix += c[i];
  for (int i = a - 1; i < n; ++i) tail += c[i];
  ColumnClaims out;
  out.max_property = (max_all == max_tail);
  out.prefix_bound = (prefix <= (a - 1) * tail);
  return out;
}

}  // namespace mcflab
