// linalg.hpp -- dense exact-rational linear algebra.
//
// Hand-rolled Gaussian elimination over the rationals: generic float
// decompositions pivot by magnitude and normalize, which is wrong for an
// exact field, and we need subspace primitives (nullspace, span membership,
// orthogonal complements under a custom Gram form) that certify with zero
// residual.  Matrices are small (<= ~40 columns), so O(n^3) with big
// rationals is cheap.

#ifndef HYPERFOL_LINALG_HPP
#define HYPERFOL_LINALG_HPP

#include "hyperfol/rational.hpp"

#include <cassert>
#include <vector>

namespace hyperfol {

struct RatMat {
  int rows = 0, cols = 0;
  std::vector<Rat> a;  // row-major

  RatMat() = default;
  RatMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  Rat& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Rat& operator()(int i, int j) const {
    return a[static_cast<size_t>(i) * cols + j];
  }

  static RatMat identity(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  RatMat transposed() const {
    RatMat t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<Rat> row(int i) const {
    return std::vector<Rat>(a.begin() + static_cast<size_t>(i) * cols,
                            a.begin() + static_cast<size_t>(i + 1) * cols);
  }

  void append_row(const std::vector<Rat>& r) {
    assert(static_cast<int>(r.size()) == cols || rows == 0);
    if (rows == 0 && cols == 0) cols = static_cast<int>(r.size());
    a.insert(a.end(), r.begin(), r.end());
    ++rows;
  }

  static RatMat from_rows(const std::vector<std::vector<Rat>>& rws) {
    RatMat m;
    for (const auto& r : rws) m.append_row(r);
    return m;
  }

  bool operator==(const RatMat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

inline RatMat operator*(const RatMat& x, const RatMat& y) {
  assert(x.cols == y.rows);
  RatMat z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Rat& v = x(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; ++j) z(i, j) += v * y(k, j);
    }
  return z;
}

inline std::vector<Rat> mat_vec(const RatMat& m, const std::vector<Rat>& v) {
  assert(static_cast<int>(v.size()) == m.cols);
  std::vector<Rat> out(m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (m(i, j) != 0) out[i] += m(i, j) * v[j];
  return out;
}

inline std::vector<Rat> vec_add(std::vector<Rat> x, const std::vector<Rat>& y) {
  assert(x.size() == y.size());
  for (size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  return x;
}

inline std::vector<Rat> vec_sub(std::vector<Rat> x, const std::vector<Rat>& y) {
  assert(x.size() == y.size());
  for (size_t i = 0; i < x.size(); ++i) x[i] -= y[i];
  return x;
}

inline std::vector<Rat> vec_scale(const Rat& c, std::vector<Rat> x) {
  for (auto& e : x) e *= c;
  return x;
}

inline bool vec_is_zero(const std::vector<Rat>& x) {
  for (const auto& e : x)
    if (e != 0) return false;
  return true;
}

// x^T G y for a symmetric bilinear form G.
inline Rat bilinear(const std::vector<Rat>& x, const RatMat& g,
                    const std::vector<Rat>& y) {
  assert(static_cast<int>(x.size()) == g.rows &&
         static_cast<int>(y.size()) == g.cols);
  Rat s = 0;
  for (int i = 0; i < g.rows; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < g.cols; ++j)
      if (g(i, j) != 0) s += x[i] * g(i, j) * y[j];
  }
  return s;
}

// In-place reduced row echelon form; returns pivot column indices.
inline std::vector<int> rref(RatMat& m) {
  std::vector<int> pivots;
  int lead = 0;
  for (int r = 0; r < m.rows && lead < m.cols; ++r) {
    int i = r;
    while (i < m.rows && m(i, lead) == 0) ++i;
    if (i == m.rows) {
      --r;  // stay on this row, advance the column
      ++lead;
      continue;
    }
    if (i != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m(i, j), m(r, j));
    Rat inv = Rat(1) / m(r, lead);
    for (int j = 0; j < m.cols; ++j) m(r, j) *= inv;
    for (int k = 0; k < m.rows; ++k) {
      if (k == r || m(k, lead) == 0) continue;
      Rat f = m(k, lead);
      for (int j = 0; j < m.cols; ++j) m(k, j) -= f * m(r, j);
    }
    pivots.push_back(lead);
    ++lead;
  }
  return pivots;
}

inline int rank(RatMat m) { return static_cast<int>(rref(m).size()); }

// Basis (as rows) of { x : M x = 0 }.
inline RatMat nullspace(RatMat m) {
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (int p : pivots) is_pivot[p] = true;
  RatMat basis;
  basis.cols = m.cols;
  for (int j = 0; j < m.cols; ++j) {
    if (is_pivot[j]) continue;
    std::vector<Rat> v(m.cols);
    v[j] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(static_cast<int>(r), j);
    basis.append_row(v);
  }
  return basis;
}

// One solution of M x = b, or nothing if inconsistent.
inline std::optional<std::vector<Rat>> solve(const RatMat& m,
                                             const std::vector<Rat>& b) {
  assert(static_cast<int>(b.size()) == m.rows);
  RatMat aug(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
    aug(i, m.cols) = b[i];
  }
  std::vector<int> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt;
  std::vector<Rat> x(m.cols);
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(static_cast<int>(r), m.cols);
  return x;
}

// Inverse of a square matrix, or nothing if singular.
inline std::optional<RatMat> inverse(const RatMat& m) {
  assert(m.rows == m.cols);
  int n = m.rows;
  RatMat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<int> pivots = rref(aug);
  if (static_cast<int>(pivots.size()) != n) return std::nullopt;
  RatMat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

// Row space of `span` contains v?
inline bool in_span(const RatMat& span, const std::vector<Rat>& v) {
  if (vec_is_zero(v)) return true;
  if (span.rows == 0) return false;
  return solve(span.transposed(), v).has_value();
}

// Same row space?
inline bool same_span(const RatMat& x, const RatMat& y) {
  RatMat xr = x, yr = y;
  rref(xr);
  rref(yr);
  // rref is a canonical form once zero rows are dropped
  auto trim = [](RatMat& m) {
    while (m.rows > 0 && vec_is_zero(m.row(m.rows - 1))) {
      m.a.resize(static_cast<size_t>(m.rows - 1) * m.cols);
      --m.rows;
    }
  };
  trim(xr);
  trim(yr);
  return xr == yr;
}

// Basis of the G-orthogonal complement of span(rows of sub) inside
// span(rows of ambient); G must be nondegenerate on the ambient space.
inline RatMat orth_complement_in(const RatMat& sub, const RatMat& ambient,
                                 const RatMat& g) {
  // x = c^T * ambient with sub * G * x^T = 0  =>  (sub*G*ambient^T) c = 0.
  RatMat cond = sub * g * ambient.transposed();
  RatMat coeff = nullspace(cond);
  return coeff * ambient;
}

// Gram-Schmidt over Q without normalization (square roots stay out of the
// field); returns a G-orthogonal basis of the same span.
inline RatMat orthogonalize(const RatMat& basis, const RatMat& g) {
  RatMat out;
  out.cols = basis.cols;
  for (int i = 0; i < basis.rows; ++i) {
    std::vector<Rat> v = basis.row(i);
    for (int k = 0; k < out.rows; ++k) {
      std::vector<Rat> u = out.row(k);
      Rat num = bilinear(u, g, v), den = bilinear(u, g, u);
      if (num != 0) v = vec_sub(std::move(v), vec_scale(num / den, u));
    }
    if (!vec_is_zero(v)) out.append_row(v);
  }
  return out;
}

// G-orthogonal projection of v onto span(rows of basis).
inline std::vector<Rat> project_onto(const std::vector<Rat>& v,
                                     const RatMat& basis, const RatMat& g) {
  RatMat ob = orthogonalize(basis, g);
  std::vector<Rat> p(v.size());
  for (int k = 0; k < ob.rows; ++k) {
    std::vector<Rat> u = ob.row(k);
    Rat c = bilinear(u, g, v) / bilinear(u, g, u);
    if (c != 0) p = vec_add(std::move(p), vec_scale(c, u));
  }
  return p;
}

}  // namespace hyperfol

#endif
