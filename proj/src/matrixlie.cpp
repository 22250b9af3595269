#include "hyperfol/matrixlie.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace hyperfol::matrixlie {

namespace {

CMat unit_mat(int n, int i, int j) {
  CMat m = CMat::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

CMat comm(const CMat& a, const CMat& b) { return a * b - b * a; }

RatMat comm_q(const RatMat& a, const RatMat& b) {
  RatMat ab = a * b, ba = b * a;
  RatMat out(a.rows, a.cols);
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] = ab.a[i] - ba.a[i];
  return out;
}

double re_trace_pair(const CMat& a, const CMat& b) {
  // Re tr(a * b^H), the coordinate-extraction product.
  return (a.cwiseProduct(b.conjugate())).sum().real();
}

Mat stack_rows(const std::vector<Vec>& rows, int cols) {
  Mat m(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < m.rows(); ++i) m.row(i) = rows[static_cast<size_t>(i)];
  return m;
}

// Rows spanning { x : m x = 0 } (numeric, by SVD).
Mat kernel_rows(const Mat& m, double tol = 1e-10) {
  if (m.rows() == 0) return Mat::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double top = sv.size() > 0 ? sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * std::max(1.0, top)) ++rank;
  int k = static_cast<int>(m.cols()) - rank;
  Mat out(k, m.cols());
  for (int i = 0; i < k; ++i)
    out.row(i) = svd.matrixV().col(rank + i).transpose();
  return out;
}

Mat to_double_rows(const RatMat& m) {
  Mat out(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out(i, j) = to_double(m(i, j));
  return out;
}

std::vector<Rat> rat_row_times(const std::vector<Rat>& row, const RatMat& m) {
  assert(static_cast<int>(row.size()) == m.rows);
  std::vector<Rat> out(static_cast<size_t>(m.cols));
  for (int i = 0; i < m.rows; ++i) {
    if (row[static_cast<size_t>(i)] == 0) continue;
    for (int j = 0; j < m.cols; ++j)
      out[static_cast<size_t>(j)] += row[static_cast<size_t>(i)] * m(i, j);
  }
  return out;
}

}  // namespace

// --- element <-> matrix ------------------------------------------------------

CMat MatrixLieAlgebra::to_matrix(const Vec& coords) const {
  CMat m = CMat::Zero(n, n);
  for (int i = 0; i < dim(); ++i)
    if (coords(i) != 0.0) m += coords(i) * basis[static_cast<size_t>(i)];
  return m;
}

Vec MatrixLieAlgebra::to_coords(const CMat& m) const {
  Vec v(dim());
  for (int i = 0; i < dim(); ++i)
    v(i) = re_trace_pair(m, basis[static_cast<size_t>(i)]);
  return trace_gram_inv * v;
}

Vec MatrixLieAlgebra::bracket(const Vec& x, const Vec& y) const {
  return to_coords(comm(to_matrix(x), to_matrix(y)));
}

double MatrixLieAlgebra::norm(const Vec& x) const {
  return std::sqrt(std::max(0.0, inner_vv(x, x)));
}

RatMat MatrixLieAlgebra::to_matrix_q(const std::vector<Rat>& coords) const {
  RatMat m(n, n);
  for (size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] == 0) continue;
    const RatMat& b = basis_q[i];
    for (size_t k = 0; k < m.a.size(); ++k)
      if (b.a[k] != 0) m.a[k] += coords[i] * b.a[k];
  }
  return m;
}

std::vector<Rat> MatrixLieAlgebra::to_coords_q(const RatMat& m) const {
  std::vector<Rat> v(static_cast<size_t>(dim()));
  for (int i = 0; i < dim(); ++i) {
    Rat s = 0;  // tr(m * basis_i^T)
    const RatMat& b = basis_q[static_cast<size_t>(i)];
    for (size_t k = 0; k < b.a.size(); ++k)
      if (b.a[k] != 0) s += m.a[k] * b.a[k];
    v[static_cast<size_t>(i)] = s;
  }
  return mat_vec(trace_gram_inv_q, v);
}

std::vector<Rat> MatrixLieAlgebra::bracket_q(const std::vector<Rat>& x,
                                             const std::vector<Rat>& y) const {
  return to_coords_q(comm_q(to_matrix_q(x), to_matrix_q(y)));
}

// --- construction ------------------------------------------------------------

namespace {

// Computes grams/involution and verifies every structural invariant.
void finalize(MatrixLieAlgebra& g) {
  const int d = g.dim();
  Mat tg(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      tg(i, j) = re_trace_pair(g.basis[static_cast<size_t>(i)],
                               g.basis[static_cast<size_t>(j)]);
  g.trace_gram_inv = tg.inverse();
  for (int i = 0; i < d; ++i) {
    Vec e = g.to_coords(g.basis[static_cast<size_t>(i)]);
    e(i) -= 1.0;
    if (e.norm() > 1e-8)
      throw std::logic_error(g.name + ": basis is not independent");
  }

  // theta(X) = -X^H as a coordinate operator.
  g.theta_mat.resize(d, d);
  for (int j = 0; j < d; ++j)
    g.theta_mat.col(j) = g.to_coords(-g.basis[static_cast<size_t>(j)].adjoint());
  if (((g.theta_mat * g.theta_mat) - Mat::Identity(d, d)).cwiseAbs().maxCoeff() >
      1e-8)
    throw std::logic_error(g.name + ": involution does not square to identity");
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const CMat &x = g.basis[static_cast<size_t>(i)],
                 &y = g.basis[static_cast<size_t>(j)];
      CMat lhs = comm(-x.adjoint(), -y.adjoint());
      CMat rhs = -comm(x, y).adjoint();
      if ((lhs - rhs).norm() > 1e-8)
        throw std::logic_error(g.name + ": involution is not an automorphism");
    }

  // ad matrices and the ad-trace Killing form.
  std::vector<Mat> ad(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    Mat a(d, d);
    for (int j = 0; j < d; ++j)
      a.col(j) = g.to_coords(comm(g.basis[static_cast<size_t>(i)],
                                  g.basis[static_cast<size_t>(j)]));
    ad[static_cast<size_t>(i)] = a;
  }
  g.killing.resize(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      double b =
          (ad[static_cast<size_t>(i)] * ad[static_cast<size_t>(j)]).trace();
      g.killing(i, j) = b;
      g.killing(j, i) = b;
    }
  // ad-invariance: B([Z,X],Y) + B(X,[Z,Y]) = 0 on all basis triples.
  for (int i = 0; i < d; ++i) {
    Mat q = ad[static_cast<size_t>(i)].transpose() * g.killing;
    if ((q + q.transpose()).cwiseAbs().maxCoeff() > 1e-7)
      throw std::logic_error(g.name + ": Killing form is not ad-invariant");
  }

  g.inner = -g.killing * g.theta_mat;
  if ((g.inner - g.inner.transpose()).cwiseAbs().maxCoeff() > 1e-8)
    throw std::logic_error(g.name + ": inner product is not symmetric");
  g.inner = 0.5 * (g.inner + g.inner.transpose());
  Eigen::LLT<Mat> llt(g.inner);
  if (llt.info() != Eigen::Success)
    throw std::logic_error(g.name + ": inner product is not positive definite");

  // theta eigenspaces.
  Mat kimg = 0.5 * (Mat::Identity(d, d) + g.theta_mat);
  Mat pimg = 0.5 * (Mat::Identity(d, d) - g.theta_mat);
  g.k_rows = orthonormal_rows(g, kimg.transpose());
  g.p_rows = orthonormal_rows(g, pimg.transpose());
  if (g.k_rows.rows() + g.p_rows.rows() != d)
    throw std::logic_error(g.name + ": involution eigenspaces do not split");
}

// Exact grams for the rational overlay; mirrors finalize.
void finalize_exact(MatrixLieAlgebra& g) {
  const int d = g.dim();
  RatMat tg(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Rat s = 0;
      const RatMat &x = g.basis_q[static_cast<size_t>(i)],
                   &y = g.basis_q[static_cast<size_t>(j)];
      for (size_t k = 0; k < x.a.size(); ++k)
        if (x.a[k] != 0 && y.a[k] != 0) s += x.a[k] * y.a[k];
      tg(i, j) = s;
    }
  auto tinv = inverse(tg);
  if (!tinv) throw std::logic_error(g.name + ": exact basis is degenerate");
  g.trace_gram_inv_q = *tinv;

  g.theta_q = RatMat(d, d);
  for (int j = 0; j < d; ++j) {
    RatMat t = g.basis_q[static_cast<size_t>(j)].transposed();
    for (auto& e : t.a) e = -e;
    std::vector<Rat> c = g.to_coords_q(t);
    for (int i = 0; i < d; ++i) g.theta_q(i, j) = c[static_cast<size_t>(i)];
  }

  std::vector<RatMat> ad(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    RatMat a(d, d);
    for (int j = 0; j < d; ++j) {
      std::vector<Rat> c = g.to_coords_q(
          comm_q(g.basis_q[static_cast<size_t>(i)],
                 g.basis_q[static_cast<size_t>(j)]));
      for (int k = 0; k < d; ++k) a(k, j) = c[static_cast<size_t>(k)];
    }
    ad[static_cast<size_t>(i)] = a;
  }
  g.killing_q = RatMat(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      Rat tr = 0;
      const RatMat &x = ad[static_cast<size_t>(i)],
                   &y = ad[static_cast<size_t>(j)];
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          if (x(r, c) != 0 && y(c, r) != 0) tr += x(r, c) * y(c, r);
      g.killing_q(i, j) = tr;
      g.killing_q(j, i) = tr;
    }
  RatMat minus_k = g.killing_q;
  for (auto& e : minus_k.a) e = -e;
  g.inner_q = minus_k * g.theta_q;

  // Consistency with the float path.
  if ((to_double_rows(g.inner_q) - g.inner).cwiseAbs().maxCoeff() > 1e-8)
    throw std::logic_error(g.name + ": exact and float grams disagree");
}

}  // namespace

MatrixLieAlgebra build_sl_real(int n) {
  if (n < 2 || n > 6)
    throw std::invalid_argument("sl(n,R) realization supports 2 <= n <= 6");
  MatrixLieAlgebra g;
  g.name = "sl(" + std::to_string(n) + ",R)";
  g.n = n;
  auto add = [&](const RatMat& mq) {
    CMat m = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = to_double(mq(i, j));
    g.basis.push_back(m);
    g.basis_q.push_back(mq);
  };
  for (int k = 0; k + 1 < n; ++k) {
    RatMat d(n, n);
    d(k, k) = 1;
    d(k + 1, k + 1) = -1;
    add(d);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      RatMat e(n, n);
      e(i, j) = 1;
      add(e);
    }
  g.exact = true;
  finalize(g);
  finalize_exact(g);
  return g;
}

MatrixLieAlgebra build_sl2_complex() {
  MatrixLieAlgebra g;
  g.name = "sl(2,C)";
  g.n = 2;
  const std::complex<double> I(0.0, 1.0);
  CMat h = CMat::Zero(2, 2), e = unit_mat(2, 0, 1), f = unit_mat(2, 1, 0);
  h(0, 0) = 1.0;
  h(1, 1) = -1.0;
  for (const CMat& m : {h, e, f}) {
    g.basis.push_back(m);
    g.basis.push_back(I * m);
  }
  finalize(g);
  return g;
}

MatrixLieAlgebra build_su12() {
  // su(1,2) realized w.r.t. the antidiagonal Hermitian form J, so that the
  // canonical flat (real diagonal traceless) meets the algebra.
  MatrixLieAlgebra g;
  g.name = "su(1,2)";
  g.n = 3;
  const std::complex<double> I(0.0, 1.0);
  CMat j = CMat::Zero(3, 3);
  j(0, 2) = j(1, 1) = j(2, 0) = 1.0;
  std::vector<CMat> skew;  // 9 generators of the 3x3 skew-Hermitian matrices
  for (int k = 0; k < 3; ++k) skew.push_back(I * unit_mat(3, k, k));
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      skew.push_back(unit_mat(3, a, b) - unit_mat(3, b, a));
      skew.push_back(I * (unit_mat(3, a, b) + unit_mat(3, b, a)));
    }
  // X = J*Y satisfies X^H J + J X = 0; impose trace zero (a real condition,
  // 2 rows to be safe).
  Mat cond(2, 9);
  std::vector<CMat> cand;
  for (size_t k = 0; k < skew.size(); ++k) {
    CMat x = j * skew[k];
    cand.push_back(x);
    std::complex<double> t = x.trace();
    cond(0, static_cast<int>(k)) = t.real();
    cond(1, static_cast<int>(k)) = t.imag();
  }
  Mat combos = kernel_rows(cond, 1e-12);
  if (combos.rows() != 8)
    throw std::logic_error("su(1,2): unexpected dimension");
  for (int r = 0; r < combos.rows(); ++r) {
    CMat m = CMat::Zero(3, 3);
    for (int k = 0; k < 9; ++k)
      if (std::abs(combos(r, k)) > 1e-14) m += combos(r, k) * cand[static_cast<size_t>(k)];
    g.basis.push_back(m);
  }
  finalize(g);
  return g;
}

// --- subspace primitives -----------------------------------------------------

Mat orthonormal_rows(const MatrixLieAlgebra& g, const Mat& rows, double tol) {
  std::vector<Vec> out;
  for (int i = 0; i < rows.rows(); ++i) {
    Vec v = rows.row(i).transpose();
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& u : out) v -= g.inner_vv(u, v) * u;
    double nv = g.norm(v);
    if (nv > tol) out.push_back(v / nv);
  }
  return stack_rows(out, static_cast<int>(rows.cols()));
}

namespace {

double residual_onto(const MatrixLieAlgebra& g, const Mat& ortho, const Vec& v) {
  Vec r = v;
  for (int k = 0; k < ortho.rows(); ++k) {
    Vec u = ortho.row(k).transpose();
    r -= g.inner_vv(u, r) * u;
  }
  return g.norm(r);
}

}  // namespace

double subspace_residual(const MatrixLieAlgebra& g, const Mat& x, const Mat& y) {
  Mat ox = orthonormal_rows(g, x), oy = orthonormal_rows(g, y);
  double res = 0.0;
  for (int i = 0; i < ox.rows(); ++i)
    res = std::max(res, residual_onto(g, oy, ox.row(i).transpose()));
  for (int i = 0; i < oy.rows(); ++i)
    res = std::max(res, residual_onto(g, ox, oy.row(i).transpose()));
  return res;
}

bool bracket_closure(const MatrixLieAlgebra& g, const Mat& rows, double tol,
                     double* residual) {
  Mat o = orthonormal_rows(g, rows);
  double res = 0.0;
  for (int i = 0; i < o.rows(); ++i)
    for (int j = i + 1; j < o.rows(); ++j) {
      Vec b = g.bracket(o.row(i).transpose(), o.row(j).transpose());
      res = std::max(res, residual_onto(g, o, b));
    }
  if (residual) *residual = res;
  return res <= tol;
}

bool is_abelian(const MatrixLieAlgebra& g, const Mat& rows, double tol,
                double* residual) {
  Mat o = orthonormal_rows(g, rows);
  double res = 0.0;
  for (int i = 0; i < o.rows(); ++i)
    for (int j = i + 1; j < o.rows(); ++j)
      res = std::max(res,
                     g.norm(g.bracket(o.row(i).transpose(), o.row(j).transpose())));
  if (residual) *residual = res;
  return res <= tol;
}

bool is_lie_triple(const MatrixLieAlgebra& g, const Mat& rows, double tol,
                   double* residual) {
  Mat o = orthonormal_rows(g, rows);
  double res = 0.0;
  for (int i = 0; i < o.rows(); ++i)
    for (int j = 0; j < o.rows(); ++j)
      for (int k = 0; k < o.rows(); ++k) {
        Vec b = g.bracket(g.bracket(o.row(i).transpose(), o.row(j).transpose()),
                          o.row(k).transpose());
        res = std::max(res, residual_onto(g, o, b));
      }
  if (residual) *residual = res;
  return res <= tol;
}

Mat perp_in_p(const MatrixLieAlgebra& g, const Mat& rows) {
  // xi = p_rows^T q with rows * inner * xi = 0.
  Mat cond = rows * g.inner * g.p_rows.transpose();
  Mat coeff = kernel_rows(cond);
  return orthonormal_rows(g, coeff * g.p_rows);
}

RatMat p_rows_exact(const MatrixLieAlgebra& g) {
  const int d = g.dim();
  RatMat img(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      img(i, j) = (i == j ? Rat(1) : Rat(0)) - g.theta_q(j, i);
  rref(img);
  RatMat out;
  out.cols = d;
  for (int i = 0; i < img.rows; ++i)
    if (!vec_is_zero(img.row(i))) out.append_row(img.row(i));
  return out;
}

RatMat perp_in_p_exact(const MatrixLieAlgebra& g, const RatMat& rows) {
  if (!g.exact) throw std::logic_error("no exact overlay for " + g.name);
  return orth_complement_in(rows, p_rows_exact(g), g.inner_q);
}

bool is_abelian_exact(const MatrixLieAlgebra& g, const RatMat& rows) {
  for (int i = 0; i < rows.rows; ++i)
    for (int j = i + 1; j < rows.rows; ++j)
      if (!vec_is_zero(g.bracket_q(rows.row(i), rows.row(j)))) return false;
  return true;
}

bool bracket_closure_exact(const MatrixLieAlgebra& g, const RatMat& rows) {
  for (int i = 0; i < rows.rows; ++i)
    for (int j = i + 1; j < rows.rows; ++j)
      if (!in_span(rows, g.bracket_q(rows.row(i), rows.row(j)))) return false;
  return true;
}

Verdict polarity_verdict(const MatrixLieAlgebra& g, const Mat& rows,
                         double tol) {
  Verdict v;
  Mat o = orthonormal_rows(g, rows);
  double closure_res = 0.0;
  if (!bracket_closure(g, o, tol, &closure_res))
    throw std::invalid_argument("polarity_verdict: span is not a subalgebra");
  v.is_subalgebra = true;
  v.max_residual = closure_res;

  Mat perp = perp_in_p(g, o);
  double r_ab = 0.0, r_lt = 0.0;
  v.perp_is_abelian = is_abelian(g, perp, tol, &r_ab);
  v.perp_is_lie_triple = is_lie_triple(g, perp, tol, &r_lt);

  // h orthogonal to [perp, perp] + perp; the perp part holds by construction.
  double r_orth = 0.0;
  for (int i = 0; i < perp.rows(); ++i)
    for (int j = 0; j < perp.rows(); ++j) {
      Vec b = g.bracket(perp.row(i).transpose(), perp.row(j).transpose());
      double nb = g.norm(b);
      if (nb <= tol) continue;
      b /= nb;
      for (int k = 0; k < o.rows(); ++k)
        r_orth = std::max(r_orth, std::abs(g.inner_vv(b, o.row(k).transpose())));
    }
  for (int i = 0; i < perp.rows(); ++i)
    for (int k = 0; k < o.rows(); ++k)
      r_orth = std::max(r_orth, std::abs(g.inner_vv(perp.row(i).transpose(),
                                                    o.row(k).transpose())));
  v.orthogonality_condition = r_orth <= tol;

  if (v.perp_is_abelian) {
    v.classification = "hyperpolar";
    v.max_residual = std::max(v.max_residual, r_ab);
  } else if (v.perp_is_lie_triple && v.orthogonality_condition) {
    v.classification = "polar_not_hyperpolar";
    v.max_residual = std::max({v.max_residual, r_lt, r_orth});
  } else {
    v.classification = "not_polar";
  }
  return v;
}

// --- adjoint conjugation -----------------------------------------------------

CMat matrix_exp(const CMat& m) {
  const int n = static_cast<int>(m.rows());
  CMat sum = CMat::Identity(n, n), term = CMat::Identity(n, n);
  for (int k = 1; k <= 80; ++k) {
    term = (term * m) / static_cast<double>(k);
    sum += term;
    if (term.norm() < 1e-17 * std::max(1.0, sum.norm())) return sum;
  }
  if (term.norm() > 1e-12)
    throw std::runtime_error("matrix exponential series did not converge");
  return sum;
}

Mat ad_exp_operator(const MatrixLieAlgebra& g, const Vec& e_coords) {
  CMat e = g.to_matrix(e_coords);
  CMat gm = matrix_exp(e), gi = matrix_exp(-e);
  Mat op(g.dim(), g.dim());
  for (int j = 0; j < g.dim(); ++j)
    op.col(j) = g.to_coords(gm * g.basis[static_cast<size_t>(j)] * gi);
  return op;
}

// --- decomposition -----------------------------------------------------------

const RootSpace& RootSpaceDecomposition::space(const RootVector& lam) const {
  for (const auto& s : positives)
    if (s.abstract == lam) return s;
  throw std::invalid_argument("no such positive root space");
}

Vec RootSpaceDecomposition::a_vector(const std::vector<Rat>& dual_coords) const {
  Vec v = Vec::Zero(dual_rows.cols());
  for (int i = 0; i < dual_rows.rows(); ++i)
    v += to_double(dual_coords[static_cast<size_t>(i)]) *
         dual_rows.row(i).transpose();
  return v;
}

Vec RootSpaceDecomposition::coroot_vec(const RootVector& lam) const {
  return a_vector(rs.coroot(lam));
}

Vec RootSpaceDecomposition::unit_E(const RootVector& lam) const {
  return space(lam).rows.row(0).transpose();
}

namespace {

struct EigenSplit {
  Mat rows;                 // orthonormal basis (coordinates)
  std::vector<double> lam;  // eigenvalue per flat direction
};

// Splits span(rows) into eigenspaces of the <,>-symmetric operator op.
std::vector<std::pair<Mat, double>> split_by(const MatrixLieAlgebra& g,
                                             const Mat& rows, const Mat& op) {
  std::vector<std::pair<Mat, double>> out;
  const int m = static_cast<int>(rows.rows());
  if (m == 0) return out;
  Mat r(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      r(i, j) = rows.row(i) * g.inner * (op * rows.row(j).transpose());
  if ((r - r.transpose()).cwiseAbs().maxCoeff() > 1e-7)
    throw std::runtime_error("flat action is not symmetric on a candidate space");
  r = 0.5 * (r + r.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> eig(r);
  const Vec& vals = eig.eigenvalues();
  int lo = 0;
  while (lo < m) {
    int hi = lo + 1;
    while (hi < m && vals(hi) - vals(lo) < 1e-7) ++hi;
    Mat sub(hi - lo, rows.cols());
    for (int k = lo; k < hi; ++k)
      sub.row(k - lo) = (eig.eigenvectors().col(k).transpose() * rows);
    double mean = 0.0;
    for (int k = lo; k < hi; ++k) mean += vals(k);
    out.emplace_back(sub, mean / (hi - lo));
    lo = hi;
  }
  return out;
}

bool try_decompose(const MatrixLieAlgebra& g, const Mat& a_rows, double tol,
                   unsigned seed, std::vector<EigenSplit>& spaces_out,
                   Mat& g0_out) {
  const int d = g.dim(), ra = static_cast<int>(a_rows.rows());
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(1, 37);
  Vec h0 = Vec::Zero(d);
  for (int i = 0; i < ra; ++i) h0 += coef(rng) * a_rows.row(i).transpose();

  std::vector<Mat> ad_a(static_cast<size_t>(ra));
  for (int i = 0; i < ra; ++i) {
    Mat a(d, d);
    for (int j = 0; j < d; ++j) {
      Vec e = Vec::Zero(d);
      e(j) = 1.0;
      a.col(j) = g.bracket(a_rows.row(i).transpose(), e);
    }
    ad_a[static_cast<size_t>(i)] = a;
  }
  Mat ad_h0(d, d);
  for (int j = 0; j < d; ++j) {
    Vec e = Vec::Zero(d);
    e(j) = 1.0;
    ad_h0.col(j) = g.bracket(h0, e);
  }

  // Start from a <,>-orthonormal basis of the whole algebra so restricted
  // operator matrices are plain symmetric eigenproblems.
  Eigen::LLT<Mat> llt(g.inner);
  Mat full = llt.matrixL().solve(Mat::Identity(d, d));
  std::vector<EigenSplit> spaces;
  for (auto& [rows, val] : split_by(g, full, ad_h0)) {
    (void)val;
    EigenSplit s;
    s.rows = rows;
    spaces.push_back(std::move(s));
  }
  for (int i = 0; i < ra; ++i) {
    std::vector<EigenSplit> next;
    for (auto& s : spaces)
      for (auto& [rows, val] : split_by(g, s.rows, ad_a[static_cast<size_t>(i)])) {
        EigenSplit t;
        t.rows = rows;
        t.lam = s.lam;
        t.lam.push_back(std::abs(val) < 1e-8 ? 0.0 : val);
        next.push_back(std::move(t));
      }
    spaces = std::move(next);
  }

  // Validate: eigen-residuals, zero space, +/- pairing, h0 regularity.
  std::vector<EigenSplit> nonzero;
  Mat g0;
  int total = 0;
  for (auto& s : spaces) {
    total += static_cast<int>(s.rows.rows());
    bool zero = true;
    for (double l : s.lam) zero = zero && std::abs(l) < 1e-8;
    for (int r = 0; r < s.rows.rows(); ++r)
      for (int i = 0; i < ra; ++i) {
        Vec x = s.rows.row(r).transpose();
        Vec resid = ad_a[static_cast<size_t>(i)] * x - s.lam[static_cast<size_t>(i)] * x;
        if (g.norm(resid) > tol * 100) return false;
      }
    if (zero)
      g0 = s.rows;
    else
      nonzero.push_back(s);
  }
  if (total != d || g0.rows() == 0) return false;
  for (const auto& s : nonzero) {
    double at_h0 = 0.0;
    // h0 = sum c_i a_i was built above; recompute lambda(h0) by bracketing.
    Vec x = s.rows.row(0).transpose();
    at_h0 = g.inner_vv(ad_h0 * x, x);
    if (std::abs(at_h0) < 1e-6) return false;  // h0 not regular enough
    bool paired = false;
    for (const auto& t : nonzero) {
      bool neg = t.rows.rows() == s.rows.rows();
      for (size_t i = 0; neg && i < s.lam.size(); ++i)
        neg = std::abs(t.lam[i] + s.lam[i]) < 1e-7;
      if (neg) paired = true;
    }
    if (!paired) return false;
  }
  spaces_out = std::move(nonzero);
  g0_out = g0;
  return true;
}

// Candidate Cartan matrix of a named family (multiplicity-free probe).
std::optional<std::vector<std::vector<int>>> candidate_cartan(
    const std::string& label, int r) {
  using rootsys::MultiplicityProfile;
  std::vector<MultiplicityProfile> probes = {
      MultiplicityProfile{1, std::nullopt, std::nullopt},
      MultiplicityProfile{1, 1, std::nullopt},
      MultiplicityProfile{1, std::nullopt, 1},
      MultiplicityProfile{1, 1, 1}};
  for (const auto& p : probes) {
    try {
      return rootsys::build_root_system(label, r, p).cartan;
    } catch (const std::exception&) {
    }
  }
  return std::nullopt;
}

}  // namespace

RootSpaceDecomposition restricted_root_decomposition(const MatrixLieAlgebra& g,
                                                     double tol) {
  const int d = g.dim(), n = g.n;
  RootSpaceDecomposition dec;

  // Canonical flat: real diagonal traceless matrices that lie in g.  The
  // residual of coordinate round-trip is linear in the diagonal pattern, so
  // membership is a kernel computation.
  std::vector<Vec> cand_coords;
  {
    Mat resid(2 * n * n, n - 1);
    std::vector<Vec> coords;
    for (int k = 0; k + 1 < n; ++k) {
      CMat dk = CMat::Zero(n, n);
      dk(k, k) = 1.0;
      dk(k + 1, k + 1) = -1.0;
      Vec c = g.to_coords(dk);
      coords.push_back(c);
      CMat back = g.to_matrix(c) - dk;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          resid(2 * (i * n + j), k) = back(i, j).real();
          resid(2 * (i * n + j) + 1, k) = back(i, j).imag();
        }
    }
    Mat combos = kernel_rows(resid, 1e-9);
    for (int r = 0; r < combos.rows(); ++r) {
      Vec v = Vec::Zero(d);
      for (int k = 0; k + 1 < n; ++k) v += combos(r, k) * coords[static_cast<size_t>(k)];
      cand_coords.push_back(v);
    }
  }
  if (cand_coords.empty())
    throw std::runtime_error(g.name + ": canonical flat is empty");
  Mat a_rows = orthonormal_rows(g, stack_rows(cand_coords, d));
  const int ra = static_cast<int>(a_rows.rows());

  // Defensive checks: abelian, inside p, maximal abelian in p.
  for (int i = 0; i < ra; ++i) {
    if ((g.theta_mat * a_rows.row(i).transpose() + a_rows.row(i).transpose())
            .norm() > 1e-8)
      throw std::runtime_error(g.name + ": flat is not contained in p");
    for (int j = 0; j < ra; ++j)
      if (g.norm(g.bracket(a_rows.row(i).transpose(),
                           a_rows.row(j).transpose())) > 1e-8)
        throw std::runtime_error(g.name + ": flat is not abelian");
  }
  {
    const int dp = static_cast<int>(g.p_rows.rows());
    Mat cond(ra * d, dp);
    for (int i = 0; i < ra; ++i)
      for (int j = 0; j < dp; ++j)
        cond.block(i * d, j, d, 1) =
            g.bracket(a_rows.row(i).transpose(), g.p_rows.row(j).transpose());
    if (kernel_rows(cond, 1e-8).rows() != ra)
      throw std::runtime_error(
          g.name + ": canonical flat is not maximal abelian in p");
  }

  // Joint diagonalization with retries over the generic element.
  std::vector<EigenSplit> spaces;
  Mat g0;
  bool ok = false;
  for (unsigned attempt = 0; attempt < 5 && !ok; ++attempt)
    ok = try_decompose(g, a_rows, tol, 9871u + attempt, spaces, g0);
  if (!ok)
    throw std::runtime_error(g.name + ": eigenspace splitting failed");

  // Positives via a fixed regular functional: lexicographic sign of lam.
  std::vector<EigenSplit> positives;
  for (auto& s : spaces) {
    double lead = 0.0;
    for (double l : s.lam)
      if (std::abs(l) > 1e-8) {
        lead = l;
        break;
      }
    if (lead > 0.0) positives.push_back(s);
  }

  // Sign-canonicalize basis vectors (largest coordinate positive).
  auto canon = [&](Mat& rows) {
    for (int i = 0; i < rows.rows(); ++i) {
      int arg = 0;
      rows.row(i).cwiseAbs().maxCoeff(&arg);
      if (rows(i, arg) < 0) rows.row(i) = -rows.row(i);
    }
  };
  for (auto& s : positives) canon(s.rows);

  // Simple roots: positive lam not a sum of two positive lams.
  auto lam_eq = [](const std::vector<double>& x, const std::vector<double>& y) {
    for (size_t i = 0; i < x.size(); ++i)
      if (std::abs(x[i] - y[i]) > 1e-7) return false;
    return true;
  };
  std::vector<int> simple_idx;
  for (size_t i = 0; i < positives.size(); ++i) {
    bool decomposable = false;
    for (size_t a = 0; a < positives.size() && !decomposable; ++a)
      for (size_t b = a; b < positives.size() && !decomposable; ++b) {
        std::vector<double> sum = positives[a].lam;
        for (size_t k = 0; k < sum.size(); ++k) sum[k] += positives[b].lam[k];
        if (lam_eq(sum, positives[i].lam)) decomposable = true;
      }
    if (!decomposable) simple_idx.push_back(static_cast<int>(i));
  }
  const int r = static_cast<int>(simple_idx.size());
  if (r != ra)
    throw std::runtime_error(g.name + ": rank mismatch in root recovery");

  bool has_doubled = false;
  for (const auto& s : positives)
    for (const auto& t : positives) {
      std::vector<double> twice = t.lam;
      for (auto& x : twice) x *= 2.0;
      if (lam_eq(s.lam, twice)) has_doubled = true;
    }

  auto dot = [](const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
  };

  // Cartan integers of the computed simples.
  std::vector<std::vector<int>> cmat(static_cast<size_t>(r),
                                     std::vector<int>(static_cast<size_t>(r)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      double c = 2.0 *
                 dot(positives[static_cast<size_t>(simple_idx[static_cast<size_t>(i)])].lam,
                     positives[static_cast<size_t>(simple_idx[static_cast<size_t>(j)])].lam) /
                 dot(positives[static_cast<size_t>(simple_idx[static_cast<size_t>(j)])].lam,
                     positives[static_cast<size_t>(simple_idx[static_cast<size_t>(j)])].lam);
      double rounded = std::round(c);
      if (std::abs(c - rounded) > 1e-6)
        throw std::runtime_error(g.name + ": non-integral Cartan pairing");
      cmat[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          static_cast<int>(rounded);
    }

  // Match a named family by permuting the computed simples.
  std::vector<std::string> labels;
  if (has_doubled)
    labels = {"BC"};
  else if (r == 1)
    labels = {"A"};
  else {
    labels = {"A", "B", "C", "D", "G2", "F4"};
  }
  std::string matched_label;
  std::vector<int> perm(static_cast<size_t>(r));
  std::iota(perm.begin(), perm.end(), 0);
  bool found = false;
  for (const auto& label : labels) {
    if (label == "D" && r < 4) continue;
    if (label == "G2" && r != 2) continue;
    if (label == "F4" && r != 4) continue;
    if ((label == "B" || label == "C") && r < 2) continue;
    auto target = candidate_cartan(label, r);
    if (!target) continue;
    std::vector<int> p(static_cast<size_t>(r));
    std::iota(p.begin(), p.end(), 0);
    do {
      bool okp = true;
      for (int i = 0; i < r && okp; ++i)
        for (int j = 0; j < r && okp; ++j)
          okp = (*target)[static_cast<size_t>(i)][static_cast<size_t>(j)] ==
                cmat[static_cast<size_t>(p[static_cast<size_t>(i)])]
                    [static_cast<size_t>(p[static_cast<size_t>(j)])];
      if (okp) {
        matched_label = label;
        perm = p;
        found = true;
        break;
      }
    } while (std::next_permutation(p.begin(), p.end()));
    if (found) break;
  }
  if (!found)
    throw std::runtime_error(g.name + ": computed root system matches no family");

  // Simple roots in matched order; abstract coordinates of every positive.
  std::vector<std::vector<double>> simple_lam;
  for (int i = 0; i < r; ++i)
    simple_lam.push_back(
        positives[static_cast<size_t>(simple_idx[static_cast<size_t>(perm[static_cast<size_t>(i)])])].lam);
  Mat smat(r, ra);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < ra; ++k) smat(i, k) = simple_lam[static_cast<size_t>(i)][static_cast<size_t>(k)];
  Mat smat_inv = smat.inverse();

  // Multiplicity profile and scale from the realized data.
  double short_n2 = 1e300;
  for (int i = 0; i < r; ++i)
    short_n2 = std::min(short_n2, dot(simple_lam[static_cast<size_t>(i)],
                                      simple_lam[static_cast<size_t>(i)]));
  rootsys::MultiplicityProfile prof;
  std::optional<int> long_mult, doubled_mult;
  int short_mult = -1;
  for (int i = 0; i < r; ++i) {
    double n2 = dot(simple_lam[static_cast<size_t>(i)], simple_lam[static_cast<size_t>(i)]);
    int m = static_cast<int>(
        positives[static_cast<size_t>(simple_idx[static_cast<size_t>(perm[static_cast<size_t>(i)])])].rows.rows());
    if (n2 < short_n2 * 1.5)
      short_mult = m;
    else
      long_mult = m;
  }
  for (const auto& s : positives)
    for (int i = 0; i < r; ++i) {
      std::vector<double> twice = simple_lam[static_cast<size_t>(i)];
      for (auto& x : twice) x *= 2.0;
      if (lam_eq(s.lam, twice)) doubled_mult = static_cast<int>(s.rows.rows());
    }
  prof.short_mult = short_mult;
  prof.long_mult = long_mult;
  prof.doubled_mult = doubled_mult;
  auto scale = rationalize(short_n2, 1000000, 1e-7);
  if (!scale)
    throw std::runtime_error(g.name + ": short root length is not rational");
  dec.rs = rootsys::build_root_system(matched_label, r, prof, *scale);

  // Assign abstract coordinates and order like the abstract system.
  std::vector<RootSpace> ordered(dec.rs.positives.size());
  std::vector<bool> seen(dec.rs.positives.size(), false);
  for (auto& s : positives) {
    Vec lamv(ra);
    for (int k = 0; k < ra; ++k) lamv(k) = s.lam[static_cast<size_t>(k)];
    Vec c = smat_inv.transpose() * lamv;
    RootVector ab;
    for (int i = 0; i < r; ++i) {
      double rounded = std::round(c(i));
      if (std::abs(c(i) - rounded) > 1e-6)
        throw std::runtime_error(g.name + ": non-integral root coordinates");
      ab.c.push_back(static_cast<int>(rounded));
    }
    int idx = dec.rs.positive_index(ab);
    if (idx < 0 || seen[static_cast<size_t>(idx)])
      throw std::runtime_error(g.name + ": realized root not in matched system");
    if (dec.rs.mult[static_cast<size_t>(idx)] != s.rows.rows())
      throw std::runtime_error(g.name + ": multiplicity mismatch");
    double want = to_double(dec.rs.norm2(ab));
    if (std::abs(dot(s.lam, s.lam) - want) > 1e-8)
      throw std::runtime_error(g.name + ": root length mismatch");
    RootSpace out;
    out.lam = s.lam;
    out.abstract = ab;
    out.rows = s.rows;
    ordered[static_cast<size_t>(idx)] = std::move(out);
    seen[static_cast<size_t>(idx)] = true;
  }
  for (bool b : seen)
    if (!b) throw std::runtime_error(g.name + ": missing realized root space");
  dec.positives = std::move(ordered);
  dec.a_rows = a_rows;
  dec.g0_rows = orthonormal_rows(g, g0);

  // k0 = fixed vectors of theta inside g0: coefficients c with
  // (I - theta) g0^T c = 0.
  {
    Mat cond = (Mat::Identity(d, d) - g.theta_mat) * dec.g0_rows.transpose();
    dec.k0_rows = orthonormal_rows(g, kernel_rows(cond) * dec.g0_rows);
  }

  // Stack n and a+n; verify mutual orthogonality along the way.
  {
    std::vector<Vec> nrows;
    for (const auto& s : dec.positives)
      for (int i = 0; i < s.rows.rows(); ++i)
        nrows.push_back(s.rows.row(i).transpose());
    dec.n_rows = stack_rows(nrows, d);
    Mat gram = dec.n_rows * g.inner * dec.n_rows.transpose();
    if ((gram - Mat::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() >
        1e-7)
      throw std::runtime_error(g.name + ": root spaces are not orthonormal");
    dec.an_rows.resize(ra + dec.n_rows.rows(), d);
    dec.an_rows.topRows(ra) = dec.a_rows;
    dec.an_rows.bottomRows(dec.n_rows.rows()) = dec.n_rows;
  }

  // Dual basis H^i on the flat: alpha_j(H^i) = delta_ij.
  {
    Mat lam_mat(r, ra);
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < ra; ++k)
        lam_mat(j, k) = simple_lam[static_cast<size_t>(j)][static_cast<size_t>(k)];
    Mat inv = lam_mat.inverse();
    dec.dual_rows = inv.transpose() * dec.a_rows;
  }

  // Exact overlay: rationalized eigenvalues + exact nullspaces.
  if (g.exact) {
    RatMat a_q;
    a_q.cols = d;
    for (int k = 0; k + 1 < n; ++k) {
      RatMat dk(n, n);
      dk(k, k) = 1;
      dk(k + 1, k + 1) = -1;
      std::vector<Rat> c = g.to_coords_q(dk);
      if (!(g.to_matrix_q(c) == dk)) continue;
      a_q.append_row(c);
    }
    if (a_q.rows == ra) {
      std::vector<RatMat> ad_q(static_cast<size_t>(ra));
      for (int i = 0; i < ra; ++i) {
        RatMat a(d, d);
        for (int j = 0; j < d; ++j) {
          std::vector<Rat> ej(static_cast<size_t>(d));
          ej[static_cast<size_t>(j)] = 1;
          std::vector<Rat> c = g.bracket_q(a_q.row(i), ej);
          for (int k = 0; k < d; ++k) a(k, j) = c[static_cast<size_t>(k)];
        }
        ad_q[static_cast<size_t>(i)] = a;
      }
      Mat a_qd = to_double_rows(a_q);
      bool exact_ok = true;
      for (auto& s : dec.positives) {
        std::vector<Rat> lam_q;
        for (int i = 0; i < ra && exact_ok; ++i) {
          Vec x = s.rows.row(0).transpose();
          double v = g.inner_vv(g.bracket(a_qd.row(i).transpose(), x), x) /
                     g.inner_vv(x, x);
          auto lq = rationalize(v, 1000000, 1e-7);
          if (!lq) exact_ok = false;
          else lam_q.push_back(*lq);
        }
        if (!exact_ok) break;
        RatMat cond;
        cond.cols = d;
        for (int i = 0; i < ra; ++i) {
          RatMat block = ad_q[static_cast<size_t>(i)];
          for (int k = 0; k < d; ++k) block(k, k) -= lam_q[static_cast<size_t>(i)];
          for (int rr = 0; rr < d; ++rr) cond.append_row(block.row(rr));
        }
        RatMat rows_q = nullspace(cond);
        if (rows_q.rows != s.rows.rows() ||
            subspace_residual(g, to_double_rows(rows_q), s.rows) > 1e-7) {
          exact_ok = false;
          break;
        }
        s.rows_q = rows_q;
        s.lam_q = lam_q;
      }
      if (exact_ok) {
        RatMat cond;
        cond.cols = d;
        for (int i = 0; i < ra; ++i)
          for (int rr = 0; rr < d; ++rr)
            cond.append_row(ad_q[static_cast<size_t>(i)].row(rr));
        RatMat g0_q = nullspace(cond);
        if (g0_q.rows == dec.g0_rows.rows()) {
          dec.a_rows_q = a_q;
          dec.g0_rows_q = g0_q;
          // Exact dual basis: certify lambda_j(a_q_k) on the exact rows and
          // invert the value matrix.
          RatMat lam_q_mat(r, ra);
          for (int j = 0; j < r; ++j) {
            const auto& sj = dec.space(dec.rs.simple(j));
            for (int k = 0; k < ra; ++k) {
              // [a_q_k, e] = lambda(a_q_k) e on the exact row.
              std::vector<Rat> e = sj.rows_q->row(0);
              std::vector<Rat> br = g.bracket_q(a_q.row(k), e);
              Rat val = 0;
              for (int t = 0; t < d; ++t)
                if (e[static_cast<size_t>(t)] != 0) {
                  val = br[static_cast<size_t>(t)] / e[static_cast<size_t>(t)];
                  break;
                }
              lam_q_mat(j, k) = val;
              // certify the eigen relation exactly
              std::vector<Rat> resid =
                  vec_sub(br, vec_scale(val, e));
              if (!vec_is_zero(resid))
                throw std::logic_error(g.name + ": exact eigen certification failed");
            }
          }
          auto lam_inv = inverse(lam_q_mat);
          if (lam_inv)
            dec.dual_rows_q = lam_inv->transposed() * a_q;
        }
      }
    }
  }

  return dec;
}

// --- realization -------------------------------------------------------------

namespace {

bool same_root_system(const RootSystem& a, const RootSystem& b) {
  return a.type_label == b.type_label && a.rank == b.rank &&
         a.scale == b.scale && a.positives == b.positives && a.mult == b.mult;
}

}  // namespace

RealizedSubalgebra realize(const MatrixLieAlgebra& g,
                           const RootSpaceDecomposition& dec,
                           const foliation::FoliationSpec& spec) {
  if (!same_root_system(spec.rs, dec.rs))
    throw std::invalid_argument(
        "foliation data was built over a different root system");
  const int d = g.dim();
  std::vector<Vec> ambient;
  for (int i = 0; i < spec.v_span.rows; ++i)
    ambient.push_back(dec.a_vector(spec.v_span.row(i)));
  for (int j : spec.phi)
    ambient.push_back(dec.coroot_vec(dec.rs.simple(j)));
  for (const auto& s : dec.positives)
    for (int i = 0; i < s.rows.rows(); ++i)
      ambient.push_back(s.rows.row(i).transpose());

  std::vector<Vec> removed;
  for (int j : spec.phi)
    removed.push_back(spec.a_of(j) * dec.coroot_vec(dec.rs.simple(j)) +
                      dec.unit_E(dec.rs.simple(j)));

  Mat amb = orthonormal_rows(g, stack_rows(ambient, d));
  Mat rem = orthonormal_rows(g, stack_rows(removed, d));
  std::vector<Vec> kept;
  for (int i = 0; i < amb.rows(); ++i) {
    Vec v = amb.row(i).transpose();
    for (int k = 0; k < rem.rows(); ++k)
      v -= g.inner_vv(rem.row(k).transpose(), v) * rem.row(k).transpose();
    kept.push_back(v);
  }
  RealizedSubalgebra out;
  out.rows = orthonormal_rows(g, stack_rows(kept, d));
  const int want = spec.dim_v() + dec.rs.dim_n();
  if (out.rows.rows() != want)
    throw std::logic_error("realized subalgebra has the wrong dimension");

  // Exact span when there are no shifts and the overlay is available.
  bool shift_free = true;
  for (int j : spec.phi) shift_free = shift_free && spec.a_of(j) == 0.0;
  bool have_exact = g.exact && dec.dual_rows_q.has_value();
  for (const auto& s : dec.positives)
    have_exact = have_exact && s.rows_q.has_value();
  if (shift_free && have_exact) {
    RatMat amb_q;
    amb_q.cols = d;
    for (int i = 0; i < spec.v_span.rows; ++i)
      amb_q.append_row(rat_row_times(spec.v_span.row(i), *dec.dual_rows_q));
    for (int j : spec.phi)
      amb_q.append_row(
          rat_row_times(dec.rs.coroot(dec.rs.simple(j)), *dec.dual_rows_q));
    for (const auto& s : dec.positives)
      for (int i = 0; i < s.rows_q->rows; ++i)
        amb_q.append_row(s.rows_q->row(i));
    RatMat rem_q;
    rem_q.cols = d;
    for (int j : spec.phi) {
      if (dec.space(dec.rs.simple(j)).rows_q->rows != 1) return out;
      rem_q.append_row(dec.space(dec.rs.simple(j)).rows_q->row(0));
    }
    RatMat s_q = rem_q.rows == 0 ? amb_q
                                 : orth_complement_in(rem_q, amb_q, g.inner_q);
    if (rank(s_q) != want ||
        subspace_residual(g, to_double_rows(s_q), out.rows) > 1e-7)
      throw std::logic_error("exact and numeric realizations disagree");
    out.rows_q = s_q;
  }
  return out;
}

Vec normal_a_type(const RootSpaceDecomposition& dec,
                  const std::vector<Rat>& dual_coords) {
  return dec.a_vector(dual_coords);
}

Vec normal_alpha_type(const MatrixLieAlgebra& g,
                      const RootSpaceDecomposition& dec, int alpha_index,
                      double a_alpha) {
  Vec e = dec.unit_E(dec.rs.simple(alpha_index));
  return a_alpha * dec.coroot_vec(dec.rs.simple(alpha_index)) + e - g.theta(e);
}

// --- congruency --------------------------------------------------------------

CongruencyResult verify_congruency(const MatrixLieAlgebra& g,
                                   const RootSpaceDecomposition& dec,
                                   const foliation::FoliationSpec& spec,
                                   double tol) {
  RealizedSubalgebra shifted = realize(g, dec, spec);
  foliation::NormalizeResult nr = foliation::normalize(spec);
  RealizedSubalgebra plain = realize(g, dec, nr.spec);
  Vec e = Vec::Zero(g.dim());
  for (const auto& [j, c] : nr.conjugator_coeffs)
    e += c * dec.unit_E(dec.rs.simple(j));
  Mat op = ad_exp_operator(g, e);
  Mat moved = shifted.rows * op.transpose();
  CongruencyResult res;
  res.residual = subspace_residual(g, moved, plain.rows);
  res.ok = res.residual <= tol;
  return res;
}

// --- structural identity sweeps ----------------------------------------------

IdentityReport identity_checks(const MatrixLieAlgebra& g,
                               const RootSpaceDecomposition& dec,
                               int samples, unsigned seed) {
  IdentityReport rep;
  rep.samples = samples;
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> pick_space(
      0, static_cast<int>(dec.positives.size()) - 1);
  const int d = g.dim();

  Mat kan(dec.k0_rows.rows() + dec.an_rows.rows(), d);
  if (dec.k0_rows.rows() > 0) kan.topRows(dec.k0_rows.rows()) = dec.k0_rows;
  kan.bottomRows(dec.an_rows.rows()) = dec.an_rows;

  auto orth_subsets = parabolic::orthogonal_subsets(dec.rs);

  for (int t = 0; t < samples; ++t) {
    // Polarization: (1 - theta)[theta X, Y] = 2 <X,Y> H_lambda on g_lambda.
    {
      const RootSpace& s = dec.positives[static_cast<size_t>(pick_space(rng))];
      auto rand_unit = [&]() {
        Vec v = Vec::Zero(d);
        for (int i = 0; i < s.rows.rows(); ++i)
          v += gauss(rng) * s.rows.row(i).transpose();
        return Vec(v / std::max(1e-12, g.norm(v)));
      };
      Vec x = rand_unit(), y = rand_unit();
      Vec b = g.bracket(g.theta(x), y);
      Vec lhs = b - g.theta(b);
      Vec rhs = 2.0 * g.inner_vv(x, y) * dec.coroot_vec(s.abstract);
      rep.polarization_max =
          std::max(rep.polarization_max, g.norm(lhs - rhs));
    }

    // Projection: pi_{a+n}(s) = {X in a+n : X perp s_p_perp}  for subspaces
    // (even samples) and genuine foliation subalgebras (odd samples).
    {
      Mat rows;
      if (t % 2 == 0) {
        int amb_dim = static_cast<int>(kan.rows());
        std::uniform_int_distribution<int> pick_dim(1, amb_dim - 1);
        int k = pick_dim(rng);
        Mat raw(k, d);
        for (int i = 0; i < k; ++i) {
          Vec v = Vec::Zero(d);
          for (int a = 0; a < amb_dim; ++a)
            v += gauss(rng) * kan.row(a).transpose();
          raw.row(i) = v;
        }
        rows = orthonormal_rows(g, raw);
      } else {
        std::uniform_int_distribution<int> pick_phi(
            0, static_cast<int>(orth_subsets.size()) - 1);
        const auto& phi = orth_subsets[static_cast<size_t>(pick_phi(rng))];
        int max_dv = dec.rs.rank - static_cast<int>(phi.size());
        if (phi.empty()) max_dv = dec.rs.rank - 1;
        std::uniform_int_distribution<int> pick_dv(0, max_dv);
        int dv = pick_dv(rng);
        RatMat vspan(0, dec.rs.rank);
        std::uniform_int_distribution<int> small(-3, 3);
        for (int i = 0; i < dv; ++i) {
          std::vector<Rat> row(static_cast<size_t>(dec.rs.rank));
          for (int c = 0; c < dec.rs.rank; ++c) {
            bool in_phi = std::find(phi.begin(), phi.end(), c) != phi.end();
            row[static_cast<size_t>(c)] = in_phi ? Rat(0) : Rat(small(rng));
          }
          vspan.append_row(row);
        }
        std::map<int, double> a;
        std::uniform_real_distribution<double> shift(-2.0, 2.0);
        for (int j : phi) a[j] = shift(rng);
        auto spec = foliation::build_spec(dec.rs, phi, vspan, a);
        rows = realize(g, dec, spec).rows;
      }
      Mat spp = perp_in_p(g, rows);
      // lhs: projection of s onto a+n.
      std::vector<Vec> proj;
      for (int i = 0; i < rows.rows(); ++i) {
        Vec v = Vec::Zero(d);
        for (int a = 0; a < dec.an_rows.rows(); ++a)
          v += g.inner_vv(dec.an_rows.row(a).transpose(),
                          rows.row(i).transpose()) *
               dec.an_rows.row(a).transpose();
        proj.push_back(v);
      }
      Mat lhs = orthonormal_rows(g, stack_rows(proj, d));
      // rhs: vectors of a+n orthogonal to s_p_perp.
      Mat cond = spp * g.inner * dec.an_rows.transpose();
      Mat rhs = kernel_rows(cond) * dec.an_rows;
      rep.projection_max =
          std::max(rep.projection_max, subspace_residual(g, lhs, rhs));
    }
  }
  return rep;
}

// --- shape operator ----------------------------------------------------------

Mat shape_operator_numeric(const MatrixLieAlgebra& g,
                           const RootSpaceDecomposition& dec,
                           const foliation::FoliationSpec& spec,
                           const Vec& xi_p, double tol) {
  Mat s = realize(g, dec, spec).rows;

  auto coeffs_along = [&](const Mat& onb, const Vec& v) {
    Vec c(onb.rows());
    for (int i = 0; i < onb.rows(); ++i)
      c(i) = g.inner_vv(onb.row(i).transpose(), v);
    return c;
  };
  auto an_inner = [&](const Vec& x, const Vec& y) {
    Vec xa = coeffs_along(dec.a_rows, x), ya = coeffs_along(dec.a_rows, y);
    Vec xn = coeffs_along(dec.n_rows, x), yn = coeffs_along(dec.n_rows, y);
    return xa.dot(ya) + 0.5 * xn.dot(yn);
  };

  // The leaf tangent space must lie inside a+n.
  for (int i = 0; i < s.rows(); ++i) {
    Vec v = s.row(i).transpose();
    Vec back = dec.an_rows.transpose() * coeffs_along(dec.an_rows, v);
    if (g.norm(v - back) > 1e-7)
      throw std::logic_error("leaf tangent space escapes a+n");
  }

  if (g.norm(g.theta(xi_p) + xi_p) > 1e-7 * std::max(1.0, g.norm(xi_p)))
    throw std::invalid_argument("normal vector does not lie in p");
  // Normality: <xi, pi_p(X)> = 0 for tangent X.
  for (int i = 0; i < s.rows(); ++i) {
    Vec v = s.row(i).transpose();
    Vec vp = g.p_rows.transpose() * coeffs_along(g.p_rows, v);
    if (std::abs(g.inner_vv(xi_p, vp)) > tol * std::max(1.0, g.norm(xi_p)))
      throw std::invalid_argument("vector is not normal to the leaf");
  }

  // Orthonormalize s w.r.t. the solvable-group metric.
  std::vector<Vec> onb;
  for (int i = 0; i < s.rows(); ++i) {
    Vec v = s.row(i).transpose();
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& u : onb) v -= an_inner(u, v) * u;
    double nv = std::sqrt(std::max(0.0, an_inner(v, v)));
    if (nv > 1e-10) onb.push_back(v / nv);
  }
  if (static_cast<int>(onb.size()) != s.rows())
    throw std::logic_error("tangent basis degenerated");

  const int m = static_cast<int>(onb.size());
  Mat op(m, m);
  for (int i = 0; i < m; ++i) {
    Vec bx = g.bracket(xi_p, onb[static_cast<size_t>(i)]);
    for (int j = 0; j < m; ++j)
      op(i, j) = 0.5 * g.inner_vv(bx, onb[static_cast<size_t>(j)]);
  }
  if ((op - op.transpose()).cwiseAbs().maxCoeff() >
      tol * std::max(1.0, op.cwiseAbs().maxCoeff()))
    throw std::logic_error("shape operator is not symmetric");
  return 0.5 * (op + op.transpose());
}

}  // namespace hyperfol::matrixlie
