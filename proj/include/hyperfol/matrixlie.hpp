// matrixlie.hpp -- concrete matrix realizations and brute-force verification.
//
// Ground truth for every structural claim of the abstract modules: small
// semisimple matrix algebras (sl(n,R), sl(2,C), su(1,2)) with the Cartan
// involution theta(X) = -X^H, the ad-trace Killing form, and the positive
// definite product <X,Y> = -B(X,theta Y).  Elements are coordinate vectors
// over a fixed real basis; subspaces are row matrices of coordinates.  The
// restricted root space decomposition is recovered by joint diagonalization
// of ad over a canonical flat (real diagonal traceless matrices) and matched
// against an abstract root system.  For sl(n,R) an exact rational overlay
// certifies the decomposition and the shift-free subspace computations with
// zero residual.

#ifndef HYPERFOL_MATRIXLIE_HPP
#define HYPERFOL_MATRIXLIE_HPP

#include "hyperfol/foliation.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace hyperfol::matrixlie {

using CMat = Eigen::MatrixXcd;
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using rootsys::RootSystem;
using rootsys::RootVector;

struct MatrixLieAlgebra {
  std::string name;
  int n = 0;  // matrix size
  std::vector<CMat> basis;

  Mat trace_gram_inv;  // inverse Gram of Re tr(X Y^H), for coordinates
  Mat killing;         // B(X_i, X_j) by ad-trace
  Mat inner;           // <X_i, X_j> = -B(X_i, theta X_j)
  Mat theta_mat;       // coordinate matrix of theta
  Mat k_rows, p_rows;  // <,>-orthonormal bases of the +1 / -1 theta spaces

  // exact overlay (real rational entries only; sl(n,R))
  bool exact = false;
  std::vector<RatMat> basis_q;
  RatMat trace_gram_inv_q, killing_q, inner_q, theta_q;

  int dim() const { return static_cast<int>(basis.size()); }

  CMat to_matrix(const Vec& coords) const;
  Vec to_coords(const CMat& m) const;
  Vec bracket(const Vec& x, const Vec& y) const;
  Vec theta(const Vec& x) const { return theta_mat * x; }
  double inner_vv(const Vec& x, const Vec& y) const {
    return x.dot(inner * y);
  }
  double norm(const Vec& x) const;

  RatMat to_matrix_q(const std::vector<Rat>& coords) const;
  std::vector<Rat> to_coords_q(const RatMat& m) const;
  std::vector<Rat> bracket_q(const std::vector<Rat>& x,
                             const std::vector<Rat>& y) const;
};

// Builders.  Dimensions: n^2-1 / 6 / 8; every MatrixLieAlgebra invariant
// (Killing symmetry + ad-invariance, positive definite <,>, theta an
// involutive bracket automorphism) is verified at build time.
MatrixLieAlgebra build_sl_real(int n);  // 2 <= n <= 6
MatrixLieAlgebra build_sl2_complex();
MatrixLieAlgebra build_su12();  // su(1,2) w.r.t. the antidiagonal form

struct RootSpace {
  std::vector<double> lam;  // lambda(a_i) on the orthonormal flat basis
  RootVector abstract;      // coordinates over the matched simple roots
  Mat rows;                 // <,>-orthonormal basis of g_lambda
  std::optional<RatMat> rows_q;       // exact span (unnormalized)
  std::optional<std::vector<Rat>> lam_q;  // lambda on the exact flat basis
};

struct RootSpaceDecomposition {
  Mat a_rows;   // orthonormal basis of the flat a (rows)
  Mat g0_rows;  // centralizer g_0 = k_0 + a
  Mat k0_rows;
  Mat n_rows;        // all positive root spaces stacked
  Mat an_rows;       // a + n
  Mat dual_rows;     // H^1..H^r realized (alpha_i(H^j) = delta)
  std::vector<RootSpace> positives;  // ordered like rs.positives
  RootSystem rs;                     // matched abstract system

  std::optional<RatMat> a_rows_q, g0_rows_q, dual_rows_q;

  int rank() const { return static_cast<int>(a_rows.rows()); }
  const RootSpace& space(const RootVector& lam) const;
  // H_lambda (metric dual) in coordinates; lives in the flat.
  Vec coroot_vec(const RootVector& lam) const;
  // Canonical unit vector of g_lambda (first orthonormal basis row).
  Vec unit_E(const RootVector& lam) const;
  // Realize an a-vector from dual-basis coordinates.
  Vec a_vector(const std::vector<Rat>& dual_coords) const;
};

// Joint diagonalization of ad over the canonical flat; throws if the real
// diagonal traceless subspace is not maximal abelian in p, or if validation
// of the eigenspace structure fails after retries.
RootSpaceDecomposition restricted_root_decomposition(const MatrixLieAlgebra& g,
                                                     double tol = 1e-10);

// --- subspace predicates (rows = spanning coordinate vectors) --------------

Mat orthonormal_rows(const MatrixLieAlgebra& g, const Mat& rows,
                     double tol = 1e-10);
// Largest distance from a unit vector of either span to the other span.
double subspace_residual(const MatrixLieAlgebra& g, const Mat& x,
                         const Mat& y);

bool bracket_closure(const MatrixLieAlgebra& g, const Mat& rows,
                     double tol = 1e-10, double* residual = nullptr);
bool is_abelian(const MatrixLieAlgebra& g, const Mat& rows,
                double tol = 1e-10, double* residual = nullptr);
bool is_lie_triple(const MatrixLieAlgebra& g, const Mat& rows,
                   double tol = 1e-10, double* residual = nullptr);
// {xi in p : xi orthogonal to rows}
Mat perp_in_p(const MatrixLieAlgebra& g, const Mat& rows);

// Exact counterparts on rational spans.
RatMat perp_in_p_exact(const MatrixLieAlgebra& g, const RatMat& rows);
bool is_abelian_exact(const MatrixLieAlgebra& g, const RatMat& rows);
bool bracket_closure_exact(const MatrixLieAlgebra& g, const RatMat& rows);

struct Verdict {
  bool is_subalgebra = false;
  bool perp_is_abelian = false;
  bool perp_is_lie_triple = false;
  bool orthogonality_condition = false;  // h orthogonal to [perp,perp] + perp
  std::string classification;  // hyperpolar | polar_not_hyperpolar | not_polar
  bool foliation_hypothesis_checked = false;  // caller's responsibility
  double max_residual = 0.0;
};

// Criterion evaluation for a subalgebra h: hyperpolar iff the p-orthogonal
// complement is abelian; polar iff it is a Lie triple system and h is
// orthogonal to the subalgebra it generates.  Throws if rows do not close
// under the bracket.
Verdict polarity_verdict(const MatrixLieAlgebra& g, const Mat& rows,
                         double tol = 1e-10);

// --- adjoint conjugation ---------------------------------------------------

// Terminating/convergent exponential series; throws if no convergence.
CMat matrix_exp(const CMat& m);
// Operator of Ad(Exp E) on coordinates, computed as conjugation by the
// matrix exponential.
Mat ad_exp_operator(const MatrixLieAlgebra& g, const Vec& e_coords);

struct CongruencyResult {
  bool ok = false;
  double residual = 0.0;
};
// Checks that the conjugation prescribed by foliation::normalize maps the
// realized shifted subalgebra onto the shift-free one (subspace equality by
// mutual projection; the conjugation is NOT an isometry of <,>).
CongruencyResult verify_congruency(const MatrixLieAlgebra& g,
                                   const RootSpaceDecomposition& dec,
                                   const foliation::FoliationSpec& spec,
                                   double tol = 1e-9);

// --- realization of foliation subalgebras ----------------------------------

struct RealizedSubalgebra {
  Mat rows;                      // orthonormal w.r.t. <,>
  std::optional<RatMat> rows_q;  // exact span when all shifts vanish
};
RealizedSubalgebra realize(const MatrixLieAlgebra& g,
                           const RootSpaceDecomposition& dec,
                           const foliation::FoliationSpec& spec);

// --- structural identity sweeps --------------------------------------------

struct IdentityReport {
  int samples = 0;
  double polarization_max = 0.0;  // (1-theta)[theta X, Y] = 2<X,Y> H_lambda
  double projection_max = 0.0;    // pi_{a+n}(s) = {X in a+n : X perp s_p^perp}
  bool pass(double tol) const {
    return polarization_max <= tol && projection_max <= tol;
  }
};
IdentityReport identity_checks(const MatrixLieAlgebra& g,
                               const RootSpaceDecomposition& dec,
                               int samples = 100, unsigned seed = 12345);

// --- shape operator --------------------------------------------------------

// Matrix of the shape operator A_xi on an orthonormal basis of the leaf
// tangent space (solvable metric: <H1+X1, H2+X2> = <H1,H2> + <X1,X2>/2),
// for a normal direction xi given in the symmetric-space tangent model p.
// Throws if xi is not normal to the leaf or the result is not symmetric.
Mat shape_operator_numeric(const MatrixLieAlgebra& g,
                           const RootSpaceDecomposition& dec,
                           const foliation::FoliationSpec& spec,
                           const Vec& xi_p, double tol = 1e-8);

// Normal vectors in the p-model: for H in a_Phi - V simply H itself; for the
// shifted root direction, a_alpha H_alpha + (1 - theta) E_alpha.
Vec normal_a_type(const RootSpaceDecomposition& dec,
                  const std::vector<Rat>& dual_coords);
Vec normal_alpha_type(const MatrixLieAlgebra& g,
                      const RootSpaceDecomposition& dec, int alpha_index,
                      double a_alpha);

}  // namespace hyperfol::matrixlie

#endif
