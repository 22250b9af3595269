// rootsys.hpp -- exact restricted root systems with multiplicities.
//
// A root system is modeled abstractly: roots are integer coefficient vectors
// over the simple-root basis and all geometry flows through an explicit
// rational Gram matrix (so the non-reduced BC family and arbitrary Killing
// scalings need no special casing).  Vectors of the flat part ("a-vectors",
// e.g. corootlike duals H_lambda) are held in the dual basis {H^1,...,H^r}
// characterized by alpha_i(H^j) = delta_i^j; in those coordinates evaluating
// a simple root is just reading off a component, and the inner product is the
// inverse Gram matrix.  Everything here is exact rational; no floating point.

#ifndef HYPERFOL_ROOTSYS_HPP
#define HYPERFOL_ROOTSYS_HPP

#include "hyperfol/linalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hyperfol::rootsys {

// Integer coordinates of a root over the simple-root basis; for a genuine
// root the coefficients are all >= 0 or all <= 0.
struct RootVector {
  std::vector<int> c;

  int level() const {
    int s = 0;
    for (int x : c) s += x;
    return s;
  }
  bool operator==(const RootVector& o) const { return c == o.c; }
  bool operator<(const RootVector& o) const {
    if (level() != o.level()) return level() < o.level();
    return c < o.c;
  }
};

// Multiplicities dim g_lambda, constant on each Weyl orbit (= length class).
// "short_mult" is the single class for one-length systems; "doubled" applies
// to the 2*lambda roots of type BC only.
struct MultiplicityProfile {
  int short_mult = 1;
  std::optional<int> long_mult;
  std::optional<int> doubled_mult;
};

struct RootSystem {
  std::string type_label;  // A,B,C,D,E6,E7,E8,F4,G2,BC
  int rank = 0;
  Rat scale = 1;      // global Killing normalization factor
  RatMat gram;        // <alpha_i, alpha_j>, includes scale
  RatMat gram_inv;    // inner product of the dual basis {H^i}
  std::vector<std::vector<int>> cartan;  // A[i][j] = 2<a_i,a_j>/<a_j,a_j>

  // Positive roots sorted by (level, coefficients); multiplicity per index.
  std::vector<RootVector> positives;
  std::vector<int> mult;

  // --- basic queries -------------------------------------------------------
  bool is_positive_root(const RootVector& v) const;
  bool is_root(const RootVector& v) const;  // v or -v positive
  int positive_index(const RootVector& v) const;  // -1 if not positive root
  int multiplicity(const RootVector& v) const;    // of a root (either sign)
  bool is_reduced(const RootVector& v) const;     // 2v not a root
  bool has_double(const RootVector& v) const;     // 2v is a root

  // Sum of multiplicities over positive roots (= dim n).
  int dim_n() const;

  // <lambda, mu> for roots (or the zero vector).
  Rat inner(const RootVector& lam, const RootVector& mu) const;
  Rat norm2(const RootVector& lam) const { return inner(lam, lam); }

  // Inner product of a-vectors given in dual-basis coordinates.
  Rat a_inner(const std::vector<Rat>& x, const std::vector<Rat>& y) const;

  // lambda(H) for H in dual-basis coordinates.
  Rat eval(const RootVector& lam, const std::vector<Rat>& h) const;

  // H_lambda (the metric dual of lambda) in dual-basis coordinates: G * c.
  std::vector<Rat> coroot(const RootVector& lam) const;

  RootVector simple(int i) const;
};

// Enumerates the full system from the Cartan-integer string rules, assigns
// multiplicities, and scales the Gram form.  With scale = 1 the short roots
// have squared length 1.
RootSystem build_root_system(const std::string& type_label, int rank,
                             const MultiplicityProfile& mults,
                             const Rat& scale = 1);

int level(const RootSystem& rs, const RootVector& lam);
RootVector highest_root(const RootSystem& rs);

Rat inner_product(const RootSystem& rs, const RootVector& lam,
                  const RootVector& mu);
bool is_orthogonal_pair(const RootSystem& rs, int i, int j);  // simple indices

// H_lambda and the dual basis rows {H^1,...,H^r} (identity in dual coords).
std::vector<Rat> coroot(const RootSystem& rs, const RootVector& lam);
RatMat dual_basis(const RootSystem& rs);

// delta = (1/2) sum over positive lambda of mult(lambda) * lambda.
struct DeltaVector {
  std::vector<Rat> coeffs;   // over the simple-root basis
  std::vector<Rat> h_delta;  // H_delta in dual-basis coordinates
};
DeltaVector delta_vector(const RootSystem& rs);

// Number of roots among lambda + m*alpha, m in Z (alpha simple, lambda a
// positive root other than alpha, 2*alpha).
int root_string_length(const RootSystem& rs, const RootVector& lam,
                       int alpha_index);

}  // namespace hyperfol::rootsys

#endif
