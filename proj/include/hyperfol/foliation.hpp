// foliation.hpp -- the data (Phi, V, a) of a homogeneous foliation and its
// leaf subalgebra at root-space resolution.
//
// Phi is an orthogonal subset of simple roots, V a subspace of the common
// kernel a_Phi = {H : alpha(H) = 0 for alpha in Phi}, and a: Phi -> R a leaf
// shift parameter.  The leaf subalgebra drops, for each alpha in Phi, the
// line R(a_alpha H_alpha + E_alpha) from (V + a^Phi + n), where E_alpha is a
// fixed unit vector of the root space g_alpha (canonically the first basis
// vector of a realization; different choices give congruent foliations).

#ifndef HYPERFOL_FOLIATION_HPP
#define HYPERFOL_FOLIATION_HPP

#include "hyperfol/parabolic.hpp"

#include <map>

namespace hyperfol::foliation {

using rootsys::RootSystem;
using rootsys::RootVector;

struct FoliationSpec {
  RootSystem rs;
  std::vector<int> phi;  // sorted, pairwise orthogonal simple-root indices
  RatMat v_span;         // rows span V in dual-basis coordinates of the flat
  std::map<int, double> a;  // shift per member of phi (missing = 0)

  int dim_v() const;
  double a_of(int alpha_index) const;
  bool proper() const;  // (phi, V) != (empty, whole flat)
};

// spanning rows may be any set of vectors inside a_Phi; an empty matrix (or
// zero rows) means V = {0}.  a defaults to 0 on every alpha in phi.
FoliationSpec build_spec(const RootSystem& rs, const std::vector<int>& phi,
                         const RatMat& v_span,
                         const std::map<int, double>& a = {});

// Composition of the leaf subalgebra s_{Phi,V,a} and of its normal space.
struct RemovedLine {
  int alpha_index = 0;
  double a_alpha = 0.0;  // line R(a_alpha * H_alpha + E_alpha)
};

struct SubalgebraProfile {
  int dim_v = 0;
  int dim_s = 0;   // = dim_v + dim n
  int codim = 0;   // = rank - dim_v
  RatMat a_part;   // basis of a^Phi + V (dual coordinates)
  std::vector<RemovedLine> removed_lines;
  // retained dimension per positive root space (mult - 1 for alpha in phi)
  std::vector<std::pair<RootVector, int>> included_root_spaces;

  // Normal space: (a_Phi - V) plus, per alpha in phi, the line
  // R(a_alpha H_alpha + (1 - theta) E_alpha).
  RatMat perp_a_part;  // basis of the orthogonal complement of V in a_Phi
  std::vector<RemovedLine> perp_lines;
  int dim_perp = 0;  // = codim
};

SubalgebraProfile subalgebra_profile(const FoliationSpec& spec);

// Conjugating the shifts away: the group element Exp(sum of
// conjugator_coeffs[alpha] * E_alpha) maps s_{Phi,V,a} onto s_{Phi,V,0}.
// A single exponential suffices because the E_alpha commute for orthogonal
// Phi.  Idempotent.
struct NormalizeResult {
  FoliationSpec spec;                      // same (Phi, V), a = 0
  std::map<int, double> conjugator_coeffs;  // alpha -> -a_alpha
};

NormalizeResult normalize(const FoliationSpec& spec);

// One classification family per orthogonal Phi: V may be any subspace of
// a_Phi of the listed dimensions (the improper pair (empty, dim V = rank) is
// excluded).  Codimension of the leaves is rank - dim V.
struct Family {
  std::vector<int> phi;
  int dim_v_min = 0;
  int dim_v_max = 0;
  int codim_min = 0;  // at dim_v_max
  int codim_max = 0;  // at dim_v_min
};

std::vector<Family> enumerate_families(const RootSystem& rs);

}  // namespace hyperfol::foliation

#endif
