// parabolic.hpp -- parabolic subalgebra data attached to subsets of simple
// roots: Langlands dimension counts, the gradation by the characteristic
// element, and the factorization of boundary components into rank-one
// hyperbolic spaces.
//
// Everything is computed from abstract root data.  The only quantity not
// determined by (Sigma, multiplicities) is dim k_0, the centralizer of the
// flat in the isotropy algebra; operations that need dim g_0 = rank + dim k_0
// take it as a parameter (0 = split real form) so that realizations can
// supply the true value.

#ifndef HYPERFOL_PARABOLIC_HPP
#define HYPERFOL_PARABOLIC_HPP

#include "hyperfol/rootsys.hpp"

#include <map>

namespace hyperfol::parabolic {

using rootsys::RootSystem;
using rootsys::RootVector;

// Dimension data of the parabolic subalgebra attached to phi (any subset of
// simple roots): q_phi = m_phi + a_phi + n_phi, l_phi = g_0 + (root spaces
// spanned by phi), n_phi = remaining positive root spaces.
struct ParabolicProfile {
  std::vector<int> phi;  // sorted simple-root indices
  int dim_n_phi = 0;
  int dim_a_phi = 0;        // rank - |phi|
  int dim_a_upper_phi = 0;  // |phi|
  int dim_g0 = 0;           // rank + dim k_0
  int dim_l_phi = 0;
  int dim_m_phi = 0;  // dim l_phi - dim a_phi
  int dim_g = 0;
  std::vector<RootVector> sigma_phi_positive;  // roots in the span of phi
};

// Gradation of g by the value of roots on the characteristic element
// H^phi = sum of dual basis vectors over simple roots outside phi.
struct GradationProfile {
  std::vector<Rat> characteristic_element;  // dual-basis coordinates (0/1)
  std::map<int, int> level_dims;            // k -> dim of the k-component
  int top_level = 0;                        // highest root evaluated at H^phi
};

enum class DivisionAlgebra { R, C, H, O };

const char* algebra_name(DivisionAlgebra a);
int algebra_dim(DivisionAlgebra a);  // 1, 2, 4, 8

// One rank-one hyperbolic factor F H^n contributed by alpha in phi.
struct BoundaryFactor {
  int alpha_index = 0;
  DivisionAlgebra algebra = DivisionAlgebra::R;
  int n = 2;
  int dim() const { return n * algebra_dim(algebra); }
};

struct BoundaryComponentFactorization {
  std::vector<BoundaryFactor> factors;
  int euclidean_rank = 0;  // rank - |phi|
  int dim_factors() const;
};

// All pairwise-orthogonal subsets of simple roots (independent sets of the
// Dynkin graph), including the empty set, sorted by (size, indices).
std::vector<std::vector<int>> orthogonal_subsets(const RootSystem& rs);

// Permutations of the simple roots preserving the Gram matrix (hence Cartan
// integers, lengths, and multiplicity classes).
std::vector<std::vector<int>> diagram_automorphisms(const RootSystem& rs);

// Groups subsets into orbits under the diagram automorphisms; each orbit
// lists its members in the input order, first member is the representative.
std::vector<std::vector<std::vector<int>>> automorphism_orbits(
    const RootSystem& rs, const std::vector<std::vector<int>>& subsets);

ParabolicProfile langlands_profile(const RootSystem& rs,
                                   const std::vector<int>& phi, int dim_k0 = 0);

GradationProfile gradation_profile(const RootSystem& rs,
                                   const std::vector<int>& phi, int dim_k0 = 0);

BoundaryComponentFactorization boundary_component(const RootSystem& rs,
                                                  const std::vector<int>& phi);

bool is_orthogonal_subset(const RootSystem& rs, const std::vector<int>& phi);

}  // namespace hyperfol::parabolic

#endif
