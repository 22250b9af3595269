// geometry.hpp -- closed-form extrinsic geometry of the leaves.
//
// Everything here is abstract: inputs are a root system plus a foliation
// datum, outputs are shape-operator spectra, mean curvature data and
// rank-one tube curvatures.  No matrix realization is involved; the
// matrixlie module provides the numeric cross-check.

#ifndef HYPERFOL_GEOMETRY_HPP
#define HYPERFOL_GEOMETRY_HPP

#include "hyperfol/foliation.hpp"
#include "hyperfol/rootsys.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hyperfol::geometry {

using foliation::FoliationSpec;
using rootsys::RootSystem;
using rootsys::RootVector;

// One eigenvalue block of a shape operator.  When symmetric_block is set the
// block's individual eigenvalues are not given in closed form; the block is
// only known to have a spectrum symmetric about zero (value then records the
// per-block trace, which is zero).
struct SpectrumEntry {
  double value = 0.0;
  int multiplicity = 0;
  std::string label;
  bool symmetric_block = false;
  // Raw-scale value as an exact rational where one exists (flat-direction
  // normals and zero blocks).
  std::optional<Rat> exact_value;
};

// Spectrum of the shape operator A_xi of a leaf, for one normal direction.
struct CurvatureReport {
  std::string normal_kind;              // "a-type" or "alpha-type"
  std::vector<Rat> normal_dual_coords;  // a-type: xi in dual-basis coordinates
  int alpha_index = -1;                 // alpha-type: index into the simples
  double a_alpha = 0.0;                 // alpha-type: shift parameter
  std::vector<SpectrumEntry> spectrum;
  double norm_an = 0.0;  // |xi| in the solvable-group metric
  double trace = 0.0;    // at the reported scale
  bool unit_normalized = true;
  int dim_s = 0;  // leaf dimension; multiplicities sum to this
};

// Mean curvature vector split into its flat part (dual-basis coordinates)
// and root-space parts (coefficient of the unit E_alpha per shifted root).
struct MeanCurvatureVector {
  std::vector<double> a_dual_coords;
  std::optional<std::vector<Rat>> a_exact;  // exact when all shifts vanish
  std::map<int, double> e_components;
};

// Shape operator for a flat normal xi in a_Phi with xi perpendicular to V,
// given in dual-basis coordinates.  Throws std::invalid_argument when xi
// lies outside a_Phi (some phi-coordinate nonzero) or is not perpendicular
// to V.  The report is independent of the shift parameters.
CurvatureReport spectrum_a_type(const FoliationSpec& spec,
                                const std::vector<Rat>& xi_dual,
                                bool unit = true);

// Shape operator for the normal a_alpha H_alpha + 2 E_alpha attached to a
// root alpha of Phi (the shift a_alpha is taken from the foliation data).
// Throws
// std::invalid_argument when alpha_index is not a member of spec.phi.
CurvatureReport spectrum_alpha_type(const FoliationSpec& spec, int alpha_index,
                                    bool unit = true);

MeanCurvatureVector mean_curvature(const FoliationSpec& spec);
bool is_minimal(const FoliationSpec& spec);

// Principal curvatures of the rank-one solvable-foliation leaf at signed
// distance r from the minimal leaf.  "derived" substitutes the distance
// parametrization a(r) = -(sqrt(2)/|alpha|) sinh(|alpha| r) into the spectrum
// above; "variant" is an alternative bookkeeping with tanh in place of
// tanh^2 under the square root and with the doubled-root dimension not
// deducted from the first branch.  The two disagree for r > 0 whenever the
// doubled space is nontrivial; see compare_tube_forms.
enum class TubeForm { derived, variant };

struct TubeEntry {
  double value = 0.0;
  int multiplicity = 0;
  std::string label;
};

std::vector<TubeEntry> rank_one_tube_curvatures(const RootSystem& rs, double r,
                                                TubeForm form = TubeForm::derived);

// Side-by-side evaluation of the two tube-curvature forms at one distance.
struct TubeFormComparison {
  double r = 0.0;
  std::vector<TubeEntry> derived;
  std::vector<TubeEntry> variant;
  double max_value_gap = 0.0;
  bool multiplicities_agree = true;
  std::string note;
};

TubeFormComparison compare_tube_forms(const RootSystem& rs, double r);

}  // namespace hyperfol::geometry

#endif  // HYPERFOL_GEOMETRY_HPP
