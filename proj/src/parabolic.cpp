// parabolic.cpp -- parabolic/gradation/boundary computations over root data.

#include "hyperfol/parabolic.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hyperfol::parabolic {

namespace {

void check_subset(const RootSystem& rs, const std::vector<int>& phi) {
  for (int i : phi)
    if (i < 0 || i >= rs.rank)
      throw std::invalid_argument("subset index out of range");
  for (size_t a = 1; a < phi.size(); ++a)
    if (phi[a] <= phi[a - 1])
      throw std::invalid_argument("subset indices must be strictly increasing");
}

// lambda lies in the span of phi iff its support does (positive roots are
// nonnegative combinations of exactly their support).
bool supported_on(const RootVector& lam, const std::vector<int>& phi) {
  for (size_t i = 0; i < lam.c.size(); ++i)
    if (lam.c[i] != 0 && !std::binary_search(phi.begin(), phi.end(), static_cast<int>(i)))
      return false;
  return true;
}

}  // namespace

const char* algebra_name(DivisionAlgebra a) {
  switch (a) {
    case DivisionAlgebra::R: return "R";
    case DivisionAlgebra::C: return "C";
    case DivisionAlgebra::H: return "H";
    case DivisionAlgebra::O: return "O";
  }
  return "?";
}

int algebra_dim(DivisionAlgebra a) {
  switch (a) {
    case DivisionAlgebra::R: return 1;
    case DivisionAlgebra::C: return 2;
    case DivisionAlgebra::H: return 4;
    case DivisionAlgebra::O: return 8;
  }
  return 0;
}

int BoundaryComponentFactorization::dim_factors() const {
  int s = 0;
  for (const auto& f : factors) s += f.dim();
  return s;
}

bool is_orthogonal_subset(const RootSystem& rs, const std::vector<int>& phi) {
  for (size_t a = 0; a < phi.size(); ++a)
    for (size_t b = a + 1; b < phi.size(); ++b)
      if (rs.gram(phi[a], phi[b]) != 0) return false;
  return true;
}

std::vector<std::vector<int>> orthogonal_subsets(const RootSystem& rs) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << rs.rank); ++mask) {
    std::vector<int> phi;
    for (int i = 0; i < rs.rank; ++i)
      if (mask & (1u << i)) phi.push_back(i);
    if (is_orthogonal_subset(rs, phi)) out.push_back(std::move(phi));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  return out;
}

std::vector<std::vector<int>> diagram_automorphisms(const RootSystem& rs) {
  std::vector<int> perm(rs.rank);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (int i = 0; i < rs.rank && ok; ++i)
      for (int j = 0; j < rs.rank && ok; ++j)
        if (rs.gram(perm[i], perm[j]) != rs.gram(i, j)) ok = false;
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<std::vector<std::vector<int>>> automorphism_orbits(
    const RootSystem& rs, const std::vector<std::vector<int>>& subsets) {
  auto autos = diagram_automorphisms(rs);
  std::vector<bool> used(subsets.size(), false);
  std::vector<std::vector<std::vector<int>>> orbits;
  for (size_t k = 0; k < subsets.size(); ++k) {
    if (used[k]) continue;
    std::vector<std::vector<int>> orbit;
    for (const auto& perm : autos) {
      std::vector<int> image;
      for (int i : subsets[k]) image.push_back(perm[i]);
      std::sort(image.begin(), image.end());
      for (size_t j = 0; j < subsets.size(); ++j)
        if (!used[j] && subsets[j] == image) {
          used[j] = true;
          orbit.push_back(subsets[j]);
        }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

ParabolicProfile langlands_profile(const RootSystem& rs,
                                   const std::vector<int>& phi, int dim_k0) {
  check_subset(rs, phi);
  ParabolicProfile p;
  p.phi = phi;
  p.dim_a_upper_phi = static_cast<int>(phi.size());
  p.dim_a_phi = rs.rank - p.dim_a_upper_phi;
  p.dim_g0 = rs.rank + dim_k0;
  int span_mult = 0;
  for (size_t k = 0; k < rs.positives.size(); ++k) {
    if (supported_on(rs.positives[k], phi)) {
      p.sigma_phi_positive.push_back(rs.positives[k]);
      span_mult += rs.mult[k];
    } else {
      p.dim_n_phi += rs.mult[k];
    }
  }
  p.dim_l_phi = p.dim_g0 + 2 * span_mult;
  p.dim_m_phi = p.dim_l_phi - p.dim_a_phi;
  p.dim_g = p.dim_g0 + 2 * rs.dim_n();
  return p;
}

GradationProfile gradation_profile(const RootSystem& rs,
                                   const std::vector<int>& phi, int dim_k0) {
  check_subset(rs, phi);
  GradationProfile g;
  g.characteristic_element.assign(rs.rank, 0);
  for (int i = 0; i < rs.rank; ++i)
    if (!std::binary_search(phi.begin(), phi.end(), i))
      g.characteristic_element[i] = 1;

  // lambda(H^phi) = sum of coefficients outside phi; integer for every root.
  g.level_dims[0] = rs.rank + dim_k0;
  for (size_t k = 0; k < rs.positives.size(); ++k) {
    Rat v = rs.eval(rs.positives[k], g.characteristic_element);
    int lev = static_cast<int>(numerator(v));
    g.level_dims[lev] += rs.mult[k];
    g.level_dims[-lev] += rs.mult[k];
  }
  Rat top = rs.eval(rootsys::highest_root(rs), g.characteristic_element);
  g.top_level = static_cast<int>(numerator(top));
  return g;
}

BoundaryComponentFactorization boundary_component(const RootSystem& rs,
                                                  const std::vector<int>& phi) {
  check_subset(rs, phi);
  if (!is_orthogonal_subset(rs, phi))
    throw std::invalid_argument("boundary component requires an orthogonal subset");
  BoundaryComponentFactorization out;
  out.euclidean_rank = rs.rank - static_cast<int>(phi.size());
  for (int i : phi) {
    RootVector alpha = rs.simple(i);
    RootVector dbl = alpha;
    for (int& x : dbl.c) x *= 2;
    int m2 = rs.is_root(dbl) ? rs.multiplicity(dbl) : 0;
    int d = m2 + 1;
    DivisionAlgebra f;
    switch (d) {
      case 1: f = DivisionAlgebra::R; break;
      case 2: f = DivisionAlgebra::C; break;
      case 4: f = DivisionAlgebra::H; break;
      case 8: f = DivisionAlgebra::O; break;
      default:
        throw std::invalid_argument(
            "multiplicity of the doubled root is not one less than a division "
            "algebra dimension");
    }
    int m1 = rs.multiplicity(alpha);
    if (m1 % d != 0 || m1 / d + 1 < 2)
      throw std::invalid_argument(
          "root multiplicities do not match any rank-one hyperbolic space");
    BoundaryFactor fac;
    fac.alpha_index = i;
    fac.algebra = f;
    fac.n = m1 / d + 1;
    out.factors.push_back(fac);
  }
  return out;
}

}  // namespace hyperfol::parabolic
