#include "hyperfol/foliation.hpp"

#include <algorithm>
#include <stdexcept>

namespace hyperfol::foliation {

int FoliationSpec::dim_v() const { return rank(v_span); }

double FoliationSpec::a_of(int alpha_index) const {
  auto it = a.find(alpha_index);
  return it == a.end() ? 0.0 : it->second;
}

bool FoliationSpec::proper() const {
  return !(phi.empty() && dim_v() == rs.rank);
}

FoliationSpec build_spec(const RootSystem& rs, const std::vector<int>& phi,
                         const RatMat& v_span,
                         const std::map<int, double>& a) {
  if (!parabolic::is_orthogonal_subset(rs, phi))
    throw std::invalid_argument("phi is not an orthogonal subset of simple roots");
  if (v_span.rows > 0 && v_span.cols != rs.rank)
    throw std::invalid_argument("V spanning vectors must have one coordinate per simple root");
  // In dual-basis coordinates alpha_i(H) is the i-th coordinate of H, so
  // V lies in a_Phi exactly when every spanning vector vanishes on phi.
  for (int i = 0; i < v_span.rows; ++i)
    for (int j : phi)
      if (v_span(i, j) != 0)
        throw std::invalid_argument("V is not contained in a_Phi");
  for (const auto& [idx, val] : a) {
    (void)val;
    if (!std::binary_search(phi.begin(), phi.end(), idx))
      throw std::invalid_argument("shift assigned to a root outside phi");
  }
  FoliationSpec spec{rs, phi, v_span, a};
  if (spec.v_span.rows == 0) spec.v_span = RatMat(0, rs.rank);
  if (!spec.proper())
    throw std::invalid_argument("(empty phi, V = whole flat) is not a foliation datum");
  return spec;
}

SubalgebraProfile subalgebra_profile(const FoliationSpec& spec) {
  const RootSystem& rs = spec.rs;
  SubalgebraProfile out;
  out.dim_v = spec.dim_v();
  out.dim_s = out.dim_v + rs.dim_n();
  out.codim = rs.rank - out.dim_v;

  // a^Phi + V: coroots of phi plus the spanning rows of V.
  out.a_part = RatMat(0, rs.rank);
  for (int j : spec.phi) out.a_part.append_row(rs.coroot(rs.simple(j)));
  for (int i = 0; i < spec.v_span.rows; ++i)
    out.a_part.append_row(spec.v_span.row(i));

  for (int j : spec.phi) out.removed_lines.push_back({j, spec.a_of(j)});

  for (const RootVector& lam : rs.positives) {
    int dim = rs.multiplicity(lam);
    for (int j : spec.phi)
      if (lam == rs.simple(j)) dim -= 1;
    out.included_root_spaces.emplace_back(lam, dim);
  }

  // Normal space: orthogonal complement of V inside a_Phi, plus one line per
  // removed direction.
  RatMat a_phi(0, rs.rank);
  std::vector<bool> in_phi(rs.rank, false);
  for (int j : spec.phi) in_phi[j] = true;
  RatMat id = RatMat::identity(rs.rank);
  for (int j = 0; j < rs.rank; ++j)
    if (!in_phi[j]) a_phi.append_row(id.row(j));
  out.perp_a_part = orth_complement_in(spec.v_span, a_phi, rs.gram_inv);
  out.perp_lines = out.removed_lines;
  out.dim_perp = out.perp_a_part.rows + static_cast<int>(out.perp_lines.size());
  if (out.dim_perp != out.codim)
    throw std::logic_error("normal space dimension mismatch");
  return out;
}

NormalizeResult normalize(const FoliationSpec& spec) {
  NormalizeResult res;
  res.spec = spec;
  res.spec.a.clear();
  for (int j : spec.phi) res.conjugator_coeffs[j] = -spec.a_of(j);
  return res;
}

std::vector<Family> enumerate_families(const RootSystem& rs) {
  std::vector<Family> out;
  for (const auto& phi : parabolic::orthogonal_subsets(rs)) {
    Family f;
    f.phi = phi;
    f.dim_v_min = 0;
    f.dim_v_max = rs.rank - static_cast<int>(phi.size());
    if (phi.empty()) f.dim_v_max = rs.rank - 1;  // properness
    f.codim_min = rs.rank - f.dim_v_max;
    f.codim_max = rs.rank - f.dim_v_min;
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace hyperfol::foliation
