#include "hyperfol/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hyperfol::geometry {

namespace {

RootVector doubled(const RootVector& v) {
  RootVector w = v;
  for (int& x : w.c) x *= 2;
  return w;
}

RootVector shift_by_simple(const RootVector& v, int j, int step) {
  RootVector w = v;
  w.c[static_cast<size_t>(j)] += step;
  return w;
}

int doubled_mult(const RootSystem& rs, const RootVector& alpha) {
  return rs.has_double(alpha) ? rs.multiplicity(doubled(alpha)) : 0;
}

std::string root_label(const RootVector& v) {
  std::ostringstream os;
  os << "g(";
  for (size_t i = 0; i < v.c.size(); ++i) {
    if (i) os << ",";
    os << v.c[i];
  }
  os << ")";
  return os.str();
}

void push_entry(std::vector<SpectrumEntry>& out, double value, int mult,
                const std::string& label, bool symmetric = false,
                std::optional<Rat> exact = std::nullopt) {
  if (mult <= 0) return;
  SpectrumEntry e;
  e.value = value;
  e.multiplicity = mult;
  e.label = label;
  e.symmetric_block = symmetric;
  e.exact_value = std::move(exact);
  out.push_back(e);
}

// Positive roots lying over Phi: each gamma in Phi together with its double.
std::set<RootVector> phi_root_set(const FoliationSpec& spec) {
  std::set<RootVector> out;
  for (int j : spec.phi) {
    RootVector g = spec.rs.simple(j);
    out.insert(g);
    if (spec.rs.has_double(g)) out.insert(doubled(g));
  }
  return out;
}

int phi_block_dim(const FoliationSpec& spec, int skip_index) {
  int total = 0;
  for (int j : spec.phi) {
    if (j == skip_index) continue;
    RootVector g = spec.rs.simple(j);
    total += spec.rs.multiplicity(g) + doubled_mult(spec.rs, g);
  }
  return total;
}

void finalize_report(CurvatureReport& rep, bool unit) {
  rep.unit_normalized = unit;
  if (unit && rep.norm_an > 0.0)
    for (auto& e : rep.spectrum) e.value /= rep.norm_an;
  double tr = 0.0;
  int mults = 0;
  for (const auto& e : rep.spectrum) {
    tr += e.value * e.multiplicity;
    mults += e.multiplicity;
  }
  rep.trace = tr;
  if (mults != rep.dim_s)
    throw std::logic_error("spectrum multiplicities do not sum to the leaf dimension");
}

}  // namespace

CurvatureReport spectrum_a_type(const FoliationSpec& spec,
                                const std::vector<Rat>& xi_dual, bool unit) {
  const RootSystem& rs = spec.rs;
  if (static_cast<int>(xi_dual.size()) != rs.rank)
    throw std::invalid_argument("normal vector has the wrong dimension");
  for (int j : spec.phi)
    if (xi_dual[static_cast<size_t>(j)] != 0)
      throw std::invalid_argument("normal vector does not lie in a_Phi");
  for (int i = 0; i < spec.v_span.rows; ++i)
    if (rs.a_inner(spec.v_span.row(i), xi_dual) != 0)
      throw std::invalid_argument("normal vector is not perpendicular to V");

  CurvatureReport rep;
  rep.normal_kind = "a-type";
  rep.normal_dual_coords = xi_dual;
  rep.dim_s = spec.dim_v() + rs.dim_n();
  Rat norm_sq = rs.a_inner(xi_dual, xi_dual);
  rep.norm_an = std::sqrt(to_double(norm_sq));

  push_entry(rep.spectrum, 0.0, spec.dim_v(), "V", false, Rat(0));
  push_entry(rep.spectrum, 0.0, phi_block_dim(spec, -1), "zero-block", false,
             Rat(0));

  std::set<RootVector> excluded = phi_root_set(spec);
  Rat exact_trace = 0;
  for (const RootVector& lam : rs.positives) {
    if (excluded.count(lam)) continue;
    Rat val = rs.eval(lam, xi_dual);
    int m = rs.multiplicity(lam);
    push_entry(rep.spectrum, to_double(val), m, root_label(lam), false, val);
    exact_trace += val * m;
  }

  // Trace identity: the sum over the non-Phi root spaces equals twice the
  // half-sum-of-positive-roots functional at xi, exactly.
  Rat two_delta = 0;
  for (const RootVector& lam : rs.positives)
    two_delta += Rat(rs.multiplicity(lam)) * rs.eval(lam, xi_dual);
  if (exact_trace != two_delta)
    throw std::logic_error("flat-normal trace identity failed");

  finalize_report(rep, unit);
  return rep;
}

CurvatureReport spectrum_alpha_type(const FoliationSpec& spec, int alpha_index,
                                    bool unit) {
  const RootSystem& rs = spec.rs;
  if (std::find(spec.phi.begin(), spec.phi.end(), alpha_index) ==
      spec.phi.end())
    throw std::invalid_argument("root index is not a member of phi");
  RootVector alpha = rs.simple(alpha_index);
  const double a = spec.a_of(alpha_index);
  const double n2 = to_double(rs.norm2(alpha));
  const double len = std::sqrt(n2);
  const int m1 = rs.multiplicity(alpha);
  const int m2 = doubled_mult(rs, alpha);
  if (m1 - m2 - 1 < 0)
    throw std::invalid_argument(
        "doubled-root multiplicity too large for the root-space splitting");

  CurvatureReport rep;
  rep.normal_kind = "alpha-type";
  rep.alpha_index = alpha_index;
  rep.a_alpha = a;
  rep.dim_s = spec.dim_v() + rs.dim_n();
  rep.norm_an = std::sqrt(2.0 + a * a * n2);

  push_entry(rep.spectrum, 0.0, spec.dim_v(), "V", false, Rat(0));
  push_entry(rep.spectrum, 0.0, phi_block_dim(spec, alpha_index), "zero-block",
             false, Rat(0));
  push_entry(rep.spectrum, a * n2, 1, "X_alpha-line");
  push_entry(rep.spectrum, a * n2, m1 - m2 - 1, "ker-part");
  if (m2 > 0) {
    double root = std::sqrt(8.0 + a * a * n2);
    push_entry(rep.spectrum, 0.5 * len * (3.0 * a * len + root), m2,
               "pair-part(+)");
    push_entry(rep.spectrum, 0.5 * len * (3.0 * a * len - root), m2,
               "pair-part(-)");
  }

  // Remaining root spaces, grouped into alpha-strings.  A string invariant
  // block has a spectrum symmetric about zero; a trivial string is
  // annihilated outright.
  std::set<RootVector> excluded = phi_root_set(spec);
  std::set<RootVector> visited;
  for (const RootVector& lam : rs.positives) {
    if (excluded.count(lam) || visited.count(lam)) continue;
    RootVector lo = lam;
    while (true) {
      RootVector down = shift_by_simple(lo, alpha_index, -1);
      bool neg = false;
      for (int x : down.c) neg = neg || x < 0;
      if (neg || !rs.is_positive_root(down)) break;
      lo = down;
    }
    std::vector<RootVector> members{lo};
    while (true) {
      RootVector up = shift_by_simple(members.back(), alpha_index, 1);
      if (!rs.is_positive_root(up)) break;
      members.push_back(up);
    }
    int total = 0;
    for (const RootVector& mu : members) {
      if (excluded.count(mu))
        throw std::logic_error("root string crosses the phi blocks");
      visited.insert(mu);
      total += rs.multiplicity(mu);
    }
    if (members.size() == 1)
      push_entry(rep.spectrum, 0.0, total, root_label(lam), false, Rat(0));
    else
      push_entry(rep.spectrum, 0.0, total, root_label(lo), true);
  }

  // Trace identity at the raw scale reduces to integer bookkeeping.
  if (1 + (m1 - m2 - 1) + 3 * m2 != m1 + 2 * m2)
    throw std::logic_error("root-space trace bookkeeping failed");

  finalize_report(rep, unit);
  return rep;
}

MeanCurvatureVector mean_curvature(const FoliationSpec& spec) {
  const RootSystem& rs = spec.rs;
  MeanCurvatureVector out;

  // Flat part: twice the projection of H_delta onto a_Phi minus V.
  RatMat a_phi(0, rs.rank);
  for (int j = 0; j < rs.rank; ++j) {
    if (std::find(spec.phi.begin(), spec.phi.end(), j) != spec.phi.end())
      continue;
    std::vector<Rat> row(static_cast<size_t>(rs.rank));
    row[static_cast<size_t>(j)] = 1;
    a_phi.append_row(row);
  }
  std::vector<Rat> h_delta = rootsys::delta_vector(rs).h_delta;
  std::vector<Rat> proj(static_cast<size_t>(rs.rank));
  if (a_phi.rows > 0) {
    RatMat w = spec.v_span.rows > 0
                   ? orth_complement_in(spec.v_span, a_phi, rs.gram_inv)
                   : a_phi;
    if (w.rows > 0) proj = project_onto(h_delta, w, rs.gram_inv);
  }

  std::vector<double> flat(static_cast<size_t>(rs.rank));
  for (int j = 0; j < rs.rank; ++j)
    flat[static_cast<size_t>(j)] = 2.0 * to_double(proj[static_cast<size_t>(j)]);

  bool all_zero_shifts = true;
  for (int j : spec.phi) {
    RootVector alpha = rs.simple(j);
    const double a = spec.a_of(j);
    if (a != 0.0) all_zero_shifts = false;
    const double n2 = to_double(rs.norm2(alpha));
    const int m1 = rs.multiplicity(alpha);
    const int m2 = doubled_mult(rs, alpha);
    const double c = a * n2 / (2.0 + a * a * n2) * (m1 + 2 * m2);
    out.e_components[j] = 2.0 * c;
    if (c != 0.0) {
      std::vector<Rat> h_alpha = rs.coroot(alpha);
      for (int k = 0; k < rs.rank; ++k)
        flat[static_cast<size_t>(k)] +=
            c * a * to_double(h_alpha[static_cast<size_t>(k)]);
    }
  }
  out.a_dual_coords = std::move(flat);
  if (all_zero_shifts) {
    std::vector<Rat> exact = proj;
    for (auto& x : exact) x *= 2;
    out.a_exact = std::move(exact);
  }
  return out;
}

bool is_minimal(const FoliationSpec& spec) {
  for (int j : spec.phi)
    if (spec.a_of(j) != 0.0) return false;
  MeanCurvatureVector h = mean_curvature(spec);
  return h.a_exact.has_value() && vec_is_zero(*h.a_exact);
}

std::vector<TubeEntry> rank_one_tube_curvatures(const RootSystem& rs, double r,
                                                TubeForm form) {
  if (rs.rank != 1)
    throw std::invalid_argument("tube curvatures require a rank-one system");
  RootVector alpha = rs.simple(0);
  const double n2 = to_double(rs.norm2(alpha));
  const double len = std::sqrt(n2);
  const int m1 = rs.multiplicity(alpha);
  const int m2 = doubled_mult(rs, alpha);
  const double t = std::tanh(len * r);

  std::vector<TubeEntry> out;
  const int first_mult = form == TubeForm::derived ? m1 - m2 : m1;
  if (first_mult > 0)
    out.push_back({-len * t, first_mult, "tanh branch"});
  if (m2 > 0) {
    const double rad =
        form == TubeForm::derived ? std::sqrt(4.0 - 3.0 * t * t)
                                  : std::sqrt(4.0 - 3.0 * t);
    out.push_back({-1.5 * len * t + 0.5 * len * rad, m2, "pair branch(+)"});
    out.push_back({-1.5 * len * t - 0.5 * len * rad, m2, "pair branch(-)"});
  }
  return out;
}

TubeFormComparison compare_tube_forms(const RootSystem& rs, double r) {
  TubeFormComparison cmp;
  cmp.r = r;
  cmp.derived = rank_one_tube_curvatures(rs, r, TubeForm::derived);
  cmp.variant = rank_one_tube_curvatures(rs, r, TubeForm::variant);
  for (const auto& d : cmp.derived)
    for (const auto& v : cmp.variant)
      if (d.label == v.label) {
        cmp.max_value_gap =
            std::max(cmp.max_value_gap, std::abs(d.value - v.value));
        if (d.multiplicity != v.multiplicity) cmp.multiplicities_agree = false;
      }
  std::ostringstream os;
  os << "derived form uses tanh^2 under the radical and deducts the "
        "doubled-root dimension from the first branch; the variant keeps "
        "tanh and the full first-branch multiplicity. ";
  if (cmp.max_value_gap > 0.0 || !cmp.multiplicities_agree)
    os << "At r = " << r << " the forms disagree (max value gap "
       << cmp.max_value_gap
       << (cmp.multiplicities_agree ? ", multiplicities agree"
                                    : ", multiplicities differ")
       << "); only the derived form matches the r = 0 spectrum, the large-r "
          "horosphere limit, and the leaf dimension.";
  else
    os << "At r = " << r << " the forms coincide.";
  cmp.note = os.str();
  return cmp;
}

}  // namespace hyperfol::geometry
