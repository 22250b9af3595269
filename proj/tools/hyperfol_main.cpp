// hyperfol -- command line driver.
//
// Subcommands:
//   classify    list the foliation families (Phi, dim V) of a space
//   curvatures  shape-operator spectra and mean curvature of one leaf
//   verify      brute-force check suites on a matrix realization
//   catalog     list (and optionally validate) the space catalog
//
// Exit codes: 0 success / all checks pass, 1 check failure, 2 usage or
// input error.

#include "CLI11.hpp"

#include "hyperfol/catalog.hpp"
#include "hyperfol/foliation.hpp"
#include "hyperfol/geometry.hpp"
#include "hyperfol/matrixlie.hpp"
#include "hyperfol/parabolic.hpp"
#include "hyperfol/report.hpp"
#include "hyperfol/rootsys.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cctype>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

using hyperfol::Rat;
using hyperfol::RatMat;
using hyperfol::rat_str;
using hyperfol::to_double;
using hyperfol::catalog::Catalog;
using hyperfol::catalog::CatalogEntry;
using hyperfol::catalog::RealizationBundle;
using hyperfol::foliation::FoliationSpec;
using hyperfol::report::Json;
using hyperfol::rootsys::RootSystem;
using hyperfol::rootsys::RootVector;

namespace folns = hyperfol::foliation;
namespace geom = hyperfol::geometry;
namespace mlie = hyperfol::matrixlie;
namespace parab = hyperfol::parabolic;
namespace rsys = hyperfol::rootsys;

// ---------------------------------------------------------------------------
// formatting helpers

std::string fmt(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string fmt_res(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

std::string simple_name(int i) { return "a" + std::to_string(i + 1); }

// "A" + 3 -> "A3"; exceptional labels already carry their rank.
std::string system_name(const RootSystem& rs) {
  if (!rs.type_label.empty() && std::isdigit(rs.type_label.back()))
    return rs.type_label;
  return rs.type_label + std::to_string(rs.rank);
}

std::string phi_name(const std::vector<int>& phi) {
  std::string s = "{";
  for (size_t i = 0; i < phi.size(); ++i) {
    if (i) s += ",";
    s += simple_name(phi[i]);
  }
  return s + "}";
}

std::string rat_vec_str(const std::vector<Rat>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += rat_str(v[i]);
  }
  return s + "]";
}

Json rat_vec_json(const std::vector<Rat>& v) {
  Json arr = Json::array();
  for (const Rat& x : v) arr.push_back(rat_str(x));
  return arr;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

// ---------------------------------------------------------------------------
// option parsing

// "none" or "" -> {}; otherwise comma-separated 1-based names "a1,a3".
std::vector<int> parse_phi(const std::string& text, int rank) {
  std::vector<int> phi;
  if (text.empty() || text == "none") return phi;
  for (const std::string& tok : split(text, ',')) {
    if (tok.size() < 2 || tok[0] != 'a')
      throw std::invalid_argument("bad simple-root name '" + tok +
                                  "' (expected a1..a" + std::to_string(rank) +
                                  ")");
    int k = 0;
    try {
      k = std::stoi(tok.substr(1));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad simple-root name '" + tok + "'");
    }
    if (k < 1 || k > rank)
      throw std::invalid_argument("simple-root name '" + tok +
                                  "' out of range 1.." + std::to_string(rank));
    phi.push_back(k - 1);
  }
  std::sort(phi.begin(), phi.end());
  if (std::adjacent_find(phi.begin(), phi.end()) != phi.end())
    throw std::invalid_argument("duplicate simple root in --phi");
  return phi;
}

// Semicolon-separated spanning rows of comma-separated rationals in
// dual-basis coordinates; "0" (or empty) is the trivial subspace.
RatMat parse_v(const std::string& text, int rank) {
  RatMat v(0, rank);
  if (text.empty() || text == "0") return v;
  for (const std::string& row : split(text, ';')) {
    std::vector<std::string> toks = split(row, ',');
    if (static_cast<int>(toks.size()) != rank)
      throw std::invalid_argument("--v row '" + row + "' needs " +
                                  std::to_string(rank) + " coordinates");
    std::vector<Rat> r;
    for (const std::string& t : toks) r.push_back(hyperfol::parse_rat(t));
    v.append_row(r);
  }
  return v;
}

// Comma-separated shifts matching the (sorted) phi order.
std::map<int, double> parse_shifts(const std::string& text,
                                   const std::vector<int>& phi) {
  std::map<int, double> a;
  if (text.empty()) return a;
  std::vector<std::string> toks = split(text, ',');
  if (toks.size() != phi.size())
    throw std::invalid_argument("--a needs exactly " +
                                std::to_string(phi.size()) +
                                " values (one per member of --phi)");
  for (size_t i = 0; i < toks.size(); ++i) {
    try {
      a[phi[i]] = std::stod(toks[i]);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad shift value '" + toks[i] + "'");
    }
  }
  return a;
}

// ---------------------------------------------------------------------------
// catalog plumbing

struct SpaceContext {
  Catalog cat;
  const CatalogEntry* entry = nullptr;
  RootSystem rs;
};

// 0 on success; kExitUsage with a message on stderr otherwise.
int load_space(const std::string& name, SpaceContext& out) {
  try {
    out.cat = hyperfol::catalog::load_catalog();
  } catch (const std::exception& e) {
    std::cerr << "hyperfol: " << e.what() << "\n";
    return kExitUsage;
  }
  out.entry = out.cat.find(name);
  if (out.entry == nullptr) {
    std::cerr << "hyperfol: unknown space '" << name << "' (try `hyperfol catalog`)\n";
    return kExitUsage;
  }
  out.rs = hyperfol::catalog::root_system_for(*out.entry);
  return kExitOk;
}

Json entry_json(const CatalogEntry& e) {
  Json j;
  j["name"] = e.name;
  j["root_type"] = e.root_type;
  j["rank"] = e.rank;
  Json m;
  m["short"] = e.short_mult;
  if (e.long_mult) m["long"] = *e.long_mult;
  if (e.doubled_mult) m["doubled"] = *e.doubled_mult;
  j["multiplicities"] = m;
  j["realization"] = e.realization ? Json(*e.realization) : Json(nullptr);
  j["killing_scale"] =
      e.killing_scale ? Json(rat_str(*e.killing_scale)) : Json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------
// classify

std::string boundary_string(const parab::BoundaryComponentFactorization& bc) {
  std::string s;
  for (size_t i = 0; i < bc.factors.size(); ++i) {
    if (i) s += " x ";
    s += std::string(parab::algebra_name(bc.factors[i].algebra)) + "H" +
         std::to_string(bc.factors[i].n);
  }
  if (bc.euclidean_rank > 0) {
    if (!bc.factors.empty()) s += " x ";
    s += "E" + std::to_string(bc.euclidean_rank);
  }
  if (s.empty()) s = "point";
  return s;
}

std::string family_kind(const std::vector<int>& phi,
                        const parab::BoundaryComponentFactorization& bc) {
  if (phi.empty()) return "horocycle-type";
  std::string s;
  for (size_t i = 0; i < bc.factors.size(); ++i) {
    if (i) s += "x";
    s += std::string(parab::algebra_name(bc.factors[i].algebra)) + "H" +
         std::to_string(bc.factors[i].n);
  }
  return s + "-solvable-type";
}

int cmd_classify(const std::string& space, bool json_out, bool orbits) {
  SpaceContext sc;
  if (int rc = load_space(space, sc); rc != kExitOk) return rc;
  const RootSystem& rs = sc.rs;

  // The centralizer dimension dim k0 is read off the realization when one is
  // bundled; abstract entries are treated as split (dim k0 = 0).
  int dim_k0 = 0;
  std::string k0_source = "assumed-split";
  if (sc.entry->realization) {
    try {
      RealizationBundle bundle = hyperfol::catalog::build_realization(*sc.entry);
      dim_k0 = static_cast<int>(bundle.decomposition.k0_rows.rows());
      k0_source = "realization";
    } catch (const std::exception& e) {
      std::cerr << "hyperfol: realization check failed: " << e.what() << "\n";
      return kExitCheckFailure;
    }
  }

  std::vector<folns::Family> families = folns::enumerate_families(rs);

  Json doc = hyperfol::report::make_report("classify");
  doc["inputs"] = Json{{"space", space},
                       {"orbits_under_diagram_auts", orbits}};
  Json sj = entry_json(*sc.entry);
  sj["dim_n"] = rs.dim_n();
  sj["dim_k0"] = dim_k0;
  sj["dim_k0_source"] = k0_source;
  doc["space"] = sj;

  std::ostringstream hum;
  hum << "space " << sc.entry->name << ": restricted root system "
      << system_name(rs) << ", rank " << rs.rank << ", dim n = "
      << rs.dim_n() << "\n";
  hum << "  dim k0 = " << dim_k0 << " (" << k0_source << ")\n\n";

  Json fam_arr = Json::array();
  for (const folns::Family& fam : families) {
    parab::ParabolicProfile lp = parab::langlands_profile(rs, fam.phi, dim_k0);
    parab::GradationProfile gp = parab::gradation_profile(rs, fam.phi, dim_k0);
    parab::BoundaryComponentFactorization bc =
        parab::boundary_component(rs, fam.phi);

    Json fj;
    Json phis = Json::array();
    for (int i : fam.phi) phis.push_back(simple_name(i));
    fj["phi"] = phis;
    fj["kind"] = family_kind(fam.phi, bc);
    fj["dim_v_min"] = fam.dim_v_min;
    fj["dim_v_max"] = fam.dim_v_max;
    fj["codim_min"] = fam.codim_min;
    fj["codim_max"] = fam.codim_max;
    fj["langlands"] = Json{{"dim_n_phi", lp.dim_n_phi},
                           {"dim_a_phi", lp.dim_a_phi},
                           {"dim_a_upper_phi", lp.dim_a_upper_phi},
                           {"dim_g0", lp.dim_g0},
                           {"dim_l_phi", lp.dim_l_phi},
                           {"dim_m_phi", lp.dim_m_phi},
                           {"dim_g", lp.dim_g},
                           {"num_phi_roots",
                            static_cast<int>(lp.sigma_phi_positive.size())}};
    Json levels;
    for (const auto& [lvl, d] : gp.level_dims)
      levels[std::to_string(lvl)] = d;
    fj["gradation"] = Json{{"levels", levels}, {"top_level", gp.top_level}};
    Json factors = Json::array();
    for (const parab::BoundaryFactor& f : bc.factors)
      factors.push_back(Json{{"root", simple_name(f.alpha_index)},
                             {"algebra", parab::algebra_name(f.algebra)},
                             {"n", f.n},
                             {"dim", f.dim()}});
    fj["boundary"] = Json{{"factors", factors},
                          {"euclidean_rank", bc.euclidean_rank},
                          {"dim_factors", bc.dim_factors()},
                          {"display", boundary_string(bc)}};
    fam_arr.push_back(fj);

    hum << "phi = " << phi_name(fam.phi) << "  [" << family_kind(fam.phi, bc)
        << "]\n";
    hum << "  dim V " << fam.dim_v_min << ".." << fam.dim_v_max
        << ", leaf codim " << fam.codim_min << ".." << fam.codim_max << "\n";
    hum << "  parabolic: dim n_phi = " << lp.dim_n_phi << ", dim a_phi = "
        << lp.dim_a_phi << ", dim a^phi = " << lp.dim_a_upper_phi
        << ", dim l_phi = " << lp.dim_l_phi << ", dim m_phi = " << lp.dim_m_phi
        << "\n";
    hum << "  gradation:";
    for (const auto& [lvl, d] : gp.level_dims)
      if (lvl > 0) hum << " " << lvl << ":" << d;
    hum << "  (top " << gp.top_level << ")\n";
    hum << "  boundary: " << boundary_string(bc) << "  (factor dim "
        << bc.dim_factors() << ", euclidean rank " << bc.euclidean_rank
        << ")\n\n";
  }
  doc["families"] = fam_arr;
  doc["totals"] = Json{{"families", static_cast<int>(families.size())}};
  hum << "families: " << families.size() << "\n";

  if (orbits) {
    std::vector<std::vector<int>> subsets;
    subsets.reserve(families.size());
    for (const folns::Family& fam : families) subsets.push_back(fam.phi);
    auto orbs = parab::automorphism_orbits(rs, subsets);
    Json oj = Json::array();
    hum << "\ndiagram-automorphism orbits: " << orbs.size() << "\n";
    for (const auto& orb : orbs) {
      Json members = Json::array();
      hum << " ";
      for (size_t i = 0; i < orb.size(); ++i) {
        Json phis = Json::array();
        for (int k : orb[i]) phis.push_back(simple_name(k));
        members.push_back(phis);
        hum << (i ? " ~ " : " ") << phi_name(orb[i]);
      }
      hum << "\n";
      oj.push_back(members);
    }
    doc["orbits"] = oj;
    doc["totals"]["orbits"] = static_cast<int>(orbs.size());
  }

  if (json_out)
    std::cout << hyperfol::report::render(doc);
  else
    std::cout << hum.str();
  return kExitOk;
}

// ---------------------------------------------------------------------------
// curvatures

// G-orthogonal spanning directions of a_Phi minus V, in dual coordinates.
std::vector<std::vector<Rat>> flat_normal_directions(const FoliationSpec& spec) {
  const RootSystem& rs = spec.rs;
  RatMat aphi(0, rs.rank);
  for (int j = 0; j < rs.rank; ++j) {
    if (std::binary_search(spec.phi.begin(), spec.phi.end(), j)) continue;
    std::vector<Rat> e(rs.rank, Rat(0));
    e[j] = 1;
    aphi.append_row(e);
  }
  RatMat w = spec.v_span.rows > 0
                 ? hyperfol::orth_complement_in(spec.v_span, aphi, rs.gram_inv)
                 : aphi;
  RatMat o = hyperfol::orthogonalize(w, rs.gram_inv);
  std::vector<std::vector<Rat>> dirs;
  for (int i = 0; i < o.rows; ++i) dirs.push_back(o.row(i));
  return dirs;
}

Json spectrum_json(const geom::CurvatureReport& rep) {
  Json j;
  Json entries = Json::array();
  for (const geom::SpectrumEntry& e : rep.spectrum) {
    Json ej;
    ej["value"] = e.value;
    ej["multiplicity"] = e.multiplicity;
    ej["label"] = e.label;
    ej["symmetric_block"] = e.symmetric_block;
    ej["exact"] = e.exact_value ? Json(rat_str(*e.exact_value)) : Json(nullptr);
    entries.push_back(ej);
  }
  j["spectrum"] = entries;
  j["trace"] = rep.trace;
  j["unit_normalized"] = rep.unit_normalized;
  return j;
}

void print_spectrum(std::ostringstream& hum, const geom::CurvatureReport& rep) {
  hum << "    value             mult  block\n";
  for (const geom::SpectrumEntry& e : rep.spectrum) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "    %-17s %-5d %s%s\n",
                  e.symmetric_block ? "(symmetric, tr 0)" : fmt(e.value).c_str(),
                  e.multiplicity, e.label.c_str(),
                  e.symmetric_block ? " [paired block]" : "");
    hum << buf;
  }
  hum << "    trace " << fmt(rep.trace) << ", |xi|_AN = " << fmt(rep.norm_an)
      << (rep.unit_normalized ? " (unit-normalized)" : " (raw)") << "\n";
}

int cmd_curvatures(const std::string& space, const std::string& phi_text,
                   const std::string& v_text, const std::string& a_text,
                   const std::string& normal_text, bool raw_view,
                   bool json_out) {
  SpaceContext sc;
  if (int rc = load_space(space, sc); rc != kExitOk) return rc;
  const RootSystem& rs = sc.rs;

  FoliationSpec spec{rs, {}, RatMat(0, rs.rank), {}};
  try {
    std::vector<int> phi = parse_phi(phi_text, rs.rank);
    RatMat v = parse_v(v_text, rs.rank);
    std::map<int, double> shifts = parse_shifts(a_text, phi);
    spec = folns::build_spec(rs, phi, v, shifts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "hyperfol: " << e.what() << "\n";
    return kExitUsage;
  }
  folns::SubalgebraProfile prof = folns::subalgebra_profile(spec);

  // Normal selection: all flat directions plus every alpha in Phi by
  // default; "a-unit" restricts to the flat directions, "alpha:aK" to one
  // shifted root normal.
  bool want_flat = true;
  std::vector<int> want_alpha = spec.phi;
  if (normal_text == "a-unit") {
    want_alpha.clear();
  } else if (normal_text.rfind("alpha:", 0) == 0) {
    want_flat = false;
    try {
      std::vector<int> one = parse_phi(normal_text.substr(6), rs.rank);
      if (one.size() != 1) throw std::invalid_argument("expected one root");
      if (!std::binary_search(spec.phi.begin(), spec.phi.end(), one[0]))
        throw std::invalid_argument("--normal root " + simple_name(one[0]) +
                                    " is not a member of --phi");
      want_alpha = one;
    } catch (const std::invalid_argument& e) {
      std::cerr << "hyperfol: " << e.what() << "\n";
      return kExitUsage;
    }
  } else if (!normal_text.empty() && normal_text != "all") {
    std::cerr << "hyperfol: bad --normal '" << normal_text
              << "' (expected a-unit, alpha:NAME or all)\n";
    return kExitUsage;
  }

  Json doc = hyperfol::report::make_report("curvatures");
  Json phis = Json::array();
  for (int i : spec.phi) phis.push_back(simple_name(i));
  Json vrows = Json::array();
  for (int i = 0; i < spec.v_span.rows; ++i)
    vrows.push_back(rat_vec_json(spec.v_span.row(i)));
  Json shifts_j;
  for (int i : spec.phi) shifts_j[simple_name(i)] = spec.a_of(i);
  doc["inputs"] = Json{{"space", space},
                       {"phi", phis},
                       {"v", vrows},
                       {"a", shifts_j},
                       {"normal", normal_text.empty() ? "all" : normal_text},
                       {"scale", raw_view ? "raw" : "unit"}};
  doc["leaf"] = Json{{"dim_v", prof.dim_v},
                     {"dim_s", prof.dim_s},
                     {"codim", prof.codim}};

  std::ostringstream hum;
  hum << "space " << sc.entry->name << "  phi = " << phi_name(spec.phi)
      << "  dim V = " << prof.dim_v << "  a:";
  if (spec.phi.empty()) hum << " (none)";
  for (int i : spec.phi)
    hum << " " << simple_name(i) << "=" << fmt(spec.a_of(i));
  hum << "\nleaf: dim s = " << prof.dim_s << ", codim = " << prof.codim
      << "\n";

  geom::MeanCurvatureVector mean = geom::mean_curvature(spec);
  bool minimal = geom::is_minimal(spec);
  Json mj;
  Json adual = Json::array();
  for (double x : mean.a_dual_coords) adual.push_back(x);
  mj["a_dual_coords"] = adual;
  mj["a_exact"] =
      mean.a_exact ? rat_vec_json(*mean.a_exact) : Json(nullptr);
  Json ecomp;
  for (const auto& [idx, val] : mean.e_components)
    ecomp[simple_name(idx)] = val;
  mj["e_components"] = ecomp;
  mj["minimal"] = minimal;
  doc["mean_curvature"] = mj;

  hum << "mean curvature: flat part [";
  for (size_t i = 0; i < mean.a_dual_coords.size(); ++i)
    hum << (i ? ", " : "") << fmt(mean.a_dual_coords[i]);
  hum << "]";
  if (!mean.e_components.empty()) {
    hum << "; root parts";
    for (const auto& [idx, val] : mean.e_components)
      hum << " " << simple_name(idx) << ":" << fmt(val);
  }
  hum << "; minimal: " << (minimal ? "yes" : "no") << "\n\n";

  rsys::DeltaVector delta = rsys::delta_vector(rs);
  Json normals = Json::array();

  auto emit = [&](const geom::CurvatureReport& raw_rep,
                  const geom::CurvatureReport& unit_rep,
                  const std::string& label, double expected_raw_trace) {
    double residual = std::fabs(raw_rep.trace - expected_raw_trace);
    Json nj;
    nj["kind"] = raw_rep.normal_kind;
    nj["label"] = label;
    if (raw_rep.normal_kind == "a-type") {
      nj["dual_coords"] = rat_vec_json(raw_rep.normal_dual_coords);
    } else {
      nj["alpha"] = simple_name(raw_rep.alpha_index);
      nj["a_alpha"] = raw_rep.a_alpha;
    }
    nj["norm_an"] = raw_rep.norm_an;
    nj["raw"] = spectrum_json(raw_rep);
    nj["unit"] = spectrum_json(unit_rep);
    nj["trace_identity_residual"] = residual;
    normals.push_back(nj);

    hum << "normal " << label << " (|xi|_AN = " << fmt(raw_rep.norm_an)
        << ")\n";
    print_spectrum(hum, raw_view ? raw_rep : unit_rep);
    hum << "    trace-identity residual " << fmt_res(residual) << "\n\n";
  };

  try {
    if (want_flat) {
      int k = 0;
      for (const std::vector<Rat>& dir : flat_normal_directions(spec)) {
        geom::CurvatureReport raw_rep = geom::spectrum_a_type(spec, dir, false);
        geom::CurvatureReport unit_rep = geom::spectrum_a_type(spec, dir, true);
        Rat dxi = 0;  // 2 delta(xi), exact
        for (int i = 0; i < rs.rank; ++i) dxi += delta.coeffs[i] * dir[i];
        emit(raw_rep, unit_rep,
             "a-direction " + std::to_string(++k) + " " + rat_vec_str(dir),
             2 * to_double(dxi));
      }
      if (k == 0) hum << "(no flat normal directions: V = a_Phi)\n\n";
    }
    for (int idx : want_alpha) {
      geom::CurvatureReport raw_rep = geom::spectrum_alpha_type(spec, idx, false);
      geom::CurvatureReport unit_rep = geom::spectrum_alpha_type(spec, idx, true);
      RootVector al = rs.simple(idx);
      double n2 = to_double(rs.norm2(al));
      int m1 = rs.multiplicity(al);
      int m2 = 0;
      if (rs.has_double(al)) {
        RootVector dbl = al;
        for (int& cc : dbl.c) cc *= 2;
        m2 = rs.multiplicity(dbl);
      }
      double expected = raw_rep.a_alpha * n2 * (m1 + 2 * m2);
      emit(raw_rep, unit_rep, "alpha " + simple_name(idx), expected);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "hyperfol: " << e.what() << "\n";
    return kExitUsage;
  }
  doc["normals"] = normals;

  if (json_out)
    std::cout << hyperfol::report::render(doc);
  else
    std::cout << hum.str();
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct CheckResult {
  std::string name;
  bool pass = true;
  bool skipped = false;
  double residual = 0.0;
  std::string detail;
};

// All coordinate-axis subspaces of a_Phi (subsets of the complement of phi),
// as v_span matrices; skips the improper pair (empty phi, full flat).
std::vector<RatMat> coordinate_subspaces(const RootSystem& rs,
                                         const std::vector<int>& phi) {
  std::vector<int> free_idx;
  for (int j = 0; j < rs.rank; ++j)
    if (!std::binary_search(phi.begin(), phi.end(), j)) free_idx.push_back(j);
  std::vector<RatMat> out;
  int n = static_cast<int>(free_idx.size());
  for (int mask = 0; mask < (1 << n); ++mask) {
    RatMat v(0, rs.rank);
    for (int b = 0; b < n; ++b) {
      if (!(mask & (1 << b))) continue;
      std::vector<Rat> e(rs.rank, Rat(0));
      e[free_idx[b]] = 1;
      v.append_row(e);
    }
    if (phi.empty() && v.rows == rs.rank) continue;  // improper
    out.push_back(v);
  }
  return out;
}

CheckResult suite_criterion(const mlie::MatrixLieAlgebra& g,
                            const mlie::RootSpaceDecomposition& dec,
                            double tol) {
  CheckResult res{"criterion", true, false, 0.0, ""};
  const RootSystem& rs = dec.rs;
  int count = 0, exact_count = 0, exact_possible = 0;
  for (const std::vector<int>& phi : parab::orthogonal_subsets(rs)) {
    for (const RatMat& v : coordinate_subspaces(rs, phi)) {
      FoliationSpec spec = folns::build_spec(rs, phi, v, {});
      mlie::RealizedSubalgebra sub = mlie::realize(g, dec, spec);
      mlie::Verdict verdict = mlie::polarity_verdict(g, sub.rows, tol);
      ++count;
      res.residual = std::max(res.residual, verdict.max_residual);
      if (verdict.classification != "hyperpolar") {
        res.pass = false;
        if (res.detail.empty())
          res.detail = "phi=" + phi_name(phi) + " dimV=" +
                       std::to_string(v.rows) + " classified " +
                       verdict.classification;
      }
      if (sub.rows_q) {
        ++exact_possible;
        RatMat perp_q = mlie::perp_in_p_exact(g, *sub.rows_q);
        if (mlie::is_abelian_exact(g, perp_q)) {
          ++exact_count;
        } else {
          res.pass = false;
          if (res.detail.empty())
            res.detail = "phi=" + phi_name(phi) +
                         " exact perp not abelian";
        }
      }
    }
  }
  if (res.detail.empty())
    res.detail = std::to_string(count) + " subalgebras hyperpolar, exact " +
                 std::to_string(exact_count) + "/" +
                 std::to_string(exact_possible);
  return res;
}

CheckResult suite_nonpolar(const mlie::MatrixLieAlgebra& g,
                           const mlie::RootSpaceDecomposition& dec,
                           double tol) {
  CheckResult res{"nonpolar-example", true, false, 0.0, ""};
  const RootSystem& rs = dec.rs;
  int ia = -1, ib = -1;
  for (int i = 0; i < rs.rank && ia < 0; ++i)
    for (int j = i + 1; j < rs.rank && ia < 0; ++j)
      if (rsys::is_orthogonal_pair(rs, i, j) &&
          rs.norm2(rs.simple(i)) == rs.norm2(rs.simple(j)) &&
          rs.multiplicity(rs.simple(i)) == 1 &&
          rs.multiplicity(rs.simple(j)) == 1) {
        ia = i;
        ib = j;
      }
  if (ia < 0) {
    res.skipped = true;
    res.detail = "needs two orthogonal equal-length simple roots";
    return res;
  }
  RootVector al = rs.simple(ia), be = rs.simple(ib);

  mlie::Vec hd = dec.coroot_vec(al) - dec.coroot_vec(be);
  mlie::Vec xa = dec.unit_E(al), xb = dec.unit_E(be);

  // h = (a minus R hd) + (n minus R(xa + xb))
  int d = g.dim();
  mlie::Mat rows(0, d);
  mlie::Vec hd_unit = hd / g.norm(hd);
  for (int i = 0; i < dec.a_rows.rows(); ++i) {
    mlie::Vec r = dec.a_rows.row(i).transpose();
    r -= g.inner_vv(r, hd_unit) * hd_unit;
    rows.conservativeResize(rows.rows() + 1, d);
    rows.row(rows.rows() - 1) = r.transpose();
  }
  for (const mlie::RootSpace& sp : dec.positives) {
    if (sp.abstract == al || sp.abstract == be) continue;
    rows.conservativeResize(rows.rows() + sp.rows.rows(), d);
    rows.bottomRows(sp.rows.rows()) = sp.rows;
  }
  rows.conservativeResize(rows.rows() + 1, d);
  rows.row(rows.rows() - 1) = ((xa - xb) / std::sqrt(2.0)).transpose();
  rows = mlie::orthonormal_rows(g, rows);

  mlie::Verdict verdict = mlie::polarity_verdict(g, rows, tol);
  res.residual = verdict.max_residual;

  // The three structure brackets of the normal space.
  double c = to_double(rs.norm2(al));
  mlie::Vec v1 = (xa + xb) - g.theta(xa + xb);
  mlie::Vec v2 = (xa - xb) + g.theta(xa - xb);
  double r1 = g.norm(g.bracket(hd, v1) - c * v2);
  double r2 = g.norm(g.bracket(hd, v2) - c * v1);
  double r3 = g.norm(g.bracket(v1, v2) + 2.0 * hd);
  res.residual = std::max({res.residual, r1, r2, r3});

  bool shape_ok = verdict.is_subalgebra && !verdict.perp_is_abelian &&
                  verdict.perp_is_lie_triple &&
                  !verdict.orthogonality_condition &&
                  verdict.classification == "not_polar";
  res.pass = shape_ok && r1 <= tol && r2 <= tol && r3 <= tol;
  res.detail = "pair (" + simple_name(ia) + "," + simple_name(ib) +
               "), verdict " + verdict.classification +
               ", bracket residuals " + fmt_res(r1) + " " + fmt_res(r2) + " " +
               fmt_res(r3);
  return res;
}

CheckResult suite_nonfoliation(const mlie::MatrixLieAlgebra& g,
                               const mlie::RootSpaceDecomposition& dec,
                               double tol) {
  CheckResult res{"nonfoliation-example", true, false, 0.0, ""};
  using Cplx = std::complex<double>;
  const Cplx I(0.0, 1.0);
  mlie::CMat B(2, 2), X(2, 2), Xi(2, 2), E(2, 2), T(2, 2), A(2, 2);
  B << 1, I, 0, -1;
  X << -I, 1, 0, I;
  Xi << 1, -2.0 * I, 2.0 * I, -1;  // Hermitian normal direction
  E << 0, 0.5 * I, 0, 0;
  T << I, 0, 0, -I;
  A << 1, 0, 0, -1;

  int d = g.dim();
  mlie::Mat h_rows(2, d);
  h_rows.row(0) = g.to_coords(B).transpose();
  h_rows.row(1) = g.to_coords(X).transpose();

  double closure_res = 0.0;
  bool closed = mlie::bracket_closure(g, h_rows, tol, &closure_res);

  mlie::Mat perp = mlie::perp_in_p(g, h_rows);
  bool perp_line = perp.rows() == 1;
  bool perp_abelian = mlie::is_abelian(g, perp, tol);

  mlie::Mat xi_row(1, d);
  xi_row.row(0) = g.to_coords(Xi).transpose();
  double span_res = mlie::subspace_residual(g, perp, xi_row);

  mlie::Mat op = mlie::ad_exp_operator(g, g.to_coords(E));
  mlie::Mat moved = h_rows * op.transpose();
  mlie::Mat target(2, d);
  target.row(0) = g.to_coords(T).transpose();
  target.row(1) = g.to_coords(A).transpose();
  double ad_res = mlie::subspace_residual(g, moved, target);

  res.residual = std::max({closure_res, span_res, ad_res});
  res.pass = closed && perp_line && perp_abelian && span_res <= tol &&
             ad_res <= tol;
  res.detail = std::string("perp dim ") + std::to_string(perp.rows()) +
               (perp_abelian ? " abelian" : " NOT abelian") +
               ", span residual " + fmt_res(span_res) +
               ", Ad(Exp E)h vs t+a residual " + fmt_res(ad_res);
  (void)dec;
  return res;
}

// Shift grids {-2,-1,0,1,2}^phi.
std::vector<std::map<int, double>> shift_grid(const std::vector<int>& phi) {
  static const double kVals[] = {-2.0, -1.0, 0.0, 1.0, 2.0};
  std::vector<std::map<int, double>> out;
  size_t total = 1;
  for (size_t i = 0; i < phi.size(); ++i) total *= 5;
  for (size_t code = 0; code < total; ++code) {
    std::map<int, double> a;
    size_t c = code;
    for (int idx : phi) {
      a[idx] = kVals[c % 5];
      c /= 5;
    }
    out.push_back(a);
  }
  return out;
}

CheckResult suite_congruency(const mlie::MatrixLieAlgebra& g,
                             const mlie::RootSpaceDecomposition& dec,
                             double tol) {
  CheckResult res{"congruency", true, false, 0.0, ""};
  const RootSystem& rs = dec.rs;
  int count = 0;
  for (const std::vector<int>& phi : parab::orthogonal_subsets(rs)) {
    if (phi.empty()) continue;
    for (const std::map<int, double>& a : shift_grid(phi)) {
      FoliationSpec spec = folns::build_spec(rs, phi, RatMat(0, rs.rank), a);
      mlie::CongruencyResult cr = mlie::verify_congruency(g, dec, spec, tol);
      ++count;
      res.residual = std::max(res.residual, cr.residual);
      if (!cr.ok) {
        res.pass = false;
        if (res.detail.empty())
          res.detail = "phi=" + phi_name(phi) + " shift grid point failed (" +
                       fmt_res(cr.residual) + ")";
      }
    }
  }
  if (res.detail.empty())
    res.detail = std::to_string(count) + " shifted subalgebras conjugated";
  return res;
}

CheckResult suite_identities(const mlie::MatrixLieAlgebra& g,
                             const mlie::RootSpaceDecomposition& dec,
                             double tol) {
  CheckResult res{"identities", true, false, 0.0, ""};
  mlie::IdentityReport rep = mlie::identity_checks(g, dec, 100, 12345);
  res.residual = std::max(rep.polarization_max, rep.projection_max);
  res.pass = rep.pass(tol);
  res.detail = std::to_string(rep.samples) + " samples, polarization " +
               fmt_res(rep.polarization_max) + ", projection " +
               fmt_res(rep.projection_max);
  return res;
}

// Compares a closed-form report against numeric eigenvalues: explicit
// entries must match one-for-one; what remains must belong to the paired
// blocks -- equal total dimension and a spectrum symmetric about zero.
double match_spectrum(const geom::CurvatureReport& rep,
                      std::vector<double> eigs, std::string* err) {
  std::vector<double> expected;
  int block_dim = 0;
  for (const geom::SpectrumEntry& e : rep.spectrum) {
    if (e.symmetric_block) {
      block_dim += e.multiplicity;
    } else {
      for (int i = 0; i < e.multiplicity; ++i) expected.push_back(e.value);
    }
  }
  if (expected.size() + block_dim != eigs.size()) {
    *err = "dimension mismatch: closed form " +
           std::to_string(expected.size() + block_dim) + " vs numeric " +
           std::to_string(eigs.size());
    return 1e30;
  }
  std::sort(eigs.begin(), eigs.end());
  double max_gap = 0.0;
  std::vector<bool> used(eigs.size(), false);
  std::sort(expected.begin(), expected.end());
  for (double v : expected) {
    int best = -1;
    double best_gap = 1e30;
    for (size_t i = 0; i < eigs.size(); ++i) {
      if (used[i]) continue;
      double gap = std::fabs(eigs[i] - v);
      if (gap < best_gap) {
        best_gap = gap;
        best = static_cast<int>(i);
      }
    }
    used[best] = true;
    max_gap = std::max(max_gap, best_gap);
  }
  std::vector<double> rest;
  for (size_t i = 0; i < eigs.size(); ++i)
    if (!used[i]) rest.push_back(eigs[i]);
  for (size_t i = 0; i < rest.size(); ++i)
    max_gap = std::max(max_gap,
                       std::fabs(rest[i] + rest[rest.size() - 1 - i]));
  return max_gap;
}

CheckResult suite_spectral(const mlie::MatrixLieAlgebra& g,
                           const mlie::RootSpaceDecomposition& dec,
                           double tol) {
  CheckResult res{"spectral-oracle", true, false, 0.0, ""};
  const RootSystem& rs = dec.rs;
  int count = 0;
  auto check = [&](const geom::CurvatureReport& rep, const mlie::Vec& xi_p,
                   const FoliationSpec& spec, const std::string& what) {
    mlie::Mat m = mlie::shape_operator_numeric(g, dec, spec, xi_p,
                                               std::max(tol, 1e-8));
    Eigen::SelfAdjointEigenSolver<mlie::Mat> es(m);
    std::vector<double> eigs(es.eigenvalues().data(),
                             es.eigenvalues().data() + es.eigenvalues().size());
    std::string err;
    double gap = match_spectrum(rep, eigs, &err);
    ++count;
    res.residual = std::max(res.residual, gap);
    if (!err.empty() || gap > tol) {
      res.pass = false;
      if (res.detail.empty())
        res.detail = what + (err.empty() ? " gap " + fmt_res(gap) : ": " + err);
    }
  };
  for (const std::vector<int>& phi : parab::orthogonal_subsets(rs)) {
    for (const std::map<int, double>& a : shift_grid(phi)) {
      FoliationSpec spec = folns::build_spec(rs, phi, RatMat(0, rs.rank), a);
      for (const std::vector<Rat>& dir : flat_normal_directions(spec)) {
        geom::CurvatureReport rep = geom::spectrum_a_type(spec, dir, false);
        check(rep, mlie::normal_a_type(dec, dir), spec,
              "a-type phi=" + phi_name(phi));
      }
      for (int idx : phi) {
        geom::CurvatureReport rep = geom::spectrum_alpha_type(spec, idx, false);
        check(rep,
              mlie::normal_alpha_type(g, dec, idx, spec.a_of(idx)), spec,
              "alpha-type " + simple_name(idx) + " phi=" + phi_name(phi) +
                  " a=" + fmt(spec.a_of(idx)));
      }
      if (phi.empty()) break;  // single grid point for empty phi
    }
  }
  if (res.detail.empty())
    res.detail = std::to_string(count) + " spectra matched";
  return res;
}

int cmd_verify(const std::string& space, const std::string& suite,
               std::optional<double> tol_opt, bool json_out) {
  SpaceContext sc;
  if (int rc = load_space(space, sc); rc != kExitOk) return rc;
  if (!sc.entry->realization) {
    std::cerr << "hyperfol: space '" << space
              << "' has no matrix realization; verify needs one\n";
    return kExitUsage;
  }

  static const std::vector<std::string> kSuites = {
      "criterion",  "nonpolar-example", "nonfoliation-example",
      "congruency", "identities",       "spectral-oracle"};
  std::vector<std::string> selected;
  if (suite == "all") {
    selected = kSuites;
  } else if (std::find(kSuites.begin(), kSuites.end(), suite) !=
             kSuites.end()) {
    selected = {suite};
  } else {
    std::cerr << "hyperfol: unknown suite '" << suite << "' (";
    for (size_t i = 0; i < kSuites.size(); ++i)
      std::cerr << (i ? ", " : "") << kSuites[i];
    std::cerr << " or all)\n";
    return kExitUsage;
  }
  bool explicit_one = suite != "all";

  RealizationBundle bundle;
  try {
    bundle = hyperfol::catalog::build_realization(*sc.entry);
  } catch (const std::exception& e) {
    std::cerr << "hyperfol: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  const mlie::MatrixLieAlgebra& g = bundle.algebra;
  const mlie::RootSpaceDecomposition& dec = bundle.decomposition;

  auto tol_for = [&](double dflt) { return tol_opt ? *tol_opt : dflt; };
  std::vector<CheckResult> results;
  for (const std::string& name : selected) {
    CheckResult r;
    if (name == "criterion") {
      r = suite_criterion(g, dec, tol_for(1e-10));
    } else if (name == "nonpolar-example") {
      r = suite_nonpolar(g, dec, tol_for(1e-10));
    } else if (name == "nonfoliation-example") {
      if (sc.entry->realization != "sl2_complex") {
        r = CheckResult{name, true, true, 0.0,
                        "defined on the sl(2,C) realization only"};
      } else {
        r = suite_nonfoliation(g, dec, tol_for(1e-9));
      }
    } else if (name == "congruency") {
      r = suite_congruency(g, dec, tol_for(1e-9));
    } else if (name == "identities") {
      r = suite_identities(g, dec, tol_for(1e-10));
    } else {
      r = suite_spectral(g, dec, tol_for(1e-8));
    }
    if (r.skipped && explicit_one) {
      std::cerr << "hyperfol: suite '" << name << "' does not apply to "
                << space << ": " << r.detail << "\n";
      return kExitUsage;
    }
    results.push_back(std::move(r));
  }

  bool all_pass = true;
  Json checks = Json::array();
  std::ostringstream hum;
  hum << "space " << sc.entry->name << " (" << *sc.entry->realization
      << "), root system " << system_name(dec.rs) << "\n";
  for (const CheckResult& r : results) {
    if (!r.skipped && !r.pass) all_pass = false;
    checks.push_back(Json{{"name", r.name},
                          {"pass", r.pass},
                          {"skipped", r.skipped},
                          {"residual", r.residual},
                          {"detail", r.detail}});
    char buf[512];
    std::snprintf(buf, sizeof buf, "%-22s %-5s max residual %-9s %s\n",
                  r.name.c_str(),
                  r.skipped ? "SKIP" : (r.pass ? "PASS" : "FAIL"),
                  fmt_res(r.residual).c_str(), r.detail.c_str());
    hum << buf;
  }
  hum << "verdict: " << (all_pass ? "PASS" : "FAIL") << "\n";

  Json doc = hyperfol::report::make_report("verify");
  doc["inputs"] = Json{{"space", space},
                       {"suite", suite},
                       {"tol", tol_opt ? Json(*tol_opt) : Json(nullptr)}};
  doc["checks"] = checks;
  doc["pass"] = all_pass;

  if (json_out)
    std::cout << hyperfol::report::render(doc);
  else
    std::cout << hum.str();
  return all_pass ? kExitOk : kExitCheckFailure;
}

// ---------------------------------------------------------------------------
// catalog

int cmd_catalog(bool validate, bool json_out) {
  Catalog cat;
  try {
    cat = hyperfol::catalog::load_catalog();
  } catch (const std::exception& e) {
    std::cerr << "hyperfol: " << e.what() << "\n";
    return kExitUsage;
  }

  Json doc = hyperfol::report::make_report("catalog");
  doc["inputs"] = Json{{"validate", validate}};
  Json entries = Json::array();
  std::ostringstream hum;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-8s %-5s %-5s %-22s %-8s %s\n", "name",
                "type", "rank", "multiplicities", "scale", "realization");
  hum << buf;
  for (const CatalogEntry& e : cat.entries) {
    entries.push_back(entry_json(e));
    std::string mults = "short " + std::to_string(e.short_mult);
    if (e.long_mult) mults += ", long " + std::to_string(*e.long_mult);
    if (e.doubled_mult) mults += ", doubled " + std::to_string(*e.doubled_mult);
    std::snprintf(buf, sizeof buf, "%-8s %-5s %-5d %-22s %-8s %s\n",
                  e.name.c_str(), e.root_type.c_str(), e.rank, mults.c_str(),
                  e.killing_scale ? rat_str(*e.killing_scale).c_str() : "-",
                  e.realization ? e.realization->c_str() : "-");
    hum << buf;
  }
  doc["entries"] = entries;
  hum << "entries: " << cat.entries.size() << "\n";

  bool all_ok = true;
  if (validate) {
    Json vj = Json::array();
    for (const CatalogEntry& e : cat.entries) {
      if (!e.realization) continue;
      std::string err;
      try {
        hyperfol::catalog::build_realization(e);
      } catch (const std::exception& ex) {
        err = ex.what();
        all_ok = false;
      }
      vj.push_back(Json{{"name", e.name},
                        {"pass", err.empty()},
                        {"error", err.empty() ? Json(nullptr) : Json(err)}});
      hum << "validate " << e.name << ": " << (err.empty() ? "PASS" : "FAIL")
          << (err.empty() ? "" : "  " + err) << "\n";
    }
    doc["validation"] = vj;
    doc["pass"] = all_ok;
    hum << "validation: " << (all_ok ? "PASS" : "FAIL") << "\n";
  }

  if (json_out)
    std::cout << hyperfol::report::render(doc);
  else
    std::cout << hum.str();
  return all_ok ? kExitOk : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperpolar homogeneous foliations on noncompact symmetric "
               "spaces: classification, curvature and verification"};
  app.require_subcommand(1);

  std::string space, phi_text, v_text = "0", a_text, normal_text = "all";
  std::string suite = "all";
  bool json_out = false, orbits = false, raw_view = false, unit_view = false;
  bool validate = false;
  std::optional<double> tol_opt;

  CLI::App* classify = app.add_subcommand(
      "classify", "List the foliation families (Phi, dim V) of a space");
  classify->add_option("space", space, "Catalog name, e.g. SL4R")->required();
  classify->add_flag("--json", json_out, "Emit a JSON report");
  classify->add_flag("--orbits-under-diagram-auts", orbits,
                     "Group the subsets Phi into diagram-automorphism orbits");

  CLI::App* curvatures = app.add_subcommand(
      "curvatures", "Shape-operator spectra and mean curvature of one leaf");
  curvatures->add_option("space", space, "Catalog name")->required();
  curvatures
      ->add_option("--phi", phi_text,
                   "Orthogonal simple roots, e.g. a1,a3 -- or none")
      ->required();
  curvatures->add_option(
      "--v", v_text,
      "Spanning rows of V in dual coordinates, e.g. 0,1,0;1,0,-1 -- 0 = trivial");
  curvatures->add_option("--a", a_text,
                         "Leaf shifts, one value per member of --phi");
  curvatures->add_option("--normal", normal_text,
                         "a-unit | alpha:NAME | all (default all)");
  CLI::Option* raw_opt =
      curvatures->add_flag("--raw", raw_view, "Show raw-scale spectra");
  curvatures->add_flag("--unit", unit_view, "Show unit-normal spectra (default)")
      ->excludes(raw_opt);
  curvatures->add_flag("--json", json_out, "Emit a JSON report");

  CLI::App* verify = app.add_subcommand(
      "verify", "Brute-force check suites on the matrix realization");
  verify->add_option("space", space, "Catalog name (needs a realization)")
      ->required();
  verify
      ->add_option("--suite", suite,
                   "criterion | nonpolar-example | nonfoliation-example | "
                   "congruency | identities | spectral-oracle | all")
      ->required();
  verify->add_option("--tol", tol_opt, "Override the per-suite tolerance");
  verify->add_flag("--json", json_out, "Emit a JSON report");

  CLI::App* catalog_cmd =
      app.add_subcommand("catalog", "List the space catalog");
  catalog_cmd->add_flag("--validate", validate,
                        "Rebuild every realization and cross-check its root "
                        "data against the declared entry");
  catalog_cmd->add_flag("--json", json_out, "Emit a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (classify->parsed()) return cmd_classify(space, json_out, orbits);
    if (curvatures->parsed())
      return cmd_curvatures(space, phi_text, v_text, a_text, normal_text,
                            raw_view, json_out);
    if (verify->parsed()) return cmd_verify(space, suite, tol_opt, json_out);
    if (catalog_cmd->parsed()) return cmd_catalog(validate, json_out);
  } catch (const std::exception& e) {
    std::cerr << "hyperfol: internal check failed: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  return kExitUsage;
}
