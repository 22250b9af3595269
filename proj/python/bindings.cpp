// bindings.cpp -- Python module exposing the main library operations:
// catalog access, classification families, subalgebra verification, and the
// closed-form leaf curvature reports.
//
// Results come back as plain dicts and lists so the Python side needs no
// wrapper types.  Vector inputs (normal directions, spans of V) are taken as
// integer coordinates over the dual basis of the flat; any rational vector
// can be scaled to integers without changing the span or, for normals, the
// unit-normalized spectrum.

#include "hyperfol/catalog.hpp"
#include "hyperfol/foliation.hpp"
#include "hyperfol/geometry.hpp"
#include "hyperfol/parabolic.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace hyperfol;
namespace cat = hyperfol::catalog;
namespace fol = hyperfol::foliation;
namespace geom = hyperfol::geometry;
namespace par = hyperfol::parabolic;

namespace {

using IntRows = std::vector<std::vector<long long>>;

cat::CatalogEntry entry_for(const std::string& name) {
  cat::Catalog c = cat::load_catalog();
  const cat::CatalogEntry* e = c.find(name);
  if (!e) throw std::invalid_argument("unknown catalog entry: " + name);
  return *e;
}

RatMat to_ratmat(const IntRows& rows, int cols) {
  RatMat m(0, cols);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols)
      throw std::invalid_argument("row length does not match the rank");
    std::vector<Rat> row(r.begin(), r.end());
    m.append_row(row);
  }
  return m;
}

fol::FoliationSpec make_spec(const rootsys::RootSystem& rs,
                             const std::vector<int>& phi, const IntRows& v,
                             const std::map<int, double>& a) {
  return fol::build_spec(rs, phi, to_ratmat(v, rs.rank), a);
}

py::dict report_to_dict(const geom::CurvatureReport& rep) {
  py::list spectrum;
  for (const geom::SpectrumEntry& e : rep.spectrum) {
    py::dict d;
    d["value"] = e.value;
    d["multiplicity"] = e.multiplicity;
    d["label"] = e.label;
    d["symmetric_block"] = e.symmetric_block;
    if (e.exact_value) d["exact_value"] = rat_str(*e.exact_value);
    spectrum.append(d);
  }
  py::dict out;
  out["normal_kind"] = rep.normal_kind;
  out["spectrum"] = spectrum;
  out["norm"] = rep.norm_an;
  out["trace"] = rep.trace;
  out["unit_normalized"] = rep.unit_normalized;
  out["dim_leaf"] = rep.dim_s;
  return out;
}

py::dict verdict_to_dict(const matrixlie::Verdict& v) {
  py::dict out;
  out["is_subalgebra"] = v.is_subalgebra;
  out["normal_space_abelian"] = v.perp_is_abelian;
  out["normal_space_lie_triple"] = v.perp_is_lie_triple;
  out["orthogonality_condition"] = v.orthogonality_condition;
  out["classification"] = v.classification;
  out["foliation_hypothesis_checked"] = v.foliation_hypothesis_checked;
  out["max_residual"] = v.max_residual;
  return out;
}

}  // namespace

PYBIND11_MODULE(_hyperfol, m) {
  m.doc() =
      "Hyperpolar homogeneous foliations of noncompact symmetric spaces: "
      "classification families, brute-force subalgebra verification on "
      "matrix realizations, and closed-form leaf curvature.";

  m.def("catalog_names", []() {
    std::vector<std::string> names;
    for (const cat::CatalogEntry& e : cat::load_catalog().entries)
      names.push_back(e.name);
    return names;
  },
        "Entry names of the active catalog (HYPERFOL_CATALOG file when the "
        "variable is set, else the bundled copy).");

  m.def("describe", [](const std::string& name) {
    cat::CatalogEntry e = entry_for(name);
    rootsys::RootSystem rs = cat::root_system_for(e);
    py::dict mults;
    mults["short"] = e.short_mult;
    if (e.long_mult) mults["long"] = *e.long_mult;
    if (e.doubled_mult) mults["doubled"] = *e.doubled_mult;
    py::dict out;
    out["name"] = e.name;
    out["root_type"] = e.root_type;
    out["rank"] = e.rank;
    out["multiplicities"] = mults;
    out["has_realization"] = e.realization.has_value();
    if (e.realization) out["realization"] = *e.realization;
    out["dim_n"] = rs.dim_n();
    out["positive_roots"] = static_cast<int>(rs.positives.size());
    std::vector<double> norms;
    for (int i = 0; i < rs.rank; ++i)
      norms.push_back(to_double(rs.norm2(rs.simple(i))));
    out["simple_norm2"] = norms;
    return out;
  },
        py::arg("name"), "Root data of a catalog entry.");

  m.def("orthogonal_subsets", [](const std::string& name) {
    rootsys::RootSystem rs = cat::root_system_for(entry_for(name));
    return par::orthogonal_subsets(rs);
  },
        py::arg("name"),
        "All pairwise-orthogonal subsets of simple roots, empty set "
        "included.");

  m.def("families", [](const std::string& name) {
    rootsys::RootSystem rs = cat::root_system_for(entry_for(name));
    py::list out;
    for (const fol::Family& f : fol::enumerate_families(rs)) {
      py::dict d;
      d["phi"] = f.phi;
      d["dim_v_min"] = f.dim_v_min;
      d["dim_v_max"] = f.dim_v_max;
      d["codim_min"] = f.codim_min;
      d["codim_max"] = f.codim_max;
      out.append(d);
    }
    return out;
  },
        py::arg("name"),
        "Classification families: one per orthogonal subset, with the "
        "admissible dimension range for V.");

  m.def("verify", [](const std::string& name, const std::vector<int>& phi,
                     const IntRows& v, const std::map<int, double>& a) {
    cat::RealizationBundle bun = cat::build_realization(entry_for(name));
    fol::FoliationSpec spec = make_spec(bun.decomposition.rs, phi, v, a);
    matrixlie::RealizedSubalgebra s =
        matrixlie::realize(bun.algebra, bun.decomposition, spec);
    return verdict_to_dict(
        matrixlie::polarity_verdict(bun.algebra, s.rows));
  },
        py::arg("name"), py::arg("phi"), py::arg("v") = IntRows{},
        py::arg("a") = std::map<int, double>{},
        "Realizes the leaf subalgebra on the entry's matrix algebra and "
        "classifies it by brute-force bracket computation.");

  m.def("congruency", [](const std::string& name, const std::vector<int>& phi,
                         const std::map<int, double>& a) {
    cat::RealizationBundle bun = cat::build_realization(entry_for(name));
    fol::FoliationSpec spec =
        make_spec(bun.decomposition.rs, phi, IntRows{}, a);
    matrixlie::CongruencyResult r =
        matrixlie::verify_congruency(bun.algebra, bun.decomposition, spec);
    py::dict out;
    out["ok"] = r.ok;
    out["residual"] = r.residual;
    return out;
  },
        py::arg("name"), py::arg("phi"),
        py::arg("a") = std::map<int, double>{},
        "Checks that conjugation by the canonical group element maps the "
        "shifted subalgebra onto the shift-free one.");

  m.def("spectrum_flat", [](const std::string& name,
                            const std::vector<int>& phi,
                            const std::vector<long long>& xi, const IntRows& v,
                            const std::map<int, double>& a, bool unit) {
    rootsys::RootSystem rs = cat::root_system_for(entry_for(name));
    fol::FoliationSpec spec = make_spec(rs, phi, v, a);
    std::vector<Rat> dir(xi.begin(), xi.end());
    return report_to_dict(geom::spectrum_a_type(spec, dir, unit));
  },
        py::arg("name"), py::arg("phi"), py::arg("xi"),
        py::arg("v") = IntRows{}, py::arg("a") = std::map<int, double>{},
        py::arg("unit") = true,
        "Shape-operator spectrum for a normal direction xi inside the flat "
        "(dual-basis integer coordinates, perpendicular to V).");

  m.def("spectrum_removed", [](const std::string& name,
                               const std::vector<int>& phi, int alpha_index,
                               const IntRows& v,
                               const std::map<int, double>& a, bool unit) {
    rootsys::RootSystem rs = cat::root_system_for(entry_for(name));
    fol::FoliationSpec spec = make_spec(rs, phi, v, a);
    return report_to_dict(geom::spectrum_alpha_type(spec, alpha_index, unit));
  },
        py::arg("name"), py::arg("phi"), py::arg("alpha_index"),
        py::arg("v") = IntRows{}, py::arg("a") = std::map<int, double>{},
        py::arg("unit") = true,
        "Shape-operator spectrum for the normal attached to a removed root "
        "alpha of phi.");

  m.def("mean_curvature", [](const std::string& name,
                             const std::vector<int>& phi, const IntRows& v,
                             const std::map<int, double>& a) {
    rootsys::RootSystem rs = cat::root_system_for(entry_for(name));
    fol::FoliationSpec spec = make_spec(rs, phi, v, a);
    geom::MeanCurvatureVector h = geom::mean_curvature(spec);
    py::dict out;
    out["flat_coords"] = h.a_dual_coords;
    if (h.a_exact) {
      std::vector<std::string> exact;
      for (const Rat& r : *h.a_exact) exact.push_back(rat_str(r));
      out["flat_exact"] = exact;
    }
    out["e_components"] = h.e_components;
    out["minimal"] = geom::is_minimal(spec);
    return out;
  },
        py::arg("name"), py::arg("phi"), py::arg("v") = IntRows{},
        py::arg("a") = std::map<int, double>{},
        "Mean curvature vector of the leaf, split into flat and root-space "
        "components; exact flat coordinates when all shifts vanish.");

  m.def("tube_curvatures", [](const std::string& name, double r,
                              const std::string& form) {
    rootsys::RootSystem rs = cat::root_system_for(entry_for(name));
    geom::TubeForm f;
    if (form == "derived")
      f = geom::TubeForm::derived;
    else if (form == "variant")
      f = geom::TubeForm::variant;
    else
      throw std::invalid_argument("form must be 'derived' or 'variant'");
    py::list out;
    for (const geom::TubeEntry& t : geom::rank_one_tube_curvatures(rs, r, f)) {
      py::dict d;
      d["value"] = t.value;
      d["multiplicity"] = t.multiplicity;
      d["label"] = t.label;
      out.append(d);
    }
    return out;
  },
        py::arg("name"), py::arg("r"), py::arg("form") = "derived",
        "Principal curvatures of the rank-one leaf at signed distance r from "
        "the minimal leaf.");

  m.def("compare_tube_forms", [](const std::string& name, double r) {
    rootsys::RootSystem rs = cat::root_system_for(entry_for(name));
    geom::TubeFormComparison c = geom::compare_tube_forms(rs, r);
    py::dict out;
    out["r"] = c.r;
    out["max_value_gap"] = c.max_value_gap;
    out["multiplicities_agree"] = c.multiplicities_agree;
    out["note"] = c.note;
    return out;
  },
        py::arg("name"), py::arg("r"),
        "Compares the two published bookkeepings of the rank-one tube "
        "curvatures.");

  m.def("identity_residuals", [](const std::string& name, int samples,
                                 unsigned seed) {
    cat::RealizationBundle bun = cat::build_realization(entry_for(name));
    matrixlie::IdentityReport rep =
        matrixlie::identity_checks(bun.algebra, bun.decomposition, samples,
                                   seed);
    py::dict out;
    out["samples"] = rep.samples;
    out["polarization_max"] = rep.polarization_max;
    out["projection_max"] = rep.projection_max;
    return out;
  },
        py::arg("name"), py::arg("samples") = 100, py::arg("seed") = 12345,
        "Max residuals of the polarization and projection identities on "
        "randomized samples of the entry's realization.");
}
