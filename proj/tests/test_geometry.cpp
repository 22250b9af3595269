// test_geometry.cpp -- closed-form shape-operator spectra, mean curvature,
// minimality, and rank-one tube curvatures.

#include "doctest.h"
#include "hyperfol/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace hyperfol;
using namespace hyperfol::geometry;
using foliation::FoliationSpec;
using foliation::build_spec;
using rootsys::MultiplicityProfile;
using rootsys::RootSystem;
using rootsys::build_root_system;

namespace {

RootSystem a3() { return build_root_system("A", 3, {}, rat(1, 4)); }

// profile of the bundled rank-one complex realization
RootSystem bc1_small() {
  MultiplicityProfile p{2, std::nullopt, 1};
  return build_root_system("BC", 1, p, rat(1, 12));
}

// fatter doubled profile with a nontrivial kernel part, unit root length
RootSystem bc1_fat() {
  MultiplicityProfile p{4, std::nullopt, 1};
  return build_root_system("BC", 1, p, rat(1));
}

RootSystem a1_pair() {
  MultiplicityProfile p{2, std::nullopt, std::nullopt};
  return build_root_system("A", 1, p, rat(1, 4));
}

const SpectrumEntry* find_label(const CurvatureReport& rep,
                                const std::string& label) {
  for (const SpectrumEntry& e : rep.spectrum)
    if (e.label == label) return &e;
  return nullptr;
}

int mult_sum(const CurvatureReport& rep) {
  int s = 0;
  for (const SpectrumEntry& e : rep.spectrum) s += e.multiplicity;
  return s;
}

// spectrum as a sorted list with multiplicities expanded
std::vector<double> expanded(const CurvatureReport& rep) {
  std::vector<double> out;
  for (const SpectrumEntry& e : rep.spectrum)
    out.insert(out.end(), e.multiplicity, e.value);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> expanded(const std::vector<TubeEntry>& entries) {
  std::vector<double> out;
  for (const TubeEntry& e : entries)
    out.insert(out.end(), e.multiplicity, e.value);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("flat-direction spectra") {
  RootSystem rs = a3();

  SUBCASE("horocycle: every root space contributes its evaluation") {
    FoliationSpec spec = build_spec(rs, {}, RatMat(0, 3));
    CurvatureReport rep =
        spectrum_a_type(spec, {rat(0), rat(1), rat(0)}, /*unit=*/false);
    CHECK(rep.dim_s == 6);
    CHECK(mult_sum(rep) == 6);
    CHECK(rep.norm_an == doctest::Approx(std::sqrt(8.0)));
    // evaluations of the six positive roots at the second dual basis vector
    std::vector<double> vals = expanded(rep);
    CHECK(vals == std::vector<double>{0, 0, 1, 1, 1, 1});
    CHECK(rep.trace == doctest::Approx(4.0));  // = 2 delta(xi)
    for (const SpectrumEntry& e : rep.spectrum)
      REQUIRE(e.exact_value.has_value());
  }

  SUBCASE("orthogonal pair removed: zero block plus four unit evaluations") {
    FoliationSpec spec = build_spec(rs, {0, 2}, RatMat(0, 3));
    CurvatureReport rep = spectrum_a_type(spec, {rat(0), rat(1), rat(0)});
    const SpectrumEntry* z = find_label(rep, "zero-block");
    REQUIRE(z != nullptr);
    CHECK(z->multiplicity == 2);
    CHECK(z->value == 0.0);
    int at_unit = 0;
    for (const SpectrumEntry& e : rep.spectrum)
      if (e.label.rfind("g(", 0) == 0) {
        CHECK(e.value == doctest::Approx(1.0 / std::sqrt(8.0)));
        at_unit += e.multiplicity;
      }
    CHECK(at_unit == 4);
    CHECK(rep.unit_normalized);
  }

  SUBCASE("reports do not depend on the shift parameters") {
    FoliationSpec plain = build_spec(rs, {0}, RatMat(0, 3));
    FoliationSpec shifted = build_spec(rs, {0}, RatMat(0, 3), {{0, 3.5}});
    CurvatureReport r1 = spectrum_a_type(plain, {rat(0), rat(1), rat(0)});
    CurvatureReport r2 = spectrum_a_type(shifted, {rat(0), rat(1), rat(0)});
    REQUIRE(r1.spectrum.size() == r2.spectrum.size());
    for (size_t i = 0; i < r1.spectrum.size(); ++i) {
      CHECK(r1.spectrum[i].value == r2.spectrum[i].value);
      CHECK(r1.spectrum[i].multiplicity == r2.spectrum[i].multiplicity);
      CHECK(r1.spectrum[i].label == r2.spectrum[i].label);
    }
  }

  SUBCASE("zero normal direction gives the zero operator") {
    FoliationSpec spec = build_spec(rs, {}, RatMat(0, 3));
    CurvatureReport rep = spectrum_a_type(spec, {rat(0), rat(0), rat(0)});
    CHECK(rep.norm_an == 0.0);
    CHECK(rep.trace == 0.0);
    for (const SpectrumEntry& e : rep.spectrum) CHECK(e.value == 0.0);
  }

  SUBCASE("rejects directions outside a_Phi minus V") {
    FoliationSpec spec = build_spec(rs, {0}, RatMat(0, 3));
    CHECK_THROWS_AS(spectrum_a_type(spec, {rat(1), rat(0)}),
                    std::invalid_argument);  // wrong dimension
    CHECK_THROWS_AS(spectrum_a_type(spec, {rat(1), rat(0), rat(0)}),
                    std::invalid_argument);  // alpha_1 coordinate nonzero
    FoliationSpec with_v =
        build_spec(rs, {0}, RatMat::from_rows({{rat(0), rat(1), rat(0)}}));
    CHECK_THROWS_AS(spectrum_a_type(with_v, {rat(0), rat(1), rat(0)}),
                    std::invalid_argument);  // not perpendicular to V
    // the complement direction (0, 1, -2) is accepted
    CurvatureReport rep =
        spectrum_a_type(with_v, {rat(0), rat(1), rat(-2)});
    CHECK(rep.dim_s == 1 + 6);
  }
}

TEST_CASE("removed-root spectra") {
  SUBCASE("reduced multiplicity-one root: a single tilted eigenvalue") {
    RootSystem rs = a3();
    FoliationSpec spec =
        build_spec(rs, {0, 2}, RatMat(0, 3), {{0, 1.0}});
    CurvatureReport rep = spectrum_alpha_type(spec, 0, /*unit=*/false);
    CHECK(rep.norm_an == doctest::Approx(1.5));  // sqrt(2 + 1/4)
    const SpectrumEntry* x = find_label(rep, "X_alpha-line");
    REQUIRE(x != nullptr);
    CHECK(x->value == doctest::Approx(0.25));  // a |alpha|^2
    CHECK(x->multiplicity == 1);
    CHECK(find_label(rep, "ker-part") == nullptr);      // 1 - 0 - 1 = 0
    CHECK(find_label(rep, "pair-part(+)") == nullptr);  // no doubled root
    const SpectrumEntry* z = find_label(rep, "zero-block");
    REQUIRE(z != nullptr);
    CHECK(z->multiplicity == 1);  // the other removed root's spaces
    // two nontrivial strings, each a symmetric block of dimension two
    int sym_blocks = 0;
    for (const SpectrumEntry& e : rep.spectrum)
      if (e.symmetric_block) {
        CHECK(e.multiplicity == 2);
        CHECK(e.value == 0.0);  // block trace
        ++sym_blocks;
      }
    CHECK(sym_blocks == 2);
    CHECK(mult_sum(rep) == rep.dim_s);
    CHECK(rep.dim_s == 6);
    // trace identity a |alpha|^2 (m + 2 m_2)
    CHECK(rep.trace == doctest::Approx(0.25));
  }

  SUBCASE("doubled root with kernel part, raw scale") {
    RootSystem rs = bc1_fat();  // multiplicities (4, 1), |alpha| = 1
    FoliationSpec spec = build_spec(rs, {0}, RatMat(0, 1), {{0, 1.0}});
    CurvatureReport rep = spectrum_alpha_type(spec, 0, /*unit=*/false);
    CHECK(rep.dim_s == 5);
    CHECK(mult_sum(rep) == 5);
    CHECK(rep.norm_an == doctest::Approx(std::sqrt(3.0)));
    const SpectrumEntry* k = find_label(rep, "ker-part");
    REQUIRE(k != nullptr);
    CHECK(k->multiplicity == 2);  // m - m_2 - 1
    CHECK(k->value == doctest::Approx(1.0));
    const SpectrumEntry* pp = find_label(rep, "pair-part(+)");
    const SpectrumEntry* pm = find_label(rep, "pair-part(-)");
    REQUIRE(pp != nullptr);
    REQUIRE(pm != nullptr);
    CHECK(pp->multiplicity == 1);
    CHECK(pm->multiplicity == 1);
    CHECK(pp->value == doctest::Approx(3.0));  // (1/2)(3 + sqrt(9))
    CHECK(pm->value == doctest::Approx(0.0));
    CHECK(rep.trace == doctest::Approx(6.0));  // a |a|^2 (m + 2 m_2) = 6
  }

  SUBCASE("pair eigenvalue product identity across shifts") {
    RootSystem rs = bc1_fat();
    for (double a : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
      FoliationSpec spec = build_spec(rs, {0}, RatMat(0, 1), {{0, a}});
      CurvatureReport rep = spectrum_alpha_type(spec, 0, /*unit=*/false);
      const SpectrumEntry* pp = find_label(rep, "pair-part(+)");
      const SpectrumEntry* pm = find_label(rep, "pair-part(-)");
      REQUIRE(pp != nullptr);
      REQUIRE(pm != nullptr);
      // product of the printed pair equals 2 |alpha|^2 (a^2 |alpha|^2 - 1)
      CHECK(pp->value * pm->value ==
            doctest::Approx(2.0 * (a * a - 1.0)).epsilon(1e-12));
      // trace identity
      CHECK(rep.trace == doctest::Approx(6.0 * a));
    }
  }

  SUBCASE("shift-free doubled profile, unit scale") {
    RootSystem rs = bc1_small();
    double len = std::sqrt(to_double(rs.norm2(rs.simple(0))));
    FoliationSpec spec = build_spec(rs, {0}, RatMat(0, 1));
    CurvatureReport rep = spectrum_alpha_type(spec, 0);
    std::vector<double> vals = expanded(rep);
    REQUIRE(vals.size() == 3);
    CHECK(vals[0] == doctest::Approx(-len));
    CHECK(std::abs(vals[1]) < 1e-15);
    CHECK(vals[2] == doctest::Approx(len));
    CHECK(rep.trace == doctest::Approx(0.0));
  }

  SUBCASE("root index outside phi is rejected") {
    RootSystem rs = a3();
    FoliationSpec spec = build_spec(rs, {0}, RatMat(0, 3));
    CHECK_THROWS_AS(spectrum_alpha_type(spec, 1), std::invalid_argument);
    CHECK_THROWS_AS(spectrum_alpha_type(spec, 2), std::invalid_argument);
  }
}

TEST_CASE("multiplicities always sum to the leaf dimension") {
  RootSystem rs = a3();
  for (const auto& phi :
       std::vector<std::vector<int>>{{}, {0}, {1}, {2}, {0, 2}}) {
    std::map<int, double> shifts;
    for (int j : phi) shifts[j] = 1.0;
    FoliationSpec spec = build_spec(rs, phi, RatMat(0, 3), shifts);
    if (phi.empty() || phi[0] != 0) {
      CurvatureReport rep = spectrum_a_type(
          spec, {rat(1), rat(0), rat(0)});
      CHECK(mult_sum(rep) == rep.dim_s);
    }
    for (int j : phi) {
      CurvatureReport rep = spectrum_alpha_type(spec, j);
      CHECK(mult_sum(rep) == rep.dim_s);
    }
  }
}

TEST_CASE("mean curvature and minimality") {
  SUBCASE("rank-one removed root, no shift: minimal") {
    RootSystem rs = bc1_small();
    FoliationSpec spec = build_spec(rs, {0}, RatMat(0, 1));
    MeanCurvatureVector h = mean_curvature(spec);
    REQUIRE(h.a_exact.has_value());
    CHECK(vec_is_zero(*h.a_exact));
    CHECK(h.e_components.at(0) == 0.0);
    CHECK(is_minimal(spec));
  }

  SUBCASE("horocycle: twice the half-sum dual vector, never minimal") {
    RootSystem rs = a3();
    FoliationSpec spec = build_spec(rs, {}, RatMat(0, 3));
    MeanCurvatureVector h = mean_curvature(spec);
    REQUIRE(h.a_exact.has_value());
    CHECK(*h.a_exact ==
          std::vector<Rat>{rat(1, 4), rat(1, 4), rat(1, 4)});
    CHECK(h.e_components.empty());
    CHECK_FALSE(is_minimal(spec));
  }

  SUBCASE("shift-free proper pair: projection of the half-sum") {
    RootSystem rs = a3();
    FoliationSpec spec = build_spec(rs, {0, 2}, RatMat(0, 3));
    MeanCurvatureVector h = mean_curvature(spec);
    REQUIRE(h.a_exact.has_value());
    CHECK(*h.a_exact == std::vector<Rat>{rat(0), rat(1, 2), rat(0)});
    CHECK_FALSE(is_minimal(spec));

    // enlarging V to absorb the projection makes the leaf minimal
    FoliationSpec full = build_spec(
        rs, {0, 2}, RatMat::from_rows({{rat(0), rat(1), rat(0)}}));
    CHECK(is_minimal(full));
  }

  SUBCASE("nonzero shift contributes a root-space component") {
    RootSystem rs = a3();
    FoliationSpec spec = build_spec(rs, {0}, RatMat(0, 3), {{0, 1.0}});
    MeanCurvatureVector h = mean_curvature(spec);
    CHECK_FALSE(h.a_exact.has_value());
    CHECK(h.e_components.at(0) == doctest::Approx(2.0 / 9.0));
    CHECK_FALSE(is_minimal(spec));
  }
}

TEST_CASE("rank-one tube curvatures") {
  RootSystem rs = bc1_small();
  double len = std::sqrt(to_double(rs.norm2(rs.simple(0))));

  SUBCASE("distance zero agrees with the shift-free removed-root spectrum") {
    std::vector<double> tube = expanded(rank_one_tube_curvatures(rs, 0.0));
    FoliationSpec spec = build_spec(rs, {0}, RatMat(0, 1));
    std::vector<double> spectrum = expanded(spectrum_alpha_type(spec, 0));
    REQUIRE(tube.size() == spectrum.size());
    for (size_t i = 0; i < tube.size(); ++i)
      CHECK(tube[i] == doctest::Approx(spectrum[i]).epsilon(1e-12));
  }

  SUBCASE("large distance approaches the horosphere magnitudes") {
    std::vector<double> tube = expanded(rank_one_tube_curvatures(rs, 100.0));
    std::vector<double> mags;
    for (double v : tube) mags.push_back(std::abs(v));
    std::sort(mags.begin(), mags.end());
    REQUIRE(mags.size() == 3);
    CHECK(mags[0] == doctest::Approx(len).epsilon(1e-9));
    CHECK(mags[1] == doctest::Approx(len).epsilon(1e-9));
    CHECK(mags[2] == doctest::Approx(2.0 * len).epsilon(1e-9));
  }

  SUBCASE("reduced system has only the tanh branch") {
    RootSystem red = a1_pair();
    double l2 = std::sqrt(to_double(red.norm2(red.simple(0))));
    std::vector<TubeEntry> tube = rank_one_tube_curvatures(red, 1.0);
    REQUIRE(tube.size() == 1);
    CHECK(tube[0].multiplicity == 2);
    CHECK(tube[0].value == doctest::Approx(-l2 * std::tanh(l2)));
  }

  SUBCASE("form comparison flags the doubled-root disagreement") {
    TubeFormComparison cmp = compare_tube_forms(rs, 1.0);
    CHECK_FALSE(cmp.multiplicities_agree);
    CHECK(cmp.max_value_gap > 1e-3);
    CHECK(cmp.note.find("disagree") != std::string::npos);

    TubeFormComparison same = compare_tube_forms(a1_pair(), 1.0);
    CHECK(same.multiplicities_agree);
    CHECK(same.max_value_gap == 0.0);
    CHECK(same.note.find("coincide") != std::string::npos);
  }

  SUBCASE("higher rank is rejected") {
    CHECK_THROWS_AS(rank_one_tube_curvatures(a3(), 1.0),
                    std::invalid_argument);
  }
}
