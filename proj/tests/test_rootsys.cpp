// test_rootsys.cpp -- root system enumeration against independent fixtures
// plus exact examples.

#include "doctest.h"
#include "hyperfol/rootsys.hpp"
#include <nlohmann/json.hpp>

#include <fstream>

using namespace hyperfol;
using namespace hyperfol::rootsys;
using nlohmann::json;

namespace {

json load_fixture() {
  static json j = [] {
    std::ifstream f(std::string(HYPERFOL_TEST_DATA_DIR) + "/root_systems.json");
    REQUIRE(f.good());
    json out;
    f >> out;
    return out;
  }();
  return j;
}

// Builds with multiplicity 1 in whichever length classes the type has.
RootSystem build_like(const std::string& label, int rank) {
  MultiplicityProfile p;
  for (bool lng : {false, true})
    for (bool dbl : {false, true}) {
      p.long_mult = lng ? std::optional<int>(1) : std::nullopt;
      p.doubled_mult = dbl ? std::optional<int>(1) : std::nullopt;
      try {
        return build_root_system(label, rank, p);
      } catch (const std::invalid_argument&) {
      }
    }
  throw std::runtime_error("cannot build " + label);
}

bool all_zero(const std::vector<int>& v) {
  return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

}  // namespace

TEST_CASE("enumeration matches the reflection-closure fixtures") {
  json fx = load_fixture();
  for (auto& [key, sys] : fx.items()) {
    CAPTURE(key);
    std::string label = sys["label"];
    int rank = sys["rank"];
    RootSystem rs = build_like(label, rank);

    // Cartan matrix
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j)
        CHECK(rs.cartan[i][j] == sys["cartan"][i][j].get<int>());

    // Gram at scale 1 in the short-root normalization
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j)
        CHECK(rs.gram(i, j) == parse_rat(sys["gram_short1"][i][j].get<std::string>()));

    // positive roots, identical canonical order (level, then coefficients)
    REQUIRE(static_cast<int>(rs.positives.size()) == sys["n_positive"].get<int>());
    for (size_t k = 0; k < rs.positives.size(); ++k)
      CHECK(rs.positives[k].c == sys["positive_roots"][k].get<std::vector<int>>());

    CHECK(highest_root(rs).c == sys["highest_root"].get<std::vector<int>>());

    // every alpha-string length
    for (const auto& entry : sys["string_lengths"]) {
      RootVector lam{entry[0].get<std::vector<int>>()};
      int ai = entry[1];
      int want = entry[2];
      CHECK(root_string_length(rs, lam, ai) == want);
      CHECK(want >= 1);
      CHECK(want <= 4);
      if (want == 4) CHECK(label == "G2");
    }
  }
}

TEST_CASE("small systems: enumeration examples") {
  RootSystem a2 = build_root_system("A", 2, {});
  REQUIRE(a2.positives.size() == 3);
  CHECK(a2.positives[2].c == std::vector<int>{1, 1});

  MultiplicityProfile ch2;
  ch2.short_mult = 2;
  ch2.doubled_mult = 1;
  RootSystem bc1 = build_root_system("BC", 1, ch2);
  REQUIRE(bc1.positives.size() == 2);
  CHECK(bc1.positives[0].c == std::vector<int>{1});
  CHECK(bc1.positives[1].c == std::vector<int>{2});
  CHECK(bc1.multiplicity({{1}}) == 2);
  CHECK(bc1.multiplicity({{2}}) == 1);
  CHECK(bc1.has_double({{1}}));
  CHECK(bc1.is_reduced({{2}}));

  RootSystem a3 = build_root_system("A", 3, {});
  CHECK(a3.positives.size() == 6);
  CHECK(highest_root(a3).c == std::vector<int>{1, 1, 1});
  CHECK(level(a3, highest_root(a3)) == 3);
  for (int i = 0; i < 3; ++i) CHECK(level(a3, a3.simple(i)) == 1);

  RootSystem g2 = build_root_system("G2", 2, {1, 1, std::nullopt});
  CHECK(level(g2, highest_root(g2)) == 5);
  CHECK(highest_root(g2).c == std::vector<int>{3, 2});
}

TEST_CASE("inner products and orthogonality") {
  RootSystem a2 = build_root_system("A", 2, {});
  CHECK(inner_product(a2, a2.simple(0), a2.simple(1)) /
            inner_product(a2, a2.simple(0), a2.simple(0)) ==
        rat(-1, 2));

  RootSystem a3 = build_root_system("A", 3, {});
  CHECK(is_orthogonal_pair(a3, 0, 2));
  CHECK_FALSE(is_orthogonal_pair(a3, 0, 1));
  for (const auto& lam : a3.positives) CHECK(a3.norm2(lam) > 0);

  CHECK_THROWS_AS(inner_product(a3, {{2, 0, 0}}, a3.simple(0)),
                  std::invalid_argument);
}

TEST_CASE("coroots and the dual basis") {
  RootSystem a3 = build_root_system("A", 3, {}, rat(1, 4));
  RatMat dual = dual_basis(a3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(a3.eval(a3.simple(i), dual.row(j)) == (i == j ? 1 : 0));

  // <H_lambda, H_mu> = <lambda, mu>, and evaluation lambda(H_mu) agrees
  for (const auto& lam : a3.positives)
    for (const auto& mu : a3.positives) {
      CHECK(a3.a_inner(coroot(a3, lam), coroot(a3, mu)) == a3.inner(lam, mu));
      CHECK(a3.eval(lam, coroot(a3, mu)) == a3.inner(lam, mu));
    }

  // Killing scale matched to traceless 4x4 realizations: |alpha|^2 = 1/4
  for (const auto& lam : a3.positives)
    if (lam.level() == 1) CHECK(a3.norm2(lam) == rat(1, 4));

  MultiplicityProfile ch2{2, std::nullopt, 1};
  RootSystem bc1 = build_root_system("BC", 1, ch2);
  auto h1 = coroot(bc1, {{1}});
  auto h2 = coroot(bc1, {{2}});
  CHECK(h2 == vec_scale(2, h1));
}

TEST_CASE("delta vector") {
  RootSystem a2 = build_root_system("A", 2, {});
  auto d = delta_vector(a2);
  CHECK(d.coeffs == std::vector<Rat>{1, 1});

  MultiplicityProfile m3;
  m3.short_mult = 3;
  RootSystem a1 = build_root_system("A", 1, m3);
  CHECK(delta_vector(a1).coeffs == std::vector<Rat>{rat(3, 2)});

  MultiplicityProfile ch2{2, std::nullopt, 1};
  RootSystem bc1 = build_root_system("BC", 1, ch2);
  CHECK(delta_vector(bc1).coeffs == std::vector<Rat>{2});

  // 2*delta(xi) = sum over positive roots of mult * lambda(xi)
  RootSystem b3 = build_root_system("B", 3, {2, 5, std::nullopt});
  auto db = delta_vector(b3);
  std::vector<Rat> xi = {rat(1, 3), rat(-2), rat(7, 5)};
  Rat lhs = 0;
  for (int i = 0; i < 3; ++i) lhs += 2 * db.coeffs[i] * xi[i];
  Rat rhs = 0;
  for (size_t k = 0; k < b3.positives.size(); ++k)
    rhs += Rat(b3.mult[k]) * b3.eval(b3.positives[k], xi);
  CHECK(lhs == rhs);
}

TEST_CASE("root strings") {
  RootSystem a2 = build_root_system("A", 2, {});
  CHECK(root_string_length(a2, a2.simple(1), 0) == 2);
  RootSystem a3 = build_root_system("A", 3, {});
  CHECK(root_string_length(a3, a3.simple(2), 0) == 1);
  RootSystem g2 = build_root_system("G2", 2, {1, 1, std::nullopt});
  CHECK(root_string_length(g2, g2.simple(1), 0) == 4);
  CHECK_THROWS_AS(root_string_length(a2, a2.simple(0), 0), std::invalid_argument);
}

TEST_CASE("pairs that are orthogonal and non-adjacent never sum to a root") {
  for (auto [label, rank] : std::vector<std::pair<std::string, int>>{
           {"A", 4}, {"B", 3}, {"BC", 3}, {"G2", 2}, {"D", 4}}) {
    RootSystem rs = build_like(label, rank);
    std::vector<RootVector> all = rs.positives;
    for (const auto& lam : rs.positives) {
      RootVector neg = lam;
      for (int& x : neg.c) x = -x;
      all.push_back(neg);
    }
    for (const auto& lam : all)
      for (const auto& mu : all) {
        RootVector diff = lam, sum = lam;
        for (int i = 0; i < rs.rank; ++i) {
          diff.c[i] -= mu.c[i];
          sum.c[i] += mu.c[i];
        }
        if (!rs.is_root(diff) && rs.inner(lam, mu) == 0 && !all_zero(sum.c))
          CHECK_FALSE(rs.is_root(sum));
      }
  }
}

TEST_CASE("scale changes inner products linearly and nothing else") {
  RootSystem s1 = build_root_system("A", 3, {});
  RootSystem s2 = build_root_system("A", 3, {}, rat(1, 4));
  CHECK(s1.cartan == s2.cartan);
  REQUIRE(s1.positives.size() == s2.positives.size());
  for (size_t k = 0; k < s1.positives.size(); ++k)
    CHECK(s1.positives[k] == s2.positives[k]);
  for (const auto& lam : s1.positives) {
    CHECK(s2.norm2(lam) == s1.norm2(lam) / 4);
  }
  CHECK(is_orthogonal_pair(s1, 0, 2) == is_orthogonal_pair(s2, 0, 2));
}

TEST_CASE("constructor rejects bad input") {
  CHECK_THROWS_AS(build_root_system("B", 1, {1, 1, std::nullopt}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_root_system("D", 3, {}), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system("E6", 5, {}), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system("Z", 2, {}), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system("A", 9, {}), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system("A", 2, {}, rat(0)), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system("A", 2, {}, rat(-1)), std::invalid_argument);
  // profile/class mismatches
  CHECK_THROWS_AS(build_root_system("A", 2, {1, 1, std::nullopt}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_root_system("B", 2, {}), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system("BC", 1, {2, std::nullopt, std::nullopt}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_root_system("A", 2, {0, std::nullopt, std::nullopt}),
                  std::invalid_argument);
}
