// test_linalg.cpp -- exact rational linear algebra kernel.

#include "doctest.h"
#include "hyperfol/linalg.hpp"

using namespace hyperfol;

namespace {

RatMat from_ints(const std::vector<std::vector<long long>>& rows) {
  RatMat m;
  for (const auto& r : rows) {
    std::vector<Rat> rr(r.begin(), r.end());
    m.append_row(rr);
  }
  return m;
}

}  // namespace

TEST_CASE("rational parse/format round trip") {
  CHECK(rat_str(parse_rat("3/4")) == "3/4");
  CHECK(rat_str(parse_rat("-6/8")) == "-3/4");
  CHECK(rat_str(parse_rat("5")) == "5");
  CHECK(parse_rat("2/4") == rat(1, 2));
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("x"), std::invalid_argument);
}

TEST_CASE("rationalize recovers small rationals from doubles") {
  CHECK(rationalize(0.25).value() == rat(1, 4));
  CHECK(rationalize(-2.0 / 3.0).value() == rat(-2, 3));
  CHECK(rationalize(7.0).value() == rat(7));
  CHECK(rationalize(0.0).value() == rat(0));
}

TEST_CASE("rref, rank and nullspace") {
  RatMat m = from_ints({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  CHECK(rank(m) == 2);
  RatMat ns = nullspace(m);
  REQUIRE(ns.rows == 1);
  // check M x = 0 for the basis vector
  auto x = ns.row(0);
  for (int i = 0; i < m.rows; ++i) {
    Rat s = 0;
    for (int j = 0; j < m.cols; ++j) s += m(i, j) * x[j];
    CHECK(s == 0);
  }
}

TEST_CASE("solve consistent and inconsistent systems") {
  RatMat m = from_ints({{2, 1}, {1, 3}});
  auto x = solve(m, {rat(5), rat(10)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == rat(1));
  CHECK((*x)[1] == rat(3));

  RatMat sing = from_ints({{1, 1}, {2, 2}});
  CHECK(solve(sing, {rat(1), rat(3)}) == std::nullopt);
  CHECK(solve(sing, {rat(1), rat(2)}).has_value());
}

TEST_CASE("span membership and span equality") {
  RatMat s = from_ints({{1, 0, 1}, {0, 1, 1}});
  CHECK(in_span(s, {rat(2), rat(3), rat(5)}));
  CHECK_FALSE(in_span(s, {rat(0), rat(0), rat(1)}));
  RatMat s2 = from_ints({{1, 1, 2}, {1, -1, 0}});
  CHECK(same_span(s, s2));
  RatMat s3 = from_ints({{1, 0, 0}});
  CHECK_FALSE(same_span(s, s3));
}

TEST_CASE("orthogonal complement and projection under a Gram form") {
  // Gram form diag(1, 2, 3)
  RatMat g(3, 3);
  g(0, 0) = 1;
  g(1, 1) = 2;
  g(2, 2) = 3;
  RatMat amb = RatMat::identity(3);
  RatMat sub = from_ints({{1, 1, 0}});
  RatMat comp = orth_complement_in(sub, amb, g);
  CHECK(comp.rows == 2);
  for (int i = 0; i < comp.rows; ++i)
    CHECK(bilinear(sub.row(0), g, comp.row(i)) == 0);

  // projection leaves the residual orthogonal to the subspace
  std::vector<Rat> v = {rat(3), rat(-1), rat(4)};
  auto p = project_onto(v, sub, g);
  CHECK(bilinear(vec_sub(v, p), g, sub.row(0)) == 0);
  CHECK(in_span(sub, p));

  // orthogonalize yields a pairwise-orthogonal basis of the same span
  RatMat b = from_ints({{1, 0, 1}, {1, 1, 1}, {0, 1, 1}});
  RatMat ob = orthogonalize(b, g);
  CHECK(same_span(b, ob));
  for (int i = 0; i < ob.rows; ++i)
    for (int j = i + 1; j < ob.rows; ++j)
      CHECK(bilinear(ob.row(i), g, ob.row(j)) == 0);
}
