// rootsys.cpp -- construction and queries of restricted root systems.

#include "hyperfol/rootsys.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hyperfol::rootsys {

namespace {

struct TypeData {
  std::vector<std::vector<int>> cartan;
  std::vector<Rat> norm2;  // squared lengths of simple roots, short = 1
};

// Cartan matrices and simple-root lengths per type.  Convention:
// cartan[i][j] = 2<a_i,a_j>/<a_j,a_j>; lengths normalized so the shortest
// root of the whole system has squared length 1 (for BC that shortest root
// is the last simple root; its double then has squared length 4).
TypeData type_data(const std::string& label, int r) {
  auto chain = [&](int n) {
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
      a[i][i] = 2;
      if (i + 1 < n) a[i][i + 1] = a[i + 1][i] = -1;
    }
    return a;
  };
  auto bad = [&]() {
    throw std::invalid_argument("invalid root system type/rank: " + label +
                                " rank " + std::to_string(r));
  };
  if (r < 1 || r > 8) bad();
  TypeData t;
  if (label == "A") {
    t.cartan = chain(r);
    t.norm2.assign(r, 1);
  } else if (label == "B" || label == "BC") {
    if (r < 2 && label == "B") bad();
    t.cartan = chain(r);
    if (r >= 2) {
      t.cartan[r - 2][r - 1] = -2;  // long -> short
      t.cartan[r - 1][r - 2] = -1;
    }
    t.norm2.assign(r, 2);
    t.norm2[r - 1] = 1;
    if (r == 1) t.norm2[0] = 1;  // BC1: single short simple root
  } else if (label == "C") {
    if (r < 2) bad();
    t.cartan = chain(r);
    t.cartan[r - 2][r - 1] = -1;
    t.cartan[r - 1][r - 2] = -2;  // long row, short column
    t.norm2.assign(r, 1);
    t.norm2[r - 1] = 2;
  } else if (label == "D") {
    if (r < 4) bad();
    t.cartan = chain(r - 1);
    for (auto& row : t.cartan) row.push_back(0);
    t.cartan.push_back(std::vector<int>(r, 0));
    t.cartan[r - 1][r - 1] = 2;
    t.cartan[r - 3][r - 1] = t.cartan[r - 1][r - 3] = -1;
    t.norm2.assign(r, 1);
  } else if (label == "G2") {
    if (r != 2) bad();
    t.cartan = {{2, -1}, {-3, 2}};  // first root short
    t.norm2 = {1, 3};
  } else if (label == "F4") {
    if (r != 4) bad();
    t.cartan = {{2, -1, 0, 0}, {-1, 2, -2, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}};
    t.norm2 = {2, 2, 1, 1};
  } else if (label == "E6" || label == "E7" || label == "E8") {
    int n = label[1] - '0';
    if (r != n) bad();
    t.cartan.assign(r, std::vector<int>(r, 0));
    for (int i = 0; i < r; ++i) t.cartan[i][i] = 2;
    // Bourbaki numbering: the branch node alpha_4 carries alpha_2.
    std::vector<std::pair<int, int>> edges = {{0, 2}, {2, 3}, {3, 4}, {4, 5},
                                              {1, 3}};
    if (n >= 7) edges.push_back({5, 6});
    if (n == 8) edges.push_back({6, 7});
    for (auto [i, j] : edges) t.cartan[i][j] = t.cartan[j][i] = -1;
    t.norm2.assign(r, 1);
  } else {
    bad();
  }
  return t;
}

RatMat gram_from(const TypeData& t, const Rat& scale) {
  int r = static_cast<int>(t.norm2.size());
  RatMat g(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      g(i, j) = scale * Rat(t.cartan[i][j]) * t.norm2[j] / 2;
    }
  // cartan[i][j]*n2[j] must be symmetric or the type data is inconsistent
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (g(i, j) != g(j, i)) throw std::logic_error("asymmetric Gram data");
  return g;
}

RatMat invert(const RatMat& m) {
  int n = m.rows;
  RatMat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  if (static_cast<int>(rref(aug).size()) != n)
    throw std::invalid_argument("singular matrix");
  RatMat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

// Positive roots of the reduced system by level-wise closure: for a root
// lambda and simple alpha, the alpha-string lambda - p*alpha ... lambda +
// q*alpha satisfies p - q = 2<lambda,alpha>/<alpha,alpha>, so lambda + alpha
// is a root exactly when p exceeds that Cartan integer.
std::vector<RootVector> enumerate_reduced(const TypeData& t) {
  int r = static_cast<int>(t.cartan.size());
  std::set<std::vector<int>> seen;
  std::vector<RootVector> level_now, all;
  for (int i = 0; i < r; ++i) {
    std::vector<int> c(r, 0);
    c[i] = 1;
    seen.insert(c);
    level_now.push_back({c});
    all.push_back({c});
  }
  while (!level_now.empty()) {
    std::vector<RootVector> next;
    for (const auto& lam : level_now) {
      for (int j = 0; j < r; ++j) {
        std::vector<int> aj(r, 0);
        aj[j] = 1;
        if (lam.c == aj) continue;  // no doubled roots in a reduced system
        int cartan_int = 0;
        for (int i = 0; i < r; ++i) cartan_int += lam.c[i] * t.cartan[i][j];
        int p = 0;
        std::vector<int> down = lam.c;
        while (true) {
          --down[j];
          if (std::any_of(down.begin(), down.end(), [](int x) { return x < 0; }))
            break;
          if (!seen.count(down)) break;
          ++p;
        }
        if (p - cartan_int > 0) {
          std::vector<int> up = lam.c;
          ++up[j];
          if (seen.insert(up).second) {
            next.push_back({up});
            all.push_back({up});
          }
        }
      }
    }
    level_now = std::move(next);
  }
  return all;
}

}  // namespace

bool RootSystem::is_positive_root(const RootVector& v) const {
  return positive_index(v) >= 0;
}

bool RootSystem::is_root(const RootVector& v) const {
  if (is_positive_root(v)) return true;
  RootVector neg = v;
  for (int& x : neg.c) x = -x;
  return is_positive_root(neg);
}

int RootSystem::positive_index(const RootVector& v) const {
  if (static_cast<int>(v.c.size()) != rank) return -1;
  auto it = std::lower_bound(positives.begin(), positives.end(), v);
  if (it != positives.end() && *it == v)
    return static_cast<int>(it - positives.begin());
  return -1;
}

int RootSystem::multiplicity(const RootVector& v) const {
  RootVector w = v;
  if (w.level() < 0)
    for (int& x : w.c) x = -x;
  int i = positive_index(w);
  if (i < 0) throw std::invalid_argument("multiplicity: not a root");
  return mult[i];
}

bool RootSystem::is_reduced(const RootVector& v) const {
  RootVector d = v;
  for (int& x : d.c) x *= 2;
  return !is_root(d);
}

bool RootSystem::has_double(const RootVector& v) const { return !is_reduced(v); }

int RootSystem::dim_n() const {
  int s = 0;
  for (int m : mult) s += m;
  return s;
}

Rat RootSystem::inner(const RootVector& lam, const RootVector& mu) const {
  bool lz = std::all_of(lam.c.begin(), lam.c.end(), [](int x) { return x == 0; });
  bool mz = std::all_of(mu.c.begin(), mu.c.end(), [](int x) { return x == 0; });
  if ((!lz && !is_root(lam)) || (!mz && !is_root(mu)))
    throw std::invalid_argument("inner product arguments must be roots or 0");
  Rat s = 0;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      if (lam.c[i] != 0 && mu.c[j] != 0) s += Rat(lam.c[i]) * gram(i, j) * mu.c[j];
  return s;
}

Rat RootSystem::a_inner(const std::vector<Rat>& x,
                        const std::vector<Rat>& y) const {
  return bilinear(x, gram_inv, y);
}

Rat RootSystem::eval(const RootVector& lam, const std::vector<Rat>& h) const {
  Rat s = 0;
  for (int i = 0; i < rank; ++i)
    if (lam.c[i] != 0) s += Rat(lam.c[i]) * h[i];
  return s;
}

std::vector<Rat> RootSystem::coroot(const RootVector& lam) const {
  // H_lambda = G * c in dual coordinates: then <H_lambda, H> = c^T G^-1 ...
  // evaluates to lambda(H) for every H, and <H_lambda,H_mu> = <lambda,mu>.
  std::vector<Rat> c(rank);
  for (int i = 0; i < rank; ++i) c[i] = lam.c[i];
  return mat_vec(gram, c);
}

RootVector RootSystem::simple(int i) const {
  if (i < 0 || i >= rank) throw std::invalid_argument("simple root index");
  std::vector<int> c(rank, 0);
  c[i] = 1;
  return {c};
}

RootSystem build_root_system(const std::string& type_label, int rank,
                             const MultiplicityProfile& mults,
                             const Rat& scale) {
  if (scale <= 0) throw std::invalid_argument("scale must be positive");
  TypeData t = type_data(type_label, rank);

  RootSystem rs;
  rs.type_label = type_label;
  rs.rank = rank;
  rs.scale = scale;
  rs.cartan = t.cartan;
  rs.gram = gram_from(t, scale);
  rs.gram_inv = invert(rs.gram);

  rs.positives = enumerate_reduced(t);
  if (type_label == "BC") {
    // Non-reduced family: the doubles of the shortest-length roots are roots.
    RatMat g1 = gram_from(t, 1);
    std::vector<RootVector> doubles;
    for (const auto& lam : rs.positives) {
      Rat n2 = 0;
      for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j)
          n2 += Rat(lam.c[i]) * g1(i, j) * lam.c[j];
      if (n2 == 1) {
        RootVector d = lam;
        for (int& x : d.c) x *= 2;
        doubles.push_back(d);
      }
    }
    rs.positives.insert(rs.positives.end(), doubles.begin(), doubles.end());
  }
  std::sort(rs.positives.begin(), rs.positives.end());

  // Multiplicities per length class.  Classes present in the system must be
  // covered by the profile and vice versa (constancy on Weyl orbits).
  std::set<Rat> lengths;
  std::vector<bool> doubled(rs.positives.size(), false);
  for (size_t k = 0; k < rs.positives.size(); ++k) {
    const auto& lam = rs.positives[k];
    bool half_is_root = false;
    if (std::all_of(lam.c.begin(), lam.c.end(), [](int x) { return x % 2 == 0; })) {
      RootVector h = lam;
      for (int& x : h.c) x /= 2;
      half_is_root =
          std::binary_search(rs.positives.begin(), rs.positives.end(), h);
    }
    doubled[k] = half_is_root;
    if (!half_is_root) lengths.insert(rs.inner(lam, lam));
  }
  bool has_two_lengths = lengths.size() == 2;
  bool has_doubles = std::any_of(doubled.begin(), doubled.end(), [](bool b) { return b; });
  if (lengths.size() > 2) throw std::logic_error("more than two reduced lengths");
  if (mults.short_mult < 1 || (mults.long_mult && *mults.long_mult < 1) ||
      (mults.doubled_mult && *mults.doubled_mult < 1))
    throw std::invalid_argument("multiplicities must be positive");
  if (has_two_lengths != mults.long_mult.has_value())
    throw std::invalid_argument(
        has_two_lengths ? "profile misses the long-root multiplicity"
                        : "profile has a long-root multiplicity but all "
                          "reduced roots share one Weyl orbit");
  if (has_doubles != mults.doubled_mult.has_value())
    throw std::invalid_argument(
        has_doubles ? "profile misses the doubled-root multiplicity"
                    : "doubled-root multiplicity given for a reduced system");

  Rat short2 = *lengths.begin();
  rs.mult.resize(rs.positives.size());
  for (size_t k = 0; k < rs.positives.size(); ++k) {
    if (doubled[k])
      rs.mult[k] = *mults.doubled_mult;
    else if (rs.inner(rs.positives[k], rs.positives[k]) == short2)
      rs.mult[k] = mults.short_mult;
    else
      rs.mult[k] = *mults.long_mult;
  }
  return rs;
}

int level(const RootSystem& rs, const RootVector& lam) {
  if (!rs.is_root(lam)) throw std::invalid_argument("level: not a root");
  return lam.level();
}

RootVector highest_root(const RootSystem& rs) {
  const RootVector& top = rs.positives.back();
  // sanity: top dominates every positive root coefficientwise
  for (const auto& lam : rs.positives)
    for (int i = 0; i < rs.rank; ++i)
      if (lam.c[i] > top.c[i]) throw std::logic_error("highest root not unique");
  return top;
}

Rat inner_product(const RootSystem& rs, const RootVector& lam,
                  const RootVector& mu) {
  return rs.inner(lam, mu);
}

bool is_orthogonal_pair(const RootSystem& rs, int i, int j) {
  return rs.gram(i, j) == 0;
}

std::vector<Rat> coroot(const RootSystem& rs, const RootVector& lam) {
  if (!rs.is_root(lam)) throw std::invalid_argument("coroot: not a root");
  return rs.coroot(lam);
}

RatMat dual_basis(const RootSystem& rs) { return RatMat::identity(rs.rank); }

DeltaVector delta_vector(const RootSystem& rs) {
  DeltaVector d;
  d.coeffs.assign(rs.rank, 0);
  for (size_t k = 0; k < rs.positives.size(); ++k)
    for (int i = 0; i < rs.rank; ++i)
      d.coeffs[i] += Rat(rs.mult[k] * rs.positives[k].c[i]) / 2;
  d.h_delta = mat_vec(rs.gram, d.coeffs);
  return d;
}

int root_string_length(const RootSystem& rs, const RootVector& lam,
                       int alpha_index) {
  RootVector alpha = rs.simple(alpha_index);
  RootVector twice = alpha;
  for (int& x : twice.c) x *= 2;
  if (lam == alpha || lam == twice)
    throw std::invalid_argument("string through alpha undefined for alpha, 2*alpha");
  if (!rs.is_positive_root(lam))
    throw std::invalid_argument("string: not a positive root");
  int count = 0;
  for (int m = -8; m <= 8; ++m) {
    RootVector v = lam;
    v.c[alpha_index] += m;
    if (rs.is_root(v)) ++count;
  }
  return count;
}

}  // namespace hyperfol::rootsys
