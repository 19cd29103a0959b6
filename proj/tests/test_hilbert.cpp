#include <doctest.h>

#include <set>

#include "tdi/hilbert.hpp"
#include "test_helpers.hpp"

using namespace tdi;
using namespace tdi::testing;

namespace {

std::set<IntVec> as_set(const std::vector<IntVec>& v) { return {v.begin(), v.end()}; }

// Independent membership oracle: bounded coefficient enumeration.
bool member_brute(const IntMatrix& b, const IntVec& h, int box) {
  int n = b.cols(), d = b.rows();
  std::vector<int> x(n, 0);
  while (true) {
    IntVec s(d, Int(0));
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < d; ++i) s[i] += Int(x[j]) * b.at(i, j);
    if (s == h) return true;
    int k = 0;
    while (k < n) {
      if (++x[k] <= box) break;
      x[k] = 0;
      ++k;
    }
    if (k == n) break;
  }
  return false;
}

}  // namespace

TEST_CASE("pointedness") {
  CHECK(cone_is_pointed(mat({{1, 1}, {0, 2}})));
  CHECK_FALSE(cone_is_pointed(mat({{1, 0, -1}, {0, 1, -1}})));
  CHECK_FALSE(cone_is_pointed(mat({{1, -1}})));
}

TEST_CASE("hilbert_basis on pinned examples") {
  CHECK(as_set(hilbert_basis({IntMatrix::identity(2)})) == as_set({ivec({1, 0}), ivec({0, 1})}));
  // Parallelepiped of det 2 contributes (1,1).
  CHECK(as_set(hilbert_basis({mat({{1, 1}, {0, 2}})})) ==
        as_set({ivec({1, 0}), ivec({1, 1}), ivec({1, 2})}));
  // Already a Hilbert basis: same set back.
  CHECK(as_set(hilbert_basis({mat({{1, 1, 1}, {0, 1, 2}})})) ==
        as_set({ivec({1, 0}), ivec({1, 1}), ivec({1, 2})}));
  CHECK_THROWS_AS(hilbert_basis({mat({{1, 0, -1}, {0, 1, -1}})}), Unsupported);
  CHECK_THROWS_AS(hilbert_basis({IntMatrix(2, 1)}), InvalidInput);  // zero generator
}

TEST_CASE("hilbert_basis of a ray uses the ambient lattice") {
  auto hb = hilbert_basis({mat({{2}, {0}})});
  CHECK(as_set(hb) == as_set({ivec({1, 0})}));
}

TEST_CASE("is_hilbert_basis pinned examples") {
  {
    auto v = is_hilbert_basis({mat({{1, 1}, {0, 2}})});
    CHECK_FALSE(v.is_basis);
    REQUIRE(v.witness.has_value());
    CHECK(*v.witness == ivec({1, 1}));
    CHECK(cone_member(mat({{1, 1}, {0, 2}}), rvec({1, 1})));
    CHECK_FALSE(member_brute(mat({{1, 1}, {0, 2}}), *v.witness, 6));
  }
  {
    // K2 set packing matrix contains -I: every cone point is reachable.
    auto v = is_hilbert_basis({mat({{1, -1, 0}, {1, 0, -1}})});
    CHECK(v.is_basis);
  }
  {
    // Wheel configuration: non-pointed, tested over the lineality generators.
    auto v = is_hilbert_basis({mat({{1, 0, -1}, {0, 1, -1}})});
    CHECK(v.is_basis);
  }
  {
    // Non-pointed and not a Hilbert basis: the line lattice contains (1,1)
    // but NB only reaches even multiples.
    auto v = is_hilbert_basis({mat({{2, -2}, {2, -2}})});
    CHECK_FALSE(v.is_basis);
    REQUIRE(v.witness.has_value());
    CHECK_FALSE(member_brute(mat({{2, -2}, {2, -2}}), *v.witness, 8));
  }
}

TEST_CASE("in_natural_span membership decisions") {
  IntMatrix b = mat({{1, 1}, {0, 2}});
  CHECK(in_natural_span(b, ivec({2, 2})));        // (1,0)+(1,2)
  CHECK_FALSE(in_natural_span(b, ivec({1, 1})));  // interior parallelepiped point
  CHECK(in_natural_span(b, ivec({0, 0})));
  CHECK_FALSE(in_natural_span(b, ivec({-1, 0})));  // outside the cone
  // Non-pointed: membership across the lineality space.
  IntMatrix w = mat({{1, 0, -1}, {0, 1, -1}});
  CHECK(in_natural_span(w, ivec({-2, -3})));
}

TEST_CASE("hilbert basis minimality: no element reducible by another") {
  std::mt19937 rng(test_seed() + 20);
  std::uniform_int_distribution<int> entry(0, 3);
  int done = 0;
  for (int trial = 0; trial < 200 && done < 25; ++trial) {
    int d = 2, n = 2 + static_cast<int>(rng() % 2);
    IntMatrix m(d, n);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = entry(rng);
    bool zero_col = false;
    for (int j = 0; j < n; ++j)
      if (is_zero(m.column(j))) zero_col = true;
    if (zero_col || !cone_is_pointed(m)) continue;
    ++done;
    auto hb = hilbert_basis({m});
    for (size_t i = 0; i < hb.size(); ++i)
      for (size_t j = 0; j < hb.size(); ++j) {
        if (i == j) continue;
        IntVec diff(hb[i].size());
        for (size_t t = 0; t < diff.size(); ++t) diff[t] = hb[i][t] - hb[j][t];
        CHECK_FALSE(cone_member(m, to_rat(diff)));
      }
  }
  CHECK(done >= 15);
}

TEST_CASE("cells_are_hilbert") {
  {
    Problem tri(mat({{1, 0, -1}, {0, 1, -1}}), rvec({1, 1, 1}));
    auto res = cells_are_hilbert(tri, regular_subdivision(tri));
    CHECK(res.all_hilbert);
  }
  {
    Problem p(mat({{1, 0, 1}, {0, 1, 1}}), rvec({1, 1, 1}));
    auto res = cells_are_hilbert(p, regular_subdivision(p));
    CHECK(res.all_hilbert);
  }
  {
    // A single maximal cell of determinant 2 fails with the interior witness.
    ProblemOptions loose;
    loose.require_full_lattice = false;
    Problem p(mat({{1, 1}, {0, 2}}), rvec({0, 0}), loose);
    auto res = cells_are_hilbert(p, regular_subdivision(p));
    CHECK_FALSE(res.all_hilbert);
    REQUIRE(res.failing_cell.has_value());
    CHECK(res.failing_cell->indices == std::vector<int>{0, 1});
    REQUIRE(res.witness.has_value());
    CHECK(*res.witness == ivec({1, 1}));
  }
}

TEST_CASE("unimodular simplicial configurations are Hilbert (Cramer)") {
  std::mt19937 rng(test_seed() + 21);
  std::uniform_int_distribution<int> entry(-2, 2);
  int done = 0;
  for (int trial = 0; trial < 300 && done < 30; ++trial) {
    int d = 2 + static_cast<int>(rng() % 2);
    IntMatrix m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m.at(i, j) = entry(rng);
    Int det = determinant(m);
    if (det != 1 && det != -1) continue;
    bool zero_col = false;
    for (int j = 0; j < d; ++j)
      if (is_zero(m.column(j))) zero_col = true;
    if (zero_col) continue;
    ++done;
    CHECK(is_hilbert_basis({m}).is_basis);
  }
  CHECK(done >= 20);
}
