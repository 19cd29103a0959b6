#include <doctest.h>

#include "tdi/exact.hpp"
#include "test_helpers.hpp"

using namespace tdi;
using namespace tdi::testing;

TEST_CASE("determinant on pinned examples") {
  CHECK(determinant(IntMatrix::identity(3)) == 1);
  CHECK(determinant(mat({{1, 0}, {1, 2}})) == 2);
  CHECK(determinant(mat({{2, 3}, {4, 6}})) == 0);
  CHECK(determinant(mat({{0, 1}, {1, 0}})) == -1);
  CHECK_THROWS_AS(determinant(mat({{1, 2, 3}, {4, 5, 6}})), InvalidInput);
}

TEST_CASE("determinant is multiplicative on random small matrices") {
  std::mt19937 rng(test_seed());
  std::uniform_int_distribution<int> entry(-4, 4);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + static_cast<int>(rng() % 4);
    IntMatrix m(n, n), k(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        m.at(i, j) = entry(rng);
        k.at(i, j) = entry(rng);
      }
    CHECK(determinant(m.mul(k)) == determinant(m) * determinant(k));
  }
}

TEST_CASE("rank") {
  CHECK(rank(IntMatrix::identity(3)) == 3);
  CHECK(rank(IntMatrix(2, 3)) == 0);
  CHECK(rank(mat({{1, 0, -1}, {0, 1, -1}})) == 2);  // row reduction by hand
  CHECK(rank(mat({{1, 2}, {2, 4}, {3, 6}})) == 1);
}

namespace {

// Independent oracle: every unit vector is an integer combination of the
// columns, searched over a coefficient box.
bool spans_by_brute_force(const IntMatrix& m, int box) {
  int d = m.rows(), n = m.cols();
  for (int unit = 0; unit < d; ++unit) {
    std::vector<int> x(n, -box);
    bool found = false;
    while (true) {
      IntVec s(d, Int(0));
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < d; ++i) s[i] += Int(x[j]) * m.at(i, j);
      bool ok = true;
      for (int i = 0; i < d; ++i)
        if (s[i] != (i == unit ? 1 : 0)) ok = false;
      if (ok) {
        found = true;
        break;
      }
      int k = 0;
      while (k < n) {
        if (++x[k] <= box) break;
        x[k] = -box;
        ++k;
      }
      if (k == n) break;
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("spans_full_lattice on pinned examples") {
  CHECK(spans_full_lattice(IntMatrix::identity(2)));
  CHECK_FALSE(spans_full_lattice(mat({{2, 0}, {0, 1}})));
  // Any set-packing block [C | -I_d] spans.
  CHECK(spans_full_lattice(mat({{1, -1, 0}, {1, 0, -1}})));
  CHECK_THROWS_AS(spans_full_lattice(mat({{1, 1}, {1, 1}})), InvalidInput);
}

namespace {

// Second independent route: the lattice index of the column span is the gcd
// of all d x d minors; the columns span Z^d iff it is 1.
bool spans_by_minor_gcd(const IntMatrix& m) {
  int d = m.rows(), n = m.cols();
  Int g(0);
  std::vector<int> sel(d);
  std::function<void(int, int)> rec = [&](int start, int pos) {
    if (pos == d) {
      std::vector<int> idx(sel.begin(), sel.end());
      g = gcd(g, determinant(m.columns(idx)));
      return;
    }
    for (int j = start; j <= n - (d - pos); ++j) {
      sel[pos] = j;
      rec(j + 1, pos + 1);
    }
  };
  rec(0, 0);
  return abs(g) == 1;
}

}  // namespace

TEST_CASE("spans_full_lattice agrees with the minor-gcd route") {
  std::mt19937 rng(test_seed() + 1);
  std::uniform_int_distribution<int> entry(-3, 3);
  int checked = 0;
  for (int trial = 0; trial < 600 && checked < 60; ++trial) {
    int d = 1 + static_cast<int>(rng() % 3);
    int n = d + static_cast<int>(rng() % 3);
    IntMatrix m(d, n);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = entry(rng);
    if (rank(m) != d) continue;
    ++checked;
    CHECK(spans_full_lattice(m) == spans_by_minor_gcd(m));
  }
  CHECK(checked >= 40);
}

TEST_CASE("spans_full_lattice agrees with unit-vector brute force on tiny matrices") {
  // On 1x1 and 2x2..2x3 matrices with entries in [-2,2], an integer
  // expression of a unit vector, if any, exists with coefficients within the
  // Borosh-Treybig box for the signed system, which is under 9 here.
  std::mt19937 rng(test_seed() + 7);
  std::uniform_int_distribution<int> entry(-2, 2);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 40; ++trial) {
    int d = 1 + static_cast<int>(rng() % 2);
    int n = d + static_cast<int>(rng() % 2);
    IntMatrix m(d, n);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = entry(rng);
    if (rank(m) != d) continue;
    ++checked;
    CHECK(spans_full_lattice(m) == spans_by_brute_force(m, 9));
  }
  CHECK(checked >= 30);
}

TEST_CASE("hermite normal form: pinned examples") {
  {
    auto f = hermite_normal_form(IntMatrix::identity(3));
    CHECK(f.h == IntMatrix::identity(3));
    CHECK(f.u == IntMatrix::identity(3));
  }
  {
    auto f = hermite_normal_form(mat({{2, 1}}));
    CHECK(f.h.at(0, 0) == 1);  // gcd(2,1) = 1
    CHECK(f.h.at(0, 1) == 0);
  }
  {
    auto f = hermite_normal_form(mat({{2, 0}, {0, 2}}));
    CHECK(f.h.at(0, 0) == 2);
    CHECK(f.h.at(1, 1) == 2);
    CHECK(f.h.at(0, 1) == 0);
    CHECK(f.h.at(1, 0) == 0);
  }
}

TEST_CASE("hermite normal form properties on random matrices") {
  std::mt19937 rng(test_seed() + 2);
  std::uniform_int_distribution<int> entry(-5, 5);
  for (int trial = 0; trial < 80; ++trial) {
    int d = 1 + static_cast<int>(rng() % 4);
    int n = 1 + static_cast<int>(rng() % 5);
    IntMatrix m(d, n);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = entry(rng);
    auto f = hermite_normal_form(m);
    CHECK(m.mul(f.u) == f.h);
    Int du = determinant(f.u);
    CHECK((du == 1 || du == -1));
    // Canonical form: pivot rows strictly descend; in each pivot row, zeros
    // right of the pivot and residues in [0, pivot) left of it.
    int prev_row = -1;
    for (int col = 0; col < n; ++col) {
      int prow = -1;
      for (int i = 0; i < d; ++i)
        if (f.h.at(i, col) != 0) {
          prow = i;
          break;
        }
      if (prow < 0) {
        for (int c2 = col; c2 < n; ++c2)
          for (int i = 0; i < d; ++i) CHECK(f.h.at(i, c2) == 0);
        break;
      }
      CHECK(prow > prev_row);
      prev_row = prow;
      const Int& piv = f.h.at(prow, col);
      CHECK(piv > 0);
      for (int j = col + 1; j < n; ++j) CHECK(f.h.at(prow, j) == 0);
      for (int j = 0; j < col; ++j) {
        CHECK(f.h.at(prow, j) >= 0);
        CHECK(f.h.at(prow, j) < piv);
      }
    }
  }
}

TEST_CASE("integer kernel basis spans the kernel") {
  IntMatrix a = mat({{1, 0, -1}, {0, 1, -1}});
  IntMatrix k = integer_kernel_basis(a);
  CHECK(k.cols() == 1);
  IntVec col = k.column(0);
  CHECK(is_zero(a.mul(col)));
  CHECK(abs(col[0]) == 1);  // primitive (1,1,1) direction
}

TEST_CASE("solve_linear pinned examples") {
  {
    auto x = solve_linear(IntMatrix::identity(2), rvec({3, 5}));
    REQUIRE(x.has_value());
    CHECK(vec_str(*x) == "3 5");
  }
  {
    auto x = solve_linear(mat({{1, 1}, {0, 1}}), rvec({2, 1}));
    REQUIRE(x.has_value());
    CHECK(vec_str(*x) == "1 1");
  }
  {
    // Back-substitution oracle on the lower-triangular system: x0 = 1, then
    // 1 + 2 x1 = 2.
    auto x = solve_linear(mat({{1, 0}, {1, 2}}), rvec({1, 2}));
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == Rat(1, 2));
  }
  {
    auto x = solve_linear(mat({{1, 0}, {1, 2}}), rvec({1, 1}));
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 0);
  }
  CHECK_FALSE(solve_linear(mat({{1, 1}, {1, 1}}), rvec({0, 1})).has_value());
}

TEST_CASE("solve_linear reproduces rhs exactly on random systems") {
  std::mt19937 rng(test_seed() + 3);
  std::uniform_int_distribution<int> entry(-4, 4);
  for (int trial = 0; trial < 60; ++trial) {
    int d = 1 + static_cast<int>(rng() % 3);
    int n = 1 + static_cast<int>(rng() % 4);
    IntMatrix m(d, n);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = entry(rng);
    RatVec rhs(d);
    for (int i = 0; i < d; ++i) {
      rhs[i] = Rat(entry(rng), 1 + static_cast<int>(rng() % 3));
      rhs[i].canonicalize();
    }
    auto x = solve_linear(m, rhs);
    if (!x) continue;
    RatVec back = m.mul(*x);
    for (int i = 0; i < d; ++i) CHECK(back[i] == rhs[i]);
  }
}

TEST_CASE("rational parsing and printing") {
  CHECK(rat_str(parse_rat("3/6")) == "1/2");
  CHECK(rat_str(parse_rat("-4/2")) == "-2");
  CHECK(rat_str(parse_rat("7")) == "7");
  CHECK(parse_rat("-1/3") == Rat(-1, 3));
  CHECK_THROWS_AS(parse_rat("1/0"), InvalidInput);
  CHECK_THROWS_AS(parse_rat("x"), InvalidInput);
  CHECK_THROWS_AS(parse_rat(""), InvalidInput);
}
