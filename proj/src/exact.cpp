#include "tdi/exact.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace tdi {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVec>& cols) {
  if (cols.empty()) throw InvalidInput("from_columns: no columns");
  int d = static_cast<int>(cols[0].size());
  IntMatrix m(d, static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols(); ++j) {
    if (static_cast<int>(cols[j].size()) != d)
      throw InvalidInput("from_columns: ragged column lengths");
    for (int i = 0; i < d; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

IntVec IntMatrix::column(int j) const {
  IntVec v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

IntVec IntMatrix::row(int i) const {
  IntVec v(cols_);
  for (int j = 0; j < cols_; ++j) v[j] = at(i, j);
  return v;
}

IntMatrix IntMatrix::columns(const std::vector<int>& idx) const {
  IntMatrix m(rows_, static_cast<int>(idx.size()));
  for (int j = 0; j < m.cols(); ++j) {
    int src = idx[j];
    if (src < 0 || src >= cols_) throw InvalidInput("column index out of range");
    for (int i = 0; i < rows_; ++i) m.at(i, j) = at(i, src);
  }
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

IntMatrix IntMatrix::mul(const IntMatrix& other) const {
  if (cols_ != other.rows_) throw InvalidInput("matrix product dimension mismatch");
  IntMatrix m(rows_, other.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      if (at(i, k) == 0) continue;
      for (int j = 0; j < other.cols_; ++j) m.at(i, j) += at(i, k) * other.at(k, j);
    }
  return m;
}

IntVec IntMatrix::mul(const IntVec& x) const {
  if (static_cast<int>(x.size()) != cols_) throw InvalidInput("matrix-vector dimension mismatch");
  IntVec y(rows_, Int(0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (x[j] != 0) y[i] += at(i, j) * x[j];
  return y;
}

RatVec IntMatrix::mul(const RatVec& x) const {
  if (static_cast<int>(x.size()) != cols_) throw InvalidInput("matrix-vector dimension mismatch");
  RatVec y(rows_, Rat(0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (x[j] != 0) y[i] += Rat(at(i, j)) * x[j];
  return y;
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("determinant: non-square input");
  int n = m.rows();
  if (n == 0) return 1;
  IntMatrix w = m;
  Int prev(1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    int piv = -1;
    for (int r = k; r < n; ++r)
      if (w.at(r, k) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(piv, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Int num = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
        mpz_divexact(w.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      w.at(i, k) = 0;
    }
    prev = w.at(k, k);
  }
  return sign < 0 ? Int(-w.at(n - 1, n - 1)) : w.at(n - 1, n - 1);
}

int rank(const IntMatrix& m) {
  int rows = m.rows(), cols = m.cols();
  std::vector<RatVec> w(rows, RatVec(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) w[i][j] = Rat(m.at(i, j));
  int r = 0;
  for (int col = 0; col < cols && r < rows; ++col) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (w[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(w[piv], w[r]);
    for (int i = r + 1; i < rows; ++i) {
      if (w[i][col] == 0) continue;
      Rat f = w[i][col] / w[r][col];
      for (int j = col; j < cols; ++j) w[i][j] -= f * w[r][j];
    }
    ++r;
  }
  return r;
}

Hnf hermite_normal_form(const IntMatrix& m) {
  int d = m.rows(), n = m.cols();
  Hnf res{m, IntMatrix::identity(n)};
  IntMatrix& h = res.h;
  IntMatrix& u = res.u;

  auto col_addmul = [&](int dst, int src, const Int& q) {
    if (q == 0) return;
    for (int i = 0; i < d; ++i) h.at(i, dst) -= q * h.at(i, src);
    for (int i = 0; i < n; ++i) u.at(i, dst) -= q * u.at(i, src);
  };
  auto col_swap = [&](int a, int b) {
    if (a == b) return;
    for (int i = 0; i < d; ++i) std::swap(h.at(i, a), h.at(i, b));
    for (int i = 0; i < n; ++i) std::swap(u.at(i, a), u.at(i, b));
  };
  auto col_negate = [&](int c) {
    for (int i = 0; i < d; ++i) h.at(i, c) = -h.at(i, c);
    for (int i = 0; i < n; ++i) u.at(i, c) = -u.at(i, c);
  };

  int t = 0;  // next pivot column
  for (int i = 0; i < d && t < n; ++i) {
    // Euclidean phase on row i over columns t..n-1 until one nonzero remains.
    while (true) {
      int best = -1;
      for (int j = t; j < n; ++j) {
        if (h.at(i, j) == 0) continue;
        if (best < 0 || cmp(abs(h.at(i, j)), abs(h.at(i, best))) < 0) best = j;
      }
      if (best < 0) break;
      bool others = false;
      for (int j = t; j < n; ++j) {
        if (j == best || h.at(i, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), h.at(i, j).get_mpz_t(), h.at(i, best).get_mpz_t());
        col_addmul(j, best, q);
        if (h.at(i, j) != 0) others = true;
      }
      if (!others) {
        col_swap(t, best);
        break;
      }
    }
    if (h.at(i, t) == 0) continue;
    if (h.at(i, t) < 0) col_negate(t);
    // Reduce earlier columns in this pivot row into [0, pivot).
    for (int j = 0; j < t; ++j) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h.at(i, j).get_mpz_t(), h.at(i, t).get_mpz_t());
      col_addmul(j, t, q);
    }
    ++t;
  }
  return res;
}

IntMatrix integer_kernel_basis(const IntMatrix& m) {
  Hnf f = hermite_normal_form(m);
  std::vector<int> zero_cols;
  for (int j = 0; j < m.cols(); ++j) {
    bool zero = true;
    for (int i = 0; i < m.rows(); ++i)
      if (f.h.at(i, j) != 0) {
        zero = false;
        break;
      }
    if (zero) zero_cols.push_back(j);
  }
  return f.u.columns(zero_cols);
}

bool spans_full_lattice(const IntMatrix& m) {
  Hnf f = hermite_normal_form(m);
  int d = m.rows();
  // Locate pivots; full row rank is required.
  int pivots = 0;
  Int prod(1);
  for (int j = 0; j < m.cols(); ++j) {
    int i = 0;
    while (i < d && f.h.at(i, j) == 0) ++i;
    if (i == d) break;
    prod *= f.h.at(i, j);
    ++pivots;
  }
  if (pivots < d)
    throw InvalidInput("spans_full_lattice: rank-deficient input violates the rank-d assumption");
  return prod == 1;
}

namespace {

// Rational Gaussian elimination on [M | rhs]; returns particular solution.
std::optional<RatVec> gauss_solve(const IntMatrix& m, const RatVec& rhs) {
  int rows = m.rows(), cols = m.cols();
  if (static_cast<int>(rhs.size()) != rows) throw InvalidInput("solve_linear: rhs length mismatch");
  std::vector<RatVec> w(rows, RatVec(cols + 1));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) w[i][j] = Rat(m.at(i, j));
    w[i][cols] = rhs[i];
  }
  std::vector<int> pivot_col;
  int r = 0;
  for (int col = 0; col < cols && r < rows; ++col) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (w[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(w[piv], w[r]);
    for (int i = 0; i < rows; ++i) {
      if (i == r || w[i][col] == 0) continue;
      Rat f = w[i][col] / w[r][col];
      for (int j = col; j <= cols; ++j) w[i][j] -= f * w[r][j];
    }
    pivot_col.push_back(col);
    ++r;
  }
  for (int i = r; i < rows; ++i)
    if (w[i][cols] != 0) return std::nullopt;
  RatVec x(cols, Rat(0));
  for (int k = 0; k < r; ++k) x[pivot_col[k]] = w[k][cols] / w[k][pivot_col[k]];
  return x;
}

}  // namespace

std::optional<RatVec> solve_linear(const IntMatrix& m, const RatVec& rhs) {
  return gauss_solve(m, rhs);
}

std::optional<RatVec> solve_left(const IntMatrix& m, const RatVec& rhs) {
  return gauss_solve(m.transpose(), rhs);
}

Rat dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw InvalidInput("dot: length mismatch");
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

Rat dot(const RatVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw InvalidInput("dot: length mismatch");
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * Rat(b[i]);
  return s;
}

Int dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw InvalidInput("dot: length mismatch");
  Int s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const IntVec& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

bool is_zero(const RatVec& v) {
  for (const Rat& x : v)
    if (x != 0) return false;
  return true;
}

RatVec to_rat(const IntVec& v) {
  RatVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

IntVec to_int(const RatVec& v) {
  IntVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i].get_den() != 1) throw InvalidInput("to_int: entry is not an integer");
    r[i] = v[i].get_num();
  }
  return r;
}

bool is_integral(const RatVec& v) {
  for (const Rat& x : v)
    if (x.get_den() != 1) return false;
  return true;
}

Rat parse_rat(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw InvalidInput("parse_rat: empty token");
  size_t slash = t.find('/');
  try {
    if (slash == std::string::npos) {
      Int n(t);
      return Rat(n);
    }
    Int num(t.substr(0, slash));
    Int den(t.substr(slash + 1));
    if (den == 0) throw InvalidInput("parse_rat: zero denominator");
    Rat q;
    q.get_num() = num;
    q.get_den() = den;
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw InvalidInput("parse_rat: malformed rational '" + s + "'");
  }
}

std::string rat_str(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string vec_str(const RatVec& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += rat_str(v[i]);
  }
  return s;
}

std::string vec_str(const IntVec& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += v[i].get_str();
  }
  return s;
}

}  // namespace tdi
