#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tdi {

/// Arbitrary-precision integer and rational scalars. No floating point is
/// used anywhere in this library; every computation is exact.
using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

/// Thrown when an input violates an operation's documented preconditions.
class InvalidInput : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an internal invariant fails (a bug, not a user error).
class InternalError : public std::logic_error {
  using std::logic_error::logic_error;
};

/// Thrown for inputs the implementation deliberately refuses to handle
/// (e.g. Hilbert bases of non-pointed cones).
class Unsupported : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Int(0)) {
    if (rows < 0 || cols < 0) throw InvalidInput("matrix dimensions must be nonnegative");
  }

  static IntMatrix identity(int n);
  /// Builds a d x n matrix from n column vectors of length d.
  static IntMatrix from_columns(const std::vector<IntVec>& cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Int& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  IntVec column(int j) const;
  IntVec row(int i) const;
  /// Submatrix A_sigma given by the listed column indices, in the given order.
  IntMatrix columns(const std::vector<int>& idx) const;
  IntMatrix transpose() const;
  IntMatrix mul(const IntMatrix& other) const;
  IntVec mul(const IntVec& x) const;
  RatVec mul(const RatVec& x) const;

  bool operator==(const IntMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && a_ == other.a_;
  }

 private:
  int rows_, cols_;
  std::vector<Int> a_;
};

/// Exact determinant of a square matrix via fraction-free Bareiss elimination.
/// Throws InvalidInput on non-square input.
Int determinant(const IntMatrix& m);

/// Rank over the rationals.
int rank(const IntMatrix& m);

/// True iff the columns of m generate all of Z^d, decided via the Hermite
/// normal form (all pivots equal to 1 and full row rank). Throws InvalidInput
/// when m is row-rank deficient, since that violates the standing rank-d
/// assumption of every caller.
bool spans_full_lattice(const IntMatrix& m);

/// Column-style Hermite normal form H = M * U with U unimodular.
///
/// Canonical form: pivot columns come first with strictly descending pivot
/// rows p_0 < p_1 < ...; each pivot is positive; in a pivot row, entries in
/// later columns are zero and entries in earlier columns are reduced into
/// [0, pivot); zero columns are last.
struct Hnf {
  IntMatrix h;
  IntMatrix u;
};
Hnf hermite_normal_form(const IntMatrix& m);

/// Lattice basis of the integer kernel {x in Z^n : M x = 0}, returned as the
/// columns of an n x k matrix. The basis spans the full (saturated) kernel
/// lattice.
IntMatrix integer_kernel_basis(const IntMatrix& m);

/// Some exact solution of M x = rhs over the rationals (free variables set
/// to zero), or nullopt when the system is inconsistent.
std::optional<RatVec> solve_linear(const IntMatrix& m, const RatVec& rhs);

/// Some exact solution of y M = rhs (row vector form), or nullopt.
std::optional<RatVec> solve_left(const IntMatrix& m, const RatVec& rhs);

// --- small vector helpers -------------------------------------------------

Rat dot(const RatVec& a, const RatVec& b);
Rat dot(const RatVec& a, const IntVec& b);
Int dot(const IntVec& a, const IntVec& b);
bool is_zero(const IntVec& v);
bool is_zero(const RatVec& v);
RatVec to_rat(const IntVec& v);
/// Exact conversion; throws InvalidInput if some entry is not an integer.
IntVec to_int(const RatVec& v);
bool is_integral(const RatVec& v);

/// Parses "p/q" or "p" into a canonical rational (positive denominator,
/// lowest terms). Throws InvalidInput on malformed input or zero denominator.
Rat parse_rat(const std::string& s);
std::string rat_str(const Rat& q);
std::string vec_str(const RatVec& v);
std::string vec_str(const IntVec& v);

}  // namespace tdi
