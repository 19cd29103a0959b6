#pragma once

#include <optional>
#include <variant>

#include "tdi/geometry.hpp"

namespace tdi {

/// A signed improving direction v+ - v- with A v+ = A v- and c.v+ > c.v-,
/// stored with disjoint supports.
struct TestVector {
  IntVec plus;
  IntVec minus;
  bool operator==(const TestVector& o) const { return plus == o.plus && minus == o.minus; }
};

enum class Provenance { kIndependentTau, kWheel };

struct TaggedVector {
  TestVector vec;
  Provenance kind;
  /// tau for independent vectors, kappa for wheels (sorted index sets).
  std::vector<int> support;
  /// Integer optimum beta_tau for independent vectors (empty for wheels).
  IntVec beta;
  /// The cell containing supp(beta); empty for wheels.
  std::vector<int> beta_cell;
};

struct TestSet {
  std::vector<TaggedVector> vectors;
};

struct Wheel {
  std::vector<int> kappa;
};

enum class Verdict { kTdi, kNotTdi };

/// A NOT_TDI witness: an integral right-hand side whose LP optimum is not
/// attained integrally. ip_value is empty when the integer program is
/// infeasible although b lies in cone(A).
struct GapWitness {
  IntVec b;
  Rat lp_value;
  std::optional<Rat> ip_value;
};

/// Machine-checkable verdict with the object that proves it.
struct Certificate {
  Verdict verdict = Verdict::kTdi;
  std::string route;  // "testset" | "cells" | "brute" | "toric"
  std::optional<TestSet> test_set;
  std::optional<GapWitness> gap;
  std::optional<Cell> failing_cell;
  /// Lattice point of the failing cone not reachable by nonnegative integer
  /// combinations (A itself or a cell configuration not a Hilbert basis).
  std::optional<IntVec> hilbert_witness;
};

/// All wheels of (A, c): index sets kappa with A.1_kappa = 0, c.1_kappa > 0
/// and kappa minus any element contained in a cell of s. Gated to n <= 24.
std::vector<Wheel> find_wheels(const Problem& p, const Subdivision& s);

/// The explicit test set T_{A,c}: one vector 1_tau - beta_tau per linearly
/// independent tau not contained in any cell, plus one vector 1_kappa per
/// wheel. Requires A to be a Hilbert basis (throws InvalidInput otherwise).
/// Returns a NOT_TDI certificate when some residual program has no integer
/// optimum.
std::variant<TestSet, Certificate> build_test_set(const Problem& p);

/// Repeatedly subtracts applicable test vectors until none applies.
IntVec augment(const Problem& p, const TestSet& t, IntVec u);
IntVec augment_with(const std::vector<TestVector>& t, IntVec u);

/// Definitional TDI oracle: for every integral b in cone(A) within the box,
/// compare the LP value with the exhaustive IP minimum.
Certificate brute_force_tdi(const Problem& p, const Int& box);

/// Default box for brute_force_tdi: (d+1) * max |A entry|.
Int default_tdi_box(const IntMatrix& a);

/// Hilbert-basis check on A followed by test-set construction
/// (Theorem of equivalences, (i) <=> (iii)).
Certificate tdi_check_via_testset(const Problem& p);

/// Cell-wise Hilbert route: TDI iff every maximal cell of Delta_c is a
/// Hilbert basis ((i) <=> (ii); (ii) already forces A Hilbert).
Certificate tdi_check_via_cells(const Problem& p);

/// Exhaustive integer programming: minimize c.x over Ax = b, x in N^n.
/// Complete within a provably sufficient search box; nullopt when the fiber
/// has no nonnegative integer point.
struct IpOptimum {
  Rat value;
  IntVec x;
};
std::optional<IpOptimum> ip_solve_exhaustive(const IntMatrix& a, const RatVec& c, const IntVec& b,
                                             std::optional<Int> box_override);

/// Finds some nonnegative integer solution of Ax = b, or nullopt (complete).
std::optional<IntVec> find_natural_solution(const IntMatrix& a, const IntVec& b);

/// Re-checks the stored witness of a certificate against the problem.
bool verify_certificate(const Certificate& cert, const Problem& p);

/// Validates the TestVector/TestSet invariants against (A, c): balance,
/// strict cost decrease, disjoint supports, 0-1 positive parts, provenance
/// consistency.
bool validate_test_set(const TestSet& t, const Problem& p);

}  // namespace tdi
