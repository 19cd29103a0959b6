#pragma once

#include <memory>
#include <mutex>
#include <optional>

#include "tdi/exact.hpp"

namespace tdi {

/// Number of worker threads used by the enumeration loops (dual vertex
/// enumeration, per-cell Hilbert checks). Default 1 for reproducibility.
void set_thread_count(int t);
int thread_count();

/// A cell of a regular subdivision: the tight index set sigma together with
/// a dual witness z satisfying z . a_j = c_j exactly on sigma and
/// z . a_j < c_j off sigma.
struct Cell {
  std::vector<int> indices;  // sorted
  RatVec witness;
};

/// A vertex of the dual polyhedron Q_c = {y : yA <= c}.
struct Vertex {
  RatVec point;
  std::vector<int> tight;  // {j : y . a_j = c_j}, sorted
};

/// The regular subdivision Delta_c(A): the maximal cells induced by the
/// vertices of Q_c, sorted lexicographically by index set.
struct Subdivision {
  IntMatrix a;
  std::vector<Cell> maximal_cells;
};

struct ProblemOptions {
  /// The standing assumption ZA = Z^d. A few diagnostic routines (notably the
  /// brute-force TDI oracle) accept configurations violating it.
  bool require_full_lattice = true;
};

/// The pair LP_{A,c}(b) / DP_{A,c}(b): minimize c.x over Ax = b, x >= 0
/// against maximize y.b over yA <= c. Construction enforces rank(A) = d and
/// Q_c nonempty; copies share the lazily computed dual vertex cache.
class Problem {
 public:
  Problem(IntMatrix a, RatVec c, ProblemOptions opt = {});

  const IntMatrix& matrix() const { return d_->a; }
  const RatVec& cost() const { return d_->c; }
  int dim() const { return d_->a.rows(); }
  int cols() const { return d_->a.cols(); }

 private:
  struct Data {
    IntMatrix a;
    RatVec c;
    mutable std::mutex mu;
    mutable bool have_vertices = false;
    mutable std::vector<Vertex> vertices;
  };
  std::shared_ptr<Data> d_;

  friend const std::vector<Vertex>& dual_vertices(const Problem& p);
};

struct LPResult {
  Rat value;        // gamma_c(b)
  RatVec primal;    // x >= 0 with Ax = b
  RatVec dual;      // vertex y of Q_c with y.b = value
  Cell optimal_cell;  // tight set of the returned dual vertex
};

/// Exact primal optimum and a dual vertex certificate, or nullopt iff
/// b lies outside cone(A). Fast path: two-phase simplex with Bland's rule.
std::optional<LPResult> lp_solve(const Problem& p, const RatVec& b);

/// Reference path: exhaustive enumeration of basic feasible solutions and of
/// the cached dual vertex list. Must agree with lp_solve everywhere.
std::optional<LPResult> lp_solve_reference(const Problem& p, const RatVec& b);

/// The complete deduplicated vertex list of Q_c, sorted by point.
const std::vector<Vertex>& dual_vertices(const Problem& p);

Subdivision regular_subdivision(const Problem& p);

/// True iff every maximal cell of `fine` is contained in some maximal cell
/// of `coarse`. Throws InvalidInput when the two subdivisions do not share
/// the same configuration A.
bool is_refinement(const Subdivision& fine, const Subdivision& coarse);

/// True iff every maximal cell sigma has |sigma| = d and A_sigma of rank d.
bool is_triangulation(const Subdivision& s);

struct UnimodularityResult {
  bool unimodular;
  std::optional<Cell> offending_cell;
  std::optional<Int> offending_det;
};

/// Checks det(A_sigma) = +-1 for every maximal cell; requires a
/// triangulation and reports the first offending cell otherwise.
UnimodularityResult is_unimodular(const Subdivision& s);

/// The inclusion-minimal cell of Delta_c whose cone contains b, derived from
/// the optimal face of the dual program. Throws InvalidInput when b is
/// outside cone(A) or when s does not belong to p.
Cell minimal_cell_containing(const Problem& p, const Subdivision& s, const RatVec& b);

/// max { x_i : Ax = b, x >= 0, c.x = value } via a second exact LP over the
/// optimal face.
Rat max_over_optimal_face(const Problem& p, const RatVec& b, const Rat& value, int i);

// --- low-level pieces shared with other modules ----------------------------

struct LpOutcome {
  enum Status { kOptimal, kInfeasible, kUnbounded };
  Status status = kInfeasible;
  Rat value;
  RatVec x;
  RatVec y;
};

/// Two-phase exact simplex for min c.x, Ax = b, x >= 0. Handles redundant
/// rows; verifies primal/dual feasibility and strong duality exactly before
/// returning an optimum.
LpOutcome simplex_solve(const IntMatrix& a, const RatVec& c, const RatVec& b);

/// Rational feasibility of {x >= 0 : Ax = b}.
bool cone_member(const IntMatrix& a, const RatVec& b);

/// Vertex enumeration of {y : yA <= c} without Problem invariants; used for
/// internal cone triangulations. The polyhedron must be pointed.
std::vector<Vertex> enumerate_dual_vertices(const IntMatrix& a, const RatVec& c);

/// Subdivision of cone(A) induced by weights c (tight sets of the vertices
/// of {y : yA <= c}), without Problem invariants.
Subdivision subdivision_of(const IntMatrix& a, const RatVec& c);

}  // namespace tdi
