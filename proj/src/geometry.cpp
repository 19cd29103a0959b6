#include "tdi/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace tdi {

namespace {
int g_threads = 1;
}

void set_thread_count(int t) { g_threads = std::max(1, t); }
int thread_count() { return g_threads; }

// ---------------------------------------------------------------------------
// Exact two-phase simplex (Bland's rule).
// ---------------------------------------------------------------------------

namespace {

class Tableau {
 public:
  Tableau(const IntMatrix& a, const RatVec& c, const RatVec& b)
      : d_(a.rows()), n_(a.cols()), t_(a.rows() + 1, RatVec(a.cols() + a.rows() + 1, Rat(0))) {
    sign_.assign(d_, 1);
    for (int i = 0; i < d_; ++i) {
      int s = sgn(b[i]) < 0 ? -1 : 1;
      sign_[i] = s;
      for (int j = 0; j < n_; ++j) t_[i][j] = Rat(a.at(i, j)) * s;
      t_[i][n_ + i] = 1;
      t_[i][rhs()] = b[i] * s;
    }
    basis_.resize(d_);
    for (int i = 0; i < d_; ++i) basis_[i] = n_ + i;
  }

  LpOutcome solve(const RatVec& c) {
    // Phase 1: minimize the sum of artificials.
    RatVec phase1(n_ + d_, Rat(0));
    for (int i = 0; i < d_; ++i) phase1[n_ + i] = 1;
    install_costs(phase1);
    run(n_ + d_);
    if (t_[d_][rhs()] != 0) return LpOutcome{LpOutcome::kInfeasible, Rat(0), {}, {}};
    drive_out_artificials();

    // Phase 2: the real objective; artificials barred from entering.
    RatVec phase2(n_ + d_, Rat(0));
    for (int j = 0; j < n_; ++j) phase2[j] = c[j];
    install_costs(phase2);
    if (!run(n_)) return LpOutcome{LpOutcome::kUnbounded, Rat(0), {}, {}};

    LpOutcome out;
    out.status = LpOutcome::kOptimal;
    out.x.assign(n_, Rat(0));
    for (int i = 0; i < d_; ++i)
      if (basis_[i] < n_) out.x[basis_[i]] = t_[i][rhs()];
    out.y.assign(d_, Rat(0));
    for (int i = 0; i < d_; ++i) out.y[i] = -t_[d_][n_ + i] * sign_[i];
    out.value = 0;
    for (int j = 0; j < n_; ++j)
      if (out.x[j] != 0) out.value += c[j] * out.x[j];
    return out;
  }

 private:
  int rhs() const { return n_ + d_; }

  void install_costs(const RatVec& cost) {
    for (int j = 0; j < n_ + d_; ++j) t_[d_][j] = cost[j];
    t_[d_][rhs()] = 0;
    for (int i = 0; i < d_; ++i) {
      const Rat& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (int j = 0; j <= rhs(); ++j)
        if (t_[i][j] != 0) t_[d_][j] -= cb * t_[i][j];
    }
  }

  void pivot(int row, int col) {
    Rat p = t_[row][col];
    for (int j = 0; j <= rhs(); ++j) t_[row][j] /= p;
    for (int i = 0; i <= d_; ++i) {
      if (i == row || t_[i][col] == 0) continue;
      Rat f = t_[i][col];
      for (int j = 0; j <= rhs(); ++j)
        if (t_[row][j] != 0) t_[i][j] -= f * t_[row][j];
    }
    basis_[row] = col;
  }

  /// Runs Bland-rule iterations with entering columns restricted to
  /// [0, allowed). Returns false when the objective is unbounded below.
  bool run(int allowed) {
    while (true) {
      int enter = -1;
      for (int j = 0; j < allowed; ++j)
        if (t_[d_][j] < 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      Rat best;
      for (int i = 0; i < d_; ++i) {
        if (t_[i][enter] <= 0) continue;
        Rat ratio = t_[i][rhs()] / t_[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void drive_out_artificials() {
    for (int i = 0; i < d_; ++i) {
      if (basis_[i] < n_) continue;
      int col = -1;
      for (int j = 0; j < n_; ++j)
        if (t_[i][j] != 0) {
          col = j;
          break;
        }
      if (col >= 0) pivot(i, col);
      // Otherwise the row is redundant; the artificial stays basic at zero.
    }
  }

  int d_, n_;
  std::vector<RatVec> t_;
  std::vector<int> basis_;
  std::vector<int> sign_;
};

}  // namespace

LpOutcome simplex_solve(const IntMatrix& a, const RatVec& c, const RatVec& b) {
  if (static_cast<int>(c.size()) != a.cols() || static_cast<int>(b.size()) != a.rows())
    throw InvalidInput("simplex_solve: dimension mismatch");
  Tableau t(a, c, b);
  LpOutcome out = t.solve(c);
  if (out.status != LpOutcome::kOptimal) return out;

  // Exactness guard: primal/dual feasibility and strong duality must hold
  // with equality of rationals.
  RatVec ax = a.mul(out.x);
  for (int i = 0; i < a.rows(); ++i)
    if (ax[i] != b[i]) throw InternalError("simplex: Ax != b");
  for (const Rat& xi : out.x)
    if (xi < 0) throw InternalError("simplex: negative primal coordinate");
  Rat yb(0);
  for (int i = 0; i < a.rows(); ++i) yb += out.y[i] * b[i];
  if (yb != out.value) throw InternalError("simplex: weak duality gap");
  for (int j = 0; j < a.cols(); ++j) {
    Rat ya(0);
    for (int i = 0; i < a.rows(); ++i)
      if (a.at(i, j) != 0) ya += out.y[i] * Rat(a.at(i, j));
    if (ya > c[j]) throw InternalError("simplex: dual infeasible");
  }
  return out;
}

bool cone_member(const IntMatrix& a, const RatVec& b) {
  RatVec zero(a.cols(), Rat(0));
  return simplex_solve(a, zero, b).status == LpOutcome::kOptimal;
}

// ---------------------------------------------------------------------------
// Problem
// ---------------------------------------------------------------------------

Problem::Problem(IntMatrix a, RatVec c, ProblemOptions opt) : d_(std::make_shared<Data>()) {
  if (a.rows() < 1) throw InvalidInput("Problem: empty matrix");
  if (static_cast<int>(c.size()) != a.cols()) throw InvalidInput("Problem: cost length mismatch");
  if (rank(a) != a.rows()) throw InvalidInput("Problem: A must have full row rank d");
  if (opt.require_full_lattice && !spans_full_lattice(a))
    throw InvalidInput("Problem: columns of A do not span Z^d (ZA != Z^d)");
  // Reject Q_c = empty by one feasibility LP: LP(0) is bounded iff Q_c != 0.
  RatVec zero(a.rows(), Rat(0));
  if (simplex_solve(a, c, zero).status != LpOutcome::kOptimal)
    throw InvalidInput("Problem: Q_c is empty (LP(0) unbounded below)");
  d_->a = std::move(a);
  d_->c = std::move(c);
}

// ---------------------------------------------------------------------------
// Vertex enumeration
// ---------------------------------------------------------------------------

namespace {

void for_each_combination(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  if (k > n || k < 0) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<Vertex> enumerate_vertices_impl(const IntMatrix& a, const RatVec& c) {
  int d = a.rows(), n = a.cols();
  std::vector<std::vector<int>> subsets;
  for_each_combination(n, d, [&](const std::vector<int>& idx) { subsets.push_back(idx); });

  auto process = [&](size_t lo, size_t hi, std::vector<RatVec>& points) {
    for (size_t s = lo; s < hi; ++s) {
      const std::vector<int>& idx = subsets[s];
      IntMatrix asig = a.columns(idx);
      if (determinant(asig) == 0) continue;
      RatVec csig(d);
      for (int k = 0; k < d; ++k) csig[k] = c[idx[k]];
      auto y = solve_left(asig, csig);
      if (!y) continue;
      bool feasible = true;
      for (int j = 0; j < n && feasible; ++j) {
        Rat ya(0);
        for (int i = 0; i < d; ++i)
          if (a.at(i, j) != 0) ya += (*y)[i] * Rat(a.at(i, j));
        if (ya > c[j]) feasible = false;
      }
      if (feasible) points.push_back(std::move(*y));
    }
  };

  std::vector<RatVec> points;
  int workers = std::min<int>(g_threads, std::max<size_t>(subsets.size() / 64, 1));
  if (workers <= 1) {
    process(0, subsets.size(), points);
  } else {
    std::vector<std::vector<RatVec>> chunks(workers);
    std::vector<std::thread> threads;
    size_t per = (subsets.size() + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      size_t lo = w * per, hi = std::min(subsets.size(), lo + per);
      threads.emplace_back([&, lo, hi, w] { process(lo, hi, chunks[w]); });
    }
    for (auto& th : threads) th.join();
    for (auto& ch : chunks)
      for (auto& p : ch) points.push_back(std::move(p));
  }

  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::vector<Vertex> verts;
  verts.reserve(points.size());
  for (auto& p : points) {
    Vertex v;
    v.tight.clear();
    for (int j = 0; j < n; ++j) {
      Rat ya(0);
      for (int i = 0; i < d; ++i)
        if (a.at(i, j) != 0) ya += p[i] * Rat(a.at(i, j));
      if (ya == c[j]) v.tight.push_back(j);
    }
    v.point = std::move(p);
    verts.push_back(std::move(v));
  }
  return verts;
}

}  // namespace

std::vector<Vertex> enumerate_dual_vertices(const IntMatrix& a, const RatVec& c) {
  return enumerate_vertices_impl(a, c);
}

const std::vector<Vertex>& dual_vertices(const Problem& p) {
  auto& data = *p.d_;
  std::lock_guard<std::mutex> lock(data.mu);
  if (!data.have_vertices) {
    data.vertices = enumerate_vertices_impl(data.a, data.c);
    data.have_vertices = true;
    if (data.vertices.empty())
      throw InternalError("dual_vertices: Q_c nonempty and pointed but no vertex found");
  }
  return data.vertices;
}

Subdivision subdivision_of(const IntMatrix& a, const RatVec& c) {
  Subdivision s;
  s.a = a;
  for (const Vertex& v : enumerate_vertices_impl(a, c))
    s.maximal_cells.push_back(Cell{v.tight, v.point});
  std::sort(s.maximal_cells.begin(), s.maximal_cells.end(),
            [](const Cell& x, const Cell& y) { return x.indices < y.indices; });
  for (size_t i = 1; i < s.maximal_cells.size(); ++i)
    if (s.maximal_cells[i].indices == s.maximal_cells[i - 1].indices)
      throw InternalError("subdivision: duplicate tight set");
  return s;
}

Subdivision regular_subdivision(const Problem& p) {
  Subdivision s;
  s.a = p.matrix();
  for (const Vertex& v : dual_vertices(p)) s.maximal_cells.push_back(Cell{v.tight, v.point});
  std::sort(s.maximal_cells.begin(), s.maximal_cells.end(),
            [](const Cell& x, const Cell& y) { return x.indices < y.indices; });
  for (size_t i = 1; i < s.maximal_cells.size(); ++i)
    if (s.maximal_cells[i].indices == s.maximal_cells[i - 1].indices)
      throw InternalError("subdivision: duplicate tight set");
  return s;
}

// ---------------------------------------------------------------------------
// LP front ends
// ---------------------------------------------------------------------------

std::optional<LPResult> lp_solve(const Problem& p, const RatVec& b) {
  if (static_cast<int>(b.size()) != p.dim()) throw InvalidInput("lp_solve: b length mismatch");
  LpOutcome out = simplex_solve(p.matrix(), p.cost(), b);
  if (out.status == LpOutcome::kInfeasible) return std::nullopt;
  if (out.status == LpOutcome::kUnbounded)
    throw InternalError("lp_solve: unbounded although Q_c is nonempty");

  LPResult res;
  res.value = out.value;
  res.primal = std::move(out.x);
  res.dual = std::move(out.y);
  const IntMatrix& a = p.matrix();
  for (int j = 0; j < a.cols(); ++j) {
    Rat ya(0);
    for (int i = 0; i < a.rows(); ++i)
      if (a.at(i, j) != 0) ya += res.dual[i] * Rat(a.at(i, j));
    if (ya == p.cost()[j]) res.optimal_cell.indices.push_back(j);
  }
  res.optimal_cell.witness = res.dual;
  // Complementary slackness, exactly.
  for (int j = 0; j < a.cols(); ++j)
    if (res.primal[j] != 0 &&
        !std::binary_search(res.optimal_cell.indices.begin(), res.optimal_cell.indices.end(), j))
      throw InternalError("lp_solve: complementary slackness violated");
  return res;
}

std::optional<LPResult> lp_solve_reference(const Problem& p, const RatVec& b) {
  const IntMatrix& a = p.matrix();
  int d = a.rows(), n = a.cols();
  bool found = false;
  Rat best;
  RatVec bestx;
  if (is_zero(b)) {
    found = true;
    best = 0;
    bestx.assign(n, Rat(0));
  }
  // Every basic feasible solution is supported on an independent column set.
  for (int k = 1; k <= d; ++k) {
    for_each_combination(n, k, [&](const std::vector<int>& tau) {
      IntMatrix atau = a.columns(tau);
      if (rank(atau) != k) return;
      auto sol = solve_linear(atau, b);
      if (!sol) return;
      for (const Rat& v : *sol)
        if (v < 0) return;
      RatVec x(n, Rat(0));
      for (int t = 0; t < k; ++t) x[tau[t]] = (*sol)[t];
      Rat val = dot(p.cost(), x);
      if (!found || val < best || (val == best && x < bestx)) {
        found = true;
        best = val;
        bestx = x;
      }
    });
  }
  if (!found) return std::nullopt;

  const Vertex* bestv = nullptr;
  Rat dualbest;
  for (const Vertex& v : dual_vertices(p)) {
    Rat yb = dot(v.point, b);
    if (!bestv || yb > dualbest) {
      bestv = &v;
      dualbest = yb;
    }
  }
  if (!bestv || dualbest != best)
    throw InternalError("lp_solve_reference: strong duality mismatch");
  LPResult res;
  res.value = best;
  res.primal = std::move(bestx);
  res.dual = bestv->point;
  res.optimal_cell = Cell{bestv->tight, bestv->point};
  return res;
}

// ---------------------------------------------------------------------------
// Subdivision predicates
// ---------------------------------------------------------------------------

bool is_refinement(const Subdivision& fine, const Subdivision& coarse) {
  if (!(fine.a == coarse.a)) throw InvalidInput("is_refinement: subdivisions of different matrices");
  for (const Cell& f : fine.maximal_cells) {
    bool inside = false;
    for (const Cell& g : coarse.maximal_cells) {
      if (std::includes(g.indices.begin(), g.indices.end(), f.indices.begin(), f.indices.end())) {
        inside = true;
        break;
      }
    }
    if (!inside) return false;
  }
  return true;
}

bool is_triangulation(const Subdivision& s) {
  int d = s.a.rows();
  for (const Cell& cell : s.maximal_cells) {
    if (static_cast<int>(cell.indices.size()) != d) return false;
    if (determinant(s.a.columns(cell.indices)) == 0) return false;
  }
  return true;
}

UnimodularityResult is_unimodular(const Subdivision& s) {
  if (!is_triangulation(s)) throw InvalidInput("is_unimodular: subdivision is not a triangulation");
  for (const Cell& cell : s.maximal_cells) {
    Int det = determinant(s.a.columns(cell.indices));
    if (det != 1 && det != -1) return UnimodularityResult{false, cell, det};
  }
  return UnimodularityResult{true, std::nullopt, std::nullopt};
}

Cell minimal_cell_containing(const Problem& p, const Subdivision& s, const RatVec& b) {
  if (!(s.a == p.matrix())) throw InvalidInput("minimal_cell_containing: subdivision mismatch");
  auto lp = lp_solve(p, b);
  if (!lp) throw InvalidInput("minimal_cell_containing: b outside cone(A)");
  // The minimal cell is the tight set of the dual optimal face, i.e. the
  // intersection of the tight sets of all optimal vertices of Q_c; the
  // witness is their average, a relative-interior point of that face.
  const auto& verts = dual_vertices(p);
  std::vector<const Vertex*> optimal;
  for (const Vertex& v : verts)
    if (dot(v.point, b) == lp->value) optimal.push_back(&v);
  if (optimal.empty()) throw InternalError("minimal_cell_containing: no optimal dual vertex");
  std::vector<int> tight = optimal[0]->tight;
  RatVec avg(p.dim(), Rat(0));
  for (const Vertex* v : optimal) {
    std::vector<int> merged;
    std::set_intersection(tight.begin(), tight.end(), v->tight.begin(), v->tight.end(),
                          std::back_inserter(merged));
    tight = std::move(merged);
    for (int i = 0; i < p.dim(); ++i) avg[i] += v->point[i];
  }
  Rat inv(1, static_cast<unsigned long>(optimal.size()));
  for (Rat& x : avg) x *= inv;
  return Cell{tight, avg};
}

Rat max_over_optimal_face(const Problem& p, const RatVec& b, const Rat& value, int i) {
  const IntMatrix& a = p.matrix();
  int d = a.rows(), n = a.cols();
  // Clear denominators of c and value so the extended row is integral.
  Int denom(1);
  for (const Rat& cj : p.cost()) denom = lcm(denom, cj.get_den());
  denom = lcm(denom, value.get_den());
  IntMatrix ext(d + 1, n);
  for (int r = 0; r < d; ++r)
    for (int j = 0; j < n; ++j) ext.at(r, j) = a.at(r, j);
  for (int j = 0; j < n; ++j) {
    Rat scaled = p.cost()[j] * Rat(denom);
    ext.at(d, j) = scaled.get_num();
  }
  RatVec rhs(b);
  rhs.push_back(value * Rat(denom));
  RatVec cost(n, Rat(0));
  cost[i] = -1;
  LpOutcome out = simplex_solve(ext, cost, rhs);
  if (out.status == LpOutcome::kInfeasible)
    throw InvalidInput("max_over_optimal_face: empty optimal face (wrong value?)");
  if (out.status == LpOutcome::kUnbounded)
    throw InvalidInput("max_over_optimal_face: coordinate unbounded on the optimal face");
  return -out.value;
}

}  // namespace tdi
