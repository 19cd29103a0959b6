#include "tdi/setpacking.hpp"

#include <algorithm>
#include <functional>

namespace tdi {

namespace {

std::vector<std::vector<char>> adjacency(const Graph& g) {
  std::vector<std::vector<char>> adj(g.vertex_count, std::vector<char>(g.vertex_count, 0));
  for (auto [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= g.vertex_count || v >= g.vertex_count)
      throw InvalidInput("graph edge endpoint out of range");
    if (u == v) throw InvalidInput("graph has a loop");
    adj[u][v] = adj[v][u] = 1;
  }
  return adj;
}

}  // namespace

std::vector<std::vector<int>> maximal_cliques(const Graph& g) {
  auto adj = adjacency(g);
  int n = g.vertex_count;
  std::vector<std::vector<int>> out;
  std::vector<int> r;
  std::function<void(std::vector<int>, std::vector<int>)> bk = [&](std::vector<int> p,
                                                                   std::vector<int> x) {
    if (p.empty() && x.empty()) {
      out.push_back(r);
      return;
    }
    // Pivot on the vertex of P u X with most neighbours in P.
    int pivot = -1, best = -1;
    for (int u : p) {
      int cnt = 0;
      for (int w : p)
        if (adj[u][w]) ++cnt;
      if (cnt > best) {
        best = cnt;
        pivot = u;
      }
    }
    for (int u : x) {
      int cnt = 0;
      for (int w : p)
        if (adj[u][w]) ++cnt;
      if (cnt > best) {
        best = cnt;
        pivot = u;
      }
    }
    std::vector<int> cand;
    for (int v : p)
      if (pivot < 0 || !adj[pivot][v]) cand.push_back(v);
    for (int v : cand) {
      std::vector<int> p2, x2;
      for (int w : p)
        if (adj[v][w]) p2.push_back(w);
      for (int w : x)
        if (adj[v][w]) x2.push_back(w);
      r.push_back(v);
      bk(std::move(p2), std::move(x2));
      r.pop_back();
      p.erase(std::find(p.begin(), p.end(), v));
      x.push_back(v);
    }
  };
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  bk(std::move(p), {});
  for (auto& c : out) std::sort(c.begin(), c.end());
  std::sort(out.begin(), out.end());
  return out;
}

SetPackingSystem system_from_cliques(const std::vector<std::vector<int>>& cliques, int d) {
  int k = static_cast<int>(cliques.size());
  if (k == 0) throw InvalidInput("set packing system needs at least one clique");
  IntMatrix a(d, k + d);
  for (int q = 0; q < k; ++q) {
    if (cliques[q].empty()) throw InvalidInput("empty clique");
    for (int v : cliques[q]) {
      if (v < 0 || v >= d) throw InvalidInput("clique vertex out of range");
      a.at(v, q) = 1;
    }
  }
  for (int i = 0; i < d; ++i) a.at(i, k + i) = -1;
  RatVec c(k + d, Rat(0));
  for (int q = 0; q < k; ++q) c[q] = 1;
  return SetPackingSystem{Problem(std::move(a), std::move(c)), cliques};
}

SetPackingSystem build_system(const Graph& g) {
  return system_from_cliques(maximal_cliques(g), g.vertex_count);
}

bool is_set_packing_shape(const IntMatrix& a, const RatVec& c) {
  int d = a.rows(), n = a.cols();
  if (n < d + 1) return false;
  int k = n - d;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (a.at(i, k + j) != (i == j ? -1 : 0)) return false;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < k; ++j)
      if (a.at(i, j) != 0 && a.at(i, j) != 1) return false;
  for (int j = 0; j < k; ++j)
    if (c[j] != 1) return false;
  for (int j = k; j < n; ++j)
    if (c[j] != 0) return false;
  return true;
}

RatVec perturb(const SetPackingSystem& sys) {
  int d = sys.vertex_count(), n = sys.problem.cols();
  if (d < 2) throw InvalidInput("perturb: d^(d+2) = 1 degenerates the formula at d = 1");
  Int base(1);
  for (int t = 0; t < d + 2; ++t) base *= d;
  Rat delta(Int(1), base);
  RatVec cp(sys.problem.cost());
  Rat power(1);
  for (int i = 0; i < n; ++i) {
    power *= delta;
    cp[i] -= power;
  }
  return cp;
}

Rat lambda_coordinate(const SetPackingSystem& sys, const RatVec& b, int i) {
  auto lp = lp_solve(sys.problem, b);
  if (!lp) throw InvalidInput("lambda: b outside cone(A)");
  return max_over_optimal_face(sys.problem, b, lp->value, i);
}

std::variant<IntVec, LambdaFailure> lex_greedy_optimum(const SetPackingSystem& sys,
                                                       const IntVec& b) {
  const IntMatrix& a = sys.problem.matrix();
  int n = a.cols(), d = a.rows();
  RatVec cur = to_rat(b);
  if (!cone_member(a, cur)) throw InvalidInput("lex_greedy_optimum: b outside cone(A)");
  IntVec x(n, Int(0));
  for (int i = 0; i < n; ++i) {
    Rat li = lambda_coordinate(sys, cur, i);
    if (li.get_den() != 1) return LambdaFailure{i, cur, li};
    x[i] = li.get_num();
    for (int r = 0; r < d; ++r) cur[r] -= li * Rat(a.at(r, i));
  }
  if (!is_zero(cur)) throw InternalError("lex_greedy_optimum: nonzero residual after all columns");
  return x;
}

PerfectnessCertificate perfectness_check(const Graph& g) {
  if (g.vertex_count < 1) throw InvalidInput("perfectness_check: empty graph");
  SetPackingSystem sys = build_system(g);
  PerfectnessCertificate cert;

  if (g.vertex_count == 1) {
    // Q_c = [0,1]; its own normal fan is already a unimodular triangulation.
    cert.verdict = Perfectness::kPerfect;
    cert.c_prime = sys.problem.cost();
    cert.refinement = regular_subdivision(sys.problem);
    return cert;
  }

  cert.c_prime = perturb(sys);
  Problem perturbed(sys.problem.matrix(), cert.c_prime);
  cert.refinement = regular_subdivision(perturbed);
  Subdivision coarse = regular_subdivision(sys.problem);
  if (!is_refinement(cert.refinement, coarse))
    throw InternalError("perfectness_check: perturbed subdivision does not refine Delta_c");
  if (!is_triangulation(cert.refinement))
    throw InternalError("perfectness_check: perturbed subdivision is not a triangulation");

  UnimodularityResult uni = is_unimodular(cert.refinement);
  if (uni.unimodular) {
    cert.verdict = Perfectness::kPerfect;
    return cert;
  }
  cert.verdict = Perfectness::kImperfect;
  cert.nonunimodular_cell = uni.offending_cell;
  cert.cell_det = uni.offending_det;
  for (const Vertex& v : dual_vertices(sys.problem)) {
    if (!is_integral(v.point)) {
      cert.fractional_vertex = v.point;
      break;
    }
  }
  if (!cert.fractional_vertex)
    throw InternalError("perfectness_check: non-unimodular refinement but all Q_c vertices integral");
  return cert;
}

bool verify_perfectness(const PerfectnessCertificate& cert, const Graph& g) {
  SetPackingSystem sys = build_system(g);
  if (cert.verdict == Perfectness::kPerfect) {
    if (g.vertex_count == 1) return true;
    if (!is_triangulation(cert.refinement)) return false;
    if (!is_refinement(cert.refinement, regular_subdivision(sys.problem))) return false;
    return is_unimodular(cert.refinement).unimodular;
  }
  bool ok = false;
  if (cert.nonunimodular_cell) {
    Int det = determinant(sys.problem.matrix().columns(cert.nonunimodular_cell->indices));
    ok = det != 1 && det != -1 && (!cert.cell_det || det == *cert.cell_det);
  }
  if (cert.fractional_vertex) {
    const RatVec& y = *cert.fractional_vertex;
    if (is_integral(y)) return false;
    const IntMatrix& a = sys.problem.matrix();
    for (int j = 0; j < a.cols(); ++j) {
      Rat ya(0);
      for (int i = 0; i < a.rows(); ++i)
        if (a.at(i, j) != 0) ya += y[i] * Rat(a.at(i, j));
      if (ya > sys.problem.cost()[j]) return false;
    }
    ok = true;
  }
  return ok;
}

}  // namespace tdi
