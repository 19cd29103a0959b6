#include "tdi/hilbert.hpp"

#include <algorithm>
#include <set>

namespace tdi {

namespace {

IntVec vsub(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Int floor_div(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

// Max |x_j| over {x >= 0 : Bx = h}, or nullopt when unbounded.
std::optional<Int> lp_coordinate_bound(const IntMatrix& b, const RatVec& h, int j) {
  RatVec cost(b.cols(), Rat(0));
  cost[j] = -1;
  LpOutcome out = simplex_solve(b, cost, h);
  if (out.status == LpOutcome::kInfeasible) return Int(0);
  if (out.status == LpOutcome::kUnbounded) return std::nullopt;
  return floor_div(-out.value);
}

// Borosh-Treybig style box: some nonnegative integer solution of Bx = h, if
// one exists at all, has coordinates at most (n+1) * max |minor of [B|h]|.
// Exact minors are enumerated when cheap, otherwise a Hadamard upper bound
// stands in (an over-estimate only enlarges the search box).
Int bt_bound(const IntMatrix& b, const IntVec& h) {
  int d = b.rows(), n = b.cols();
  IntMatrix aug(d, n + 1);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = b.at(i, j);
    aug.at(i, n) = h[i];
  }
  unsigned long long count = 0;
  bool cheap = true;
  for (int k = 1; k <= d && cheap; ++k) {
    unsigned long long rows = 1, cols = 1;
    for (int t = 0; t < k; ++t) {
      rows = rows * (d - t) / (t + 1);
      cols = cols * (n + 1 - t) / (t + 1);
    }
    count += rows * cols;
    if (count > 200000) cheap = false;
  }
  Int delta(1);
  if (cheap) {
    std::vector<int> rsel, csel;
    std::function<void(int, int)> choose_cols;
    std::function<void(int, int)> choose_rows;
    int k = 0;
    choose_cols = [&](int start, int left) {
      if (left == 0) {
        IntMatrix sub(k, k);
        for (int i = 0; i < k; ++i)
          for (int jj = 0; jj < k; ++jj) sub.at(i, jj) = aug.at(rsel[i], csel[jj]);
        Int det = abs(determinant(sub));
        if (det > delta) delta = det;
        return;
      }
      for (int c = start; c <= n + 1 - left; ++c) {
        csel.push_back(c);
        choose_cols(c + 1, left - 1);
        csel.pop_back();
      }
    };
    choose_rows = [&](int start, int left) {
      if (left == 0) {
        choose_cols(0, k);
        return;
      }
      for (int r = start; r <= d - left; ++r) {
        rsel.push_back(r);
        choose_rows(r + 1, left - 1);
        rsel.pop_back();
      }
    };
    for (k = 1; k <= d; ++k) choose_rows(0, k);
  } else {
    // Hadamard: |minor of size k| <= prod of the k largest column 2-norms,
    // bounded by prod of (sqrt(d) * max |entry| of the column), rounded up.
    std::vector<Int> colbound;
    for (int j = 0; j <= n; ++j) {
      Int m(0);
      for (int i = 0; i < d; ++i) {
        Int v = abs(aug.at(i, j));
        if (v > m) m = v;
      }
      Int norm2(0);
      norm2 = m * m * d;
      Int root = sqrt(norm2) + 1;
      colbound.push_back(root);
    }
    std::sort(colbound.rbegin(), colbound.rend());
    delta = 1;
    for (int t = 0; t < d && t < static_cast<int>(colbound.size()); ++t) delta *= colbound[t];
  }
  return delta * (n + 1);
}

bool membership_dfs(const IntMatrix& b, IntVec rem, int j, const Int& box) {
  int d = b.rows(), n = b.cols();
  if (j == n) return is_zero(rem);
  // Feasibility of the remaining relaxation prunes dead branches exactly.
  IntMatrix tail = [&] {
    std::vector<int> idx;
    for (int k = j; k < n; ++k) idx.push_back(k);
    return b.columns(idx);
  }();
  if (!cone_member(tail, to_rat(rem))) return false;
  std::optional<Int> lpb = lp_coordinate_bound(tail, to_rat(rem), 0);
  Int hi = lpb ? std::min(*lpb, box) : box;
  IntVec cur = rem;
  for (Int v(0); v <= hi; ++v) {
    if (membership_dfs(b, cur, j + 1, box)) return true;
    for (int i = 0; i < d; ++i) cur[i] -= b.at(i, j);
  }
  return false;
}

}  // namespace

bool in_natural_span(const IntMatrix& b, const IntVec& target) {
  if (static_cast<int>(target.size()) != b.rows())
    throw InvalidInput("in_natural_span: target length mismatch");
  if (!cone_member(b, to_rat(target))) return false;
  Int box = bt_bound(b, target);
  return membership_dfs(b, target, 0, box);
}

bool cone_is_pointed(const IntMatrix& b) {
  int d = b.rows(), n = b.cols();
  // max sum(x) s.t. Bx = 0, 0 <= x <= 1; positive optimum exhibits a line.
  IntMatrix ext(d + n, 2 * n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < n; ++j) ext.at(i, j) = b.at(i, j);
  for (int j = 0; j < n; ++j) {
    ext.at(d + j, j) = 1;
    ext.at(d + j, n + j) = 1;
  }
  RatVec rhs(d + n, Rat(0));
  for (int j = 0; j < n; ++j) rhs[d + j] = 1;
  RatVec cost(2 * n, Rat(0));
  for (int j = 0; j < n; ++j) cost[j] = -1;
  LpOutcome out = simplex_solve(ext, cost, rhs);
  if (out.status != LpOutcome::kOptimal) throw InternalError("cone_is_pointed: LP must be solvable");
  return out.value == 0;
}

namespace {

// Deterministic small weights for the internal cone triangulation.
unsigned mix(unsigned seed, unsigned j) {
  unsigned long long z = (static_cast<unsigned long long>(seed) << 32) ^ (j * 0x9E3779B97F4A7C15ull);
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  return static_cast<unsigned>(z % 9973) + 1;
}

// Minimal Hilbert basis of cone(X) ∩ Z^r for a full-row-rank pointed
// configuration X: triangulate, collect half-open parallelepiped lattice
// points of each simplicial piece, then keep the irreducible elements.
std::vector<IntVec> hilbert_core(const IntMatrix& x) {
  int r = x.rows(), n = x.cols();
  std::vector<int> keep;
  std::set<IntVec> seen_cols;
  for (int j = 0; j < n; ++j) {
    IntVec col = x.column(j);
    if (seen_cols.insert(col).second) keep.push_back(j);
  }
  IntMatrix xd = x.columns(keep);
  n = xd.cols();

  Subdivision tri;
  bool found = false;
  for (unsigned seed = 1; seed <= 64 && !found; ++seed) {
    RatVec w(n);
    for (int j = 0; j < n; ++j) w[j] = Rat(mix(seed, j));
    tri = subdivision_of(xd, w);
    if (is_triangulation(tri)) found = true;
  }
  if (!found) throw InternalError("hilbert_core: no generic lifting found a triangulation");

  std::set<IntVec> candidates;
  for (int j = 0; j < n; ++j) candidates.insert(xd.column(j));
  for (const Cell& cell : tri.maximal_cells) {
    IntMatrix xs = xd.columns(cell.indices);
    Hnf f = hermite_normal_form(xs);
    IntVec diag(r);
    Int total(1);
    for (int k = 0; k < r; ++k) {
      diag[k] = f.h.at(k, k);
      total *= diag[k];
    }
    if (total > 100000)
      throw Unsupported("hilbert_basis: parallelepiped has too many residues for desk scale");
    IntVec rep(r, Int(0));
    while (true) {
      if (!is_zero(rep)) {
        auto t = solve_linear(xs, to_rat(rep));
        if (!t) throw InternalError("hilbert_core: simplicial solve failed");
        IntVec fl(r);
        for (int k = 0; k < r; ++k) fl[k] = floor_div((*t)[k]);
        IntVec p = rep;
        for (int i = 0; i < r; ++i)
          for (int k = 0; k < r; ++k) p[i] -= xs.at(i, k) * fl[k];
        if (!is_zero(p)) candidates.insert(p);
      }
      int k = 0;
      while (k < r) {
        rep[k] += 1;
        if (rep[k] < diag[k]) break;
        rep[k] = 0;
        ++k;
      }
      if (k == r) break;
    }
  }

  std::vector<IntVec> cand(candidates.begin(), candidates.end());
  std::vector<IntVec> basis;
  for (const IntVec& h : cand) {
    bool reducible = false;
    for (const IntVec& g : cand) {
      if (g == h) continue;
      if (cone_member(xd, to_rat(vsub(h, g)))) {
        reducible = true;
        break;
      }
    }
    if (!reducible) basis.push_back(h);
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

// Basis S (d x r) of the saturated lattice Z^d ∩ span(B).
IntMatrix span_lattice_basis(const IntMatrix& b) {
  IntMatrix orth = integer_kernel_basis(b.transpose());
  return integer_kernel_basis(orth.transpose());
}

// Integer coordinate matrix X with S X = B; throws if non-integral.
IntMatrix coordinates_in(const IntMatrix& s, const IntMatrix& b) {
  IntMatrix x(s.cols(), b.cols());
  for (int j = 0; j < b.cols(); ++j) {
    auto sol = solve_linear(s, to_rat(b.column(j)));
    if (!sol) throw InternalError("coordinates_in: column outside the span lattice");
    IntVec col = to_int(*sol);
    for (int i = 0; i < s.cols(); ++i) x.at(i, j) = col[i];
  }
  return x;
}

IntVec matvec(const IntMatrix& m, const IntVec& v) { return m.mul(v); }

}  // namespace

std::vector<IntVec> hilbert_basis(const ConeConfiguration& cfg) {
  const IntMatrix& b = cfg.generators;
  for (int j = 0; j < b.cols(); ++j)
    if (is_zero(b.column(j))) throw InvalidInput("hilbert_basis: zero generator");
  if (!cone_is_pointed(b)) throw Unsupported("unsupported: non-pointed cone");
  IntMatrix s = span_lattice_basis(b);
  IntMatrix x = coordinates_in(s, b);
  std::vector<IntVec> core = hilbert_core(x);
  std::vector<IntVec> out;
  out.reserve(core.size());
  for (const IntVec& h : core) out.push_back(matvec(s, h));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

HilbertVerdict pointed_verdict(const IntMatrix& b) {
  HilbertVerdict v;
  v.minimal_basis = hilbert_basis(ConeConfiguration{b});
  v.is_basis = true;
  for (const IntVec& h : v.minimal_basis) {
    if (!in_natural_span(b, h)) {
      v.is_basis = false;
      v.witness = h;
      break;
    }
  }
  return v;
}

HilbertVerdict nonpointed_verdict(const IntMatrix& b) {
  int d = b.rows();
  // Lineality space W = span of the generators whose negation stays in the
  // cone; cone(B) ∩ Z^d is generated by ± a lattice basis of W ∩ Z^d together
  // with lifts of the Hilbert basis of the pointed image cone in Z^d / W.
  std::vector<int> lin;
  for (int j = 0; j < b.cols(); ++j) {
    IntVec neg = b.column(j);
    for (Int& t : neg) t = -t;
    if (cone_member(b, to_rat(neg))) lin.push_back(j);
  }
  if (lin.empty()) throw InternalError("nonpointed_verdict: no lineality generator found");
  IntMatrix l = span_lattice_basis(b.columns(lin));
  int w = l.cols();

  std::vector<IntVec> gens;
  for (int j = 0; j < w; ++j) {
    IntVec col = l.column(j);
    gens.push_back(col);
    for (Int& t : col) t = -t;
    gens.push_back(col);
  }

  if (w < d) {
    IntMatrix k = integer_kernel_basis(l.transpose());  // d x (d-w)
    IntMatrix p = k.transpose();                        // rows span W-perp
    Hnf pf = hermite_normal_form(p);
    std::vector<int> piv;
    for (int j = 0; j < pf.h.cols(); ++j) {
      bool zero = true;
      for (int i = 0; i < pf.h.rows(); ++i)
        if (pf.h.at(i, j) != 0) zero = false;
      if (!zero) piv.push_back(j);
    }
    IntMatrix vm = pf.h.columns(piv);  // basis of the image lattice P Z^d
    IntMatrix pb = p.mul(b);
    // Generators inside W project to zero; only the rest span the image cone.
    std::vector<int> nonzero;
    for (int j = 0; j < pb.cols(); ++j)
      if (!is_zero(pb.column(j))) nonzero.push_back(j);
    std::vector<IntVec> image_hb;
    if (!nonzero.empty()) {
      IntMatrix ximg = coordinates_in(vm, pb.columns(nonzero));
      if (!cone_is_pointed(ximg)) throw InternalError("nonpointed_verdict: image cone not pointed");
      image_hb = hilbert_core(ximg);
    }
    for (const IntVec& q : image_hb) {
      // Lift: solve P x = Vm q over the integers via the HNF transform.
      IntVec rhs = matvec(vm, q);
      auto z = solve_linear(pf.h, to_rat(rhs));
      if (!z) throw InternalError("nonpointed_verdict: lift failed");
      IntVec zi = to_int(*z);
      gens.push_back(matvec(pf.u, zi));
    }
  }

  HilbertVerdict v;
  v.is_basis = true;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  v.minimal_basis = gens;
  for (const IntVec& g : gens) {
    if (!in_natural_span(b, g)) {
      v.is_basis = false;
      v.witness = g;
      break;
    }
  }
  return v;
}

}  // namespace

HilbertVerdict is_hilbert_basis(const ConeConfiguration& cfg) {
  const IntMatrix& b = cfg.generators;
  for (int j = 0; j < b.cols(); ++j)
    if (is_zero(b.column(j))) throw InvalidInput("is_hilbert_basis: zero generator");
  if (cone_is_pointed(b)) return pointed_verdict(b);
  return nonpointed_verdict(b);
}

CellsHilbertResult cells_are_hilbert(const Problem& p, const Subdivision& s) {
  if (!(s.a == p.matrix())) throw InvalidInput("cells_are_hilbert: subdivision mismatch");
  int d = p.dim();
  for (const Cell& cell : s.maximal_cells) {
    IntMatrix asig = p.matrix().columns(cell.indices);
    if (static_cast<int>(cell.indices.size()) == d) {
      Int det = determinant(asig);
      if (det == 1 || det == -1) continue;  // Cramer: unimodular cells are Hilbert
    }
    HilbertVerdict v = is_hilbert_basis(ConeConfiguration{asig});
    if (!v.is_basis) return CellsHilbertResult{false, cell, v.witness};
  }
  return CellsHilbertResult{true, std::nullopt, std::nullopt};
}

}  // namespace tdi
