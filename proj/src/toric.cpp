#include "tdi/toric.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "tdi/hilbert.hpp"
#include "tdi/testset.hpp"

namespace tdi {

// ---------------------------------------------------------------------------
// Orders
// ---------------------------------------------------------------------------

Order lex_order() {
  return [](const Exp& u, const Exp& v) -> int {
    for (size_t i = 0; i < u.size(); ++i)
      if (u[i] != v[i]) return u[i] > v[i] ? 1 : -1;
    return 0;
  };
}

Order grevlex_order() {
  return [](const Exp& u, const Exp& v) -> int {
    long du = 0, dv = 0;
    for (size_t i = 0; i < u.size(); ++i) {
      du += u[i];
      dv += v[i];
    }
    if (du != dv) return du > dv ? 1 : -1;
    for (size_t i = u.size(); i-- > 0;)
      if (u[i] != v[i]) return u[i] < v[i] ? 1 : -1;
    return 0;
  };
}

Order grevlex_var_last(int var) {
  return [var](const Exp& u, const Exp& v) -> int {
    long du = 0, dv = 0;
    for (size_t i = 0; i < u.size(); ++i) {
      du += u[i];
      dv += v[i];
    }
    if (du != dv) return du > dv ? 1 : -1;
    if (u[var] != v[var]) return u[var] < v[var] ? 1 : -1;
    for (size_t i = u.size(); i-- > 0;) {
      if (static_cast<int>(i) == var) continue;
      if (u[i] != v[i]) return u[i] < v[i] ? 1 : -1;
    }
    return 0;
  };
}

Order weight_order(RatVec w, Order tie) {
  return [w = std::move(w), tie = std::move(tie)](const Exp& u, const Exp& v) -> int {
    Rat cu(0), cv(0);
    for (size_t i = 0; i < u.size(); ++i) {
      if (u[i]) cu += w[i] * u[i];
      if (v[i]) cv += w[i] * v[i];
    }
    if (cu != cv) return cu > cv ? 1 : -1;
    return tie(u, v);
  };
}

Order eps_weight_order(RatVec base, int sign) {
  Order tie = lex_order();
  return [base = std::move(base), sign, tie = std::move(tie)](const Exp& u, const Exp& v) -> int {
    Rat cu(0), cv(0);
    for (size_t i = 0; i < u.size(); ++i) {
      if (u[i]) cu += base[i] * u[i];
      if (v[i]) cv += base[i] * v[i];
    }
    if (cu != cv) return cu > cv ? 1 : -1;
    for (size_t i = 0; i < u.size(); ++i)
      if (u[i] != v[i]) return (u[i] > v[i] ? 1 : -1) * sign;
    return tie(u, v);
  };
}

Order block_order(std::vector<int> first_block, Order hi, Order lo, int nvars) {
  std::vector<char> in_first(nvars, 0);
  for (int v : first_block) in_first[v] = 1;
  std::vector<int> second_block;
  for (int i = 0; i < nvars; ++i)
    if (!in_first[i]) second_block.push_back(i);
  return [first = std::move(first_block), second = std::move(second_block), hi = std::move(hi),
          lo = std::move(lo)](const Exp& u, const Exp& v) -> int {
    Exp pu(first.size()), pv(first.size());
    for (size_t i = 0; i < first.size(); ++i) {
      pu[i] = u[first[i]];
      pv[i] = v[first[i]];
    }
    int c = hi(pu, pv);
    if (c != 0) return c;
    Exp qu(second.size()), qv(second.size());
    for (size_t i = 0; i < second.size(); ++i) {
      qu[i] = u[second[i]];
      qv[i] = v[second[i]];
    }
    return lo(qu, qv);
  };
}

// ---------------------------------------------------------------------------
// Exponent helpers
// ---------------------------------------------------------------------------

bool divides(const Exp& a, const Exp& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exp exp_add(const Exp& a, const Exp& b) {
  Exp r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Exp exp_sub(const Exp& a, const Exp& b) {
  Exp r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Exp exp_lcm(const Exp& a, const Exp& b) {
  Exp r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

bool exp_disjoint(const Exp& a, const Exp& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Buchberger
// ---------------------------------------------------------------------------

namespace {

constexpr long kMaxReductionSteps = 5000000;

// Orient so that lead is the ord-larger monomial; empty optional = zero.
std::optional<BPoly> orient(BPoly f, const Order& ord) {
  if (f.is_monomial()) return f;
  int c = ord(f.lead, *f.trail);
  if (c == 0) return std::nullopt;
  if (c < 0) std::swap(f.lead, *f.trail);
  return f;
}

}  // namespace

BPoly normal_form(BPoly f, const std::vector<BPoly>& g, const Order& ord) {
  long guard = 0;
  // Top reduction.
  while (true) {
    if (++guard > kMaxReductionSteps) throw InternalError("normal_form: reduction did not settle");
    const BPoly* red = nullptr;
    for (const BPoly& cand : g)
      if (divides(cand.lead, f.lead)) {
        red = &cand;
        break;
      }
    if (!red) break;
    if (red->is_monomial()) {
      if (f.is_monomial()) return BPoly{Exp(f.lead.size(), 0), std::nullopt};  // exact zero
      if (is_zero_exp(*f.trail))
        throw InternalError("normal_form: reduction exposed the unit ideal");
      f = BPoly{*f.trail, std::nullopt};
      // The remaining monomial may itself reduce; continue the loop.
      continue;
    }
    Exp repl = exp_add(exp_sub(f.lead, red->lead), *red->trail);
    if (f.is_monomial()) {
      f.lead = std::move(repl);
      continue;
    }
    if (repl == *f.trail) return BPoly{Exp(f.lead.size(), 0), std::nullopt};  // cancels to zero
    int c = ord(repl, *f.trail);
    if (c == 0) throw InternalError("normal_form: order reported a tie on distinct monomials");
    if (c > 0)
      f.lead = std::move(repl);
    else {
      f.lead = *f.trail;
      f.trail = std::move(repl);
    }
  }
  // Tail reduction.
  while (f.trail) {
    if (++guard > kMaxReductionSteps) throw InternalError("normal_form: tail reduction did not settle");
    const BPoly* red = nullptr;
    for (const BPoly& cand : g)
      if (divides(cand.lead, *f.trail)) {
        red = &cand;
        break;
      }
    if (!red) break;
    if (red->is_monomial()) {
      f.trail.reset();
      break;
    }
    Exp repl = exp_add(exp_sub(*f.trail, red->lead), *red->trail);
    f.trail = std::move(repl);
  }
  return f;
}

namespace {

bool poly_is_zero_sentinel(const BPoly& f) {
  // normal_form reports exact cancellation with a zero-exponent monomial
  // sentinel only when the caller checks via reduces_to_zero; inside
  // buchberger we detect cancellation before constructing the sentinel.
  return f.is_monomial() && is_zero_exp(f.lead);
}

}  // namespace

bool reduces_to_zero(const BPoly& f, const std::vector<BPoly>& g, const Order& ord) {
  // A pure difference reduces to zero iff normal_form cancels it; a monomial
  // reduces to zero iff some monomial of the basis eventually divides it.
  BPoly nf = normal_form(f, g, ord);
  return poly_is_zero_sentinel(nf);
}

std::vector<BPoly> buchberger(std::vector<BPoly> gens, const Order& ord) {
  std::vector<BPoly> g;
  for (BPoly& f : gens) {
    auto o = orient(std::move(f), ord);
    if (o) g.push_back(std::move(*o));
  }
  std::sort(g.begin(), g.end(), [&](const BPoly& a, const BPoly& b) { return ord(a.lead, b.lead) < 0; });
  g.erase(std::unique(g.begin(), g.end()), g.end());

  struct Pair {
    long deg;
    size_t i, j;
  };
  auto pair_less = [](const Pair& a, const Pair& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  };
  std::vector<Pair> queue;
  auto push_pairs = [&](size_t jnew) {
    for (size_t i = 0; i < jnew; ++i) {
      if (g[i].is_monomial() && g[jnew].is_monomial()) continue;
      if (exp_disjoint(g[i].lead, g[jnew].lead)) continue;  // product criterion
      Exp l = exp_lcm(g[i].lead, g[jnew].lead);
      long deg = 0;
      for (int e : l) deg += e;
      queue.push_back(Pair{deg, i, jnew});
    }
    std::sort(queue.begin(), queue.end(), pair_less);
  };
  for (size_t j = 1; j < g.size(); ++j) push_pairs(j);

  long guard = 0;
  while (!queue.empty()) {
    if (++guard > 200000) throw InternalError("buchberger: pair loop did not terminate");
    Pair pr = queue.front();
    queue.erase(queue.begin());
    const BPoly& f1 = g[pr.i];
    const BPoly& f2 = g[pr.j];
    Exp l = exp_lcm(f1.lead, f2.lead);
    // S-poly of monic differences: shift the trails under the common lcm.
    std::optional<BPoly> s;
    if (f1.is_monomial() && f2.is_monomial()) {
      continue;
    } else if (f1.is_monomial()) {
      s = BPoly{exp_add(exp_sub(l, f2.lead), *f2.trail), std::nullopt};
    } else if (f2.is_monomial()) {
      s = BPoly{exp_add(exp_sub(l, f1.lead), *f1.trail), std::nullopt};
    } else {
      Exp m1 = exp_add(exp_sub(l, f1.lead), *f1.trail);
      Exp m2 = exp_add(exp_sub(l, f2.lead), *f2.trail);
      if (m1 == m2) continue;
      s = orient(BPoly{std::move(m1), std::move(m2)}, ord);
      if (!s) continue;
    }
    BPoly nf = normal_form(*s, g, ord);
    if (poly_is_zero_sentinel(nf)) continue;
    g.push_back(std::move(nf));
    push_pairs(g.size() - 1);
  }

  // Minimalize: drop elements whose lead is divisible by another lead.
  std::vector<BPoly> minimal;
  for (size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j) continue;
      if (divides(g[j].lead, g[i].lead)) {
        if (g[j].lead == g[i].lead && j > i) continue;  // keep the first of equals
        redundant = true;
      }
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  // Tail-reduce each against the others for the reduced basis.
  std::vector<BPoly> reduced;
  for (size_t i = 0; i < minimal.size(); ++i) {
    std::vector<BPoly> rest;
    for (size_t j = 0; j < minimal.size(); ++j)
      if (j != i) rest.push_back(minimal[j]);
    BPoly nf = normal_form(minimal[i], rest, ord);
    if (!poly_is_zero_sentinel(nf)) reduced.push_back(std::move(nf));
  }
  std::sort(reduced.begin(), reduced.end(),
            [&](const BPoly& a, const BPoly& b) { return ord(a.lead, b.lead) < 0; });
  return reduced;
}

// ---------------------------------------------------------------------------
// Initial ideals and mono()
// ---------------------------------------------------------------------------

std::vector<BPoly> initial_ideal(const std::vector<BPoly>& gb, const RatVec& c) {
  std::vector<BPoly> out;
  for (const BPoly& g : gb) {
    if (g.is_monomial()) {
      out.push_back(g);
      continue;
    }
    Rat wl(0), wt(0);
    for (size_t i = 0; i < g.lead.size(); ++i) {
      if (g.lead[i]) wl += c[i] * g.lead[i];
      if ((*g.trail)[i]) wt += c[i] * (*g.trail)[i];
    }
    if (wl > wt)
      out.push_back(BPoly{g.lead, std::nullopt});
    else if (wl == wt)
      out.push_back(g);
    else
      throw InternalError("initial_ideal: basis is not Groebner for the cost order");
  }
  return out;
}

MonomialIdeal mono_of_initial(const std::vector<BPoly>& init_gens, int nvars) {
  int n2 = 2 * nvars;
  // Multi-homogenize: pair x_i with partner X_i = variable nvars + i.
  std::vector<BPoly> h;
  for (const BPoly& g : init_gens) {
    Exp lead(n2, 0), trail(n2, 0);
    for (int i = 0; i < nvars; ++i) lead[i] = g.lead[i];
    if (g.is_monomial()) {
      h.push_back(BPoly{std::move(lead), std::nullopt});
      continue;
    }
    for (int i = 0; i < nvars; ++i) {
      int m = std::max(g.lead[i], (*g.trail)[i]);
      lead[nvars + i] = m - g.lead[i];
      trail[i] = (*g.trail)[i];
      trail[nvars + i] = m - (*g.trail)[i];
    }
    h.push_back(BPoly{std::move(lead), std::move(trail)});
  }

  // Saturate by each partner variable: grevlex with that variable last, then
  // divide every element by its content in that variable (Bayer's trick; the
  // homogenized ideal is multigraded, hence totally graded).
  for (int var = nvars; var < n2; ++var) {
    h = buchberger(std::move(h), grevlex_var_last(var));
    for (BPoly& f : h) {
      int t = f.lead[var];
      if (f.trail) t = std::min(t, (*f.trail)[var]);
      if (t > 0) {
        f.lead[var] -= t;
        if (f.trail) (*f.trail)[var] -= t;
      } else if (f.is_monomial() && f.lead[var] > 0) {
        f.lead[var] = 0;
      }
    }
  }

  // Eliminate the partner block.
  std::vector<int> partners;
  for (int i = nvars; i < n2; ++i) partners.push_back(i);
  Order elim = block_order(partners, grevlex_order(), grevlex_order(), n2);
  h = buchberger(std::move(h), elim);

  MonomialIdeal mi;
  mi.nvars = nvars;
  for (const BPoly& f : h) {
    auto partner_free = [&](const Exp& e) {
      for (int i = nvars; i < n2; ++i)
        if (e[i] > 0) return false;
      return true;
    };
    if (!partner_free(f.lead)) continue;
    if (f.trail && !partner_free(*f.trail)) continue;
    if (!f.is_monomial())
      throw InternalError("mono_of_initial: eliminated basis contains a non-monomial in the original variables");
    Exp cut(f.lead.begin(), f.lead.begin() + nvars);
    mi.gens.push_back(std::move(cut));
  }
  // Minimal generating set: divisibility antichain.
  std::vector<Exp> minimal;
  for (size_t i = 0; i < mi.gens.size(); ++i) {
    bool red = false;
    for (size_t j = 0; j < mi.gens.size() && !red; ++j) {
      if (i == j) continue;
      if (divides(mi.gens[j], mi.gens[i]) && !(mi.gens[j] == mi.gens[i] && j > i)) red = true;
    }
    if (!red) minimal.push_back(mi.gens[i]);
  }
  std::sort(minimal.begin(), minimal.end());
  minimal.erase(std::unique(minimal.begin(), minimal.end()), minimal.end());
  mi.gens = std::move(minimal);
  return mi;
}

MonomialIdeal minimalize_monomials(std::vector<Exp> gens, int nvars) {
  MonomialIdeal mi;
  mi.nvars = nvars;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  for (size_t i = 0; i < gens.size(); ++i) {
    bool red = false;
    for (size_t j = 0; j < gens.size() && !red; ++j)
      if (j != i && divides(gens[j], gens[i]) && gens[j] != gens[i]) red = true;
    if (!red) mi.gens.push_back(gens[i]);
  }
  return mi;
}

bool is_squarefree(const MonomialIdeal& mi) {
  for (const Exp& g : mi.gens)
    for (int e : g)
      if (e > 1) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Toric generating sets
// ---------------------------------------------------------------------------

std::vector<BPoly> setpacking_toric_generators(const std::vector<std::vector<int>>& cliques, int d) {
  int k = static_cast<int>(cliques.size());
  std::vector<BPoly> gens;
  for (int q = 0; q < k; ++q) {
    if (cliques[q].empty()) throw InvalidInput("setpacking_toric_generators: empty clique");
    Exp lead(k + d, 0);
    lead[q] = 1;
    for (int v : cliques[q]) {
      if (v < 0 || v >= d) throw InvalidInput("setpacking_toric_generators: vertex out of range");
      lead[k + v] = 1;
    }
    gens.push_back(BPoly{std::move(lead), Exp(k + d, 0)});
  }
  return gens;
}

std::vector<BPoly> toric_ideal_generators(const IntMatrix& a) {
  int n = a.cols();
  IntMatrix k = integer_kernel_basis(a);
  // Lattice basis binomials in n+1 variables (t is the last variable), plus
  // t * x_1 ... x_n - 1; eliminating t computes the saturation
  // I_A = (I_lattice : (x_1...x_n)^inf).
  std::vector<BPoly> gens;
  for (int j = 0; j < k.cols(); ++j) {
    Exp plus(n + 1, 0), minus(n + 1, 0);
    for (int i = 0; i < n; ++i) {
      Int e = k.at(i, j);
      if (e > 0) plus[i] = static_cast<int>(e.get_si());
      if (e < 0) minus[i] = static_cast<int>(Int(-e).get_si());
    }
    if (plus == minus) continue;
    gens.push_back(BPoly{std::move(plus), std::move(minus)});
  }
  Exp tx(n + 1, 1);
  gens.push_back(BPoly{std::move(tx), Exp(n + 1, 0)});

  Order elim = block_order({n}, grevlex_order(), grevlex_order(), n + 1);
  std::vector<BPoly> gb = buchberger(std::move(gens), elim);
  std::vector<BPoly> out;
  for (const BPoly& f : gb) {
    if (f.lead[n] > 0) continue;
    if (f.trail && (*f.trail)[n] > 0) continue;
    Exp lead(f.lead.begin(), f.lead.begin() + n);
    if (f.is_monomial())
      throw InternalError("toric_ideal_generators: toric ideal contains a monomial");
    Exp trail(f.trail->begin(), f.trail->begin() + n);
    out.push_back(BPoly{std::move(lead), std::move(trail)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Oracle, condition (v), Conti-Traverso
// ---------------------------------------------------------------------------

MonomialIdeal nonoptimal_monomial_oracle(const Problem& p, int box) {
  const IntMatrix& a = p.matrix();
  int n = a.cols();
  std::map<IntVec, Rat> opt_cache;
  auto ip_opt = [&](const IntVec& b) -> Rat {
    auto it = opt_cache.find(b);
    if (it != opt_cache.end()) return it->second;
    auto res = ip_solve_exhaustive(a, p.cost(), b, std::nullopt);
    if (!res) throw InternalError("oracle: fiber of a feasible point became infeasible");
    opt_cache.emplace(b, res->value);
    return res->value;
  };

  std::vector<Exp> nonopt;
  Exp w(n, 0);
  while (true) {
    if (!std::all_of(w.begin(), w.end(), [](int x) { return x == 0; })) {
      IntVec wz(n);
      for (int i = 0; i < n; ++i) wz[i] = w[i];
      IntVec b = a.mul(wz);
      Rat cost = dot(p.cost(), wz);
      if (cost > ip_opt(b)) nonopt.push_back(w);
    }
    int k = 0;
    while (k < n) {
      if (++w[k] <= box) break;
      w[k] = 0;
      ++k;
    }
    if (k == n) break;
  }
  std::sort(nonopt.begin(), nonopt.end());
  MonomialIdeal mi;
  mi.nvars = n;
  for (size_t i = 0; i < nonopt.size(); ++i) {
    bool red = false;
    for (size_t j = 0; j < nonopt.size() && !red; ++j)
      if (j != i && divides(nonopt[j], nonopt[i]) && nonopt[j] != nonopt[i]) red = true;
    if (!red) mi.gens.push_back(nonopt[i]);
  }
  return mi;
}

bool cost_is_generic(const std::vector<BPoly>& gb, const RatVec& c) {
  for (const BPoly& g : gb) {
    if (g.is_monomial()) continue;
    Rat wl(0), wt(0);
    for (size_t i = 0; i < g.lead.size(); ++i) {
      if (g.lead[i]) wl += c[i] * g.lead[i];
      if ((*g.trail)[i]) wt += c[i] * (*g.trail)[i];
    }
    if (wl == wt) return false;
  }
  return true;
}

bool toric_route_available(const Problem& p) {
  for (const Rat& cj : p.cost())
    if (cj < 0) return false;
  // Fiber strata must be finite: the zero-cost columns must span a pointed
  // cone in the kernel sense (no nonzero nonnegative kernel vector of zero
  // cost), otherwise the completion procedure can walk forever.
  std::vector<int> zero_cols;
  for (int j = 0; j < p.cols(); ++j)
    if (p.cost()[j] == 0) zero_cols.push_back(j);
  if (zero_cols.empty()) return true;
  return cone_is_pointed(p.matrix().columns(zero_cols));
}

namespace {

std::vector<BPoly> generators_for(const Problem& p) {
  // Set packing systems have the closed-form generating set; everything else
  // goes through the lattice-basis saturation.
  return toric_ideal_generators(p.matrix());
}

}  // namespace

bool check_condition_v(const Problem& p) {
  if (!toric_route_available(p))
    throw Unsupported(
        "check_condition_v: no toric generating set usable under this cost order "
        "(needs c >= 0 and finite fiber strata)");
  std::vector<BPoly> gens = generators_for(p);
  Order ord = weight_order(p.cost(), lex_order());
  std::vector<BPoly> gb = buchberger(std::move(gens), ord);
  std::vector<BPoly> init = initial_ideal(gb, p.cost());
  MonomialIdeal mono = mono_of_initial(init, p.cols());
  return is_squarefree(mono);
}

Certificate tdi_check_via_toric(const Problem& p) {
  Certificate cert;
  cert.route = "toric";
  HilbertVerdict hv = is_hilbert_basis(ConeConfiguration{p.matrix()});
  if (!hv.is_basis) {
    cert.verdict = Verdict::kNotTdi;
    cert.hilbert_witness = hv.witness;
    return cert;
  }
  cert.verdict = check_condition_v(p) ? Verdict::kTdi : Verdict::kNotTdi;
  return cert;
}

bool conti_traverso_crosscheck(const Problem& p, int box) {
  if (!toric_route_available(p)) throw Unsupported("conti_traverso_crosscheck: toric route unavailable");
  Order ord = weight_order(p.cost(), lex_order());
  std::vector<BPoly> gb = buchberger(generators_for(p), ord);
  if (!cost_is_generic(gb, p.cost()))
    throw InvalidInput("conti_traverso_crosscheck: cost vector is not generic");

  std::vector<TestVector> tset;
  for (const BPoly& g : gb) {
    if (g.is_monomial()) throw InternalError("conti_traverso: monomial in a toric Groebner basis");
    if (!exp_disjoint(g.lead, *g.trail))
      throw InternalError("conti_traverso: non-primitive reduced basis element");
    IntVec plus(p.cols()), minus(p.cols());
    for (int i = 0; i < p.cols(); ++i) {
      plus[i] = g.lead[i];
      minus[i] = (*g.trail)[i];
    }
    tset.push_back(TestVector{std::move(plus), std::move(minus)});
  }

  const IntMatrix& a = p.matrix();
  std::map<IntVec, Rat> opt_cache;
  auto ip_opt = [&](const IntVec& b) {
    auto it = opt_cache.find(b);
    if (it != opt_cache.end()) return it->second;
    auto res = ip_solve_exhaustive(a, p.cost(), b, std::nullopt);
    if (!res) throw InternalError("conti_traverso: infeasible fiber of a feasible point");
    opt_cache.emplace(b, res->value);
    return res->value;
  };

  // Augmentation with the full basis reaches the optimum from every start.
  Exp w(p.cols(), 0);
  while (true) {
    IntVec u(p.cols());
    for (int i = 0; i < p.cols(); ++i) u[i] = w[i];
    IntVec b = a.mul(u);
    IntVec ured = augment_with(tset, u);
    if (dot(p.cost(), ured) != ip_opt(b)) return false;
    int k = 0;
    while (k < p.cols()) {
      if (++w[k] <= box) break;
      w[k] = 0;
      ++k;
    }
    if (k == p.cols()) break;
  }

  // Minimality: dropping any element strands its own lead exponent, which is
  // non-optimal (it generates the initial ideal) but reachable by no other
  // element of a reduced basis.
  for (size_t drop = 0; drop < tset.size(); ++drop) {
    std::vector<TestVector> rest;
    for (size_t j = 0; j < tset.size(); ++j)
      if (j != drop) rest.push_back(tset[j]);
    IntVec u = tset[drop].plus;
    IntVec stuck = augment_with(rest, u);
    if (stuck != u) return false;  // someone else applied: not minimal evidence
    if (dot(p.cost(), u) == ip_opt(a.mul(u))) return false;  // lead was optimal: not a test set issue
  }
  return true;
}

}  // namespace tdi
