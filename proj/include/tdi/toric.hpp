#pragma once

#include <functional>
#include <optional>

#include "tdi/geometry.hpp"
#include "tdi/testset.hpp"

namespace tdi {

/// Exponent vector of a monomial x^u.
using Exp = std::vector<int>;

/// A monic pure difference x^lead - x^trail (trail may be the zero exponent,
/// i.e. the constant 1), or a single monomial x^lead when trail is absent.
/// All ideal computations in this library stay inside this class: S-pairs
/// and remainders of pure differences are pure differences, and coefficient
/// arithmetic never leaves {+1, -1}.
struct BPoly {
  Exp lead;
  std::optional<Exp> trail;

  bool is_monomial() const { return !trail.has_value(); }
  bool operator==(const BPoly& o) const { return lead == o.lead && trail == o.trail; }
};

/// A total semigroup order on exponent vectors: returns <0, 0, >0.
using Order = std::function<int(const Exp&, const Exp&)>;

Order lex_order();
Order grevlex_order();
/// Grevlex with one variable demoted to the very end (Bayer-Stillman
/// saturation orders).
Order grevlex_var_last(int var);
/// Weight vector first, ties broken by `tie`. The weights may be rational.
Order weight_order(RatVec w, Order tie);
/// The order of a cost vector c + sign * (delta, delta^2, ..., delta^n) for an
/// infinitesimally small delta > 0: integer part first, then the first index
/// where the exponents differ decides with the given sign, then lex. Exact
/// for the geometric perturbations used here as long as coordinate sums stay
/// below 1/delta, which the callers guarantee by construction.
Order eps_weight_order(RatVec base, int sign);
/// Compare the exponents restricted to `first_block` by `hi`; ties fall
/// through to the complement compared by `lo`. This is an elimination order
/// for the variables in `first_block`.
Order block_order(std::vector<int> first_block, Order hi, Order lo, int nvars);

// --- basic exponent helpers -------------------------------------------------

bool divides(const Exp& a, const Exp& b);  // a <= b componentwise
inline bool is_zero_exp(const Exp& e) {
  for (int x : e)
    if (x) return false;
  return true;
}
Exp exp_add(const Exp& a, const Exp& b);
Exp exp_sub(const Exp& a, const Exp& b);
Exp exp_lcm(const Exp& a, const Exp& b);
bool exp_disjoint(const Exp& a, const Exp& b);

/// Reduced Groebner basis of the ideal generated by binomials/monomials with
/// respect to `ord`. Elements come back monic, fully tail-reduced, and sorted
/// by leading term.
std::vector<BPoly> buchberger(std::vector<BPoly> gens, const Order& ord);

/// Normal form of f modulo the (Groebner) basis g.
BPoly normal_form(BPoly f, const std::vector<BPoly>& g, const Order& ord);
bool reduces_to_zero(const BPoly& f, const std::vector<BPoly>& g, const Order& ord);

struct MonomialIdeal {
  int nvars = 0;
  std::vector<Exp> gens;  // divisibility antichain, sorted
};

/// The generating set S of in_c(I) read off a reduced Groebner basis
/// with respect to the order (c, tie-break): strict leads contribute their
/// lead monomial, c-tied binomials contribute the whole binomial.
std::vector<BPoly> initial_ideal(const std::vector<BPoly>& gb, const RatVec& c);

/// Minimal generators of mono(J), the ideal of all monomials inside
/// J = <init_gens>: double the variables with homogenizing partners,
/// multi-homogenize, saturate by the partner variables, eliminate them, and
/// read off the pure-original monomials.
MonomialIdeal mono_of_initial(const std::vector<BPoly>& init_gens, int nvars);

/// True iff every minimal generator is square-free.
bool is_squarefree(const MonomialIdeal& mi);

/// Divisibility-minimalizes and sorts a monomial generator list.
MonomialIdeal minimalize_monomials(std::vector<Exp> gens, int nvars);

/// One binomial z * v_{i_1} ... v_{i_r} - 1 per clique, over the variable
/// order (clique variables, then vertex variables).
std::vector<BPoly> setpacking_toric_generators(const std::vector<std::vector<int>>& cliques, int d);

/// Generators of the toric ideal I_A for an arbitrary configuration: lattice
/// basis binomials saturated by the product of all variables (one extra
/// homogenizing variable, then elimination).
std::vector<BPoly> toric_ideal_generators(const IntMatrix& a);

/// Independent brute-force oracle for Lemma-style validation: the minimal
/// generators of < x^w : w in the box is a non-optimal solution of
/// IP_{A,c}(Aw) >, by exhaustive enumeration and divisibility reduction.
MonomialIdeal nonoptimal_monomial_oracle(const Problem& p, int box);

/// Composes the toric route: generating set -> Groebner basis under the cost
/// order -> initial ideal -> mono -> square-freeness. Throws Unsupported when
/// no generating set usable under the cost order is available.
bool check_condition_v(const Problem& p);

/// For generic c: checks that the reduced Groebner basis, read as vectors
/// u+ - u-, is a minimal test set: augmentation reaches the exhaustive IP
/// optimum from every feasible start in the box, and dropping any single
/// element loses that property.
bool conti_traverso_crosscheck(const Problem& p, int box);

/// True iff c is generic for A in the Groebner sense: the reduced basis under
/// (c, lex) has no c-tied element, i.e. in_c(I_A) is a monomial ideal.
bool cost_is_generic(const std::vector<BPoly>& gb, const RatVec& c);

/// Availability gate for the toric route under the order (c, tie): c must be
/// componentwise nonnegative and no nonzero nonnegative kernel vector of A
/// may have zero cost (this makes every fiber stratum finite, so the
/// completion procedure terminates).
bool toric_route_available(const Problem& p);

/// Toric route verdict: A is a Hilbert basis and mono(in_c(I_A)) has a
/// square-free generating set ((i) <=> Hilbert + (v)).
Certificate tdi_check_via_toric(const Problem& p);

}  // namespace tdi
