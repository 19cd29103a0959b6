#pragma once

#include <optional>

#include "tdi/geometry.hpp"

namespace tdi {

/// A rational cone given by integer generators B (as matrix columns).
struct ConeConfiguration {
  IntMatrix generators;
};

struct HilbertVerdict {
  bool is_basis;
  /// When is_basis is false: a lattice point of cone(B) not in NB.
  std::optional<IntVec> witness;
  /// Pointed case: the unique minimal Hilbert basis of cone(B).
  /// Non-pointed case: the monoid generating set that was membership-tested.
  std::vector<IntVec> minimal_basis;
};

/// The unique minimal Hilbert basis of a pointed cone(B). Throws Unsupported
/// ("non-pointed") when the cone contains a line, and InvalidInput when some
/// generator is zero.
std::vector<IntVec> hilbert_basis(const ConeConfiguration& cfg);

/// Decides whether the columns of B themselves form a Hilbert basis, i.e.
/// NB = cone(B) ∩ Z^d. Pointed cones are tested against the minimal Hilbert
/// basis; non-pointed cones against a finite monoid generating set obtained
/// by splitting off the lineality lattice.
HilbertVerdict is_hilbert_basis(const ConeConfiguration& cfg);

struct CellsHilbertResult {
  bool all_hilbert;
  std::optional<Cell> failing_cell;
  std::optional<IntVec> witness;
};

/// Tests is_hilbert_basis(A_sigma) for every maximal cell sigma of s.
/// Unimodular simplicial cells pass without search (Cramer).
CellsHilbertResult cells_are_hilbert(const Problem& p, const Subdivision& s);

/// Complete decision of target ∈ NB (nonnegative integer span of the columns
/// of b). Coordinates are bounded by exact LP maxima where the fiber is
/// bounded and by a Borosh-Treybig box otherwise, so a miss is a proof of
/// non-membership.
bool in_natural_span(const IntMatrix& b, const IntVec& target);

/// True iff cone(B) contains no line, i.e. no nonzero x >= 0 with Bx = 0.
bool cone_is_pointed(const IntMatrix& b);

}  // namespace tdi
