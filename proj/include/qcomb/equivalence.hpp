#pragma once

// Equivalence of Hadamard matrices and unitary error bases, plus the two
// equivalence-invariant obstructions for UEBs: closure under adjoints up to
// phase, and the size of the largest pairwise-commuting subset.

#include <cstddef>
#include <optional>
#include <vector>

#include "qcomb/structures.hpp"

namespace qcomb {

/// Largest dimension accepted by hadamard_equivalent (the search is over n!² pairs).
inline constexpr std::size_t kMaxBruteForceHadamard = 6;
/// Largest element count accepted by max_commuting_subset.
inline constexpr std::size_t kMaxCliqueVertices = 256;

/// Rescales rows and columns by phases so the first row and column are all ones.
HadamardMatrix dephase_hadamard(const HadamardMatrix& h);

/// W_{a,b} = c_a d_b H_{σ(a),τ(b)}.
struct HadEquivalenceWitness {
  std::vector<std::size_t> row_perm;  // σ
  std::vector<std::size_t> col_perm;  // τ
  std::vector<Complex> row_phases;    // c_a
  std::vector<Complex> col_phases;    // d_b

  /// Applies the witness to H, producing the W it certifies.
  CMatrix apply(const CMatrix& h) const;
};

/// Exhaustive search over (σ, τ); the phases are forced by the first row and
/// column. Both inputs are verified first (VerificationError if either is not
/// a Hadamard matrix). Throws CapabilityError above kMaxBruteForceHadamard and
/// DimensionError for unequal sizes. Matches are judged at `tol.compare_tol`.
std::optional<HadEquivalenceWitness> hadamard_equivalent(const CMatrix& h, const CMatrix& w,
                                                         const Tolerance& tol = {});

/// Left-multiplies every element by the adjoint of element `pivot`, which
/// becomes the identity. Throws DimensionError if `pivot` is out of range.
UnitaryErrorBasis ueb_normalize(const UnitaryErrorBasis& u, std::size_t pivot,
                                const Tolerance& tol = {});

struct AdjointClosure {
  bool closed = true;
  /// First element whose adjoint is proportional to no element.
  std::optional<std::size_t> witness;
};

AdjointClosure adjoint_closed_up_to_phase(const UnitaryErrorBasis& u, const Tolerance& tol = {});

/// Graph on UEB elements with an edge between each commuting pair.
struct CommGraph {
  std::vector<std::size_t> vertices;  // element index of each vertex
  std::vector<std::vector<bool>> adjacency;
  bool identity_excluded = false;

  std::size_t size() const noexcept { return vertices.size(); }
  bool adjacent(std::size_t i, std::size_t j) const { return adjacency[i][j]; }
  std::size_t edge_count() const;
};

/// With `exclude_identity`, elements proportional to the identity get no vertex.
CommGraph commutativity_graph(const UnitaryErrorBasis& u, const Tolerance& tol = {},
                              bool exclude_identity = false);

/// Lexicographically least maximum clique, as ascending vertex positions.
/// Exact branch and bound; throws CapabilityError above kMaxCliqueVertices.
std::vector<std::size_t> max_clique(const CommGraph& graph);

struct CommutingSubset {
  std::size_t size = 0;
  std::vector<std::size_t> elements;  // element indices, ascending
};

/// Largest set of pairwise-commuting elements, identity-proportional ones included.
CommutingSubset max_commuting_subset(const UnitaryErrorBasis& u, const Tolerance& tol = {});

}  // namespace qcomb
