#pragma once

// Rotation-based biunitarity checks. Where the verifiers in structures.hpp
// evaluate each defining sum directly, these rebuild the quarter-rotated
// matrix with `regroup` and ask `unitary_scalar` for the horizontal scalar λ.
// Both routes must agree; the tests hold them to that.

#include "qcomb/linalg.hpp"
#include "qcomb/report.hpp"
#include "qcomb/structures.hpp"

namespace qcomb {

/// Vertical: unimodular entries. Horizontal: H and its conjugate transpose are
/// each √λ times a unitary, with λ = n.
BiunitaryReport hadamard_rotation_check(const CMatrix& h, const Tolerance& tol = {});

/// Vertical: each row block b ↦ Q_{a,b} is unitary. Horizontal: the column
/// blocks a ↦ Q_{a,b}, obtained by swapping the grid axes, are unitary (λ = 1).
BiunitaryReport qls_rotation_check(const QlsGrid& grid, const Tolerance& tol = {});

/// Vertical: each element unitary. Horizontal: M[a,(i,j)] = U_{a,i,j} is
/// √λ times a unitary with λ = n.
BiunitaryReport ueb_rotation_check(std::span<const CMatrix> elements, const Tolerance& tol = {});

}  // namespace qcomb
