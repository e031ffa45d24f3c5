#pragma once

// Diagonal-composition constructions of Hadamard matrices, quantum Latin
// squares and unitary error bases. Each function evaluates its index formula
// directly; composite indices written together (ab, de, ...) are flattened
// first-listed-major, so e.g. the row label (d, e) with e ∈ [m] is d·m + e.
// The element labels of each output UEB record the composite shape.
//
// Every construction verifies its output and throws VerificationError if the
// residual exceeds `tol.verify_tol`; inputs of the wrong shape raise
// DimensionError before any arithmetic happens.

#include <span>
#include <vector>

#include "qcomb/structures.hpp"

namespace qcomb {

/// Q_{a,b,c} = H_{a,c} J_{c,b} / √n.
QuantumLatinSquare had_had_to_qls(const HadamardMatrix& h, const HadamardMatrix& j,
                                  const Tolerance& tol = {});

/// Q_{a,b,cd} = Σ_k U_{a,c,k} V_{b,k,d} / √n, an n²-dimensional QLS.
QuantumLatinSquare ueb_ueb_to_qls(const UnitaryErrorBasis& u, const UnitaryErrorBasis& v,
                                  const Tolerance& tol = {});

/// H_{ab,cd} = J^b_{a,c} K^c_{b,d} for J an m-controlled family of n-dimensional
/// Hadamards and K an n-controlled family of m-dimensional ones.
HadamardMatrix hosoya_suzuki(const HadamardFamily& j, const HadamardFamily& k,
                             const Tolerance& tol = {});

/// hosoya_suzuki with J held constant over the m controls.
HadamardMatrix dita(const HadamardMatrix& j, const HadamardFamily& k, const Tolerance& tol = {});

/// U_{ab,cd,ef} = V^b_{a,d,e} W_{b,c,f}; V is an m²-controlled family of
/// n-dimensional UEBs and W an m-dimensional UEB. Labels (a, b).
UnitaryErrorBasis controlled_ueb_tensor(const UebFamily& v, const UnitaryErrorBasis& w,
                                        const Tolerance& tol = {});

/// Quantum shift-and-multiply: U_{ab,c,d} = H^b_{a,d} Q_{b,d,c}. Labels (a, b).
UnitaryErrorBasis qsm(const HadamardFamily& h, const QuantumLatinSquare& q,
                      const Tolerance& tol = {});

/// U_{ab,c,d} = H^b_{a,d} F_{b,c} G_{c,d} / √n; evaluated in the same order as
/// qsm(h, had_had_to_qls(f, g)) so the two agree bit for bit.
UnitaryErrorBasis triple_hadamard_ueb(const HadamardFamily& h, const HadamardMatrix& f,
                                      const HadamardMatrix& g, const Tolerance& tol = {});

/// U_{abc,de,fg} = H^{b,c}_{a,f} V^{c,f}_{b,e,g} Q_{c,f,d}; H is (m², n)-controlled
/// Had_n, V is (n, n)-controlled UEB_m, Q is QLS_n. Output dimension nm.
UnitaryErrorBasis ternary_a(const HadamardFamily& h, const UebFamily& v,
                            const QuantumLatinSquare& q, const Tolerance& tol = {});

/// U_{abc,de,fg} = H^{b,c}_{a,eg} P^{c,g}_{e,b,f} Q_{c,g,d}; H is (n, m)-controlled
/// Had_nm, P is (m, m)-controlled QLS_n, Q is QLS_m. Output dimension nm.
UnitaryErrorBasis ternary_b(const HadamardFamily& h, const QlsFamily& p,
                            const QuantumLatinSquare& q, const Tolerance& tol = {});

/// U_{ab,cd,ef} = Σ_{r∈[m]} H^b_{a,e} V_{b,c,rf} W_{e,r,d}; H is n²m²-controlled
/// Had_{m²}, V is UEB_{nm}, W is UEB_m. Output dimension nm².
UnitaryErrorBasis ternary_c(const HadamardFamily& h, const UnitaryErrorBasis& v,
                            const UnitaryErrorBasis& w, const Tolerance& tol = {});

/// U_{abc,def,gh} = Σ_{r∈[n]} V^{b,c}_{a,rf,g} Q^c_{b,r,d} W_{rc,e,h}; V is
/// (n, p)-controlled UEB_{nm}, Q is p-controlled QLS_n, W is UEB_{√(np)}.
/// Throws PreconditionError unless np is a perfect square.
UnitaryErrorBasis ternary_d(const UebFamily& v, const QlsFamily& q, const UnitaryErrorBasis& w,
                            const Tolerance& tol = {});

/// U_{abc,de,fg} = Σ_{r∈[n²]} H^{b,c}_{a,r} P_{c,r,d} Q_{r,b,f} V_{r,e,g}; H is
/// (n², n²)-controlled Had_{n²}, P and Q are QLS_{n²}, V is UEB_n. Output dimension n³.
UnitaryErrorBasis quad_a(const HadamardFamily& h, const QuantumLatinSquare& p,
                         const QuantumLatinSquare& q, const UnitaryErrorBasis& v,
                         const Tolerance& tol = {});

/// U_{abcd,ef,gh} = (1/n) Σ_{r,s} A_{f,h} B_{s,f} C_{r,h} D_{s,r} H^d_{a,s} K^c_{b,r}
/// Q_{d,s,e} P_{r,c,g}. Output dimension n².
UnitaryErrorBasis octo_b(const HadamardMatrix& a, const HadamardMatrix& b, const HadamardMatrix& c,
                         const HadamardMatrix& d, const HadamardFamily& h, const HadamardFamily& k,
                         const QuantumLatinSquare& q, const QuantumLatinSquare& p,
                         const Tolerance& tol = {});

/// The arity-m member of the infinite family, m = qs.size() ≥ 1:
/// U_{a r₀, c₁…c_m d, e f} = Σ_{r₁…r_m} V^{r₀}_{a, r₁…r_m, e} Π_i Q_i[r_{i−1}, r_i, c_i] W_{r_m, d, f}.
/// V is an n²-controlled family of n^{2m}-dimensional UEBs, each Q_i is QLS_{n²}
/// and W is UEB_n. Output dimension n^{2m+1}, labels (a, r₀).
UnitaryErrorBasis f_family(const UebFamily& v, std::span<const QuantumLatinSquare> qs,
                           const UnitaryErrorBasis& w, const Tolerance& tol = {});

}  // namespace qcomb
