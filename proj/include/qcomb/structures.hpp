#pragma once

// Validated structure types: complex Hadamard matrices, quantum Latin squares,
// unitary error bases, classical Latin squares, and controlled families of
// these. Each wrapper can only be obtained through a verifying factory, so a
// value of the type is proof that its defining equations hold.
//
// Index conventions (0-based in code):
//   Hadamard      H(a, b)
//   QLS           Q(a, b, i) = <i|Q_{a,b}>, a is the row of the grid
//   UEB           U(k, i, j) = <i|U_k|j>
//   families      items flattened row-major over the control indices

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qcomb/errors.hpp"
#include "qcomb/linalg.hpp"
#include "qcomb/report.hpp"

namespace qcomb {

enum class StructureKind { hadamard, qls, ueb, latin, controlled };

std::string_view to_string(StructureKind kind);
/// Throws ParseError on an unknown name.
StructureKind parse_kind(std::string_view name);

/// Unvalidated inputs, as read from files or assembled by hand.
using QlsGrid = std::vector<std::vector<std::vector<Complex>>>;  // grid[a][b][i]
using LatinGrid = std::vector<std::vector<std::size_t>>;         // 0-based symbols

struct UebCandidate {
  std::vector<CMatrix> elements;
  /// Shape of the composite element label; empty means a single index.
  std::vector<std::size_t> label_dims;

  friend bool operator==(const UebCandidate&, const UebCandidate&) = default;
};

using ItemCandidate = std::variant<CMatrix, QlsGrid, UebCandidate>;

struct FamilyCandidate {
  std::vector<std::size_t> control_dims;
  StructureKind base_kind = StructureKind::hadamard;
  std::vector<ItemCandidate> items;

  friend bool operator==(const FamilyCandidate&, const FamilyCandidate&) = default;
};

// Verifiers. Gram-type residuals are reported relative to the expected
// scalar (n for Hadamard rows and UEB traces), entrywise ones as absolute.

/// |H_ij| = 1, Σ_k H_ik conj(H_jk) = nδ_ij and Σ_k conj(H_ki) H_kj = nδ_ij.
BiunitaryReport verify_hadamard(const CMatrix& h, const Tolerance& tol = {});
/// Every row {Q_{a,b} | b} and every column {Q_{a,b} | a} is orthonormal.
BiunitaryReport verify_qls(const QlsGrid& grid, const Tolerance& tol = {});
/// n² unitary n×n matrices with Tr(U_a†U_b) = nδ_ab.
BiunitaryReport verify_ueb(std::span<const CMatrix> elements, const Tolerance& tol = {});
/// Applies the base verifier to every item; reports the first failing item.
BiunitaryReport verify_family(const FamilyCandidate& family, const Tolerance& tol = {});

class HadamardMatrix {
 public:
  /// Throws VerificationError if `m` is not a complex Hadamard matrix.
  static HadamardMatrix from_matrix(CMatrix m, const Tolerance& tol = {});

  std::size_t dim() const noexcept { return m_.rows(); }
  const CMatrix& matrix() const noexcept { return m_; }
  const Complex& operator()(std::size_t a, std::size_t b) const { return m_(a, b); }

  friend bool operator==(const HadamardMatrix&, const HadamardMatrix&) = default;

 private:
  explicit HadamardMatrix(CMatrix m) : m_(std::move(m)) {}
  CMatrix m_;
};

class QuantumLatinSquare {
 public:
  static QuantumLatinSquare from_grid(const QlsGrid& grid, const Tolerance& tol = {});
  /// `coefficients` holds Q(a, b, i) flattened with a major, length n³.
  static QuantumLatinSquare from_coefficients(std::size_t n, std::vector<Complex> coefficients,
                                              const Tolerance& tol = {});

  std::size_t dim() const noexcept { return n_; }
  const Complex& operator()(std::size_t a, std::size_t b, std::size_t i) const {
    return coeffs_[(a * n_ + b) * n_ + i];
  }
  std::span<const Complex> vector(std::size_t a, std::size_t b) const {
    return std::span<const Complex>(coeffs_).subspan((a * n_ + b) * n_, n_);
  }
  std::span<const Complex> coefficients() const noexcept { return coeffs_; }
  QlsGrid grid() const;

  friend bool operator==(const QuantumLatinSquare&, const QuantumLatinSquare&) = default;

 private:
  QuantumLatinSquare(std::size_t n, std::vector<Complex> coeffs)
      : n_(n), coeffs_(std::move(coeffs)) {}
  std::size_t n_ = 0;
  std::vector<Complex> coeffs_;
};

class UnitaryErrorBasis {
 public:
  /// `label_dims`, if given, must multiply to n² and describes how element
  /// indices decompose into composite labels (first component major).
  static UnitaryErrorBasis from_elements(std::vector<CMatrix> elements,
                                         std::vector<std::size_t> label_dims = {},
                                         const Tolerance& tol = {});

  std::size_t dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const CMatrix& operator[](std::size_t k) const { return elements_[k]; }
  std::span<const CMatrix> elements() const noexcept { return elements_; }
  const std::vector<std::size_t>& label_dims() const noexcept { return label_dims_; }

  /// 0-based composite label of element k.
  std::vector<std::size_t> label(std::size_t k) const;
  /// Element index of a 0-based composite label; throws DimensionError if out of range.
  std::size_t index_of(std::span<const std::size_t> label) const;
  std::size_t index_of(std::initializer_list<std::size_t> label) const {
    return index_of(std::span<const std::size_t>(label.begin(), label.size()));
  }

  friend bool operator==(const UnitaryErrorBasis&, const UnitaryErrorBasis&) = default;

 private:
  UnitaryErrorBasis(std::size_t n, std::vector<CMatrix> elements, std::vector<std::size_t> dims)
      : n_(n), elements_(std::move(elements)), label_dims_(std::move(dims)) {}
  std::size_t n_ = 0;
  std::vector<CMatrix> elements_;
  std::vector<std::size_t> label_dims_;
};

class LatinSquare {
 public:
  /// Throws VerificationError unless every row and column is a permutation of [n].
  static LatinSquare from_cells(LatinGrid cells);

  std::size_t dim() const noexcept { return cells_.size(); }
  std::size_t operator()(std::size_t a, std::size_t b) const { return cells_[a][b]; }
  const LatinGrid& cells() const noexcept { return cells_; }

 private:
  explicit LatinSquare(LatinGrid cells) : cells_(std::move(cells)) {}
  LatinGrid cells_;
};

namespace detail {
inline std::size_t structure_dim(const HadamardMatrix& h) { return h.dim(); }
inline std::size_t structure_dim(const QuantumLatinSquare& q) { return q.dim(); }
inline std::size_t structure_dim(const UnitaryErrorBasis& u) { return u.dim(); }
}  // namespace detail

/// An ordered list of structures indexed by one or more control indices.
template <class T>
class ControlledFamily {
 public:
  ControlledFamily(std::vector<std::size_t> control_dims, std::vector<T> items)
      : control_dims_(std::move(control_dims)), items_(std::move(items)) {
    std::size_t count = 1;
    for (std::size_t d : control_dims_) count *= d;
    if (control_dims_.empty() || count != items_.size()) {
      throw DimensionError("controlled family: " + std::to_string(items_.size()) +
                           " items do not match the control dimensions");
    }
    for (const T& item : items_) {
      if (detail::structure_dim(item) != detail::structure_dim(items_.front())) {
        throw DimensionError("controlled family: items have different dimensions");
      }
    }
  }

  /// Every control value maps to a copy of `item`.
  static ControlledFamily constant(const T& item, std::vector<std::size_t> control_dims) {
    std::size_t count = 1;
    for (std::size_t d : control_dims) count *= d;
    return ControlledFamily(std::move(control_dims), std::vector<T>(count, item));
  }

  const std::vector<std::size_t>& control_dims() const noexcept { return control_dims_; }
  std::size_t size() const noexcept { return items_.size(); }
  std::size_t item_dim() const { return detail::structure_dim(items_.front()); }
  const std::vector<T>& items() const noexcept { return items_; }

  const T& operator[](std::size_t flat) const { return items_[flat]; }
  /// Item at a full multi-index of control values; no bounds checking.
  const T& at(std::initializer_list<std::size_t> controls) const {
    std::size_t flat = 0;
    auto d = control_dims_.begin();
    for (std::size_t c : controls) flat = flat * *d++ + c;
    return items_[flat];
  }

 private:
  std::vector<std::size_t> control_dims_;
  std::vector<T> items_;
};

using HadamardFamily = ControlledFamily<HadamardMatrix>;
using QlsFamily = ControlledFamily<QuantumLatinSquare>;
using UebFamily = ControlledFamily<UnitaryErrorBasis>;

// Conversions between validated and candidate forms.
CMatrix to_candidate(const HadamardMatrix& h);
QlsGrid to_candidate(const QuantumLatinSquare& q);
UebCandidate to_candidate(const UnitaryErrorBasis& u);
template <class T>
FamilyCandidate to_candidate(const ControlledFamily<T>& family);

/// Validates every item; throws VerificationError naming the first bad item,
/// or DimensionError if the base kind does not match T.
template <class T>
ControlledFamily<T> family_from_candidate(const FamilyCandidate& family, const Tolerance& tol = {});

// Generators.

/// F_n[j,k] = exp(2πi·jk/n). Throws DimensionError for n = 0.
HadamardMatrix fourier(std::size_t n);
/// diag(row_phases)·H·diag(col_phases); phases must be unimodular.
HadamardMatrix phase_twist(const HadamardMatrix& h, std::span<const Complex> row_phases,
                           std::span<const Complex> col_phases);
/// L[a,b] = (a + b) mod n.
LatinSquare cyclic_latin(std::size_t n);
/// Q_{a,b} = e_{L[a,b]}.
QuantumLatinSquare qls_from_latin(const LatinSquare& latin);
/// Elements X^a Z^b for the cyclic shift X and clock Z = diag(exp(2πik/n)),
/// labelled (a, b).
UnitaryErrorBasis pauli_ueb(std::size_t n);

}  // namespace qcomb
