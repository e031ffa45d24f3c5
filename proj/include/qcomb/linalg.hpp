#pragma once

// Dense complex matrices and the handful of operations every structure in
// this library is built from. Matrices are row-major; composite indices are
// always flattened with the first-listed index major, i.e. (i, j) -> i*dim_j + j.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace qcomb {

using Complex = std::complex<double>;

/// Tolerances used by verifiers (`verify_tol`) and by exact-comparison
/// helpers such as fixture matching and equivalence witnesses (`compare_tol`).
struct Tolerance {
  double verify_tol = 1e-10;
  double compare_tol = 1e-12;

  /// Throws PreconditionError unless both tolerances are strictly positive.
  void validate() const;
};

class CMatrix {
 public:
  CMatrix() = default;
  /// Zero matrix.
  CMatrix(std::size_t rows, std::size_t cols);
  /// Takes `entries` in row-major order; throws DimensionError on a length mismatch.
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  /// Nested-list literal, one inner list per row.
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static CMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<Complex> entries() noexcept { return entries_; }
  std::span<const Complex> entries() const noexcept { return entries_; }

  /// Bitwise entry equality (no tolerance).
  friend bool operator==(const CMatrix& a, const CMatrix& b) = default;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(Complex scalar);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(CMatrix a, Complex scalar);
CMatrix operator*(Complex scalar, CMatrix a);
/// Matrix product; throws DimensionError if inner dimensions differ.
CMatrix operator*(const CMatrix& a, const CMatrix& b);

/// Conjugate transpose.
CMatrix dagger(const CMatrix& a);
CMatrix transpose(const CMatrix& a);
CMatrix conjugate(const CMatrix& a);

/// `dagger(a) * b` without materialising the adjoint.
CMatrix adjoint_product(const CMatrix& a, const CMatrix& b);

/// Kronecker product with the first factor major:
/// (A⊗B)[i*rB + k, j*cB + l] = A[i,j] * B[k,l].
CMatrix kron(const CMatrix& a, const CMatrix& b);

Complex trace(const CMatrix& a);

/// Tr(A†B). Throws DimensionError unless both are square of equal size.
Complex trace_inner(const CMatrix& a, const CMatrix& b);

/// Largest entry modulus.
double max_abs(const CMatrix& a);
/// Squared Frobenius norm.
double frobenius_sq(const CMatrix& a);
/// max |a_ij - b_ij|; throws DimensionError on a shape mismatch.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

bool is_unitary(const CMatrix& a, const Tolerance& tol = {});

/// λ > 0 with A†A ≈ λI (λ = mean diagonal of A†A, residual ≤ verify_tol·λ),
/// or nullopt. Non-square input yields nullopt.
std::optional<double> unitary_scalar(const CMatrix& a, const Tolerance& tol = {});

/// Cauchy–Schwarz equality test: |Tr(A†B)|² ≥ (1 − verify_tol)·‖A‖²‖B‖².
/// A zero matrix is proportional only to another zero matrix.
bool proportional(const CMatrix& a, const CMatrix& b, const Tolerance& tol = {});

/// ‖AB − BA‖_max ≤ verify_tol·max(1, ‖A‖_max·‖B‖_max).
bool commutes(const CMatrix& a, const CMatrix& b, const Tolerance& tol = {});

/// Reinterprets the entries of `t` as a tensor with axes `axis_dims`
/// (row axes first, then column axes, first axis major), permutes the axes so
/// that output axis k is input axis `perm[k]`, and reflattens to
/// `out_rows × out_cols`. Throws DimensionError on inconsistent sizes.
CMatrix regroup(const CMatrix& t, std::span<const std::size_t> axis_dims,
                std::span<const std::size_t> perm, std::size_t out_rows, std::size_t out_cols);

/// Flattens a multi-index (first index major). No bounds checking.
inline std::size_t flat_index(std::initializer_list<std::size_t> index,
                              std::initializer_list<std::size_t> dims) {
  std::size_t flat = 0;
  auto d = dims.begin();
  for (std::size_t i : index) flat = flat * *d++ + i;
  return flat;
}

/// Inverse of flat_index over arbitrary dims.
std::vector<std::size_t> unflatten_index(std::size_t flat, std::span<const std::size_t> dims);

}  // namespace qcomb
