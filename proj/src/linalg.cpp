#include "qcomb/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qcomb/errors.hpp"

namespace qcomb {

namespace {

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shape mismatch (" + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()) + ")");
  }
}

// Plain real arithmetic keeps the inner loops free of the C99 Annex G
// checks that std::complex multiplication carries.
inline void mac(double& re, double& im, const Complex& x, const Complex& y) {
  re += x.real() * y.real() - x.imag() * y.imag();
  im += x.real() * y.imag() + x.imag() * y.real();
}

inline void mac_conj(double& re, double& im, const Complex& x, const Complex& y) {
  // conj(x) * y
  re += x.real() * y.real() + x.imag() * y.imag();
  im += x.real() * y.imag() - x.imag() * y.real();
}

}  // namespace

void Tolerance::validate() const {
  if (!(verify_tol > 0.0) || !(compare_tol > 0.0)) {
    throw PreconditionError("tolerances must be strictly positive");
  }
}

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw DimensionError("CMatrix: " + std::to_string(entries_.size()) +
                         " entries do not fill a " + std::to_string(rows) + "x" +
                         std::to_string(cols) + " matrix");
  }
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("CMatrix: ragged row in literal");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex scalar) {
  for (auto& e : entries_) e *= scalar;
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(CMatrix a, Complex scalar) { return a *= scalar; }
CMatrix operator*(Complex scalar, CMatrix a) { return a *= scalar; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matrix product: inner dimensions " + std::to_string(a.cols()) +
                         " and " + std::to_string(b.rows()) + " differ");
  }
  const std::size_t n = a.rows(), m = b.cols(), inner = a.cols();
  std::vector<double> acc(2 * m);
  CMatrix out(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::size_t k = 0; k < inner; ++k) {
      const Complex x = a(i, k);
      if (x == Complex{}) continue;
      for (std::size_t j = 0; j < m; ++j) mac(acc[2 * j], acc[2 * j + 1], x, b(k, j));
    }
    for (std::size_t j = 0; j < m; ++j) out(i, j) = {acc[2 * j], acc[2 * j + 1]};
  }
  return out;
}

CMatrix dagger(const CMatrix& a) {
  CMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

CMatrix transpose(const CMatrix& a) {
  CMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

CMatrix conjugate(const CMatrix& a) {
  CMatrix out = a;
  for (auto& e : out.entries()) e = std::conj(e);
  return out;
}

CMatrix adjoint_product(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows()) {
    throw DimensionError("adjoint_product: row counts " + std::to_string(a.rows()) + " and " +
                         std::to_string(b.rows()) + " differ");
  }
  // (A†B)[i,j] = Σ_k conj(A[k,i]) B[k,j], accumulated row by row of A and B.
  const std::size_t n = a.cols(), m = b.cols();
  std::vector<double> acc(2 * n * m, 0.0);
  for (std::size_t k = 0; k < a.rows(); ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const Complex x = a(k, i);
      if (x == Complex{}) continue;
      double* row = acc.data() + 2 * i * m;
      for (std::size_t j = 0; j < m; ++j) mac_conj(row[2 * j], row[2 * j + 1], x, b(k, j));
    }
  }
  CMatrix out(n, m);
  for (std::size_t i = 0; i < n * m; ++i) out.entries()[i] = {acc[2 * i], acc[2 * i + 1]};
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t rb = b.rows(), cb = b.cols();
  CMatrix out(a.rows() * rb, a.cols() * cb);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < rb; ++k)
        for (std::size_t l = 0; l < cb; ++l) out(i * rb + k, j * cb + l) = a(i, j) * b(k, l);
  return out;
}

Complex trace(const CMatrix& a) {
  Complex t{};
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) t += a(i, i);
  return t;
}

Complex trace_inner(const CMatrix& a, const CMatrix& b) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw DimensionError("trace_inner: operands must be square of equal size");
  }
  double re = 0.0, im = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) mac_conj(re, im, ea[k], eb[k]);
  return {re, im};
}

double max_abs(const CMatrix& a) {
  double m = 0.0;
  for (const auto& e : a.entries()) m = std::max(m, std::abs(e));
  return m;
}

double frobenius_sq(const CMatrix& a) {
  double s = 0.0;
  for (const auto& e : a.entries()) s += std::norm(e);
  return s;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) m = std::max(m, std::abs(ea[k] - eb[k]));
  return m;
}

bool is_unitary(const CMatrix& a, const Tolerance& tol) {
  if (!a.is_square()) return false;
  const CMatrix id = CMatrix::identity(a.rows());
  return max_abs_diff(adjoint_product(a, a), id) <= tol.verify_tol &&
         max_abs_diff(a * dagger(a), id) <= tol.verify_tol;
}

std::optional<double> unitary_scalar(const CMatrix& a, const Tolerance& tol) {
  if (!a.is_square() || a.rows() == 0) return std::nullopt;
  CMatrix gram = adjoint_product(a, a);
  const double lambda = trace(gram).real() / static_cast<double>(a.rows());
  if (!(lambda > 0.0) || !std::isfinite(lambda)) return std::nullopt;
  for (std::size_t i = 0; i < gram.rows(); ++i) gram(i, i) -= lambda;
  if (max_abs(gram) > tol.verify_tol * lambda) return std::nullopt;
  return lambda;
}

bool proportional(const CMatrix& a, const CMatrix& b, const Tolerance& tol) {
  require_same_shape(a, b, "proportional");
  const double na = frobenius_sq(a), nb = frobenius_sq(b);
  if (na == 0.0 || nb == 0.0) return na == 0.0 && nb == 0.0;
  double re = 0.0, im = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) mac_conj(re, im, ea[k], eb[k]);
  return re * re + im * im >= (1.0 - tol.verify_tol) * na * nb;
}

bool commutes(const CMatrix& a, const CMatrix& b, const Tolerance& tol) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw DimensionError("commutes: operands must be square of equal size");
  }
  const double scale = std::max(1.0, max_abs(a) * max_abs(b));
  return max_abs_diff(a * b, b * a) <= tol.verify_tol * scale;
}

std::vector<std::size_t> unflatten_index(std::size_t flat, std::span<const std::size_t> dims) {
  std::vector<std::size_t> index(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    index[k] = flat % dims[k];
    flat /= dims[k];
  }
  return index;
}

CMatrix regroup(const CMatrix& t, std::span<const std::size_t> axis_dims,
                std::span<const std::size_t> perm, std::size_t out_rows, std::size_t out_cols) {
  const std::size_t total = std::accumulate(axis_dims.begin(), axis_dims.end(), std::size_t{1},
                                            std::multiplies<>());
  if (total != t.rows() * t.cols() || out_rows * out_cols != total) {
    throw DimensionError("regroup: axis dimensions do not match the matrix or output shape");
  }
  if (perm.size() != axis_dims.size()) throw DimensionError("regroup: permutation has wrong length");
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t p : perm) {
    if (p >= perm.size() || seen[p]) throw DimensionError("regroup: not a permutation");
    seen[p] = true;
  }

  const std::size_t rank = axis_dims.size();
  std::vector<std::size_t> in_strides(rank, 1);
  for (std::size_t k = rank; k-- > 1;) in_strides[k - 1] = in_strides[k] * axis_dims[k];
  std::vector<std::size_t> out_dims(rank);
  for (std::size_t k = 0; k < rank; ++k) out_dims[k] = axis_dims[perm[k]];

  CMatrix out(out_rows, out_cols);
  std::vector<std::size_t> counter(rank, 0);
  auto src = t.entries();
  auto dst = out.entries();
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t from = 0;
    for (std::size_t k = 0; k < rank; ++k) from += counter[k] * in_strides[perm[k]];
    dst[flat] = src[from];
    for (std::size_t k = rank; k-- > 0;) {
      if (++counter[k] < out_dims[k]) break;
      counter[k] = 0;
    }
  }
  return out;
}

}  // namespace qcomb
