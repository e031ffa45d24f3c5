#include "qcomb/biunitarity.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace qcomb {

namespace {

constexpr double kFailed = 1.0;  // residual recorded when no scalar exists

// Residual of `lambda` against the expected closed form, relative to it.
double lambda_residual(const std::optional<double>& lambda, double expected) {
  return lambda ? std::abs(*lambda - expected) / expected : kFailed;
}

}  // namespace

BiunitaryReport hadamard_rotation_check(const CMatrix& h, const Tolerance& tol) {
  if (!h.is_square() || h.rows() == 0) {
    return BiunitaryReport::structural_failure("Hadamard matrix must be square and non-empty");
  }
  const double n = static_cast<double>(h.rows());
  BiunitaryReport r;
  double modulus = 0.0;
  for (const auto& e : h.entries()) modulus = std::max(modulus, std::abs(std::abs(e) - 1.0));
  r.vertical_ok = r.record("modulus", modulus, tol.verify_tol);

  const auto straight = unitary_scalar(h, tol);
  const auto rotated = unitary_scalar(dagger(h), tol);
  const bool ok_straight = r.record("lambda", lambda_residual(straight, n), tol.verify_tol);
  const bool ok_rotated = r.record("lambda_rotated", lambda_residual(rotated, n), tol.verify_tol);
  r.horizontal_ok = ok_straight && ok_rotated;
  if (r.horizontal_ok) r.lambda = *straight;
  return r;
}

BiunitaryReport qls_rotation_check(const QlsGrid& grid, const Tolerance& tol) {
  const std::size_t n = grid.size();
  if (n == 0) return BiunitaryReport::structural_failure("quantum Latin square is empty");
  std::vector<Complex> flat;
  flat.reserve(n * n * n);
  for (const auto& row : grid) {
    if (row.size() != n) return BiunitaryReport::structural_failure("grid is not square");
    for (const auto& v : row) {
      if (v.size() != n) {
        return BiunitaryReport::structural_failure("vector length differs from grid size");
      }
      flat.insert(flat.end(), v.begin(), v.end());
    }
  }
  // Tensor axes (a, b, i) as an n²×n matrix with rows (a, b).
  const CMatrix tensor(n * n, n, std::move(flat));
  const std::array<std::size_t, 3> dims{n, n, n};
  const std::array<std::size_t, 3> swap_ab{1, 0, 2};
  const CMatrix swapped = regroup(tensor, dims, swap_ab, n * n, n);

  // Block k of a (a,b)-major tensor holds the vectors of row k as its rows.
  auto block = [n](const CMatrix& t, std::size_t k) {
    CMatrix b(n, n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t i = 0; i < n; ++i) b(x, i) = t(k * n + x, i);
    return b;
  };

  BiunitaryReport r;
  double vertical = 0.0, horizontal = 0.0, lambda_sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto row_lambda = unitary_scalar(block(tensor, k), tol);
    const auto col_lambda = unitary_scalar(block(swapped, k), tol);
    vertical = std::max(vertical, lambda_residual(row_lambda, 1.0));
    horizontal = std::max(horizontal, lambda_residual(col_lambda, 1.0));
    if (col_lambda) lambda_sum += *col_lambda;
  }
  r.vertical_ok = r.record("rows", vertical, tol.verify_tol);
  r.horizontal_ok = r.record("columns", horizontal, tol.verify_tol);
  if (r.horizontal_ok) r.lambda = lambda_sum / static_cast<double>(n);
  return r;
}

BiunitaryReport ueb_rotation_check(std::span<const CMatrix> elements, const Tolerance& tol) {
  if (elements.empty()) return BiunitaryReport::structural_failure("unitary error basis is empty");
  const std::size_t n = elements.front().rows();
  for (const auto& u : elements) {
    if (!u.is_square() || u.rows() != n) {
      return BiunitaryReport::structural_failure("elements must be square of equal size");
    }
  }
  if (n == 0 || elements.size() != n * n) {
    return BiunitaryReport::structural_failure("expected " + std::to_string(n * n) +
                                               " elements, found " +
                                               std::to_string(elements.size()));
  }
  BiunitaryReport r;
  double vertical = 0.0;
  for (const auto& u : elements) {
    vertical = std::max(vertical, lambda_residual(unitary_scalar(u, tol), 1.0));
  }
  r.vertical_ok = r.record("unitary", vertical, tol.verify_tol);

  // Stack the elements as an (a, i) × j matrix, then regroup to a × (i, j).
  std::vector<Complex> flat;
  flat.reserve(n * n * n * n);
  for (const auto& u : elements) flat.insert(flat.end(), u.entries().begin(), u.entries().end());
  const CMatrix stacked(n * n * n, n, std::move(flat));
  const std::array<std::size_t, 3> dims{n * n, n, n};
  const std::array<std::size_t, 3> identity{0, 1, 2};
  const CMatrix rotated = regroup(stacked, dims, identity, n * n, n * n);

  const double expected = static_cast<double>(n);
  const auto lambda = unitary_scalar(rotated, tol);
  r.horizontal_ok = r.record("lambda", lambda_residual(lambda, expected), tol.verify_tol);
  if (r.horizontal_ok) r.lambda = *lambda;
  return r;
}

}  // namespace qcomb
