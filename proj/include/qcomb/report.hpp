#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>

namespace qcomb {

/// Outcome of checking one structure against its biunitarity conditions.
///
/// `vertical_ok` covers the conditions that hold under ordinary composition
/// (unimodular entries, orthonormal rows, unitary elements); `horizontal_ok`
/// covers the quarter-rotated conditions, which hold up to the positive
/// scalar `lambda`. `detail` maps each checked axiom to its worst residual.
struct BiunitaryReport {
  bool vertical_ok = false;
  bool horizontal_ok = false;
  std::optional<double> lambda;
  double worst_residual = 0.0;
  std::map<std::string, double> detail;
  /// Set when the input could not be checked at all (wrong shape, ragged data).
  std::optional<std::string> structural_error;
  /// For controlled families, the first failing item (flat, row-major over controls).
  std::optional<std::size_t> failing_item;

  bool passed() const noexcept { return !structural_error && vertical_ok && horizontal_ok; }

  /// Records an axiom residual and whether it is within `tol`. Returns that verdict.
  bool record(const std::string& axiom, double residual, double tol) {
    detail[axiom] = residual;
    if (std::isnan(residual) || residual > worst_residual) worst_residual = residual;
    return residual <= tol;
  }

  static BiunitaryReport structural_failure(std::string why) {
    BiunitaryReport r;
    r.structural_error = std::move(why);
    return r;
  }
};

}  // namespace qcomb
