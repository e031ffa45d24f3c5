#pragma once

// Shared helpers for the test binaries: seeded random inputs and small
// comparisons that the library itself has no reason to expose.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "qcomb/structures.hpp"

namespace qcomb::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20261018);
  return engine;
}

inline Complex random_phase() {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, angle(rng()));
}

inline std::vector<Complex> random_phases(std::size_t n) {
  std::vector<Complex> v(n);
  for (auto& z : v) z = random_phase();
  return v;
}

inline std::vector<std::size_t> random_permutation(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng());
  return p;
}

inline CMatrix random_matrix(std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> g;
  CMatrix m(rows, cols);
  for (auto& z : m.entries()) z = {g(rng()), g(rng())};
  return m;
}

/// F_n with independent random phases on every row and column.
inline HadamardMatrix twisted_fourier(std::size_t n) {
  const auto r = random_phases(n);
  const auto c = random_phases(n);
  return phase_twist(fourier(n), r, c);
}

/// Every element of `a` is proportional to exactly one element of `b`, and vice versa.
inline bool same_up_to_phase_and_order(const UnitaryErrorBasis& a, const UnitaryErrorBasis& b,
                                       const Tolerance& tol = {}) {
  if (a.size() != b.size() || a.dim() != b.dim()) return false;
  std::vector<bool> used(b.size(), false);
  for (const CMatrix& x : a.elements()) {
    bool found = false;
    for (std::size_t k = 0; k < b.size() && !found; ++k) {
      if (!used[k] && proportional(x, b[k], tol)) used[k] = found = true;
    }
    if (!found) return false;
  }
  return true;
}

inline const Complex kI{0.0, 1.0};

inline CMatrix sigma_x() { return CMatrix{{0, 1}, {1, 0}}; }
inline CMatrix sigma_z() { return CMatrix{{1, 0}, {0, -1.0}}; }

}  // namespace qcomb::testing
