#include "qcomb/structures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qcomb {

namespace {

std::string describe_failure(const std::string& what, const BiunitaryReport& r) {
  if (r.structural_error) return what + ": " + *r.structural_error;
  std::string msg = what + " failed verification (worst residual " +
                    std::to_string(r.worst_residual) + ")";
  if (r.failing_item) msg += " at item " + std::to_string(*r.failing_item + 1);
  return msg;
}

// Worst |G - scale·I| over a Gram matrix, relative to `scale`.
double gram_residual(const CMatrix& gram, double scale) {
  double worst = 0.0;
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < gram.cols(); ++j) {
      const Complex expected = i == j ? Complex(scale) : Complex{};
      worst = std::max(worst, std::abs(gram(i, j) - expected));
    }
  return worst / scale;
}

double unitary_residual(const CMatrix& u) {
  const CMatrix id = CMatrix::identity(u.rows());
  return std::max(max_abs_diff(adjoint_product(u, u), id), max_abs_diff(u * dagger(u), id));
}

}  // namespace

std::string_view to_string(StructureKind kind) {
  switch (kind) {
    case StructureKind::hadamard: return "hadamard";
    case StructureKind::qls: return "qls";
    case StructureKind::ueb: return "ueb";
    case StructureKind::latin: return "latin";
    case StructureKind::controlled: return "controlled";
  }
  return "?";
}

StructureKind parse_kind(std::string_view name) {
  for (auto k : {StructureKind::hadamard, StructureKind::qls, StructureKind::ueb,
                 StructureKind::latin, StructureKind::controlled}) {
    if (to_string(k) == name) return k;
  }
  throw ParseError("kind", "unknown structure kind '" + std::string(name) + "'");
}

BiunitaryReport verify_hadamard(const CMatrix& h, const Tolerance& tol) {
  if (!h.is_square() || h.rows() == 0) {
    return BiunitaryReport::structural_failure("Hadamard matrix must be square and non-empty");
  }
  const std::size_t n = h.rows();
  const double scale = static_cast<double>(n);
  BiunitaryReport r;

  double modulus = 0.0;
  for (const auto& e : h.entries()) modulus = std::max(modulus, std::abs(std::abs(e) - 1.0));
  const bool eq1 = r.record("hadamard1", modulus, tol.verify_tol);

  // Σ_k H_ik conj(H_jk) = nδ_ij is H H†; Σ_k conj(H_ki) H_kj = nδ_ij is H†H.
  const bool eq2 = r.record("hadamard2", gram_residual(h * dagger(h), scale), tol.verify_tol);
  const bool eq3 = r.record("hadamard3", gram_residual(adjoint_product(h, h), scale), tol.verify_tol);

  r.vertical_ok = eq1;
  r.horizontal_ok = eq2 && eq3;
  if (r.horizontal_ok) r.lambda = scale;
  return r;
}

BiunitaryReport verify_qls(const QlsGrid& grid, const Tolerance& tol) {
  const std::size_t n = grid.size();
  if (n == 0) return BiunitaryReport::structural_failure("quantum Latin square is empty");
  for (const auto& row : grid) {
    if (row.size() != n) return BiunitaryReport::structural_failure("grid is not square");
    for (const auto& v : row) {
      if (v.size() != n) {
        return BiunitaryReport::structural_failure("vector length differs from grid size");
      }
    }
  }
  auto inner = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    Complex s{};
    for (std::size_t i = 0; i < n; ++i) s += std::conj(grid[a][b][i]) * grid[c][d][i];
    return s;
  };
  double rows = 0.0, cols = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const Complex delta = b == c ? 1.0 : 0.0;
        rows = std::max(rows, std::abs(inner(a, b, a, c) - delta));
        cols = std::max(cols, std::abs(inner(b, a, c, a) - delta));
      }
  BiunitaryReport r;
  r.vertical_ok = r.record("rows", rows, tol.verify_tol);
  r.horizontal_ok = r.record("columns", cols, tol.verify_tol);
  if (r.horizontal_ok) r.lambda = 1.0;
  return r;
}

BiunitaryReport verify_ueb(std::span<const CMatrix> elements, const Tolerance& tol) {
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
  r.record("count", 0.0, tol.verify_tol);

  double unitary = 0.0;
  for (const auto& u : elements) unitary = std::max(unitary, unitary_residual(u));
  r.vertical_ok = r.record("unitary", unitary, tol.verify_tol);

  // Column a of `stacked` is vec(U_a), so stacked†·stacked is the trace Gram matrix.
  const std::size_t n2 = n * n;
  CMatrix stacked(n2, elements.size());
  for (std::size_t a = 0; a < elements.size(); ++a) {
    auto e = elements[a].entries();
    for (std::size_t k = 0; k < n2; ++k) stacked(k, a) = e[k];
  }
  const double scale = static_cast<double>(n);
  r.horizontal_ok = r.record("orthogonality", gram_residual(adjoint_product(stacked, stacked), scale),
                             tol.verify_tol);
  if (r.horizontal_ok) r.lambda = scale;
  return r;
}

BiunitaryReport verify_family(const FamilyCandidate& family, const Tolerance& tol) {
  std::size_t count = family.control_dims.empty() ? 0 : 1;
  for (std::size_t d : family.control_dims) count *= d;
  if (count == 0 || count != family.items.size()) {
    return BiunitaryReport::structural_failure(
        "controlled family has " + std::to_string(family.items.size()) +
        " items but its control dimensions require " + std::to_string(count));
  }
  BiunitaryReport agg;
  agg.vertical_ok = agg.horizontal_ok = true;
  std::optional<std::size_t> dim;
  for (std::size_t k = 0; k < family.items.size(); ++k) {
    const auto& item = family.items[k];
    BiunitaryReport r;
    std::size_t item_dim = 0;
    switch (family.base_kind) {
      case StructureKind::hadamard:
        if (const auto* h = std::get_if<CMatrix>(&item)) {
          r = verify_hadamard(*h, tol);
          item_dim = h->rows();
        }
        break;
      case StructureKind::qls:
        if (const auto* q = std::get_if<QlsGrid>(&item)) {
          r = verify_qls(*q, tol);
          item_dim = q->size();
        }
        break;
      case StructureKind::ueb:
        if (const auto* u = std::get_if<UebCandidate>(&item)) {
          r = verify_ueb(u->elements, tol);
          item_dim = u->elements.empty() ? 0 : u->elements.front().rows();
        }
        break;
      default:
        return BiunitaryReport::structural_failure("unsupported base kind for a controlled family");
    }
    if (item_dim == 0 && !r.structural_error) {
      r = BiunitaryReport::structural_failure("item kind does not match the family base kind");
    }
    if (!r.structural_error) {
      if (dim && *dim != item_dim) {
        r = BiunitaryReport::structural_failure("items have different dimensions");
      }
      dim = item_dim;
    }
    for (const auto& [axiom, residual] : r.detail) {
      double& slot = agg.detail[axiom];
      slot = std::max(slot, residual);
    }
    agg.worst_residual = std::max(agg.worst_residual, r.worst_residual);
    if (!r.passed() && !agg.failing_item) {
      agg.failing_item = k;
      agg.vertical_ok = r.vertical_ok;
      agg.horizontal_ok = r.horizontal_ok;
      if (r.structural_error) agg.structural_error = r.structural_error;
    }
    if (k == 0) agg.lambda = r.lambda;
  }
  if (agg.failing_item) agg.lambda.reset();
  return agg;
}

HadamardMatrix HadamardMatrix::from_matrix(CMatrix m, const Tolerance& tol) {
  const auto r = verify_hadamard(m, tol);
  if (!r.passed()) throw VerificationError(describe_failure("Hadamard matrix", r));
  return HadamardMatrix(std::move(m));
}

QuantumLatinSquare QuantumLatinSquare::from_grid(const QlsGrid& grid, const Tolerance& tol) {
  const auto r = verify_qls(grid, tol);
  if (!r.passed()) throw VerificationError(describe_failure("quantum Latin square", r));
  const std::size_t n = grid.size();
  std::vector<Complex> coeffs;
  coeffs.reserve(n * n * n);
  for (const auto& row : grid)
    for (const auto& v : row) coeffs.insert(coeffs.end(), v.begin(), v.end());
  return QuantumLatinSquare(n, std::move(coeffs));
}

QuantumLatinSquare QuantumLatinSquare::from_coefficients(std::size_t n,
                                                         std::vector<Complex> coefficients,
                                                         const Tolerance& tol) {
  if (n == 0 || coefficients.size() != n * n * n) {
    throw DimensionError("quantum Latin square needs n³ coefficients");
  }
  QuantumLatinSquare q(n, std::move(coefficients));
  const auto r = verify_qls(q.grid(), tol);
  if (!r.passed()) throw VerificationError(describe_failure("quantum Latin square", r));
  return q;
}

QlsGrid QuantumLatinSquare::grid() const {
  QlsGrid g(n_, std::vector<std::vector<Complex>>(n_));
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b) {
      auto v = vector(a, b);
      g[a][b].assign(v.begin(), v.end());
    }
  return g;
}

UnitaryErrorBasis UnitaryErrorBasis::from_elements(std::vector<CMatrix> elements,
                                                   std::vector<std::size_t> label_dims,
                                                   const Tolerance& tol) {
  const auto r = verify_ueb(elements, tol);
  if (!r.passed()) throw VerificationError(describe_failure("unitary error basis", r));
  if (label_dims.empty()) label_dims = {elements.size()};
  std::size_t count = 1;
  for (std::size_t d : label_dims) count *= d;
  if (count != elements.size()) {
    throw DimensionError("label dimensions do not multiply to the element count");
  }
  const std::size_t n = elements.front().rows();
  return UnitaryErrorBasis(n, std::move(elements), std::move(label_dims));
}

std::vector<std::size_t> UnitaryErrorBasis::label(std::size_t k) const {
  return unflatten_index(k, label_dims_);
}

std::size_t UnitaryErrorBasis::index_of(std::span<const std::size_t> label) const {
  if (label.size() != label_dims_.size()) {
    throw DimensionError("label has " + std::to_string(label.size()) + " components, expected " +
                         std::to_string(label_dims_.size()));
  }
  std::size_t flat = 0;
  for (std::size_t k = 0; k < label.size(); ++k) {
    if (label[k] >= label_dims_[k]) throw DimensionError("label component out of range");
    flat = flat * label_dims_[k] + label[k];
  }
  return flat;
}

LatinSquare LatinSquare::from_cells(LatinGrid cells) {
  const std::size_t n = cells.size();
  if (n == 0) throw VerificationError("Latin square is empty");
  for (const auto& row : cells) {
    if (row.size() != n) throw VerificationError("Latin square is not square");
    for (std::size_t s : row)
      if (s >= n) throw VerificationError("Latin square symbol out of range");
  }
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<char> in_row(n, 0), in_col(n, 0);
    for (std::size_t b = 0; b < n; ++b) {
      if (std::exchange(in_row[cells[a][b]], 1)) {
        throw VerificationError("Latin square row " + std::to_string(a + 1) + " repeats a symbol");
      }
      if (std::exchange(in_col[cells[b][a]], 1)) {
        throw VerificationError("Latin square column " + std::to_string(a + 1) +
                                " repeats a symbol");
      }
    }
  }
  return LatinSquare(std::move(cells));
}

CMatrix to_candidate(const HadamardMatrix& h) { return h.matrix(); }
QlsGrid to_candidate(const QuantumLatinSquare& q) { return q.grid(); }
UebCandidate to_candidate(const UnitaryErrorBasis& u) {
  return {{u.elements().begin(), u.elements().end()}, u.label_dims()};
}

namespace {
template <class T>
constexpr StructureKind kind_of() {
  if constexpr (std::is_same_v<T, HadamardMatrix>) return StructureKind::hadamard;
  else if constexpr (std::is_same_v<T, QuantumLatinSquare>) return StructureKind::qls;
  else return StructureKind::ueb;
}

HadamardMatrix item_from(const CMatrix& m, const Tolerance& tol, HadamardMatrix*) {
  return HadamardMatrix::from_matrix(m, tol);
}
QuantumLatinSquare item_from(const QlsGrid& g, const Tolerance& tol, QuantumLatinSquare*) {
  return QuantumLatinSquare::from_grid(g, tol);
}
UnitaryErrorBasis item_from(const UebCandidate& u, const Tolerance& tol, UnitaryErrorBasis*) {
  return UnitaryErrorBasis::from_elements(u.elements, u.label_dims, tol);
}
}  // namespace

template <class T>
FamilyCandidate to_candidate(const ControlledFamily<T>& family) {
  FamilyCandidate c{family.control_dims(), kind_of<T>(), {}};
  c.items.reserve(family.size());
  for (const auto& item : family.items()) c.items.emplace_back(to_candidate(item));
  return c;
}

template <class T>
ControlledFamily<T> family_from_candidate(const FamilyCandidate& family, const Tolerance& tol) {
  if (family.base_kind != kind_of<T>()) {
    throw DimensionError("controlled family holds " + std::string(to_string(family.base_kind)) +
                         " items, expected " + std::string(to_string(kind_of<T>())));
  }
  const auto r = verify_family(family, tol);
  if (!r.passed()) throw VerificationError(describe_failure("controlled family", r));
  std::vector<T> items;
  items.reserve(family.items.size());
  for (const auto& item : family.items) {
    std::visit(
        [&](const auto& c) {
          if constexpr (requires { item_from(c, tol, static_cast<T*>(nullptr)); }) {
            items.push_back(item_from(c, tol, static_cast<T*>(nullptr)));
          }
        },
        item);
  }
  return ControlledFamily<T>(family.control_dims, std::move(items));
}

template FamilyCandidate to_candidate(const ControlledFamily<HadamardMatrix>&);
template FamilyCandidate to_candidate(const ControlledFamily<QuantumLatinSquare>&);
template FamilyCandidate to_candidate(const ControlledFamily<UnitaryErrorBasis>&);
template ControlledFamily<HadamardMatrix> family_from_candidate(const FamilyCandidate&,
                                                                const Tolerance&);
template ControlledFamily<QuantumLatinSquare> family_from_candidate(const FamilyCandidate&,
                                                                    const Tolerance&);
template ControlledFamily<UnitaryErrorBasis> family_from_candidate(const FamilyCandidate&,
                                                                   const Tolerance&);

HadamardMatrix fourier(std::size_t n) {
  if (n == 0) throw DimensionError("fourier: dimension must be at least 1");
  CMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      // Reduce jk mod n first so the common phases (±1, ±i) come out exact.
      const std::size_t p = (j * k) % n;
      if (4 * p % n == 0) {
        static constexpr Complex quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        m(j, k) = quarter[4 * p / n];
      } else {
        m(j, k) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(p) /
                                      static_cast<double>(n));
      }
    }
  return HadamardMatrix::from_matrix(std::move(m));
}

HadamardMatrix phase_twist(const HadamardMatrix& h, std::span<const Complex> row_phases,
                           std::span<const Complex> col_phases) {
  const std::size_t n = h.dim();
  if (row_phases.size() != n || col_phases.size() != n) {
    throw DimensionError("phase_twist: need one phase per row and per column");
  }
  CMatrix m(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) m(a, b) = row_phases[a] * h(a, b) * col_phases[b];
  return HadamardMatrix::from_matrix(std::move(m));
}

LatinSquare cyclic_latin(std::size_t n) {
  if (n == 0) throw DimensionError("cyclic_latin: dimension must be at least 1");
  LatinGrid cells(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) cells[a][b] = (a + b) % n;
  return LatinSquare::from_cells(std::move(cells));
}

QuantumLatinSquare qls_from_latin(const LatinSquare& latin) {
  const std::size_t n = latin.dim();
  std::vector<Complex> coeffs(n * n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) coeffs[(a * n + b) * n + latin(a, b)] = 1.0;
  return QuantumLatinSquare::from_coefficients(n, std::move(coeffs));
}

UnitaryErrorBasis pauli_ueb(std::size_t n) {
  if (n == 0) throw DimensionError("pauli_ueb: dimension must be at least 1");
  const auto omega = fourier(n);  // omega(b, j) = exp(2πi·bj/n)
  std::vector<CMatrix> elements;
  elements.reserve(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      CMatrix u(n, n);
      for (std::size_t j = 0; j < n; ++j) u((j + a) % n, j) = omega(b, j);
      elements.push_back(std::move(u));
    }
  return UnitaryErrorBasis::from_elements(std::move(elements), {n, n});
}

}  // namespace qcomb
