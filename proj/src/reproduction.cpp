#include "qcomb/reproduction.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "qcomb/constructions.hpp"
#include "qcomb/io.hpp"

namespace qcomb {

namespace {

std::vector<Complex> basis(std::size_t n, std::size_t k) {
  std::vector<Complex> v(n);
  v[k] = 1.0;
  return v;
}

// α|x⟩ + β|y⟩ over four basis states, 0-based x and y.
std::vector<Complex> superpose(Complex alpha, std::size_t x, Complex beta, std::size_t y) {
  std::vector<Complex> v(4);
  v[x] += alpha;
  v[y] += beta;
  return v;
}

bool contains_identity(const UnitaryErrorBasis& u, const Tolerance& tol) {
  const CMatrix id = CMatrix::identity(u.dim());
  return std::any_of(u.elements().begin(), u.elements().end(),
                     [&](const CMatrix& e) { return max_abs_diff(e, id) <= tol.verify_tol; });
}

}  // namespace

SeedInputs seed_inputs() {
  const Complex i{0.0, 1.0};
  const double r2 = 1.0 / std::sqrt(2.0);
  const double r5 = 1.0 / std::sqrt(5.0);

  HadamardMatrix h = HadamardMatrix::from_matrix(CMatrix{{1, 1, 1, 1},
                                                         {1, i, -1.0, -i},
                                                         {1, -1.0, 1, -1.0},
                                                         {1, -i, -1.0, i}});

  QlsGrid p(4);
  p[0] = {basis(4, 0), basis(4, 1), basis(4, 2), basis(4, 3)};
  p[1] = {superpose(r2, 1, -r2, 2), superpose(i * r5, 0, 2 * r5, 3),
          superpose(2 * r5, 0, i * r5, 3), superpose(r2, 1, r2, 2)};
  p[2] = {superpose(r2, 1, r2, 2), superpose(2 * r5, 0, i * r5, 3),
          superpose(i * r5, 0, 2 * r5, 3), superpose(r2, 1, -r2, 2)};
  p[3] = {basis(4, 3), basis(4, 2), basis(4, 1), basis(4, 0)};

  const LatinGrid q_cells = {{0, 3, 1, 2}, {3, 0, 2, 1}, {2, 1, 0, 3}, {1, 2, 3, 0}};

  UnitaryErrorBasis v = UnitaryErrorBasis::from_elements(
      {CMatrix{{1, 0}, {0, 1}}, CMatrix{{1, 0}, {0, -1.0}}, CMatrix{{0, 1}, {1, 0}},
       CMatrix{{0, 1}, {-1.0, 0}}});

  return {std::move(h), QuantumLatinSquare::from_grid(p),
          qls_from_latin(LatinSquare::from_cells(q_cells)), std::move(v)};
}

UnitaryErrorBasis build_unnormalized_ueb(const Tolerance& tol) {
  const SeedInputs in = seed_inputs();
  return quad_a(HadamardFamily::constant(in.h, {4, 4}), in.p, in.q, in.v, tol);
}

UnitaryErrorBasis build_reference_ueb(const Tolerance& tol) {
  return ueb_normalize(build_unnormalized_ueb(tol), 0, tol);
}

UnitaryErrorBasis load_reference_fixture(const std::optional<std::filesystem::path>& path,
                                         const Tolerance& tol) {
  const StructureDocument doc =
      path ? load_document(*path) : parse_document(reference_fixture_json());
  const auto* candidate = std::get_if<UebCandidate>(&doc);
  if (!candidate) throw ParseError("kind", "reference fixture must be a unitary error basis");
  return UnitaryErrorBasis::from_elements(candidate->elements, candidate->label_dims, tol);
}

FixtureComparison compare_bases(const UnitaryErrorBasis& built, const UnitaryErrorBasis& fixture,
                                double threshold) {
  if (built.size() != fixture.size() || built.dim() != fixture.dim()) {
    throw DimensionError("compare_bases: bases differ in size or dimension");
  }
  FixtureComparison c;
  c.total = built.size();
  for (std::size_t k = 0; k < built.size(); ++k) {
    const double dev = max_abs_diff(built[k], fixture[k]);
    c.max_deviation = std::max(c.max_deviation, dev);
    if (dev < threshold) {
      ++c.matched;
    } else {
      c.mismatched.push_back(k);
    }
  }
  return c;
}

NotNiceReport check_not_nice(const UnitaryErrorBasis& u, const Tolerance& tol) {
  if (!contains_identity(u, tol)) {
    throw PreconditionError("check_not_nice: the basis must contain the identity (normalize first)");
  }
  const AdjointClosure closure = adjoint_closed_up_to_phase(u, tol);
  NotNiceReport r;
  r.verdict = closure.closed ? Verdict::inconclusive : Verdict::excluded;
  r.witness = closure.witness;
  return r;
}

NotQsmReport check_not_qsm(const UnitaryErrorBasis& u, const Tolerance& tol) {
  if (!contains_identity(u, tol)) {
    throw PreconditionError("check_not_qsm: the basis must contain the identity (normalize first)");
  }
  const CommutingSubset subset = max_commuting_subset(u, tol);
  NotQsmReport r;
  r.max_commuting = subset.size;
  r.dimension = u.dim();
  r.clique = subset.elements;
  r.verdict = subset.size < u.dim() ? Verdict::excluded : Verdict::inconclusive;
  return r;
}

ReproductionReport reproduce_reference(const UnitaryErrorBasis& fixture, const Tolerance& tol) {
  const auto start = std::chrono::steady_clock::now();
  ReproductionReport r;
  const UnitaryErrorBasis built = build_reference_ueb(tol);
  r.comparison = compare_bases(built, fixture, tol.compare_tol);
  r.verification = verify_ueb(built.elements(), tol);
  // The obstruction checks compare matrices for exact proportionality and
  // commutation, so they run at the tighter comparison tolerance.
  const Tolerance strict{tol.compare_tol, tol.compare_tol};
  r.not_nice = check_not_nice(built, strict);
  r.not_qsm = check_not_qsm(built, strict);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace qcomb
