#include <doctest.h>

#include "qcomb/reproduction.hpp"
#include "qcomb/structures.hpp"
#include "support.hpp"

using namespace qcomb;
using qcomb::testing::kI;

namespace {

QlsGrid basis_grid(const LatinGrid& cells) {
  const std::size_t n = cells.size();
  QlsGrid g(n, std::vector<std::vector<Complex>>(n, std::vector<Complex>(n)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) g[a][b][cells[a][b]] = 1.0;
  return g;
}

}  // namespace

TEST_CASE("structure kinds round trip through their names") {
  for (auto k : {StructureKind::hadamard, StructureKind::qls, StructureKind::ueb,
                 StructureKind::latin, StructureKind::controlled}) {
    CHECK(parse_kind(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_kind("matrix"), ParseError);
}

TEST_CASE("verify_hadamard") {
  const auto f2 = verify_hadamard(CMatrix{{1, 1}, {1, -1.0}});
  CHECK(f2.passed());
  REQUIRE(f2.lambda);
  CHECK(*f2.lambda == doctest::Approx(2.0));

  const auto h = verify_hadamard(seed_inputs().h.matrix());
  CHECK(h.passed());
  CHECK(*h.lambda == doctest::Approx(4.0));

  const auto id = verify_hadamard(CMatrix::identity(2));
  CHECK_FALSE(id.passed());
  CHECK_FALSE(id.vertical_ok);
  CHECK(id.detail.at("hadamard1") == doctest::Approx(1.0));

  const auto rect = verify_hadamard(CMatrix(2, 3));
  CHECK_FALSE(rect.passed());
  CHECK(rect.structural_error);

  // Unimodular but not orthogonal.
  const auto ones = verify_hadamard(CMatrix{{1, 1}, {1, 1}});
  CHECK(ones.vertical_ok);
  CHECK_FALSE(ones.horizontal_ok);
}

TEST_CASE("fourier matrices pass with lambda n") {
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto r = verify_hadamard(fourier(n).matrix());
    CHECK(r.passed());
    CHECK(*r.lambda == doctest::Approx(static_cast<double>(n)).epsilon(1e-10));
  }
  CHECK(fourier(1).matrix() == CMatrix{{1}});
  CHECK(fourier(2).matrix() == CMatrix{{1, 1}, {1, -1.0}});
  CHECK(fourier(4).matrix() == seed_inputs().h.matrix());
  CHECK_THROWS_AS(fourier(0), DimensionError);
}

TEST_CASE("the two orthogonality equations of a Hadamard matrix agree") {
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 4;
    CMatrix m = qcomb::testing::twisted_fourier(n).matrix();
    if (trial % 2) {
      // Break orthogonality but keep unimodularity.
      m(0, 0) *= qcomb::testing::random_phase();
    }
    const auto r = verify_hadamard(m);
    const bool rows = r.detail.at("hadamard2") <= 1e-10;
    const bool cols = r.detail.at("hadamard3") <= 1e-10;
    CHECK(rows == cols);
  }
}

TEST_CASE("verify_qls") {
  const SeedInputs in = seed_inputs();
  CHECK(verify_qls(in.p.grid()).passed());
  CHECK(*verify_qls(in.p.grid()).lambda == doctest::Approx(1.0));
  CHECK(verify_qls(in.q.grid()).passed());

  QlsGrid bad = in.q.grid();
  bad[0] = {{1, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}};
  CHECK_FALSE(verify_qls(bad).passed());

  QlsGrid ragged = in.q.grid();
  ragged[1].pop_back();
  const auto r = verify_qls(ragged);
  CHECK_FALSE(r.passed());
  CHECK(r.structural_error);
}

TEST_CASE("QLS coefficients satisfy both orthonormality sums") {
  const QuantumLatinSquare p = seed_inputs().p;
  const std::size_t n = p.dim();
  double worst = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        Complex row{}, col{};
        for (std::size_t i = 0; i < n; ++i) {
          row += std::conj(p(a, b, i)) * p(a, c, i);
          col += std::conj(p(a, c, i)) * p(b, c, i);
        }
        worst = std::max(worst, std::abs(row - (b == c ? 1.0 : 0.0)));
        worst = std::max(worst, std::abs(col - (a == b ? 1.0 : 0.0)));
      }
  CHECK(worst <= 1e-10);
}

TEST_CASE("QuantumLatinSquare factories") {
  const QuantumLatinSquare q = qls_from_latin(cyclic_latin(3));
  CHECK(QuantumLatinSquare::from_coefficients(3, std::vector<Complex>(q.coefficients().begin(),
                                                                      q.coefficients().end())) == q);
  CHECK(QuantumLatinSquare::from_grid(q.grid()) == q);
  CHECK_THROWS_AS(QuantumLatinSquare::from_coefficients(3, std::vector<Complex>(26)),
                  DimensionError);
  CHECK_THROWS_AS(QuantumLatinSquare::from_coefficients(2, std::vector<Complex>(8)),
                  VerificationError);
}

TEST_CASE("verify_ueb") {
  const auto v = verify_ueb(seed_inputs().v.elements());
  CHECK(v.passed());
  CHECK(*v.lambda == doctest::Approx(2.0));

  const std::vector<CMatrix> one = {CMatrix{{1}}};
  CHECK(verify_ueb(one).passed());

  const std::vector<CMatrix> dup = {CMatrix::identity(2), CMatrix::identity(2),
                                    qcomb::testing::sigma_x(), qcomb::testing::sigma_z()};
  const auto d = verify_ueb(dup);
  CHECK(d.vertical_ok);
  CHECK_FALSE(d.passed());

  const std::vector<CMatrix> three = {CMatrix::identity(2), qcomb::testing::sigma_x(),
                                      qcomb::testing::sigma_z()};
  const auto t = verify_ueb(three);
  CHECK_FALSE(t.passed());
  CHECK(t.structural_error);
}

TEST_CASE("UnitaryErrorBasis labels") {
  const UnitaryErrorBasis u = build_reference_ueb();
  CHECK(u.label_dims() == std::vector<std::size_t>{4, 4, 4});
  CHECK(u.index_of({0, 0, 1}) == 1);
  CHECK(u.index_of({2, 1, 3}) == 2 * 16 + 1 * 4 + 3);
  CHECK(u.label(37) == std::vector<std::size_t>{2, 1, 1});
  CHECK_THROWS_AS(u.index_of({4, 0, 0}), DimensionError);
  CHECK_THROWS_AS(u.index_of({0, 0}), DimensionError);

  const UnitaryErrorBasis p = pauli_ueb(2);
  CHECK(p.label_dims() == std::vector<std::size_t>{2, 2});
  CHECK_THROWS_AS(UnitaryErrorBasis::from_elements(
                      std::vector<CMatrix>(p.elements().begin(), p.elements().end()), {3}),
                  DimensionError);
  const UnitaryErrorBasis flat =
      UnitaryErrorBasis::from_elements(std::vector<CMatrix>(p.elements().begin(), p.elements().end()));
  CHECK(flat.label_dims() == std::vector<std::size_t>{4});
}

TEST_CASE("verify_family") {
  const HadamardMatrix f2 = fourier(2);
  const auto fam = HadamardFamily::constant(f2, {4});
  CHECK(verify_family(to_candidate(fam)).passed());

  const auto h = HadamardFamily::constant(seed_inputs().h, {4, 4});
  CHECK(h.size() == 16);
  CHECK(verify_family(to_candidate(h)).passed());

  FamilyCandidate broken = to_candidate(fam);
  broken.items[2] = CMatrix::identity(2);
  const auto r = verify_family(broken);
  CHECK_FALSE(r.passed());
  REQUIRE(r.failing_item);
  CHECK(*r.failing_item == 2);
  CHECK_THROWS_AS(family_from_candidate<HadamardMatrix>(broken), VerificationError);

  FamilyCandidate short_family = to_candidate(fam);
  short_family.items.pop_back();
  CHECK_FALSE(verify_family(short_family).passed());
  CHECK(verify_family(short_family).structural_error);

  CHECK_THROWS_AS(family_from_candidate<QuantumLatinSquare>(to_candidate(fam)), DimensionError);
}

TEST_CASE("ControlledFamily") {
  CHECK_THROWS_AS(HadamardFamily({3}, {fourier(2), fourier(2)}), DimensionError);
  CHECK_THROWS_AS(HadamardFamily({2}, {fourier(2), fourier(3)}), DimensionError);
  CHECK_THROWS_AS(HadamardFamily({}, {}), DimensionError);
  const HadamardFamily f({2, 3}, {fourier(2), fourier(2), fourier(2), fourier(2),
                                  phase_twist(fourier(2), std::vector<Complex>{1, kI},
                                              std::vector<Complex>{1, 1}),
                                  fourier(2)});
  CHECK(f.item_dim() == 2);
  CHECK(f.at({1, 1}) == f[4]);
  CHECK(f.at({1, 1})(1, 0) == kI);
  const auto round = family_from_candidate<HadamardMatrix>(to_candidate(f));
  CHECK(round.items() == f.items());
  CHECK(round.control_dims() == f.control_dims());
}

TEST_CASE("Latin squares") {
  const LatinSquare c = cyclic_latin(3);
  CHECK(c(1, 2) == 0);
  CHECK(c(2, 2) == 1);
  CHECK_THROWS_AS(LatinSquare::from_cells({{0, 1}, {0, 1}}), VerificationError);
  CHECK_THROWS_AS(LatinSquare::from_cells({{0, 0}, {1, 1}}), VerificationError);
  CHECK_THROWS_AS(LatinSquare::from_cells({{0, 2}, {2, 0}}), VerificationError);
  CHECK_THROWS_AS(LatinSquare::from_cells({{0, 1}}), VerificationError);
  CHECK_THROWS_AS(LatinSquare::from_cells({}), VerificationError);
  CHECK_THROWS_AS(cyclic_latin(0), DimensionError);

  const QuantumLatinSquare trivial = qls_from_latin(cyclic_latin(1));
  CHECK(trivial(0, 0, 0) == Complex(1));
  CHECK(verify_qls(qls_from_latin(cyclic_latin(3)).grid()).passed());
}

TEST_CASE("the classical seed square comes from its Latin square") {
  // Rows 1423 / 4132 / 3214 / 2341, shifted to 0-based symbols.
  const LatinGrid cells = {{0, 3, 1, 2}, {3, 0, 2, 1}, {2, 1, 0, 3}, {1, 2, 3, 0}};
  CHECK(seed_inputs().q == QuantumLatinSquare::from_grid(basis_grid(cells)));
}

TEST_CASE("qls_from_latin has 0/1 entries") {
  for (std::size_t n = 1; n <= 5; ++n) {
    const QuantumLatinSquare q = qls_from_latin(cyclic_latin(n));
    for (Complex z : q.coefficients()) CHECK((z == Complex(0) || z == Complex(1)));
  }
}

TEST_CASE("pauli_ueb") {
  CHECK(pauli_ueb(1).size() == 1);
  CHECK(pauli_ueb(1)[0] == CMatrix{{1}});
  CHECK(qcomb::testing::same_up_to_phase_and_order(pauli_ueb(2), seed_inputs().v));
  const UnitaryErrorBasis p3 = pauli_ueb(3);
  CHECK(p3.size() == 9);
  CHECK(verify_ueb(p3.elements()).passed());
  CHECK_THROWS_AS(pauli_ueb(0), DimensionError);
  for (std::size_t n = 2; n <= 6; ++n) CHECK(verify_ueb(pauli_ueb(n).elements()).passed());
}

TEST_CASE("phase_twist") {
  const auto f3 = fourier(3);
  const std::vector<Complex> r = {1, kI, -1.0};
  const std::vector<Complex> c = {kI, 1, 1};
  const auto t = phase_twist(f3, r, c);
  CHECK(t(1, 0) == kI * f3(1, 0) * kI);
  CHECK_THROWS_AS(phase_twist(f3, std::vector<Complex>{1, 1}, c), DimensionError);
  CHECK(verify_hadamard(qcomb::testing::twisted_fourier(5).matrix()).passed());
}
