#include <doctest.h>

#include "qcomb/biunitarity.hpp"
#include "qcomb/reproduction.hpp"
#include "support.hpp"

using namespace qcomb;

TEST_CASE("hadamard_rotation_check") {
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto r = hadamard_rotation_check(fourier(n).matrix());
    CHECK(r.passed());
    REQUIRE(r.lambda);
    CHECK(std::abs(*r.lambda - static_cast<double>(n)) <= 1e-10 * n);
  }
  const auto h = hadamard_rotation_check(seed_inputs().h.matrix());
  CHECK(h.passed());
  CHECK(*h.lambda == doctest::Approx(4.0));

  const auto ones = hadamard_rotation_check(CMatrix{{1, 1}, {1, 1}});
  CHECK(ones.vertical_ok);
  CHECK_FALSE(ones.horizontal_ok);
  CHECK_FALSE(hadamard_rotation_check(CMatrix(2, 3)).passed());
}

TEST_CASE("transposing a Hadamard matrix preserves its rotation report") {
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix h = qcomb::testing::twisted_fourier(4).matrix();
    const auto a = hadamard_rotation_check(h);
    const auto b = hadamard_rotation_check(transpose(h));
    CHECK(a.passed() == b.passed());
    CHECK(*a.lambda == doctest::Approx(*b.lambda).epsilon(1e-12));
  }
}

TEST_CASE("qls_rotation_check") {
  const auto p = qls_rotation_check(seed_inputs().p.grid());
  CHECK(p.passed());
  CHECK(*p.lambda == doctest::Approx(1.0));
  CHECK(qls_rotation_check(qls_from_latin(cyclic_latin(3)).grid()).passed());

  // Rows remain orthonormal bases but column 1 repeats e_1.
  QlsGrid g = qls_from_latin(cyclic_latin(3)).grid();
  g[1] = g[0];
  const auto r = qls_rotation_check(g);
  CHECK(r.vertical_ok);
  CHECK_FALSE(r.horizontal_ok);

  QlsGrid ragged = g;
  ragged[2].resize(1);
  CHECK(qls_rotation_check(ragged).structural_error);
}

TEST_CASE("ueb_rotation_check") {
  const auto p = ueb_rotation_check(pauli_ueb(2).elements());
  CHECK(p.passed());
  CHECK(*p.lambda == doctest::Approx(2.0));

  const auto u = ueb_rotation_check(build_reference_ueb().elements());
  CHECK(u.passed());
  CHECK(std::abs(*u.lambda - 8.0) <= 8e-10);

  const std::vector<CMatrix> dup = {CMatrix::identity(2), CMatrix::identity(2),
                                    qcomb::testing::sigma_x(), qcomb::testing::sigma_z()};
  const auto d = ueb_rotation_check(dup);
  CHECK(d.vertical_ok);
  CHECK_FALSE(d.horizontal_ok);
}

TEST_CASE("verifiers and rotation checks agree") {
  std::vector<CMatrix> hadamards = {fourier(3).matrix(), qcomb::testing::twisted_fourier(4).matrix(),
                                    CMatrix{{1, 1}, {1, 1}}, CMatrix::identity(3),
                                    seed_inputs().h.matrix()};
  for (const auto& h : hadamards) {
    const auto v = verify_hadamard(h);
    const auto r = hadamard_rotation_check(h);
    CHECK(v.passed() == r.passed());
    if (v.passed()) CHECK(*v.lambda == doctest::Approx(*r.lambda).epsilon(1e-10));
  }

  QlsGrid broken = seed_inputs().p.grid();
  std::swap(broken[0][0], broken[0][1]);
  std::vector<QlsGrid> squares = {seed_inputs().p.grid(), seed_inputs().q.grid(), broken,
                                  qls_from_latin(cyclic_latin(5)).grid()};
  for (const auto& q : squares) CHECK(verify_qls(q).passed() == qls_rotation_check(q).passed());

  for (std::size_t n = 1; n <= 5; ++n) {
    const UnitaryErrorBasis u = pauli_ueb(n);
    const auto v = verify_ueb(u.elements());
    const auto r = ueb_rotation_check(u.elements());
    CHECK(v.passed());
    CHECK(r.passed());
    CHECK(std::abs(*r.lambda - static_cast<double>(n)) <= 1e-10 * n);
    std::vector<CMatrix> bad(u.elements().begin(), u.elements().end());
    if (n > 1) {
      bad.back() = bad.front();
      CHECK_FALSE(verify_ueb(bad).passed());
      CHECK_FALSE(ueb_rotation_check(bad).passed());
    }
  }
}

TEST_CASE("lambda is always positive when present") {
  for (std::size_t n = 1; n <= 6; ++n) {
    CHECK(*hadamard_rotation_check(fourier(n).matrix()).lambda > 0.0);
    CHECK(*qls_rotation_check(qls_from_latin(cyclic_latin(n)).grid()).lambda > 0.0);
    CHECK(*ueb_rotation_check(pauli_ueb(n).elements()).lambda > 0.0);
  }
}
