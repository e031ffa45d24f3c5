#include <doctest.h>

#include <array>
#include <random>

#include "qcomb/errors.hpp"
#include "qcomb/linalg.hpp"
#include "support.hpp"

using namespace qcomb;
using qcomb::testing::kI;
using qcomb::testing::random_matrix;
using qcomb::testing::rng;
using qcomb::testing::sigma_x;
using qcomb::testing::sigma_z;

namespace {
const double kRoot2 = 1.0 / std::sqrt(2.0);
CMatrix f2() { return CMatrix{{1, 1}, {1, -1.0}}; }
}  // namespace

TEST_CASE("construction and shape checks") {
  CHECK_THROWS_AS(CMatrix(2, 2, std::vector<Complex>(3)), DimensionError);
  const CMatrix m{{1, 2, 3}, {4, 5, 6}};
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 3);
  CHECK(m(1, 2) == Complex(6));
  CHECK_THROWS_AS((CMatrix{{1, 2}, {3}}), DimensionError);
  CHECK_THROWS_AS(m * m, DimensionError);
  CHECK_THROWS_AS(m + CMatrix(3, 2), DimensionError);
}

TEST_CASE("tolerance validation") {
  CHECK_NOTHROW(Tolerance{}.validate());
  CHECK_THROWS_AS((Tolerance{0.0, 1e-12}.validate()), PreconditionError);
  CHECK_THROWS_AS((Tolerance{1e-10, -1.0}.validate()), PreconditionError);
}

TEST_CASE("dagger") {
  const CMatrix a{{1, kI}, {0, 1}};
  CHECK(dagger(a) == CMatrix{{1, 0}, {-kI, 1}});
  CHECK(dagger(CMatrix::identity(3)) == CMatrix::identity(3));
  const CMatrix r = random_matrix(3, 2);
  CHECK(dagger(r).rows() == 2);
  CHECK(dagger(dagger(r)) == r);
  CHECK(dagger(r) == transpose(conjugate(r)));
}

TEST_CASE("dagger reverses products") {
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix a = random_matrix(3, 4);
    const CMatrix b = random_matrix(4, 2);
    CHECK(max_abs_diff(dagger(a * b), dagger(b) * dagger(a)) < 1e-13);
    CHECK(max_abs_diff(adjoint_product(a, a * b), dagger(a) * (a * b)) < 1e-13);
  }
}

TEST_CASE("kron") {
  CHECK(kron(CMatrix::identity(2), CMatrix::identity(2)) == CMatrix::identity(4));
  const CMatrix expected{{1, 1, 1, 1}, {1, -1.0, 1, -1.0}, {1, 1, -1.0, -1.0}, {1, -1.0, -1.0, 1}};
  CHECK(kron(f2(), f2()) == expected);
  const Complex c{2.0, -3.0};
  const CMatrix r = random_matrix(2, 3);
  CHECK(kron(CMatrix{{c}}, r) == c * r);
  CHECK(kron(r, CMatrix{{c}}) == r * c);
  const CMatrix m{{1, 2}, {3, 4}};
  const CMatrix k = kron(m, CMatrix{{0, 5}, {6, 7}});
  CHECK(k(1 * 2 + 0, 0 * 2 + 1) == Complex(3.0 * 5.0));
}

TEST_CASE("kron is associative exactly") {
  // Gaussian integers keep every product exact, so the equality is bitwise.
  std::uniform_int_distribution<int> digit(-9, 9);
  const auto gaussian = [&](std::size_t rows, std::size_t cols) {
    CMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = Complex(digit(rng()), digit(rng()));
    return m;
  };
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix a = gaussian(2, 1), b = gaussian(1, 3), c = gaussian(2, 2);
    CHECK(kron(kron(a, b), c) == kron(a, kron(b, c)));
  }
  // With arbitrary doubles the two groupings round differently.
  const CMatrix a = random_matrix(2, 1), b = random_matrix(1, 3), c = random_matrix(2, 2);
  CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-15);
}

TEST_CASE("trace and trace_inner") {
  CHECK(trace(CMatrix::identity(5)) == Complex(5));
  CHECK(trace_inner(CMatrix::identity(3), CMatrix::identity(3)) == Complex(3));
  CHECK(trace_inner(sigma_z(), sigma_x()) == Complex(0));
  CHECK_THROWS_AS(trace_inner(CMatrix::identity(2), CMatrix::identity(3)), DimensionError);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix r = random_matrix(3, 3);
    const Complex t = trace_inner(r, r);
    CHECK(t.real() >= 0.0);
    CHECK(std::abs(t.imag()) < 1e-13);
    CHECK(t.real() == doctest::Approx(frobenius_sq(r)).epsilon(1e-13));
  }
}

TEST_CASE("is_unitary") {
  CHECK(is_unitary(kRoot2 * f2()));
  CHECK_FALSE(is_unitary(f2()));
  CHECK_FALSE(is_unitary(CMatrix(2, 3)));
  CHECK(is_unitary(CMatrix{{0, kI}, {kI, 0}}));
}

TEST_CASE("unitary_scalar") {
  auto two = unitary_scalar(f2());
  REQUIRE(two);
  CHECK(*two == doctest::Approx(2.0).epsilon(1e-14));
  auto one = unitary_scalar(kRoot2 * f2());
  REQUIRE(one);
  CHECK(*one == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_FALSE(unitary_scalar(CMatrix{{1, 0}, {0, 0}}));
  CHECK_FALSE(unitary_scalar(CMatrix(2, 2)));
  CHECK_FALSE(unitary_scalar(CMatrix(2, 3)));
}

TEST_CASE("unitary_scalar with lambda one agrees with is_unitary") {
  const std::array<CMatrix, 5> cases = {CMatrix::identity(3), kRoot2 * f2(), f2(),
                                        random_matrix(2, 2), CMatrix{{0, 1}, {1, 0}}};
  for (const CMatrix& m : cases) {
    const auto s = unitary_scalar(m);
    const bool unit_lambda = s && std::abs(*s - 1.0) <= 1e-10;
    CHECK(unit_lambda == is_unitary(m));
  }
}

TEST_CASE("proportional") {
  const CMatrix a = random_matrix(3, 3);
  CHECK(proportional(a, kI * a));
  CHECK(proportional(a, Complex(-2.5, 1.0) * a));
  CHECK_FALSE(proportional(sigma_x(), sigma_z()));
  CHECK(proportional(CMatrix(2, 2), CMatrix(2, 2)));
  CHECK_FALSE(proportional(CMatrix(2, 2), sigma_x()));
  CHECK_FALSE(proportional(sigma_x(), CMatrix(2, 2)));
}

TEST_CASE("commutes") {
  const CMatrix d1{{1, 0}, {0, kI}};
  const CMatrix d2{{-3.0, 0}, {0, 2}};
  CHECK(commutes(d1, d2));
  CHECK_FALSE(commutes(sigma_x(), sigma_z()));
  CHECK(commutes(sigma_x(), sigma_x()));
  CHECK_THROWS_AS(commutes(CMatrix::identity(2), CMatrix::identity(3)), DimensionError);
}

TEST_CASE("regroup") {
  const CMatrix t = random_matrix(4, 6);
  const std::array<std::size_t, 4> dims = {2, 2, 3, 2};
  const std::array<std::size_t, 4> id = {0, 1, 2, 3};
  CHECK(regroup(t, dims, id, 4, 6) == t);

  // perm then its inverse.
  const std::array<std::size_t, 4> perm = {2, 0, 3, 1};
  std::array<std::size_t, 4> permuted_dims{}, inverse{};
  for (std::size_t k = 0; k < 4; ++k) {
    permuted_dims[k] = dims[perm[k]];
    inverse[perm[k]] = k;
  }
  const CMatrix once = regroup(t, dims, perm, 6, 4);
  CHECK(regroup(once, permuted_dims, inverse, 4, 6) == t);

  // Vectorisation and back.
  const CMatrix m{{1, 2}, {3, 4}};
  const std::array<std::size_t, 2> d2 = {2, 2};
  const std::array<std::size_t, 2> p2 = {0, 1};
  const CMatrix row = regroup(m, d2, p2, 1, 4);
  CHECK(row == CMatrix{{1, 2, 3, 4}});
  CHECK(regroup(row, d2, p2, 2, 2) == m);

  // Swapping the two axes of a square matrix is the transpose.
  const std::array<std::size_t, 2> swap = {1, 0};
  CHECK(regroup(m, d2, swap, 2, 2) == transpose(m));

  CHECK_THROWS_AS(regroup(m, dims, id, 2, 2), DimensionError);
  CHECK_THROWS_AS(regroup(m, d2, p2, 3, 2), DimensionError);
  const std::array<std::size_t, 2> bad = {0, 0};
  CHECK_THROWS_AS(regroup(m, d2, bad, 2, 2), DimensionError);
}

TEST_CASE("flat and unflattened indices agree") {
  const std::array<std::size_t, 3> dims = {4, 3, 2};
  for (std::size_t k = 0; k < 24; ++k) {
    const auto idx = unflatten_index(k, dims);
    CHECK(flat_index({idx[0], idx[1], idx[2]}, {4, 3, 2}) == k);
  }
  CHECK(flat_index({1, 2, 3}, {4, 4, 4}) == 1 * 16 + 2 * 4 + 3);
}
