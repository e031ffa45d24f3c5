#include <doctest.h>

#include "qcomb/biunitarity.hpp"
#include "qcomb/constructions.hpp"
#include "qcomb/reproduction.hpp"
#include "support.hpp"

using namespace qcomb;

TEST_CASE("seed inputs verify") {
  const SeedInputs in = seed_inputs();
  CHECK(in.h.dim() == 4);
  CHECK(in.p.dim() == 4);
  CHECK(in.q.dim() == 4);
  CHECK(in.v.dim() == 2);
  CHECK(verify_family(to_candidate(HadamardFamily::constant(in.h, {4, 4}))).passed());
  // Row 2 of P, entry (1, 2): (i·e1 + 2·e4)/√5 with 1-based basis vectors.
  CHECK(std::abs(in.p(1, 1, 0) - Complex(0.0, 1.0 / std::sqrt(5.0))) < 1e-16);
  CHECK(std::abs(in.p(1, 1, 3) - Complex(2.0 / std::sqrt(5.0), 0.0)) < 1e-16);
}

TEST_CASE("the fixture is a unitary error basis on its own") {
  const UnitaryErrorBasis f = load_reference_fixture();
  CHECK(f.size() == 64);
  CHECK(f.dim() == 8);
  CHECK(f[0] == CMatrix::identity(8));
  const auto r = verify_ueb(f.elements());
  CHECK(r.passed());
  CHECK(std::abs(*r.lambda - 8.0) <= 8e-10);
  for (const CMatrix& e : f.elements()) CHECK(is_unitary(e));
  CHECK(std::abs(trace_inner(f[0], f[1])) < 1e-15);
}

TEST_CASE("the built basis matches the fixture") {
  const UnitaryErrorBasis built = build_reference_ueb();
  const UnitaryErrorBasis fixture = load_reference_fixture();
  const FixtureComparison c = compare_bases(built, fixture, 1e-12);
  CHECK(c.total == 64);
  CHECK(c.matched == 64);
  CHECK(c.all_match());
  CHECK(c.max_deviation < 1e-12);
  CHECK(c.mismatched.empty());

  // Element (1,1,4) is a signed permutation matrix.
  const CMatrix& u114 = built[built.index_of({0, 0, 3})];
  const CMatrix expected{{0, 0, 0, 1, 0, 0, 0, 0},   {0, 0, -1.0, 0, 0, 0, 0, 0},
                         {0, -1.0, 0, 0, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0, 0, 0},
                         {0, 0, 0, 0, 0, 0, 0, -1.0}, {0, 0, 0, 0, 0, 0, 1, 0},
                         {0, 0, 0, 0, 0, 1, 0, 0},   {0, 0, 0, 0, -1.0, 0, 0, 0}};
  CHECK(max_abs_diff(u114, expected) < 1e-15);
}

TEST_CASE("compare_bases reports mismatches") {
  const UnitaryErrorBasis built = build_reference_ueb();
  const UnitaryErrorBasis other = build_unnormalized_ueb();
  const FixtureComparison c = compare_bases(built, other, 1e-12);
  CHECK_FALSE(c.all_match());
  CHECK(c.matched + c.mismatched.size() == 64);
  CHECK(c.max_deviation > 1e-3);
  // Same shape, different basis: compared element by element, not rejected.
  const FixtureComparison p8 = compare_bases(built, pauli_ueb(8), 1e-12);
  CHECK(p8.total == 64);
  CHECK_FALSE(p8.all_match());
  CHECK_THROWS_AS(compare_bases(built, pauli_ueb(4), 1e-12), DimensionError);
  CHECK_THROWS_AS(compare_bases(built, pauli_ueb(2), 1e-12), DimensionError);
}

TEST_CASE("the built basis is not nice") {
  const UnitaryErrorBasis u = build_reference_ueb();
  const NotNiceReport r = check_not_nice(u, Tolerance{1e-12, 1e-12});
  CHECK(r.verdict == Verdict::excluded);
  REQUIRE(r.witness);
  CHECK(u.label(*r.witness) == std::vector<std::size_t>{0, 0, 1});
  const CMatrix& u112 = u[u.index_of({0, 0, 1})];
  CHECK_FALSE(proportional(dagger(u112), u112));

  CHECK(check_not_nice(pauli_ueb(2)).verdict == Verdict::inconclusive);
  CHECK(check_not_nice(pauli_ueb(3)).verdict == Verdict::inconclusive);
}

TEST_CASE("the built basis is not quantum shift-and-multiply") {
  const NotQsmReport r = check_not_qsm(build_reference_ueb());
  CHECK(r.verdict == Verdict::excluded);
  CHECK(r.max_commuting == 4);
  CHECK(r.dimension == 8);
  CHECK(r.clique.size() == 4);

  const NotQsmReport p = check_not_qsm(pauli_ueb(2));
  CHECK(p.verdict == Verdict::inconclusive);
  CHECK(p.max_commuting == 2);

  const SeedInputs in = seed_inputs();
  const UnitaryErrorBasis q4 = qsm(HadamardFamily::constant(in.h, {4}), in.q);
  const NotQsmReport q = check_not_qsm(ueb_normalize(q4, 0));
  CHECK(q.verdict == Verdict::inconclusive);
  CHECK(q.max_commuting == 4);
}

TEST_CASE("without the identity both checks refuse") {
  const UnitaryErrorBasis raw = build_unnormalized_ueb();
  // The unnormalised (1,1,1) is not the identity, and nothing else is either.
  CHECK_THROWS_AS(check_not_nice(raw), PreconditionError);
  CHECK_THROWS_AS(check_not_qsm(raw), PreconditionError);
}

TEST_CASE("reproduce_reference") {
  const ReproductionReport r = reproduce_reference(load_reference_fixture());
  CHECK(r.success());
  CHECK(r.verification.passed());
  CHECK(r.not_nice.verdict == Verdict::excluded);
  CHECK(r.not_qsm.max_commuting == 4);
  CHECK(r.seconds < 5.0);

  const ReproductionReport bad = reproduce_reference(build_unnormalized_ueb());
  CHECK_FALSE(bad.success());
}
