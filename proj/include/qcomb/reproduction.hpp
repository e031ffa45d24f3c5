#pragma once

// The 8-dimensional unitary error basis built by quad_a from four small seed
// structures, its published reference fixture, and the two obstruction
// checks that place it outside the nice and quantum shift-and-multiply classes.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcomb/equivalence.hpp"
#include "qcomb/structures.hpp"

namespace qcomb {

/// Inputs to quad_a at n = 2.
struct SeedInputs {
  HadamardMatrix h;        // 4×4, held constant over the (4, 4) controls
  QuantumLatinSquare p;    // 4-dimensional, with 1/√2 and 1/√5 superpositions
  QuantumLatinSquare q;    // 4-dimensional, classical (from a Latin square)
  UnitaryErrorBasis v;     // 2-dimensional Pauli-type basis
};

SeedInputs seed_inputs();

/// quad_a on the seed inputs, before normalisation (64 elements, labels abc).
UnitaryErrorBasis build_unnormalized_ueb(const Tolerance& tol = {});

/// build_unnormalized_ueb() normalised at pivot (1,1,1), so element (1,1,1) is 𝟙.
UnitaryErrorBasis build_reference_ueb(const Tolerance& tol = {});

/// The reference fixture document (symbolic entries), compiled into the library.
std::string_view reference_fixture_json();

/// Loads the reference fixture, from `path` if given, else the embedded copy.
UnitaryErrorBasis load_reference_fixture(const std::optional<std::filesystem::path>& path = {},
                                         const Tolerance& tol = {});

struct FixtureComparison {
  std::size_t total = 0;
  std::size_t matched = 0;
  double max_deviation = 0.0;
  std::vector<std::size_t> mismatched;  // element indices

  bool all_match() const noexcept { return total > 0 && matched == total; }
};

/// Entrywise comparison at `threshold`; bases must have the same size and dimension.
FixtureComparison compare_bases(const UnitaryErrorBasis& built, const UnitaryErrorBasis& fixture,
                                double threshold);

enum class Verdict { excluded, inconclusive };

struct NotNiceReport {
  Verdict verdict = Verdict::inconclusive;
  /// Element whose adjoint is proportional to no element of the basis.
  std::optional<std::size_t> witness;
};

struct NotQsmReport {
  Verdict verdict = Verdict::inconclusive;
  std::size_t max_commuting = 0;
  std::size_t dimension = 0;
  std::vector<std::size_t> clique;  // element indices of one maximum commuting set
};

/// A nice basis containing 𝟙 is closed under adjoints up to phase; failing
/// that excludes niceness. Throws PreconditionError if 𝟙 is not an element.
NotNiceReport check_not_nice(const UnitaryErrorBasis& u, const Tolerance& tol = {});

/// A basis containing 𝟙 that is equivalent to a quantum shift-and-multiply
/// basis has dim pairwise-commuting elements; fewer excludes it. Throws
/// PreconditionError if 𝟙 is not an element.
NotQsmReport check_not_qsm(const UnitaryErrorBasis& u, const Tolerance& tol = {});

struct ReproductionReport {
  FixtureComparison comparison;
  BiunitaryReport verification;
  NotNiceReport not_nice;
  NotQsmReport not_qsm;
  double seconds = 0.0;

  bool success() const noexcept {
    return comparison.all_match() && verification.passed() &&
           not_nice.verdict == Verdict::excluded && not_qsm.verdict == Verdict::excluded;
  }
};

/// Builds the basis, compares it with the fixture at `tol.compare_tol`,
/// verifies it and runs both obstruction checks.
ReproductionReport reproduce_reference(const UnitaryErrorBasis& fixture, const Tolerance& tol = {});

}  // namespace qcomb
