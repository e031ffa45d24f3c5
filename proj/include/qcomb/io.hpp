#pragma once

// JSON interchange documents. Every file carries "kind", "index_base" (always
// 1), a "dims" object and "data"; indices and labels in files are 1-based.
// Complex scalars are written as [re, im] and may also be read as symbolic
// tokens such as "i/sqrt2" or "-2/sqrt5".
//
//   hadamard    data[a][b]                      dims {n}
//   qls         data[a][b] = vector of length n dims {n}
//   latin       data[a][b] = symbol in 1..n     dims {n}
//   ueb         data = [{label, matrix}]        dims {n, label_dims}
//   controlled  data = [{control_index, item}]  dims {n[, label_dims]},
//               plus base_kind and control_dims; a UEB item whose label
//               shape differs from dims.label_dims carries its own

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "qcomb/structures.hpp"

namespace qcomb {

/// A parsed but unvalidated document; CMatrix is a Hadamard candidate.
using StructureDocument = std::variant<CMatrix, QlsGrid, UebCandidate, LatinGrid, FamilyCandidate>;

StructureKind document_kind(const StructureDocument& doc);

/// Evaluates a scalar token: [sign][integer][i][/integer | /sqrtK], e.g. "-i",
/// "2i/sqrt5", "1/sqrt2", "3/4". Throws ParseError on anything else.
Complex parse_scalar_token(std::string_view token);

/// Throws ParseError naming the line (for JSON syntax) or field path (for shape).
StructureDocument parse_document(std::string_view text);
/// Deterministic output; doubles are written with round-trip precision.
std::string dump_document(const StructureDocument& doc);

StructureDocument load_document(const std::filesystem::path& path);
void save_document(const StructureDocument& doc, const std::filesystem::path& path);

/// Runs the verifier matching the document kind.
BiunitaryReport verify_document(const StructureDocument& doc, const Tolerance& tol = {});

StructureDocument to_document(const HadamardMatrix& h);
StructureDocument to_document(const QuantumLatinSquare& q);
StructureDocument to_document(const UnitaryErrorBasis& u);
StructureDocument to_document(const LatinSquare& l);
template <class T>
StructureDocument to_document(const ControlledFamily<T>& family) {
  return to_candidate(family);
}

// Typed views. Each throws ParseError if the document has another kind and
// VerificationError if the structure fails its verifier.
HadamardMatrix as_hadamard(const StructureDocument& doc, const Tolerance& tol = {});
QuantumLatinSquare as_qls(const StructureDocument& doc, const Tolerance& tol = {});
UnitaryErrorBasis as_ueb(const StructureDocument& doc, const Tolerance& tol = {});
LatinSquare as_latin(const StructureDocument& doc);
template <class T>
ControlledFamily<T> as_family(const StructureDocument& doc, const Tolerance& tol = {}) {
  const auto* f = std::get_if<FamilyCandidate>(&doc);
  if (!f) throw ParseError("kind", "expected a controlled family document");
  return family_from_candidate<T>(*f, tol);
}

}  // namespace qcomb
