#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "qcomb/biunitarity.hpp"
#include "qcomb/constructions.hpp"
#include "qcomb/equivalence.hpp"
#include "qcomb/io.hpp"
#include "qcomb/reproduction.hpp"

namespace py = pybind11;
using namespace qcomb;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

Tolerance make_tol(double verify_tol, double compare_tol) {
  Tolerance t{verify_tol, compare_tol};
  t.validate();
  return t;
}

CArray to_array(const CMatrix& m) {
  CArray out({m.rows(), m.cols()});
  std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
  return out;
}

CMatrix matrix_from(const CArray& a) {
  if (a.ndim() != 2) throw DimensionError("expected a 2-d array");
  const auto r = static_cast<std::size_t>(a.shape(0)), c = static_cast<std::size_t>(a.shape(1));
  return CMatrix(r, c, std::vector<Complex>(a.data(), a.data() + r * c));
}

CArray qls_array(const QuantumLatinSquare& q) {
  const std::size_t n = q.dim();
  CArray out({n, n, n});
  std::copy(q.coefficients().begin(), q.coefficients().end(), out.mutable_data());
  return out;
}

QuantumLatinSquare qls_from(const CArray& a, const Tolerance& tol) {
  if (a.ndim() != 3 || a.shape(0) != a.shape(1) || a.shape(1) != a.shape(2)) {
    throw DimensionError("a quantum Latin square is an (n, n, n) array");
  }
  const auto n = static_cast<std::size_t>(a.shape(0));
  return QuantumLatinSquare::from_coefficients(n, std::vector<Complex>(a.data(), a.data() + n * n * n),
                                               tol);
}

CArray ueb_array(const UnitaryErrorBasis& u) {
  const std::size_t n = u.dim();
  CArray out({u.size(), n, n});
  Complex* p = out.mutable_data();
  for (const CMatrix& e : u.elements()) p = std::copy(e.entries().begin(), e.entries().end(), p);
  return out;
}

UnitaryErrorBasis ueb_from(const CArray& a, std::vector<std::size_t> label_dims, const Tolerance& tol) {
  if (a.ndim() != 3 || a.shape(1) != a.shape(2)) throw DimensionError("a UEB is a (n*n, n, n) array");
  const auto count = static_cast<std::size_t>(a.shape(0)), n = static_cast<std::size_t>(a.shape(1));
  std::vector<CMatrix> elements;
  for (std::size_t k = 0; k < count; ++k) {
    const Complex* first = a.data() + k * n * n;
    elements.emplace_back(n, n, std::vector<Complex>(first, first + n * n));
  }
  return UnitaryErrorBasis::from_elements(std::move(elements), std::move(label_dims), tol);
}

py::dict report_dict(const BiunitaryReport& r) {
  py::dict d;
  d["passed"] = r.passed();
  d["vertical_ok"] = r.vertical_ok;
  d["horizontal_ok"] = r.horizontal_ok;
  d["lambda"] = r.lambda ? py::cast(*r.lambda) : py::none();
  d["worst_residual"] = r.worst_residual;
  d["detail"] = r.detail;
  d["structural_error"] = r.structural_error ? py::cast(*r.structural_error) : py::none();
  d["failing_item"] = r.failing_item ? py::cast(*r.failing_item) : py::none();
  return d;
}

template <class T>
void bind_family(py::module_& m, const char* name) {
  using F = ControlledFamily<T>;
  py::class_<F>(m, name)
      .def(py::init<std::vector<std::size_t>, std::vector<T>>(), py::arg("control_dims"),
           py::arg("items"))
      .def_static("constant", &F::constant, py::arg("item"), py::arg("control_dims"))
      .def_property_readonly("control_dims", &F::control_dims)
      .def_property_readonly("item_dim", &F::item_dim)
      .def_property_readonly("items", &F::items)
      .def("__len__", &F::size)
      .def("__getitem__", [](const F& f, std::size_t k) {
        if (k >= f.size()) throw py::index_error();
        return f[k];
      });
}

// Documents cross the boundary as JSON text, so Python sees exactly the file format.
std::string document_json(const StructureDocument& doc) { return dump_document(doc); }

}  // namespace

PYBIND11_MODULE(_qcomb, m) {
  m.doc() = "Quantum combinatorial structures built by biunitary composition.";

  py::register_exception<Error>(m, "Error");
  py::register_exception<DimensionError>(m, "DimensionError", m.attr("Error"));
  py::register_exception<VerificationError>(m, "VerificationError", m.attr("Error"));
  py::register_exception<CapabilityError>(m, "CapabilityError", m.attr("Error"));
  py::register_exception<PreconditionError>(m, "PreconditionError", m.attr("Error"));
  py::register_exception<ParseError>(m, "ParseError", m.attr("Error"));

  constexpr double kVerify = 1e-10, kCompare = 1e-12;
#define QCOMB_TOL py::arg("verify_tol") = kVerify, py::arg("compare_tol") = kCompare

  py::class_<Tolerance>(m, "Tolerance")
      .def(py::init(&make_tol), QCOMB_TOL)
      .def_readonly("verify_tol", &Tolerance::verify_tol)
      .def_readonly("compare_tol", &Tolerance::compare_tol);

  py::class_<HadamardMatrix>(m, "Hadamard")
      .def(py::init([](const CArray& a, double vt, double ct) {
             return HadamardMatrix::from_matrix(matrix_from(a), make_tol(vt, ct));
           }),
           py::arg("matrix"), QCOMB_TOL)
      .def_property_readonly("dim", &HadamardMatrix::dim)
      .def("array", [](const HadamardMatrix& h) { return to_array(h.matrix()); })
      .def("__eq__", [](const HadamardMatrix& a, const HadamardMatrix& b) { return a == b; });

  py::class_<QuantumLatinSquare>(m, "QLS")
      .def(py::init([](const CArray& a, double vt, double ct) { return qls_from(a, make_tol(vt, ct)); }),
           py::arg("coefficients"), QCOMB_TOL)
      .def_property_readonly("dim", &QuantumLatinSquare::dim)
      .def("array", &qls_array)
      .def("__eq__", [](const QuantumLatinSquare& a, const QuantumLatinSquare& b) { return a == b; });

  py::class_<UnitaryErrorBasis>(m, "UEB")
      .def(py::init([](const CArray& a, std::vector<std::size_t> labels, double vt, double ct) {
             return ueb_from(a, std::move(labels), make_tol(vt, ct));
           }),
           py::arg("elements"), py::arg("label_dims") = std::vector<std::size_t>{}, QCOMB_TOL)
      .def_property_readonly("dim", &UnitaryErrorBasis::dim)
      .def_property_readonly("label_dims", &UnitaryErrorBasis::label_dims)
      .def("__len__", &UnitaryErrorBasis::size)
      .def("__getitem__",
           [](const UnitaryErrorBasis& u, std::size_t k) {
             if (k >= u.size()) throw py::index_error();
             return to_array(u[k]);
           })
      .def("label", &UnitaryErrorBasis::label, py::arg("index"))
      .def("index_of",
           [](const UnitaryErrorBasis& u, const std::vector<std::size_t>& label) {
             return u.index_of(label);
           },
           py::arg("label"))
      .def("array", &ueb_array)
      .def("__eq__", [](const UnitaryErrorBasis& a, const UnitaryErrorBasis& b) { return a == b; });

  py::class_<LatinSquare>(m, "LatinSquare")
      .def(py::init(&LatinSquare::from_cells), py::arg("cells"))
      .def_property_readonly("dim", &LatinSquare::dim)
      .def_property_readonly("cells", &LatinSquare::cells);

  bind_family<HadamardMatrix>(m, "HadamardFamily");
  bind_family<QuantumLatinSquare>(m, "QLSFamily");
  bind_family<UnitaryErrorBasis>(m, "UEBFamily");

  // Verifiers take raw arrays so that failing candidates can be inspected.
  m.def("verify_hadamard",
        [](const CArray& a, double vt, double ct) {
          return report_dict(verify_hadamard(matrix_from(a), make_tol(vt, ct)));
        },
        py::arg("matrix"), QCOMB_TOL);
  m.def("verify_qls",
        [](const CArray& a, double vt, double ct) {
          if (a.ndim() != 3) throw DimensionError("expected an (n, n, n) array");
          const auto n = static_cast<std::size_t>(a.shape(0));
          QlsGrid grid(n, std::vector<std::vector<Complex>>(n));
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
              const Complex* p = a.data() + (i * n + j) * a.shape(2);
              grid[i][j].assign(p, p + a.shape(2));
            }
          return report_dict(verify_qls(grid, make_tol(vt, ct)));
        },
        py::arg("coefficients"), QCOMB_TOL);
  m.def("verify_ueb",
        [](const CArray& a, double vt, double ct) {
          if (a.ndim() != 3) throw DimensionError("expected an (k, n, n) array");
          std::vector<CMatrix> elements;
          const auto r = static_cast<std::size_t>(a.shape(1)), c = static_cast<std::size_t>(a.shape(2));
          for (py::ssize_t k = 0; k < a.shape(0); ++k) {
            const Complex* p = a.data() + k * r * c;
            elements.emplace_back(r, c, std::vector<Complex>(p, p + r * c));
          }
          return report_dict(verify_ueb(elements, make_tol(vt, ct)));
        },
        py::arg("elements"), QCOMB_TOL);

  m.def("fourier", &fourier, py::arg("n"));
  m.def("pauli_ueb", &pauli_ueb, py::arg("n"));
  m.def("cyclic_latin", &cyclic_latin, py::arg("n"));
  m.def("qls_from_latin", &qls_from_latin, py::arg("latin"));

  m.def("had_had_to_qls", &had_had_to_qls, py::arg("h"), py::arg("j"), py::arg("tol") = Tolerance{});
  m.def("ueb_ueb_to_qls", &ueb_ueb_to_qls, py::arg("u"), py::arg("v"), py::arg("tol") = Tolerance{});
  m.def("hosoya_suzuki", &hosoya_suzuki, py::arg("j"), py::arg("k"), py::arg("tol") = Tolerance{});
  m.def("dita", &dita, py::arg("j"), py::arg("k"), py::arg("tol") = Tolerance{});
  m.def("controlled_ueb_tensor", &controlled_ueb_tensor, py::arg("v"), py::arg("w"),
        py::arg("tol") = Tolerance{});
  m.def("qsm", &qsm, py::arg("h"), py::arg("q"), py::arg("tol") = Tolerance{});
  m.def("triple_hadamard_ueb", &triple_hadamard_ueb, py::arg("h"), py::arg("f"), py::arg("g"),
        py::arg("tol") = Tolerance{});
  m.def("ternary_a", &ternary_a, py::arg("h"), py::arg("v"), py::arg("q"), py::arg("tol") = Tolerance{});
  m.def("ternary_b", &ternary_b, py::arg("h"), py::arg("p"), py::arg("q"), py::arg("tol") = Tolerance{});
  m.def("ternary_c", &ternary_c, py::arg("h"), py::arg("v"), py::arg("w"), py::arg("tol") = Tolerance{});
  m.def("ternary_d", &ternary_d, py::arg("v"), py::arg("q"), py::arg("w"), py::arg("tol") = Tolerance{});
  m.def("quad_a", &quad_a, py::arg("h"), py::arg("p"), py::arg("q"), py::arg("v"),
        py::arg("tol") = Tolerance{});
  m.def("octo_b", &octo_b, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"), py::arg("h"),
        py::arg("k"), py::arg("q"), py::arg("p"), py::arg("tol") = Tolerance{});
  m.def("f_family",
        [](const UebFamily& v, const std::vector<QuantumLatinSquare>& qs, const UnitaryErrorBasis& w,
           const Tolerance& tol) { return f_family(v, qs, w, tol); },
        py::arg("v"), py::arg("qs"), py::arg("w"), py::arg("tol") = Tolerance{});

  m.def("hadamard_equivalent",
        [](const CArray& h, const CArray& w, double vt, double ct) -> py::object {
          const auto witness = hadamard_equivalent(matrix_from(h), matrix_from(w), make_tol(vt, ct));
          if (!witness) return py::none();
          py::dict d;
          d["row_perm"] = witness->row_perm;
          d["col_perm"] = witness->col_perm;
          d["row_phases"] = witness->row_phases;
          d["col_phases"] = witness->col_phases;
          return std::move(d);
        },
        py::arg("h"), py::arg("w"), QCOMB_TOL);
  m.def("dephase_hadamard", &dephase_hadamard, py::arg("h"));
  m.def("ueb_normalize", &ueb_normalize, py::arg("u"), py::arg("pivot"), py::arg("tol") = Tolerance{});
  m.def("max_commuting_subset",
        [](const UnitaryErrorBasis& u, const Tolerance& tol) { return max_commuting_subset(u, tol).elements; },
        py::arg("u"), py::arg("tol") = Tolerance{});
  m.def("adjoint_witness",
        [](const UnitaryErrorBasis& u, const Tolerance& tol) {
          return adjoint_closed_up_to_phase(u, tol).witness;
        },
        py::arg("u"), py::arg("tol") = Tolerance{});

  m.def("build_reference_ueb", &build_reference_ueb, py::arg("tol") = Tolerance{});
  m.def("build_unnormalized_ueb", &build_unnormalized_ueb, py::arg("tol") = Tolerance{});
  m.def("load_reference_fixture", &load_reference_fixture,
        py::arg("path") = std::optional<std::filesystem::path>{}, py::arg("tol") = Tolerance{});
  m.def("reproduce",
        [](std::optional<std::filesystem::path> fixture, const Tolerance& tol) {
          const ReproductionReport r = reproduce_reference(load_reference_fixture(fixture, tol), tol);
          py::dict d;
          d["success"] = r.success();
          d["matched"] = r.comparison.matched;
          d["total"] = r.comparison.total;
          d["max_deviation"] = r.comparison.max_deviation;
          d["not_nice_witness"] = r.not_nice.witness ? py::cast(*r.not_nice.witness) : py::none();
          d["max_commuting"] = r.not_qsm.max_commuting;
          d["commuting_set"] = r.not_qsm.clique;
          d["verification"] = report_dict(r.verification);
          d["seconds"] = r.seconds;
          return d;
        },
        py::arg("fixture") = std::optional<std::filesystem::path>{}, py::arg("tol") = Tolerance{});

  m.def("dumps", [](const HadamardMatrix& h) { return document_json(to_document(h)); });
  m.def("dumps", [](const QuantumLatinSquare& q) { return document_json(to_document(q)); });
  m.def("dumps", [](const UnitaryErrorBasis& u) { return document_json(to_document(u)); });
  m.def("dumps", [](const LatinSquare& l) { return document_json(to_document(l)); });
  m.def("dumps", [](const HadamardFamily& f) { return document_json(to_document(f)); });
  m.def("dumps", [](const QlsFamily& f) { return document_json(to_document(f)); });
  m.def("dumps", [](const UebFamily& f) { return document_json(to_document(f)); });
  m.def("loads",
        [](const std::string& text, const Tolerance& tol) -> py::object {
          const StructureDocument doc = parse_document(text);
          if (const auto* f = std::get_if<FamilyCandidate>(&doc)) {
            switch (f->base_kind) {
              case StructureKind::hadamard:
                return py::cast(family_from_candidate<HadamardMatrix>(*f, tol));
              case StructureKind::qls:
                return py::cast(family_from_candidate<QuantumLatinSquare>(*f, tol));
              default:
                return py::cast(family_from_candidate<UnitaryErrorBasis>(*f, tol));
            }
          }
          switch (document_kind(doc)) {
            case StructureKind::hadamard:
              return py::cast(as_hadamard(doc, tol));
            case StructureKind::qls:
              return py::cast(as_qls(doc, tol));
            case StructureKind::ueb:
              return py::cast(as_ueb(doc, tol));
            default:
              return py::cast(as_latin(doc));
          }
        },
        py::arg("text"), py::arg("tol") = Tolerance{});
#undef QCOMB_TOL
}
