#include "qcomb/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

namespace qcomb {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where, what);
}

std::string at(const std::string& path, std::size_t k) { return path + "[" + std::to_string(k) + "]"; }
std::string at(const std::string& path, const char* key) { return path + "." + key; }

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(at(path, key), "missing field");
  return *it;
}

const json& array_of(const json& j, std::size_t size, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  if (j.size() != size) {
    fail(path, "expected " + std::to_string(size) + " entries, found " + std::to_string(j.size()));
  }
  return j;
}

std::size_t read_positive(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 1) fail(path, "expected a positive integer");
  return j.get<std::size_t>();
}

std::vector<std::size_t> read_positive_list(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of positive integers");
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(read_positive(j[k], at(path, k)));
  return out;
}

std::size_t product(const std::vector<std::size_t>& dims) {
  std::size_t p = 1;
  for (std::size_t d : dims) p *= d;
  return p;
}

/// 1-based composite index in the file to a 0-based flat index.
std::size_t read_label(const json& j, const std::vector<std::size_t>& dims, const std::string& path) {
  array_of(j, dims.size(), path);
  std::size_t flat = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    const std::size_t v = read_positive(j[k], at(path, k));
    if (v > dims[k]) fail(at(path, k), "index " + std::to_string(v) + " exceeds " + std::to_string(dims[k]));
    flat = flat * dims[k] + (v - 1);
  }
  return flat;
}

json write_label(std::size_t flat, const std::vector<std::size_t>& dims) {
  json out = json::array();
  for (std::size_t v : unflatten_index(flat, dims)) out.push_back(v + 1);
  return out;
}

Complex read_scalar(const json& j, const std::string& path) {
  Complex z;
  if (j.is_string()) {
    try {
      z = parse_scalar_token(j.get<std::string>());
    } catch (const ParseError& e) {
      fail(path, e.what());
    }
  } else if (j.is_number()) {
    z = j.get<double>();
  } else if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    z = {j[0].get<double>(), j[1].get<double>()};
  } else {
    fail(path, "expected [re, im], a number or a scalar token");
  }
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) fail(path, "non-finite value");
  return z;
}

json write_scalar(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error("cannot serialise a non-finite value");
  }
  return json::array({z.real(), z.imag()});
}

CMatrix read_matrix(const json& j, std::size_t n, const std::string& path) {
  array_of(j, n, path);
  CMatrix m(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    const std::string row = at(path, a);
    array_of(j[a], n, row);
    for (std::size_t b = 0; b < n; ++b) m(a, b) = read_scalar(j[a][b], at(row, b));
  }
  return m;
}

json write_matrix(const CMatrix& m) {
  json out = json::array();
  for (std::size_t a = 0; a < m.rows(); ++a) {
    json row = json::array();
    for (std::size_t b = 0; b < m.cols(); ++b) row.push_back(write_scalar(m(a, b)));
    out.push_back(std::move(row));
  }
  return out;
}

QlsGrid read_qls(const json& j, std::size_t n, const std::string& path) {
  array_of(j, n, path);
  QlsGrid grid(n, std::vector<std::vector<Complex>>(n, std::vector<Complex>(n)));
  for (std::size_t a = 0; a < n; ++a) {
    array_of(j[a], n, at(path, a));
    for (std::size_t b = 0; b < n; ++b) {
      const std::string cell = at(at(path, a), b);
      array_of(j[a][b], n, cell);
      for (std::size_t i = 0; i < n; ++i) grid[a][b][i] = read_scalar(j[a][b][i], at(cell, i));
    }
  }
  return grid;
}

json write_qls(const QlsGrid& grid) {
  json out = json::array();
  for (const auto& row : grid) {
    json r = json::array();
    for (const auto& cell : row) {
      json v = json::array();
      for (Complex z : cell) v.push_back(write_scalar(z));
      r.push_back(std::move(v));
    }
    out.push_back(std::move(r));
  }
  return out;
}

LatinGrid read_latin(const json& j, std::size_t n, const std::string& path) {
  array_of(j, n, path);
  LatinGrid cells(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    array_of(j[a], n, at(path, a));
    for (std::size_t b = 0; b < n; ++b) cells[a][b] = read_positive(j[a][b], at(at(path, a), b)) - 1;
  }
  return cells;
}

UebCandidate read_ueb(const json& j, std::size_t n, const std::vector<std::size_t>& label_dims,
                      const std::string& path) {
  const std::size_t count = n * n;
  array_of(j, count, path);
  UebCandidate u;
  u.label_dims = label_dims;
  u.elements.resize(count);
  std::vector<bool> seen(count, false);
  for (std::size_t k = 0; k < count; ++k) {
    const std::string entry = at(path, k);
    const std::size_t idx = read_label(field(j[k], "label", entry), label_dims, at(entry, "label"));
    if (seen[idx]) fail(at(entry, "label"), "duplicate label");
    seen[idx] = true;
    u.elements[idx] = read_matrix(field(j[k], "matrix", entry), n, at(entry, "matrix"));
  }
  return u;
}

std::vector<std::size_t> effective_label_dims(const UebCandidate& u) {
  if (!u.label_dims.empty()) return u.label_dims;
  return {u.elements.size()};
}

json write_ueb(const UebCandidate& u) {
  const std::vector<std::size_t> dims = effective_label_dims(u);
  json out = json::array();
  for (std::size_t k = 0; k < u.elements.size(); ++k) {
    json e = json::object();
    e["label"] = write_label(k, dims);
    e["matrix"] = write_matrix(u.elements[k]);
    out.push_back(std::move(e));
  }
  return out;
}

std::size_t item_dim(const ItemCandidate& item) {
  return std::visit(
      [](const auto& x) -> std::size_t {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, CMatrix>) {
          return x.rows();
        } else if constexpr (std::is_same_v<T, QlsGrid>) {
          return x.size();
        } else {
          return x.elements.empty() ? 0 : x.elements.front().rows();
        }
      },
      item);
}

std::vector<std::size_t> read_label_dims(const json& dims, std::size_t n, const std::string& path) {
  auto it = dims.find("label_dims");
  if (it == dims.end()) return {n * n};
  std::vector<std::size_t> ld = read_positive_list(*it, at(path, "label_dims"));
  if (product(ld) != n * n) fail(at(path, "label_dims"), "label dimensions must multiply to n^2");
  return ld;
}

StructureDocument read_document(const json& doc) {
  const std::string root = "$";
  const json& kind_j = field(doc, "kind", root);
  if (!kind_j.is_string()) fail("$.kind", "expected a string");
  StructureKind kind;
  try {
    kind = parse_kind(kind_j.get<std::string>());
  } catch (const ParseError& e) {
    fail("$.kind", e.what());
  }
  if (auto it = doc.find("index_base"); it != doc.end()) {
    if (!it->is_number_integer() || it->get<long long>() != 1) fail("$.index_base", "must be 1");
  }
  const json& dims = field(doc, "dims", root);
  if (!dims.is_object()) fail("$.dims", "expected an object");
  const std::size_t n = read_positive(field(dims, "n", "$.dims"), "$.dims.n");
  const json& data = field(doc, "data", root);

  switch (kind) {
    case StructureKind::hadamard:
      return read_matrix(data, n, "$.data");
    case StructureKind::qls:
      return read_qls(data, n, "$.data");
    case StructureKind::latin:
      return read_latin(data, n, "$.data");
    case StructureKind::ueb:
      return read_ueb(data, n, read_label_dims(dims, n, "$.dims"), "$.data");
    case StructureKind::controlled:
      break;
  }

  FamilyCandidate fam;
  const json& base_j = field(doc, "base_kind", root);
  if (!base_j.is_string()) fail("$.base_kind", "expected a string");
  try {
    fam.base_kind = parse_kind(base_j.get<std::string>());
  } catch (const ParseError& e) {
    fail("$.base_kind", e.what());
  }
  if (fam.base_kind != StructureKind::hadamard && fam.base_kind != StructureKind::qls &&
      fam.base_kind != StructureKind::ueb) {
    fail("$.base_kind", "must be hadamard, qls or ueb");
  }
  fam.control_dims = read_positive_list(field(doc, "control_dims", root), "$.control_dims");
  const std::size_t count = product(fam.control_dims);
  const std::vector<std::size_t> label_dims =
      fam.base_kind == StructureKind::ueb ? read_label_dims(dims, n, "$.dims")
                                          : std::vector<std::size_t>{};
  array_of(data, count, "$.data");
  std::vector<std::optional<ItemCandidate>> slots(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::string entry = at(std::string("$.data"), k);
    const std::size_t idx = read_label(field(data[k], "control_index", entry), fam.control_dims,
                                       at(entry, "control_index"));
    if (slots[idx]) fail(at(entry, "control_index"), "duplicate control index");
    const json& item = field(data[k], "item", entry);
    const std::string ipath = at(entry, "item");
    switch (fam.base_kind) {
      case StructureKind::hadamard:
        slots[idx] = read_matrix(item, n, ipath);
        break;
      case StructureKind::qls:
        slots[idx] = read_qls(item, n, ipath);
        break;
      default:
        // An item may override the family label shape.
        slots[idx] = read_ueb(item, n,
                              data[k].contains("label_dims") ? read_label_dims(data[k], n, entry)
                                                             : label_dims,
                              ipath);
        break;
    }
  }
  for (auto& s : slots) fam.items.push_back(std::move(*s));
  return fam;
}

json write_document(const StructureDocument& doc) {
  json out = json::object();
  out["kind"] = std::string(to_string(document_kind(doc)));
  out["index_base"] = 1;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, CMatrix>) {
          out["dims"] = {{"n", x.rows()}};
          out["data"] = write_matrix(x);
        } else if constexpr (std::is_same_v<T, QlsGrid>) {
          out["dims"] = {{"n", x.size()}};
          out["data"] = write_qls(x);
        } else if constexpr (std::is_same_v<T, LatinGrid>) {
          out["dims"] = {{"n", x.size()}};
          json data = json::array();
          for (const auto& row : x) {
            json r = json::array();
            for (std::size_t s : row) r.push_back(s + 1);
            data.push_back(std::move(r));
          }
          out["data"] = std::move(data);
        } else if constexpr (std::is_same_v<T, UebCandidate>) {
          const std::size_t n = x.elements.empty() ? 0 : x.elements.front().rows();
          out["dims"] = {{"n", n}, {"label_dims", effective_label_dims(x)}};
          out["data"] = write_ueb(x);
        } else {
          out["base_kind"] = std::string(to_string(x.base_kind));
          out["control_dims"] = x.control_dims;
          json dims = {{"n", x.items.empty() ? 0 : item_dim(x.items.front())}};
          std::vector<std::size_t> family_labels;
          if (!x.items.empty()) {
            if (const auto* u = std::get_if<UebCandidate>(&x.items.front())) {
              family_labels = effective_label_dims(*u);
              dims["label_dims"] = family_labels;
            }
          }
          out["dims"] = std::move(dims);
          json data = json::array();
          for (std::size_t k = 0; k < x.items.size(); ++k) {
            json e = json::object();
            e["control_index"] = write_label(k, x.control_dims);
            if (const auto* u = std::get_if<UebCandidate>(&x.items[k])) {
              if (effective_label_dims(*u) != family_labels) e["label_dims"] = effective_label_dims(*u);
            }
            e["item"] = std::visit(
                [](const auto& item) -> json {
                  using I = std::decay_t<decltype(item)>;
                  if constexpr (std::is_same_v<I, CMatrix>) {
                    return write_matrix(item);
                  } else if constexpr (std::is_same_v<I, QlsGrid>) {
                    return write_qls(item);
                  } else {
                    return write_ueb(item);
                  }
                },
                x.items[k]);
            data.push_back(std::move(e));
          }
          out["data"] = std::move(data);
        }
      },
      doc);
  return out;
}

}  // namespace

StructureKind document_kind(const StructureDocument& doc) {
  switch (doc.index()) {
    case 0:
      return StructureKind::hadamard;
    case 1:
      return StructureKind::qls;
    case 2:
      return StructureKind::ueb;
    case 3:
      return StructureKind::latin;
    default:
      return StructureKind::controlled;
  }
}

Complex parse_scalar_token(std::string_view token) {
  static const std::regex pattern(R"(^\s*([+-]?)(\d+(?:\.\d+)?)?(i)?(?:/(sqrt)?(\d+(?:\.\d+)?))?\s*$)");
  std::cmatch m;
  if (!std::regex_match(token.begin(), token.end(), m, pattern) ||
      (!m[2].matched && !m[3].matched)) {
    fail("", "unknown scalar token '" + std::string(token) + "'");
  }
  double value = m[2].matched ? std::stod(m[2].str()) : 1.0;
  if (m[5].matched) {
    const double d = std::stod(m[5].str());
    if (d == 0.0) fail("", "zero denominator in '" + std::string(token) + "'");
    value /= m[4].matched ? std::sqrt(d) : d;
  }
  if (m[1].str() == "-") value = -value;
  return m[3].matched ? Complex{0.0, value} : Complex{value, 0.0};
}

StructureDocument parse_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + upto, '\n');
    fail("line " + std::to_string(line), "malformed JSON");
  }
  return read_document(doc);
}

std::string dump_document(const StructureDocument& doc) { return write_document(doc).dump(1) + "\n"; }

StructureDocument load_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_document(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.where(), e.what());
  }
}

void save_document(const StructureDocument& doc, const std::filesystem::path& path) {
  const std::string text = dump_document(doc);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

BiunitaryReport verify_document(const StructureDocument& doc, const Tolerance& tol) {
  return std::visit(
      [&](const auto& x) -> BiunitaryReport {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, CMatrix>) {
          return verify_hadamard(x, tol);
        } else if constexpr (std::is_same_v<T, QlsGrid>) {
          return verify_qls(x, tol);
        } else if constexpr (std::is_same_v<T, UebCandidate>) {
          return verify_ueb(x.elements, tol);
        } else if constexpr (std::is_same_v<T, LatinGrid>) {
          BiunitaryReport r;
          try {
            LatinSquare::from_cells(x);
            r.vertical_ok = r.horizontal_ok = true;
          } catch (const Error& e) {
            r.structural_error = e.what();
          }
          return r;
        } else {
          return verify_family(x, tol);
        }
      },
      doc);
}

StructureDocument to_document(const HadamardMatrix& h) { return to_candidate(h); }
StructureDocument to_document(const QuantumLatinSquare& q) { return to_candidate(q); }
StructureDocument to_document(const UnitaryErrorBasis& u) { return to_candidate(u); }
StructureDocument to_document(const LatinSquare& l) { return l.cells(); }

namespace {

template <class T>
const T& expect(const StructureDocument& doc, StructureKind kind) {
  const auto* p = std::get_if<T>(&doc);
  if (!p) {
    fail("kind", "expected a " + std::string(to_string(kind)) + " document, found " +
                     std::string(to_string(document_kind(doc))));
  }
  return *p;
}

}  // namespace

HadamardMatrix as_hadamard(const StructureDocument& doc, const Tolerance& tol) {
  return HadamardMatrix::from_matrix(expect<CMatrix>(doc, StructureKind::hadamard), tol);
}

QuantumLatinSquare as_qls(const StructureDocument& doc, const Tolerance& tol) {
  return QuantumLatinSquare::from_grid(expect<QlsGrid>(doc, StructureKind::qls), tol);
}

UnitaryErrorBasis as_ueb(const StructureDocument& doc, const Tolerance& tol) {
  const auto& u = expect<UebCandidate>(doc, StructureKind::ueb);
  return UnitaryErrorBasis::from_elements(u.elements, u.label_dims, tol);
}

LatinSquare as_latin(const StructureDocument& doc) {
  return LatinSquare::from_cells(expect<LatinGrid>(doc, StructureKind::latin));
}

}  // namespace qcomb
