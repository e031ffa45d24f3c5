#include "qcomb/cli.hpp"

#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcomb/biunitarity.hpp"
#include "qcomb/constructions.hpp"
#include "qcomb/equivalence.hpp"
#include "qcomb/io.hpp"
#include "qcomb/reproduction.hpp"

namespace qcomb::cli {

namespace {

using json = nlohmann::ordered_json;

/// Missing or contradictory command-line inputs; reported with status 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Globals {
  std::optional<double> tol;
  bool json = false;

  Tolerance tolerance() const {
    Tolerance t;
    if (tol) t.verify_tol = *tol;
    t.validate();
    return t;
  }
};

std::string number(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

std::string residual(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(3) << v;
  return s.str();
}

std::string join(const std::vector<std::size_t>& v, const char* sep) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? sep : "") + std::to_string(v[k]);
  return s;
}

/// 1-based label of element k, digits run together when every component is a single digit.
std::string label_string(const UnitaryErrorBasis& u, std::size_t k) {
  std::vector<std::size_t> label = u.label(k);
  for (auto& c : label) ++c;
  const bool compact =
      std::all_of(u.label_dims().begin(), u.label_dims().end(), [](std::size_t d) { return d <= 9; });
  return join(label, compact ? "" : ",");
}

json report_json(const BiunitaryReport& r) {
  json j = json::object();
  j["passed"] = r.passed();
  j["vertical_ok"] = r.vertical_ok;
  j["horizontal_ok"] = r.horizontal_ok;
  j["lambda"] = r.lambda ? json(*r.lambda) : json(nullptr);
  j["worst_residual"] = r.worst_residual;
  json detail = json::object();
  for (const auto& [k, v] : r.detail) detail[k] = v;
  j["detail"] = std::move(detail);
  if (r.structural_error) j["structural_error"] = *r.structural_error;
  if (r.failing_item) j["failing_item"] = *r.failing_item + 1;
  return j;
}

void print_detail(std::ostream& out, const BiunitaryReport& r) {
  if (r.structural_error) out << "  error: " << *r.structural_error << "\n";
  if (r.failing_item) out << "  first failing item: " << *r.failing_item + 1 << "\n";
  for (const auto& [k, v] : r.detail) out << "  " << k << ": " << residual(v) << "\n";
}

// ---------------------------------------------------------------- inputs

template <class T>
T single(const StructureDocument& doc, const Tolerance& tol);
template <>
HadamardMatrix single(const StructureDocument& doc, const Tolerance& tol) {
  return as_hadamard(doc, tol);
}
template <>
QuantumLatinSquare single(const StructureDocument& doc, const Tolerance& tol) {
  return as_qls(doc, tol);
}
template <>
UnitaryErrorBasis single(const StructureDocument& doc, const Tolerance& tol) {
  return as_ueb(doc, tol);
}

/// A family document, or a single structure repeated over `controls`.
template <class T>
ControlledFamily<T> family(const StructureDocument& doc, const std::vector<std::size_t>& controls,
                           const Tolerance& tol) {
  if (std::holds_alternative<FamilyCandidate>(doc)) return as_family<T>(doc, tol);
  return ControlledFamily<T>::constant(single<T>(doc, tol), controls);
}

std::size_t doc_dim(const StructureDocument& doc) {
  return std::visit(
      [](const auto& x) -> std::size_t {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, CMatrix>) {
          return x.rows();
        } else if constexpr (std::is_same_v<T, UebCandidate>) {
          return x.elements.empty() ? 0 : x.elements.front().rows();
        } else if constexpr (std::is_same_v<T, FamilyCandidate>) {
          if (x.items.empty()) return 0;
          return std::visit(
              [](const auto& item) -> std::size_t {
                using I = std::decay_t<decltype(item)>;
                if constexpr (std::is_same_v<I, CMatrix>) {
                  return item.rows();
                } else if constexpr (std::is_same_v<I, QlsGrid>) {
                  return item.size();
                } else {
                  return item.elements.empty() ? 0 : item.elements.front().rows();
                }
              },
              x.items.front());
        } else {
          return x.size();
        }
      },
      doc);
}

struct ConstructInputs {
  std::vector<std::string> hadamard, hadamards, qls, qls_family, ueb, uebs;
  std::string output;

  std::vector<StructureDocument> take(const std::vector<std::string>& paths, std::size_t count,
                                      const char* flag, const std::string& op) const {
    if (paths.size() != count) {
      throw UsageError(op + " needs exactly " + std::to_string(count) + " " + flag + " input" +
                       (count == 1 ? "" : "s") + ", got " + std::to_string(paths.size()));
    }
    std::vector<StructureDocument> docs;
    for (const auto& p : paths) docs.push_back(load_document(p));
    return docs;
  }

  void none(const std::vector<std::string>& paths, const char* flag, const std::string& op) const {
    if (!paths.empty()) throw UsageError(op + " does not take " + flag);
  }
};

using Built = std::variant<HadamardMatrix, QuantumLatinSquare, UnitaryErrorBasis>;

Built build(const std::string& name, const ConstructInputs& in, const Tolerance& tol) {
  // Each entry names the inputs it reads, in formula order; anything else is refused.
  auto only = [&](std::initializer_list<const char*> used) {
    const std::map<std::string, const std::vector<std::string>*> all = {
        {"--hadamard", &in.hadamard}, {"--hadamards", &in.hadamards},
        {"--qls", &in.qls},           {"--qls-family", &in.qls_family},
        {"--ueb", &in.ueb},           {"--uebs", &in.uebs}};
    for (const auto& [flag, paths] : all) {
      if (std::find_if(used.begin(), used.end(), [&](const char* u) { return flag == u; }) ==
          used.end()) {
        in.none(*paths, flag.c_str(), name);
      }
    }
  };

  if (name == "had-had-qls") {
    only({"--hadamard"});
    auto h = in.take(in.hadamard, 2, "--hadamard", name);
    return had_had_to_qls(as_hadamard(h[0], tol), as_hadamard(h[1], tol), tol);
  }
  if (name == "ueb-ueb-qls") {
    only({"--ueb"});
    auto u = in.take(in.ueb, 2, "--ueb", name);
    return ueb_ueb_to_qls(as_ueb(u[0], tol), as_ueb(u[1], tol), tol);
  }
  if (name == "hosoya-suzuki") {
    only({"--hadamards"});
    auto f = in.take(in.hadamards, 2, "--hadamards", name);
    const std::size_t n = doc_dim(f[0]);
    const std::size_t m = doc_dim(f[1]);
    return hosoya_suzuki(family<HadamardMatrix>(f[0], {m}, tol),
                         family<HadamardMatrix>(f[1], {n}, tol), tol);
  }
  if (name == "dita") {
    only({"--hadamard", "--hadamards"});
    auto j = in.take(in.hadamard, 1, "--hadamard", name);
    auto k = in.take(in.hadamards, 1, "--hadamards", name);
    return dita(as_hadamard(j[0], tol), family<HadamardMatrix>(k[0], {doc_dim(j[0])}, tol), tol);
  }
  if (name == "controlled-ueb-tensor") {
    only({"--uebs", "--ueb"});
    auto v = in.take(in.uebs, 1, "--uebs", name);
    auto w = in.take(in.ueb, 1, "--ueb", name);
    const std::size_t m = doc_dim(w[0]);
    return controlled_ueb_tensor(family<UnitaryErrorBasis>(v[0], {m * m}, tol), as_ueb(w[0], tol),
                                 tol);
  }
  if (name == "qsm") {
    only({"--hadamards", "--qls"});
    auto h = in.take(in.hadamards, 1, "--hadamards", name);
    auto q = in.take(in.qls, 1, "--qls", name);
    return qsm(family<HadamardMatrix>(h[0], {doc_dim(q[0])}, tol), as_qls(q[0], tol), tol);
  }
  if (name == "triple-hadamard") {
    only({"--hadamards", "--hadamard"});
    auto h = in.take(in.hadamards, 1, "--hadamards", name);
    auto fg = in.take(in.hadamard, 2, "--hadamard", name);
    return triple_hadamard_ueb(family<HadamardMatrix>(h[0], {doc_dim(fg[0])}, tol),
                               as_hadamard(fg[0], tol), as_hadamard(fg[1], tol), tol);
  }
  if (name == "ternary-a") {
    only({"--hadamards", "--uebs", "--qls"});
    auto h = in.take(in.hadamards, 1, "--hadamards", name);
    auto v = in.take(in.uebs, 1, "--uebs", name);
    auto q = in.take(in.qls, 1, "--qls", name);
    const std::size_t n = doc_dim(q[0]);
    const std::size_t m = doc_dim(v[0]);
    return ternary_a(family<HadamardMatrix>(h[0], {m * m, n}, tol),
                     family<UnitaryErrorBasis>(v[0], {n, n}, tol), as_qls(q[0], tol), tol);
  }
  if (name == "ternary-b") {
    only({"--hadamards", "--qls-family", "--qls"});
    auto h = in.take(in.hadamards, 1, "--hadamards", name);
    auto p = in.take(in.qls_family, 1, "--qls-family", name);
    auto q = in.take(in.qls, 1, "--qls", name);
    const std::size_t n = doc_dim(p[0]);
    const std::size_t m = doc_dim(q[0]);
    return ternary_b(family<HadamardMatrix>(h[0], {n, m}, tol),
                     family<QuantumLatinSquare>(p[0], {m, m}, tol), as_qls(q[0], tol), tol);
  }
  if (name == "ternary-c") {
    only({"--hadamards", "--ueb"});
    auto h = in.take(in.hadamards, 1, "--hadamards", name);
    auto vw = in.take(in.ueb, 2, "--ueb", name);
    const std::size_t nm = doc_dim(vw[0]);
    return ternary_c(family<HadamardMatrix>(h[0], {nm * nm}, tol), as_ueb(vw[0], tol),
                     as_ueb(vw[1], tol), tol);
  }
  if (name == "ternary-d") {
    only({"--uebs", "--qls-family", "--ueb"});
    auto v = in.take(in.uebs, 1, "--uebs", name);
    auto q = in.take(in.qls_family, 1, "--qls-family", name);
    auto w = in.take(in.ueb, 1, "--ueb", name);
    const std::size_t n = doc_dim(q[0]);
    const std::size_t s = doc_dim(w[0]);
    std::size_t p = s * s / n;
    if (const auto* f = std::get_if<FamilyCandidate>(&q[0])) {
      p = f->control_dims.front();
    } else if (const auto* g = std::get_if<FamilyCandidate>(&v[0]); g && g->control_dims.size() == 2) {
      p = g->control_dims[1];
    }
    return ternary_d(family<UnitaryErrorBasis>(v[0], {n, p}, tol),
                     family<QuantumLatinSquare>(q[0], {p}, tol), as_ueb(w[0], tol), tol);
  }
  if (name == "quad-a") {
    only({"--hadamards", "--qls", "--ueb"});
    auto h = in.take(in.hadamards, 1, "--hadamards", name);
    auto pq = in.take(in.qls, 2, "--qls", name);
    auto v = in.take(in.ueb, 1, "--ueb", name);
    const std::size_t n2 = doc_dim(pq[0]);
    return quad_a(family<HadamardMatrix>(h[0], {n2, n2}, tol), as_qls(pq[0], tol),
                  as_qls(pq[1], tol), as_ueb(v[0], tol), tol);
  }
  if (name == "octo-b") {
    only({"--hadamard", "--hadamards", "--qls"});
    auto abcd = in.take(in.hadamard, 4, "--hadamard", name);
    auto hk = in.take(in.hadamards, 2, "--hadamards", name);
    auto qp = in.take(in.qls, 2, "--qls", name);
    const std::size_t n = doc_dim(abcd[0]);
    return octo_b(as_hadamard(abcd[0], tol), as_hadamard(abcd[1], tol), as_hadamard(abcd[2], tol),
                  as_hadamard(abcd[3], tol), family<HadamardMatrix>(hk[0], {n}, tol),
                  family<HadamardMatrix>(hk[1], {n}, tol), as_qls(qp[0], tol), as_qls(qp[1], tol),
                  tol);
  }
  if (name == "f-family") {
    only({"--uebs", "--qls", "--ueb"});
    auto v = in.take(in.uebs, 1, "--uebs", name);
    auto w = in.take(in.ueb, 1, "--ueb", name);
    if (in.qls.empty()) throw UsageError(name + " needs at least one --qls input");
    std::vector<QuantumLatinSquare> qs;
    for (const auto& p : in.qls) qs.push_back(as_qls(load_document(p), tol));
    const std::size_t n = doc_dim(w[0]);
    return f_family(family<UnitaryErrorBasis>(v[0], {n * n}, tol), qs, as_ueb(w[0], tol), tol);
  }
  throw UsageError("unknown construction '" + name + "'");
}

const std::vector<std::string> kConstructions = {
    "had-had-qls", "ueb-ueb-qls", "hosoya-suzuki", "dita",      "controlled-ueb-tensor",
    "qsm",         "triple-hadamard", "ternary-a", "ternary-b", "ternary-c",
    "ternary-d",   "quad-a",      "octo-b",        "f-family"};

std::vector<std::size_t> parse_pivot(const std::string& text, const UnitaryErrorBasis& u) {
  std::vector<std::size_t> label;
  if (text.find(',') == std::string::npos && text.size() == u.label_dims().size() &&
      text.size() > 1) {
    for (char c : text) {
      if (c < '1' || c > '9') throw UsageError("bad pivot '" + text + "'");
      label.push_back(static_cast<std::size_t>(c - '1'));
    }
    return label;
  }
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(part, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != part.size() || v == 0) throw UsageError("bad pivot '" + text + "'");
    label.push_back(v - 1);
  }
  if (label.size() != u.label_dims().size()) {
    throw UsageError("pivot needs " + std::to_string(u.label_dims().size()) + " components");
  }
  return label;
}

// ---------------------------------------------------------------- commands

int cmd_verify(const Globals& g, const std::string& kind_name, const std::string& file,
               std::ostream& out) {
  const Tolerance tol = g.tolerance();
  const StructureKind kind = parse_kind(kind_name);
  const StructureDocument doc = load_document(file);
  if (document_kind(doc) != kind) {
    throw ParseError("kind", "file holds a " + std::string(to_string(document_kind(doc))) +
                                 " document, not " + std::string(to_string(kind)));
  }
  const BiunitaryReport report = verify_document(doc, tol);
  std::optional<BiunitaryReport> rotation;
  if (const auto* h = std::get_if<CMatrix>(&doc)) rotation = hadamard_rotation_check(*h, tol);
  if (const auto* q = std::get_if<QlsGrid>(&doc)) rotation = qls_rotation_check(*q, tol);
  if (const auto* u = std::get_if<UebCandidate>(&doc)) rotation = ueb_rotation_check(u->elements, tol);

  const bool pass = report.passed() && (!rotation || rotation->passed());
  std::optional<double> lambda = rotation && rotation->lambda ? rotation->lambda : report.lambda;

  if (g.json) {
    json j = json::object();
    j["kind"] = std::string(to_string(kind));
    j["passed"] = pass;
    j["lambda"] = lambda ? json(*lambda) : json(nullptr);
    j["verify"] = report_json(report);
    if (rotation) j["rotation"] = report_json(*rotation);
    out << j.dump(2) << "\n";
  } else {
    out << (pass ? "pass" : "fail");
    if (lambda) out << ", λ=" << number(*lambda);
    out << "\n";
    print_detail(out, report);
    if (rotation) {
      out << " rotation check: " << (rotation->passed() ? "pass" : "fail") << "\n";
      print_detail(out, *rotation);
    }
  }
  return pass ? 0 : 1;
}

int cmd_construct(const Globals& g, const std::string& name, const ConstructInputs& in,
                  std::ostream& out) {
  const Tolerance tol = g.tolerance();
  const Built result = build(name, in, tol);
  const StructureDocument doc = std::visit([](const auto& x) { return to_document(x); }, result);
  const std::size_t n = doc_dim(doc);
  const std::string kind(to_string(document_kind(doc)));
  if (in.output.empty()) {
    out << dump_document(doc);
    return 0;
  }
  save_document(doc, in.output);
  if (g.json) {
    out << json{{"construction", name}, {"kind", kind}, {"n", n}, {"output", in.output}}.dump(2)
        << "\n";
  } else {
    out << name << ": " << kind << " of dimension " << n << " written to " << in.output << "\n";
  }
  return 0;
}

int cmd_equiv(const Globals& g, const std::string& a, const std::string& b, std::ostream& out) {
  const Tolerance tol = g.tolerance();
  const StructureDocument da = load_document(a);
  const StructureDocument db = load_document(b);
  const auto* ha = std::get_if<CMatrix>(&da);
  const auto* hb = std::get_if<CMatrix>(&db);
  if (!ha || !hb) throw ParseError("kind", "both files must hold hadamard documents");
  const auto witness = hadamard_equivalent(*ha, *hb, tol);

  auto perm = [](const std::vector<std::size_t>& p) {
    std::vector<std::size_t> q(p);
    for (auto& x : q) ++x;
    return q;
  };
  if (g.json) {
    json j = json::object();
    j["equivalent"] = witness.has_value();
    if (witness) {
      json w = json::object();
      w["row_perm"] = perm(witness->row_perm);
      w["col_perm"] = perm(witness->col_perm);
      json rp = json::array(), cp = json::array();
      for (Complex z : witness->row_phases) rp.push_back(json::array({z.real(), z.imag()}));
      for (Complex z : witness->col_phases) cp.push_back(json::array({z.real(), z.imag()}));
      w["row_phases"] = std::move(rp);
      w["col_phases"] = std::move(cp);
      j["witness"] = std::move(w);
    }
    out << j.dump(2) << "\n";
  } else if (witness) {
    out << "equivalent\n  row permutation: " << join(perm(witness->row_perm), " ")
        << "\n  column permutation: " << join(perm(witness->col_perm), " ") << "\n";
  } else {
    out << "not equivalent\n";
  }
  return witness ? 0 : 1;
}

int cmd_graph(const Globals& g, const std::string& file, bool want_clique, bool exclude_identity,
              std::ostream& out) {
  const Tolerance tol = g.tolerance();
  const UnitaryErrorBasis u = as_ueb(load_document(file), tol);
  const CommGraph graph = commutativity_graph(u, tol, exclude_identity);
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 0; i < graph.size(); ++i)
    for (std::size_t j = i + 1; j < graph.size(); ++j)
      if (graph.adjacent(i, j)) {
        edges.emplace_back(label_string(u, graph.vertices[i]), label_string(u, graph.vertices[j]));
      }
  std::vector<std::string> clique;
  if (want_clique) {
    for (std::size_t v : max_clique(graph)) clique.push_back(label_string(u, graph.vertices[v]));
  }

  if (g.json) {
    json j = json::object();
    j["vertices"] = graph.size();
    j["identity_excluded"] = exclude_identity;
    json e = json::array();
    for (const auto& [a, b] : edges) e.push_back(json::array({a, b}));
    j["edges"] = std::move(e);
    if (want_clique) {
      j["max_clique_size"] = clique.size();
      j["max_clique"] = clique;
    }
    out << j.dump(2) << "\n";
  } else {
    out << graph.size() << " vertices, " << edges.size() << " edges\n";
    for (const auto& [a, b] : edges) out << "  " << a << " -- " << b << "\n";
    if (want_clique) {
      out << "max clique " << clique.size() << ":";
      for (const auto& c : clique) out << " " << c;
      out << "\n";
    }
  }
  return 0;
}

int cmd_normalize(const Globals& g, const std::string& file, const std::string& pivot,
                  const std::string& output, std::ostream& out) {
  const Tolerance tol = g.tolerance();
  const UnitaryErrorBasis u = as_ueb(load_document(file), tol);
  const std::vector<std::size_t> label = parse_pivot(pivot, u);
  const UnitaryErrorBasis normal = ueb_normalize(u, u.index_of(label), tol);
  if (output.empty()) {
    out << dump_document(to_document(normal));
  } else {
    save_document(to_document(normal), output);
    if (!g.json) out << "normalized at " << label_string(u, u.index_of(label)) << ", written to "
                     << output << "\n";
    else out << json{{"pivot", label_string(u, u.index_of(label))}, {"output", output}}.dump(2) << "\n";
  }
  return 0;
}

int cmd_reproduce(const Globals& g, const std::string& target, const std::string& fixture_path,
                  std::ostream& out) {
  if (target != "appendix-a") throw UsageError("unknown reproduction target '" + target + "'");
  const Tolerance tol = g.tolerance();
  const UnitaryErrorBasis fixture =
      load_reference_fixture(fixture_path.empty() ? std::nullopt
                                                  : std::optional<std::filesystem::path>(fixture_path),
                             tol);
  const ReproductionReport r = reproduce_reference(fixture, tol);
  const auto& c = r.comparison;
  const bool not_nice = r.not_nice.verdict == Verdict::excluded;
  const bool not_qsm = r.not_qsm.verdict == Verdict::excluded;
  const UnitaryErrorBasis built = build_reference_ueb(tol);

  if (g.json) {
    json j = json::object();
    j["matched"] = c.matched;
    j["total"] = c.total;
    j["max_deviation"] = c.max_deviation;
    json mism = json::array();
    for (std::size_t k : c.mismatched) mism.push_back(label_string(built, k));
    j["mismatched"] = std::move(mism);
    j["verify"] = report_json(r.verification);
    j["not_nice"] = not_nice;
    j["not_nice_witness"] =
        r.not_nice.witness ? json(label_string(built, *r.not_nice.witness)) : json(nullptr);
    j["not_qsm"] = not_qsm;
    j["max_commuting"] = r.not_qsm.max_commuting;
    j["dimension"] = r.not_qsm.dimension;
    json clique = json::array();
    for (std::size_t k : r.not_qsm.clique) clique.push_back(label_string(built, k));
    j["commuting_set"] = std::move(clique);
    j["success"] = r.success();
    j["seconds"] = r.seconds;
    out << j.dump(2) << "\n";
  } else {
    out << c.matched << "/" << c.total << " matrices match; ";
    if (not_nice) {
      out << "not nice (witness " << label_string(built, *r.not_nice.witness) << "); ";
    } else {
      out << "niceness inconclusive; ";
    }
    out << (not_qsm ? "not QSM (max commuting " : "QSM inconclusive (max commuting ")
        << r.not_qsm.max_commuting << (not_qsm ? " < " : " >= ") << r.not_qsm.dimension << ")\n";
    out << "  max deviation: " << residual(c.max_deviation) << "\n";
    if (!c.mismatched.empty()) {
      out << "  mismatched:";
      for (std::size_t k : c.mismatched) out << " " << label_string(built, k);
      out << "\n";
    }
    out << "  unitary error basis: " << (r.verification.passed() ? "pass" : "fail");
    if (r.verification.lambda) out << ", λ=" << number(*r.verification.lambda);
    out << "\n  commuting set:";
    for (std::size_t k : r.not_qsm.clique) out << " " << label_string(built, k);
    out << "\n  time: " << std::fixed << std::setprecision(3) << r.seconds << " s\n";
  }
  return r.success() ? 0 : 1;
}

int cmd_generate(const Globals& g, const std::string& what, std::size_t n,
                 const std::vector<std::size_t>& controls, const std::string& output,
                 std::ostream& out) {
  auto need_n = [&] {
    if (n == 0) throw UsageError("generate " + what + " needs a positive size");
  };
  StructureDocument doc;
  if (what == "fourier") {
    need_n();
    doc = to_document(fourier(n));
  } else if (what == "pauli") {
    need_n();
    doc = to_document(pauli_ueb(n));
  } else if (what == "cyclic-latin") {
    need_n();
    doc = to_document(cyclic_latin(n));
  } else if (what == "cyclic-qls") {
    need_n();
    doc = to_document(qls_from_latin(cyclic_latin(n)));
  } else if (what == "seed-h") {
    doc = to_document(seed_inputs().h);
  } else if (what == "seed-p") {
    doc = to_document(seed_inputs().p);
  } else if (what == "seed-q") {
    doc = to_document(seed_inputs().q);
  } else if (what == "seed-v") {
    doc = to_document(seed_inputs().v);
  } else if (what == "reference-ueb") {
    doc = to_document(build_reference_ueb(g.tolerance()));
  } else {
    throw UsageError("unknown generator '" + what + "'");
  }

  if (!controls.empty()) {
    FamilyCandidate fam;
    fam.control_dims = controls;
    fam.base_kind = document_kind(doc);
    std::size_t count = 1;
    for (std::size_t c : controls) count *= c;
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, CMatrix> || std::is_same_v<T, QlsGrid> ||
                        std::is_same_v<T, UebCandidate>) {
            fam.items.assign(count, x);
          } else {
            throw UsageError("only hadamard, qls and ueb structures form controlled families");
          }
        },
        doc);
    doc = std::move(fam);
  }

  if (output.empty()) {
    out << dump_document(doc);
  } else {
    save_document(doc, output);
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Biunitary constructions of Hadamard matrices, quantum Latin squares and "
               "unitary error bases"};
  app.name("qcomb");
  app.require_subcommand(1);

  Globals g;
  app.add_option("--tol", g.tol, "Override the verification tolerance")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", g.json, "Machine-readable output");

  std::function<int()> action;

  std::string kind, file, file_b, name, pivot, output, fixture, target, what;
  bool max_clique_flag = false, exclude_identity = false;
  std::size_t size = 0;
  std::vector<std::size_t> controls;
  ConstructInputs inputs;

  auto* verify = app.add_subcommand("verify", "Verify a structure and its rotation check");
  verify->add_option("kind", kind, "hadamard, qls, ueb, latin or controlled")->required();
  verify->add_option("file", file, "Structure document")->required()->check(CLI::ExistingFile);
  verify->callback([&] { action = [&] { return cmd_verify(g, kind, file, out); }; });

  auto* construct = app.add_subcommand("construct", "Run a construction on input documents");
  construct->add_option("name", name, "Construction name")
      ->required()
      ->check(CLI::IsMember(kConstructions));
  construct->add_option("--hadamard", inputs.hadamard, "Hadamard matrix (repeatable, in order)");
  construct->add_option("--hadamards", inputs.hadamards,
                        "Controlled Hadamard family, or one matrix to repeat");
  construct->add_option("--qls", inputs.qls, "Quantum Latin square (repeatable, in order)");
  construct->add_option("--qls-family", inputs.qls_family,
                        "Controlled QLS family, or one square to repeat");
  construct->add_option("--ueb", inputs.ueb, "Unitary error basis (repeatable, in order)");
  construct->add_option("--uebs", inputs.uebs, "Controlled UEB family, or one basis to repeat");
  construct->add_option("-o,--output", inputs.output, "Output document (stdout if omitted)");
  construct->callback([&] { action = [&] { return cmd_construct(g, name, inputs, out); }; });

  auto* equiv = app.add_subcommand("equiv", "Decide equivalence of two structures");
  equiv->add_option("kind", kind, "Only hadamard is supported")
      ->required()
      ->check(CLI::IsMember({"hadamard"}));
  equiv->add_option("a", file, "First document")->required()->check(CLI::ExistingFile);
  equiv->add_option("b", file_b, "Second document")->required()->check(CLI::ExistingFile);
  equiv->callback([&] { action = [&] { return cmd_equiv(g, file, file_b, out); }; });

  auto* graph = app.add_subcommand("graph", "Commutativity graph of a unitary error basis");
  graph->add_option("type", what, "Only commute is supported")
      ->required()
      ->check(CLI::IsMember({"commute"}));
  graph->add_option("file", file, "UEB document")->required()->check(CLI::ExistingFile);
  graph->add_flag("--max-clique", max_clique_flag, "Report a maximum clique");
  graph->add_flag("--exclude-identity", exclude_identity,
                  "Drop elements proportional to the identity");
  graph->callback([&] {
    action = [&] { return cmd_graph(g, file, max_clique_flag, exclude_identity, out); };
  });

  auto* normalize = app.add_subcommand("normalize", "Make one UEB element the identity");
  normalize->add_option("file", file, "UEB document")->required()->check(CLI::ExistingFile);
  normalize->add_option("--pivot", pivot, "1-based label, e.g. 1,1,1")->required();
  normalize->add_option("-o,--output", output, "Output document (stdout if omitted)");
  normalize->callback([&] { action = [&] { return cmd_normalize(g, file, pivot, output, out); }; });

  auto* reproduce = app.add_subcommand("reproduce", "Rebuild the 8-dimensional reference basis");
  reproduce->add_option("target", target, "appendix-a")->required();
  reproduce->add_option("--fixture", fixture, "Reference document (embedded copy if omitted)")
      ->check(CLI::ExistingFile);
  reproduce->callback([&] { action = [&] { return cmd_reproduce(g, target, fixture, out); }; });

  auto* generate = app.add_subcommand("generate", "Write a standard structure");
  generate->add_option("what", what,
                       "fourier, pauli, cyclic-latin, cyclic-qls, seed-h, seed-p, seed-q, "
                       "seed-v or reference-ueb")
      ->required();
  generate->add_option("n", size, "Dimension (for the sized generators)");
  generate->add_option("--controls", controls, "Repeat as a constant controlled family")
      ->delimiter(',');
  generate->add_option("-o,--output", output, "Output document (stdout if omitted)");
  generate->callback([&] {
    action = [&] { return cmd_generate(g, what, size, controls, output, out); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    if (g.json) {
      out << json{{"error", e.what()}}.dump(2) << "\n";
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qcomb::cli
