#include "qcomb/equivalence.hpp"

#include <algorithm>
#include <bitset>
#include <cmath>
#include <numeric>

namespace qcomb {

namespace {

Complex unit_phase(Complex z) { return z / std::abs(z); }

}  // namespace

HadamardMatrix dephase_hadamard(const HadamardMatrix& h) {
  const std::size_t n = h.dim();
  CMatrix m = h.matrix();
  for (std::size_t a = 0; a < n; ++a) {
    const Complex r = std::conj(unit_phase(m(a, 0)));
    for (std::size_t b = 0; b < n; ++b) m(a, b) *= r;
  }
  for (std::size_t b = 0; b < n; ++b) {
    const Complex d = std::conj(unit_phase(m(0, b)));
    for (std::size_t a = 0; a < n; ++a) m(a, b) *= d;
  }
  // Pin the normalised border to exact ones so dephasing is idempotent bit for bit.
  for (std::size_t k = 0; k < n; ++k) m(k, 0) = m(0, k) = 1.0;
  return HadamardMatrix::from_matrix(std::move(m));
}

CMatrix HadEquivalenceWitness::apply(const CMatrix& h) const {
  const std::size_t n = row_perm.size();
  CMatrix w(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      w(a, b) = row_phases[a] * col_phases[b] * h(row_perm[a], col_perm[b]);
  return w;
}

std::optional<HadEquivalenceWitness> hadamard_equivalent(const CMatrix& h, const CMatrix& w,
                                                         const Tolerance& tol) {
  // Rejecting non-Hadamard input up front keeps the phase division below well defined.
  if (!verify_hadamard(h, tol).passed() || !verify_hadamard(w, tol).passed()) {
    throw VerificationError("hadamard_equivalent: both inputs must be Hadamard matrices");
  }
  const std::size_t n = h.rows();
  if (w.rows() != n) throw DimensionError("hadamard_equivalent: dimensions differ");
  if (n > kMaxBruteForceHadamard) {
    throw CapabilityError("hadamard_equivalent: brute-force search is limited to n <= " +
                          std::to_string(kMaxBruteForceHadamard));
  }

  HadEquivalenceWitness wit;
  wit.row_perm.resize(n);
  wit.col_perm.resize(n);
  wit.row_phases.resize(n);
  wit.col_phases.resize(n);
  std::iota(wit.row_perm.begin(), wit.row_perm.end(), 0);
  do {
    std::iota(wit.col_perm.begin(), wit.col_perm.end(), 0);
    do {
      // d_0 = 1 fixes the overall phase; the first column then forces every
      // c_a and the first row forces every d_b.
      for (std::size_t a = 0; a < n; ++a) {
        wit.row_phases[a] = unit_phase(w(a, 0) / h(wit.row_perm[a], wit.col_perm[0]));
      }
      for (std::size_t b = 0; b < n; ++b) {
        wit.col_phases[b] =
            unit_phase(w(0, b) / (wit.row_phases[0] * h(wit.row_perm[0], wit.col_perm[b])));
      }
      bool match = true;
      for (std::size_t a = 0; a < n && match; ++a)
        for (std::size_t b = 0; b < n && match; ++b) {
          const Complex predicted =
              wit.row_phases[a] * wit.col_phases[b] * h(wit.row_perm[a], wit.col_perm[b]);
          match = std::abs(w(a, b) - predicted) <= tol.compare_tol;
        }
      if (match) return wit;
    } while (std::next_permutation(wit.col_perm.begin(), wit.col_perm.end()));
  } while (std::next_permutation(wit.row_perm.begin(), wit.row_perm.end()));
  return std::nullopt;
}

UnitaryErrorBasis ueb_normalize(const UnitaryErrorBasis& u, std::size_t pivot,
                                const Tolerance& tol) {
  if (pivot >= u.size()) {
    throw DimensionError("ueb_normalize: pivot " + std::to_string(pivot + 1) + " out of range 1.." +
                         std::to_string(u.size()));
  }
  const CMatrix& p = u[pivot];
  std::vector<CMatrix> out;
  out.reserve(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    out.push_back(k == pivot ? CMatrix::identity(u.dim()) : adjoint_product(p, u[k]));
  }
  return UnitaryErrorBasis::from_elements(std::move(out), u.label_dims(), tol);
}

AdjointClosure adjoint_closed_up_to_phase(const UnitaryErrorBasis& u, const Tolerance& tol) {
  for (std::size_t k = 0; k < u.size(); ++k) {
    const CMatrix adj = dagger(u[k]);
    const bool found = std::any_of(u.elements().begin(), u.elements().end(),
                                   [&](const CMatrix& e) { return proportional(adj, e, tol); });
    if (!found) return {false, k};
  }
  return {true, std::nullopt};
}

std::size_t CommGraph::edge_count() const {
  std::size_t edges = 0;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j) edges += adjacency[i][j] ? 1 : 0;
  return edges;
}

CommGraph commutativity_graph(const UnitaryErrorBasis& u, const Tolerance& tol,
                              bool exclude_identity) {
  CommGraph g;
  g.identity_excluded = exclude_identity;
  const CMatrix id = CMatrix::identity(u.dim());
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (exclude_identity && proportional(u[k], id, tol)) continue;
    g.vertices.push_back(k);
  }
  const std::size_t v = g.vertices.size();
  g.adjacency.assign(v, std::vector<bool>(v, false));
  for (std::size_t i = 0; i < v; ++i)
    for (std::size_t j = i + 1; j < v; ++j) {
      const bool c = commutes(u[g.vertices[i]], u[g.vertices[j]], tol);
      g.adjacency[i][j] = g.adjacency[j][i] = c;
    }
  return g;
}

namespace {

using VertexSet = std::bitset<kMaxCliqueVertices>;

class CliqueSearch {
 public:
  explicit CliqueSearch(const CommGraph& g) : adj_(g.size()) {
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j)
        if (i != j && g.adjacent(i, j)) adj_[i].set(j);
  }

  std::vector<std::size_t> run() {
    VertexSet all;
    for (std::size_t i = 0; i < adj_.size(); ++i) all.set(i);
    std::vector<std::size_t> current;
    expand(current, all);
    return best_;
  }

 private:
  // Candidates are visited in ascending order and a clique replaces the best
  // only when strictly larger, so the first maximum found is lexicographically least.
  void expand(std::vector<std::size_t>& current, VertexSet candidates) {
    if (candidates.none()) {
      if (current.size() > best_.size()) best_ = current;
      return;
    }
    std::size_t remaining = candidates.count();
    for (std::size_t v = 0; v < adj_.size() && remaining > 0; ++v) {
      if (!candidates.test(v)) continue;
      if (current.size() + remaining <= best_.size()) return;
      candidates.reset(v);
      --remaining;
      current.push_back(v);
      expand(current, candidates & adj_[v]);
      current.pop_back();
    }
  }

  std::vector<VertexSet> adj_;
  std::vector<std::size_t> best_;
};

}  // namespace

std::vector<std::size_t> max_clique(const CommGraph& graph) {
  if (graph.size() > kMaxCliqueVertices) {
    throw CapabilityError("max_clique: graphs are limited to " +
                          std::to_string(kMaxCliqueVertices) + " vertices");
  }
  if (graph.size() == 0) return {};
  return CliqueSearch(graph).run();
}

CommutingSubset max_commuting_subset(const UnitaryErrorBasis& u, const Tolerance& tol) {
  if (u.size() > kMaxCliqueVertices) {
    throw CapabilityError("max_commuting_subset: at most " + std::to_string(kMaxCliqueVertices) +
                          " elements are supported");
  }
  const CommGraph g = commutativity_graph(u, tol, false);
  CommutingSubset result;
  for (std::size_t v : max_clique(g)) result.elements.push_back(g.vertices[v]);
  result.size = result.elements.size();
  return result;
}

}  // namespace qcomb
