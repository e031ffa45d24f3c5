#include "qcomb/constructions.hpp"

#include <cmath>
#include <string>

namespace qcomb {

namespace {

void require(bool condition, const char* op, const std::string& what) {
  if (!condition) throw DimensionError(std::string(op) + ": " + what);
}

std::string dims_string(const std::vector<std::size_t>& dims) {
  std::string s = "(";
  for (std::size_t k = 0; k < dims.size(); ++k) s += (k ? "," : "") + std::to_string(dims[k]);
  return s + ")";
}

template <class T>
void require_family(const ControlledFamily<T>& family, std::vector<std::size_t> controls,
                    std::size_t item_dim, const char* op, const char* name) {
  require(family.control_dims() == controls, op,
          std::string(name) + " must have control dimensions " + dims_string(controls) +
              ", got " + dims_string(family.control_dims()));
  require(family.item_dim() == item_dim, op,
          std::string(name) + " items must have dimension " + std::to_string(item_dim) +
              ", got " + std::to_string(family.item_dim()));
}

void require_dim(std::size_t actual, std::size_t expected, const char* op, const char* name) {
  require(actual == expected, op,
          std::string(name) + " must have dimension " + std::to_string(expected) + ", got " +
              std::to_string(actual));
}

std::size_t exact_sqrt(std::size_t x) {
  auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(x))));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

double inv_sqrt(std::size_t n) { return 1.0 / std::sqrt(static_cast<double>(n)); }

}  // namespace

QuantumLatinSquare had_had_to_qls(const HadamardMatrix& h, const HadamardMatrix& j,
                                  const Tolerance& tol) {
  const std::size_t n = h.dim();
  require_dim(j.dim(), n, "had_had_to_qls", "J");
  const double s = inv_sqrt(n);
  std::vector<Complex> q(n * n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) q[(a * n + b) * n + c] = h(a, c) * j(c, b) * s;
  return QuantumLatinSquare::from_coefficients(n, std::move(q), tol);
}

QuantumLatinSquare ueb_ueb_to_qls(const UnitaryErrorBasis& u, const UnitaryErrorBasis& v,
                                  const Tolerance& tol) {
  const std::size_t n = u.dim();
  require_dim(v.dim(), n, "ueb_ueb_to_qls", "V");
  const std::size_t n2 = n * n;
  const double s = inv_sqrt(n);
  std::vector<Complex> q(n2 * n2 * n2);
  for (std::size_t a = 0; a < n2; ++a)
    for (std::size_t b = 0; b < n2; ++b) {
      // Σ_k U_{a,c,k} V_{b,k,d} is the (c, d) entry of U_a V_b.
      const CMatrix prod = u[a] * v[b];
      Complex* out = q.data() + (a * n2 + b) * n2;
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) out[c * n + d] = prod(c, d) * s;
    }
  return QuantumLatinSquare::from_coefficients(n2, std::move(q), tol);
}

HadamardMatrix hosoya_suzuki(const HadamardFamily& j, const HadamardFamily& k,
                             const Tolerance& tol) {
  const std::size_t n = j.item_dim(), m = k.item_dim();
  require_family(j, {m}, n, "hosoya_suzuki", "J");
  require_family(k, {n}, m, "hosoya_suzuki", "K");
  CMatrix h(n * m, n * m);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < m; ++d) h(a * m + b, c * m + d) = j[b](a, c) * k[c](b, d);
  return HadamardMatrix::from_matrix(std::move(h), tol);
}

HadamardMatrix dita(const HadamardMatrix& j, const HadamardFamily& k, const Tolerance& tol) {
  return hosoya_suzuki(HadamardFamily::constant(j, {k.item_dim()}), k, tol);
}

UnitaryErrorBasis controlled_ueb_tensor(const UebFamily& v, const UnitaryErrorBasis& w,
                                        const Tolerance& tol) {
  const std::size_t n = v.item_dim(), m = w.dim();
  require_family(v, {m * m}, n, "controlled_ueb_tensor", "V");
  const std::size_t dim = n * m;
  std::vector<CMatrix> out;
  out.reserve(dim * dim);
  for (std::size_t a = 0; a < n * n; ++a)
    for (std::size_t b = 0; b < m * m; ++b) {
      const CMatrix& va = v[b][a];
      const CMatrix& wb = w[b];
      CMatrix u(dim, dim);
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t d = 0; d < n; ++d)
          for (std::size_t e = 0; e < n; ++e)
            for (std::size_t f = 0; f < m; ++f) u(c * n + d, e * m + f) = va(d, e) * wb(c, f);
      out.push_back(std::move(u));
    }
  return UnitaryErrorBasis::from_elements(std::move(out), {n * n, m * m}, tol);
}

UnitaryErrorBasis qsm(const HadamardFamily& h, const QuantumLatinSquare& q, const Tolerance& tol) {
  const std::size_t n = q.dim();
  require_family(h, {n}, n, "qsm", "H");
  std::vector<CMatrix> out;
  out.reserve(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      CMatrix u(n, n);
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) u(c, d) = h[b](a, d) * q(b, d, c);
      out.push_back(std::move(u));
    }
  return UnitaryErrorBasis::from_elements(std::move(out), {n, n}, tol);
}

UnitaryErrorBasis triple_hadamard_ueb(const HadamardFamily& h, const HadamardMatrix& f,
                                      const HadamardMatrix& g, const Tolerance& tol) {
  const std::size_t n = f.dim();
  require_dim(g.dim(), n, "triple_hadamard_ueb", "G");
  require_family(h, {n}, n, "triple_hadamard_ueb", "H");
  const double s = inv_sqrt(n);
  std::vector<CMatrix> out;
  out.reserve(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      CMatrix u(n, n);
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) u(c, d) = h[b](a, d) * (f(b, c) * g(c, d) * s);
      out.push_back(std::move(u));
    }
  return UnitaryErrorBasis::from_elements(std::move(out), {n, n}, tol);
}

UnitaryErrorBasis ternary_a(const HadamardFamily& h, const UebFamily& v,
                            const QuantumLatinSquare& q, const Tolerance& tol) {
  const std::size_t n = q.dim(), m = v.item_dim();
  require_family(h, {m * m, n}, n, "ternary_a", "H");
  require_family(v, {n, n}, m, "ternary_a", "V");
  const std::size_t dim = n * m;
  std::vector<CMatrix> out;
  out.reserve(dim * dim);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < m * m; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const HadamardMatrix& hbc = h.at({b, c});
        CMatrix u(dim, dim);
        for (std::size_t f = 0; f < n; ++f) {
          const CMatrix& vb = v.at({c, f})[b];
          for (std::size_t d = 0; d < n; ++d)
            for (std::size_t e = 0; e < m; ++e)
              for (std::size_t g = 0; g < m; ++g)
                u(d * m + e, f * m + g) = hbc(a, f) * vb(e, g) * q(c, f, d);
        }
        out.push_back(std::move(u));
      }
  return UnitaryErrorBasis::from_elements(std::move(out), {n, m * m, n}, tol);
}

UnitaryErrorBasis ternary_b(const HadamardFamily& h, const QlsFamily& p,
                            const QuantumLatinSquare& q, const Tolerance& tol) {
  const std::size_t m = q.dim(), n = p.item_dim();
  require_family(h, {n, m}, n * m, "ternary_b", "H");
  require_family(p, {m, m}, n, "ternary_b", "P");
  const std::size_t dim = n * m;
  std::vector<CMatrix> out;
  out.reserve(dim * dim);
  for (std::size_t a = 0; a < n * m; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < m; ++c) {
        const HadamardMatrix& hbc = h.at({b, c});
        CMatrix u(dim, dim);
        for (std::size_t g = 0; g < m; ++g) {
          const QuantumLatinSquare& pcg = p.at({c, g});
          for (std::size_t d = 0; d < m; ++d)
            for (std::size_t e = 0; e < n; ++e)
              for (std::size_t f = 0; f < n; ++f)
                u(d * n + e, f * m + g) = hbc(a, e * m + g) * pcg(e, b, f) * q(c, g, d);
        }
        out.push_back(std::move(u));
      }
  return UnitaryErrorBasis::from_elements(std::move(out), {n * m, n, m}, tol);
}

UnitaryErrorBasis ternary_c(const HadamardFamily& h, const UnitaryErrorBasis& v,
                            const UnitaryErrorBasis& w, const Tolerance& tol) {
  const std::size_t m = w.dim();
  require(v.dim() % m == 0, "ternary_c", "V dimension must be a multiple of W's");
  const std::size_t n = v.dim() / m;
  const std::size_t m2 = m * m, nm2 = n * n * m * m;
  require_family(h, {nm2}, m2, "ternary_c", "H");
  const std::size_t dim = n * m * m;
  // The closed r wire contributes a factor m to U U^dagger.
  const double scale = inv_sqrt(m);
  std::vector<CMatrix> out;
  out.reserve(dim * dim);
  for (std::size_t a = 0; a < m2; ++a)
    for (std::size_t b = 0; b < nm2; ++b) {
      const HadamardMatrix& hb = h[b];
      const CMatrix& vb = v[b];
      CMatrix u(dim, dim);
      for (std::size_t e = 0; e < m2; ++e) {
        const CMatrix& we = w[e];
        const Complex hae = hb(a, e);
        for (std::size_t c = 0; c < n * m; ++c)
          for (std::size_t d = 0; d < m; ++d)
            for (std::size_t f = 0; f < n; ++f) {
              Complex sum{};
              for (std::size_t r = 0; r < m; ++r) sum += hae * vb(c, r * n + f) * we(r, d);
              u(c * m + d, e * n + f) = scale * sum;
            }
      }
      out.push_back(std::move(u));
    }
  return UnitaryErrorBasis::from_elements(std::move(out), {m2, nm2}, tol);
}

UnitaryErrorBasis ternary_d(const UebFamily& v, const QlsFamily& q, const UnitaryErrorBasis& w,
                            const Tolerance& tol) {
  const std::size_t n = q.item_dim();
  require(q.control_dims().size() == 1, "ternary_d", "Q must have a single control index");
  const std::size_t p = q.control_dims().front();
  const std::size_t s = exact_sqrt(n * p);
  if (s * s != n * p) {
    throw PreconditionError("ternary_d: n·p = " + std::to_string(n * p) +
                            " is not a perfect square");
  }
  require_dim(w.dim(), s, "ternary_d", "W");
  require(v.item_dim() % n == 0, "ternary_d", "V dimension must be a multiple of n");
  const std::size_t m = v.item_dim() / n;
  require_family(v, {n, p}, n * m, "ternary_d", "V");
  const std::size_t dim = n * m * s;
  const std::size_t elems = n * n * m * m;
  std::vector<CMatrix> out;
  out.reserve(dim * dim);
  for (std::size_t a = 0; a < elems; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < p; ++c) {
        const CMatrix& va = v.at({b, c})[a];
        const QuantumLatinSquare& qc = q[c];
        CMatrix u(dim, dim);
        for (std::size_t d = 0; d < n; ++d)
          for (std::size_t e = 0; e < s; ++e)
            for (std::size_t f = 0; f < m; ++f)
              for (std::size_t g = 0; g < n * m; ++g)
                for (std::size_t hh = 0; hh < s; ++hh) {
                  Complex sum{};
                  for (std::size_t r = 0; r < n; ++r) {
                    sum += va(r * m + f, g) * qc(b, r, d) * w[r * p + c](e, hh);
                  }
                  u((d * s + e) * m + f, g * s + hh) = sum;
                }
        out.push_back(std::move(u));
      }
  return UnitaryErrorBasis::from_elements(std::move(out), {elems, n, p}, tol);
}

UnitaryErrorBasis quad_a(const HadamardFamily& h, const QuantumLatinSquare& p,
                         const QuantumLatinSquare& q, const UnitaryErrorBasis& v,
                         const Tolerance& tol) {
  const std::size_t n = v.dim(), n2 = n * n;
  require_dim(p.dim(), n2, "quad_a", "P");
  require_dim(q.dim(), n2, "quad_a", "Q");
  require_family(h, {n2, n2}, n2, "quad_a", "H");
  const std::size_t dim = n2 * n;
  std::vector<CMatrix> out;
  out.reserve(dim * dim);
  for (std::size_t a = 0; a < n2; ++a)
    for (std::size_t b = 0; b < n2; ++b)
      for (std::size_t c = 0; c < n2; ++c) {
        const HadamardMatrix& hbc = h.at({b, c});
        CMatrix u(dim, dim);
        for (std::size_t d = 0; d < n2; ++d)
          for (std::size_t e = 0; e < n; ++e)
            for (std::size_t f = 0; f < n2; ++f)
              for (std::size_t g = 0; g < n; ++g) {
                Complex sum{};
                for (std::size_t r = 0; r < n2; ++r) {
                  sum += hbc(a, r) * p(c, r, d) * q(r, b, f) * v[r](e, g);
                }
                u(d * n + e, f * n + g) = sum;
              }
        out.push_back(std::move(u));
      }
  return UnitaryErrorBasis::from_elements(std::move(out), {n2, n2, n2}, tol);
}

UnitaryErrorBasis octo_b(const HadamardMatrix& a_had, const HadamardMatrix& b_had,
                         const HadamardMatrix& c_had, const HadamardMatrix& d_had,
                         const HadamardFamily& h, const HadamardFamily& k,
                         const QuantumLatinSquare& q, const QuantumLatinSquare& p,
                         const Tolerance& tol) {
  const std::size_t n = a_had.dim();
  require_dim(b_had.dim(), n, "octo_b", "B");
  require_dim(c_had.dim(), n, "octo_b", "C");
  require_dim(d_had.dim(), n, "octo_b", "D");
  require_dim(q.dim(), n, "octo_b", "Q");
  require_dim(p.dim(), n, "octo_b", "P");
  require_family(h, {n}, n, "octo_b", "H");
  require_family(k, {n}, n, "octo_b", "K");
  const double scale = 1.0 / static_cast<double>(n);
  const std::size_t dim = n * n;
  std::vector<CMatrix> out;
  out.reserve(dim * dim);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          const HadamardMatrix& hd = h[d];
          const HadamardMatrix& kc = k[c];
          CMatrix u(dim, dim);
          for (std::size_t e = 0; e < n; ++e)
            for (std::size_t f = 0; f < n; ++f)
              for (std::size_t g = 0; g < n; ++g)
                for (std::size_t hh = 0; hh < n; ++hh) {
                  Complex sum{};
                  for (std::size_t r = 0; r < n; ++r)
                    for (std::size_t s = 0; s < n; ++s) {
                      sum += a_had(f, hh) * b_had(s, f) * c_had(r, hh) * d_had(s, r) * hd(a, s) *
                             kc(b, r) * q(d, s, e) * p(r, c, g);
                    }
                  u(e * n + f, g * n + hh) = sum * scale;
                }
          out.push_back(std::move(u));
        }
  return UnitaryErrorBasis::from_elements(std::move(out), {n, n, n, n}, tol);
}

UnitaryErrorBasis f_family(const UebFamily& v, std::span<const QuantumLatinSquare> qs,
                           const UnitaryErrorBasis& w, const Tolerance& tol) {
  require(!qs.empty(), "f_family", "at least one quantum Latin square is required");
  const std::size_t arity = qs.size();
  const std::size_t n = w.dim(), n2 = n * n;
  for (const auto& q : qs) require_dim(q.dim(), n2, "f_family", "each Q");
  std::size_t block = 1;  // n^{2m}
  for (std::size_t i = 0; i < arity; ++i) block *= n2;
  require_family(v, {n2}, block, "f_family", "V");

  const std::size_t dim = block * n;
  const std::size_t elems_a = block * block;  // a ∈ [n^{4m}]
  std::vector<std::size_t> rs(arity), cs(arity);
  std::vector<CMatrix> out;
  out.reserve(elems_a * n2);
  for (std::size_t a = 0; a < elems_a; ++a)
    for (std::size_t r0 = 0; r0 < n2; ++r0) {
      const CMatrix& va = v[r0][a];
      CMatrix u(dim, dim);
      // Row block c = (c₁…c_m), column e; the sum runs over rho = (r₁…r_m).
      for (std::size_t c = 0; c < block; ++c) {
        for (std::size_t k = arity, rest = c; k-- > 0; rest /= n2) cs[k] = rest % n2;
        for (std::size_t rho = 0; rho < block; ++rho) {
          for (std::size_t k = arity, rest = rho; k-- > 0; rest /= n2) rs[k] = rest % n2;
          Complex chain = 1.0;
          std::size_t prev = r0;
          for (std::size_t i = 0; i < arity && chain != Complex{}; ++i) {
            chain *= qs[i](prev, rs[i], cs[i]);
            prev = rs[i];
          }
          if (chain == Complex{}) continue;
          const CMatrix& wr = w[rs[arity - 1]];
          for (std::size_t e = 0; e < block; ++e) {
            const Complex vre = va(rho, e) * chain;
            if (vre == Complex{}) continue;
            for (std::size_t d = 0; d < n; ++d)
              for (std::size_t f = 0; f < n; ++f) u(c * n + d, e * n + f) += vre * wr(d, f);
          }
        }
      }
      out.push_back(std::move(u));
    }
  return UnitaryErrorBasis::from_elements(std::move(out), {elems_a, n2}, tol);
}

}  // namespace qcomb
