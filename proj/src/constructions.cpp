#include "pgrp/constructions.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>

namespace pgrp {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in module arithmetic");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in module arithmetic");
  return r;
}

IntMatrix identity(std::size_t n) {
  IntMatrix m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

void add_row(IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t k) {
  for (std::size_t c = 0; c < m[dst].size(); ++c)
    m[dst][c] = checked_add(m[dst][c], checked_mul(k, m[src][c]));
}

void add_col(IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t k) {
  for (auto& row : m) row[dst] = checked_add(row[dst], checked_mul(k, row[src]));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

bool prime_p(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  SmithForm s{a, identity(m), identity(n)};
  IntMatrix& d = s.d;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    while (true) {
      // Pivot: least nonzero absolute value, first in row-major order.
      std::size_t pr = m, pc = n;
      for (std::size_t r = t; r < m; ++r)
        for (std::size_t c = t; c < n; ++c)
          if (d[r][c] != 0 && (pr == m || std::llabs(d[r][c]) < std::llabs(d[pr][pc]))) {
            pr = r;
            pc = c;
          }
      if (pr == m) return s;
      std::swap(d[t], d[pr]);
      std::swap(s.u[t], s.u[pr]);
      swap_cols(d, t, pc);
      swap_cols(s.v, t, pc);

      bool clean = true;
      for (std::size_t r = t + 1; r < m; ++r) {
        const std::int64_t q = d[r][t] / d[t][t];
        if (q) {
          add_row(d, r, t, -q);
          add_row(s.u, r, t, -q);
        }
        clean = clean && d[r][t] == 0;
      }
      for (std::size_t c = t + 1; c < n; ++c) {
        const std::int64_t q = d[t][c] / d[t][t];
        if (q) {
          add_col(d, c, t, -q);
          add_col(s.v, c, t, -q);
        }
        clean = clean && d[t][c] == 0;
      }
      if (!clean) continue;

      std::size_t bad = m;
      for (std::size_t r = t + 1; r < m && bad == m; ++r)
        for (std::size_t c = t + 1; c < n; ++c)
          if (d[r][c] % d[t][t] != 0) {
            bad = r;
            break;
          }
      if (bad == m) break;
      add_row(d, t, bad, 1);
      add_row(s.u, t, bad, 1);
    }
    if (d[t][t] < 0) {
      for (auto& x : d[t]) x = -x;
      for (auto& x : s.u[t]) x = -x;
    }
  }
  return s;
}

std::vector<Residue> FieldRep::multiply(const std::vector<Residue>& a,
                                        const std::vector<Residue>& b) const {
  std::vector<Residue> out(d, 0);
  for (int i = 0; i < d; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j < d; ++j) {
      if (!b[j]) continue;
      for (int k = 0; k < d; ++k) out[k] = (out[k] + a[i] * b[j] % p * mult[i][j][k]) % p;
    }
  }
  return out;
}

namespace {

// Coefficients of x^e reduced modulo the monic polynomial, low to high.
std::vector<Residue> reduce_power(std::uint32_t p, const std::vector<Residue>& low, int e) {
  const int d = static_cast<int>(low.size());
  std::vector<Residue> v(d, 0);
  if (e < d) {
    v[e] = 1;
    return v;
  }
  v = reduce_power(p, low, e - 1);
  // multiply by x: shift up, fold the x^d term using x^d = -sum c_k x^k.
  const Residue top = v[d - 1];
  for (int k = d - 1; k > 0; --k) v[k] = v[k - 1];
  v[0] = 0;
  for (int k = 0; k < d; ++k) v[k] = (v[k] + (p - low[k]) % p * top) % p;
  return v;
}

}  // namespace

bool is_irreducible(std::uint32_t p, const std::vector<Residue>& low) {
  const int d = static_cast<int>(low.size());
  if (d <= 0) return false;
  if (d == 1) return true;
  // Trial division by every monic polynomial of degree 1..d/2.
  std::vector<Residue> f(low);
  f.push_back(1);
  for (int e = 1; 2 * e <= d; ++e) {
    std::uint64_t total = 1;
    for (int k = 0; k < e; ++k) total *= p;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::vector<Residue> g(e + 1, 0);
      std::uint64_t t = idx;
      for (int k = 0; k < e; ++k) {
        g[k] = static_cast<Residue>(t % p);
        t /= p;
      }
      g[e] = 1;
      std::vector<std::int64_t> r(f.begin(), f.end());
      for (int i = d; i >= e; --i) {
        const std::int64_t c = ((r[i] % p) + p) % p;
        if (!c) continue;
        for (int k = 0; k <= e; ++k) r[i - e + k] = ((r[i - e + k] - c * g[k]) % p + p) % p;
      }
      if (std::all_of(r.begin(), r.begin() + e, [p](std::int64_t x) { return x % p == 0; }))
        return false;
    }
  }
  return true;
}

FieldRep field_rep(std::uint32_t p, int d, std::vector<Residue> low) {
  require(prime_p(p), "field characteristic must be prime");
  require(d >= 1 && static_cast<int>(low.size()) == d, "polynomial degree mismatch");
  for (Residue c : low) require(c < p, "polynomial coefficient out of range");
  require(is_irreducible(p, low), "polynomial is not irreducible");
  FieldRep f;
  f.p = p;
  f.d = d;
  f.poly = std::move(low);
  f.mult.assign(d, std::vector<std::vector<Residue>>(d));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) f.mult[a][b] = reduce_power(p, f.poly, a + b);
  return f;
}

FieldRep field_rep(std::uint32_t p, int d) {
  require(prime_p(p) && d >= 1, "invalid field parameters");
  std::uint64_t total = 1;
  for (int k = 0; k < d; ++k) total *= p;
  for (std::uint64_t m = 0; m < total; ++m) {
    std::vector<Residue> low(d);
    std::uint64_t t = m;
    for (int k = 0; k < d; ++k) {
      low[k] = static_cast<Residue>(t % p);
      t /= p;
    }
    if (is_irreducible(p, low)) return field_rep(p, d, low);
  }
  throw std::logic_error("no irreducible polynomial found");
}

std::vector<std::int64_t> CyclotomicModuleData::pi_power(int m) const {
  const std::size_t n = p - 1;
  std::vector<std::int64_t> v(n, 0);
  v[0] = 1;
  for (int s = 0; s < m; ++s) {
    std::vector<std::int64_t> w(n, 0);
    for (std::size_t k = 0; k + 1 < n; ++k) w[k + 1] = v[k];
    // pi^{p-1} = -sum_{k=1}^{p-1} C(p,k) pi^{k-1}
    for (std::size_t k = 1; k < p; ++k)
      w[k - 1] = checked_add(w[k - 1], checked_mul(-binomial(p, k), v[n - 1]));
    v = std::move(w);
  }
  return v;
}

std::vector<std::int64_t> CyclotomicModuleData::canonical(const std::vector<std::int64_t>& v) const {
  const std::size_t n = v.size();
  std::vector<std::int64_t> out(n, 0);
  for (std::size_t c = 0; c < n; ++c) {
    std::int64_t x = 0;
    for (std::size_t r = 0; r < n; ++r) x = checked_add(x, checked_mul(v[r], smith.v[r][c]));
    const std::int64_t m = smith.d[c][c];
    out[c] = m == 0 ? x : ((x % m) + m) % m;
  }
  return out;
}

CyclotomicModuleData cyclotomic_module(std::uint32_t p, int length) {
  require(prime_p(p), "p must be prime");
  require(length >= 1, "module length must be positive");
  CyclotomicModuleData m;
  m.p = p;
  m.length = length;
  const std::size_t n = p - 1;
  for (std::size_t k = 0; k < n; ++k) m.relations.push_back(m.pi_power(length + static_cast<int>(k)));
  m.smith = smith_normal_form(m.relations);
  for (std::size_t k = 0; k < n; ++k)
    if (m.smith.d[k][k] != 1) m.invariants.push_back(m.smith.d[k][k]);
  for (std::size_t r = 0; r < n; ++r) {
    auto row = m.pi_power(static_cast<int>(r));
    const auto next = m.pi_power(static_cast<int>(r) + 1);
    for (std::size_t c = 0; c < n; ++c) row[c] += next[c];
    m.action.push_back(row);
  }
  return m;
}

PcPresentation extraspecial(std::uint32_t p, int n) {
  require(prime_p(p), "p must be prime");
  require(n >= 1, "extraspecial: n must be at least 1");
  const std::size_t nn = static_cast<std::size_t>(n);
  const std::size_t z = 2 * nn;
  PcPresentation pres(p, 2 * nn + 1);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < nn; ++i) labels.push_back("x" + std::to_string(i + 1));
  for (std::size_t i = 0; i < nn; ++i) labels.push_back("y" + std::to_string(i + 1));
  labels.push_back("z");
  for (std::size_t i = 0; i < nn; ++i) {
    ExponentVector w = pres.unit(nn + i);
    w[z] = 1;
    pres.set_conjugate(i, nn + i, w);
    if (p == 2) pres.set_power(nn + i, pres.unit(z));
  }
  pres.set_labels(std::move(labels));
  return pres;
}

PcPresentation maximal_class_m(std::uint32_t p, int i) {
  require(prime_p(p), "p must be prime");
  require(i >= 3, "maximal_class_m: i must be at least 3");
  const int len = i - 1;
  const CyclotomicModuleData mod = cyclotomic_module(p, len);

  // pi-adic digit expansions: canonical coordinates -> digits e_1..e_len.
  std::vector<std::vector<std::int64_t>> basis;
  for (int k = 0; k < len; ++k) basis.push_back(mod.pi_power(k));
  std::map<std::vector<std::int64_t>, ExponentVector> digits_of;
  std::uint64_t total = 1;
  for (int k = 0; k < len; ++k) total *= p;
  ExponentVector e(len);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    unrank(idx, p, e);
    std::vector<std::int64_t> v(p - 1, 0);
    for (int k = 0; k < len; ++k)
      for (std::size_t c = 0; c + 1 < p; ++c) v[c] += static_cast<std::int64_t>(e[k]) * basis[k][c];
    digits_of.emplace(mod.canonical(v), e);
  }
  if (digits_of.size() != total) throw std::logic_error("pi-adic expansion is not unique");
  auto expand = [&](const std::vector<std::int64_t>& v) { return digits_of.at(mod.canonical(v)); };

  PcPresentation pres(p, static_cast<std::size_t>(i));
  std::vector<std::string> labels{"g"};
  for (int k = 1; k <= len; ++k) labels.push_back("h" + std::to_string(k));
  auto word = [&](const ExponentVector& digits) {
    ExponentVector w(i, 0);
    std::copy(digits.begin(), digits.end(), w.begin() + 1);
    return w;
  };
  for (int k = 1; k <= len; ++k) {
    auto pk = mod.pi_power(k - 1);
    for (auto& x : pk) x *= p;
    pres.set_power(k, word(expand(pk)));
    auto xk = mod.pi_power(k - 1);
    const auto next = mod.pi_power(k);
    for (std::size_t c = 0; c + 1 < p; ++c) xk[c] += next[c];
    pres.set_conjugate(0, k, word(expand(xk)));
  }
  pres.set_labels(std::move(labels));
  return pres;
}

SubgroupSet maximal_class_abelian_subgroup(const ConcreteGroup& g) {
  const PcPresentation* pres = g.presentation();
  if (!pres || pres->labels().empty() || pres->labels()[0] != "g")
    throw GroupError("not a maximal_class_m group");
  std::vector<ElementId> members, gens;
  const ElementId top = static_cast<ElementId>(g.order() / g.prime());
  for (ElementId x = 0; x < top; ++x) members.push_back(x);
  for (std::size_t k = 1; k < pres->rank(); ++k) gens.push_back(element_of(g, pres->unit(k)));
  return SubgroupSet(g.order(), std::move(members), std::move(gens));
}

PcPresentation heisenberg(std::uint32_t p, int d, int b, const FieldRep& field) {
  require(field.p == p && field.d == d, "field does not match (p, d)");
  require(1 <= b && b <= d, "heisenberg: need 1 <= b <= d");
  const std::size_t dd = static_cast<std::size_t>(d);
  const std::size_t bb = static_cast<std::size_t>(b);
  PcPresentation pres(p, 2 * dd + bb);
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < dd; ++k) labels.push_back("x" + std::to_string(k + 1));
  for (std::size_t k = 0; k < dd; ++k) labels.push_back("y" + std::to_string(k + 1));
  for (std::size_t k = 0; k < bb; ++k) labels.push_back("z" + std::to_string(k + 1));
  // y_j^{x_i} = y_j * z(-e_i e_j), z coordinates beyond b factored out.
  for (std::size_t i = 0; i < dd; ++i)
    for (std::size_t j = 0; j < dd; ++j) {
      ExponentVector w = pres.unit(dd + j);
      const auto& prod = field.mult[i][j];
      for (std::size_t k = 0; k < bb; ++k) w[2 * dd + k] = (p - prod[k]) % p;
      pres.set_conjugate(i, dd + j, w);
    }
  pres.set_labels(std::move(labels));
  return pres;
}

PcPresentation heisenberg(std::uint32_t p, int d, int b) { return heisenberg(p, d, b, field_rep(p, d)); }

PcPresentation free_class2(std::uint32_t p, int r) {
  require(prime_p(p) && p != 2, "free_class2: p must be an odd prime");
  require(r >= 2, "free_class2: r must be at least 2");
  const std::size_t rr = static_cast<std::size_t>(r);
  PcPresentation pres(p, rr + rr * (rr - 1) / 2);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < rr; ++i) labels.push_back("x" + std::to_string(i + 1));
  std::size_t c = rr;
  for (std::size_t i = 0; i < rr; ++i)
    for (std::size_t j = i + 1; j < rr; ++j, ++c) {
      labels.push_back("c" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
      // [x_i, x_j] = c_ij, so x_j^{x_i} = x_j c_ij^{-1}.
      ExponentVector w = pres.unit(j);
      w[c] = p - 1;
      pres.set_conjugate(i, j, w);
    }
  pres.set_labels(std::move(labels));
  return pres;
}

PcPresentation t_group_presentation(std::uint32_t p, int b, int d) {
  require(d >= 1 && b >= d, "t_group: need b >= d >= 1");
  PcPresentation pres = maximal_class_m(p, b - d + 3);
  for (int k = 1; k < d; ++k) pres = direct_product_presentation(pres, extraspecial(p, 1));
  return pres;
}

ConcreteGroup t_group(std::uint32_t p, int b, int d, std::uint64_t order_cap) {
  require(d >= 1 && b >= d, "t_group: need b >= d >= 1");
  ConcreteGroup g = presentation_group(maximal_class_m(p, b - d + 3), order_cap);
  const ConcreteGroup e = presentation_group(extraspecial(p, 1), order_cap);
  for (int k = 1; k < d; ++k) g = direct_product(g, e, order_cap);
  return g;
}

PcPresentation dihedral8() {
  PcPresentation pres(2, 3);
  pres.set_power(1, pres.unit(2));
  pres.set_conjugate(0, 1, ExponentVector{0, 1, 1});
  pres.set_labels({"a", "b", "z"});
  return pres;
}

PcPresentation quaternion8() {
  PcPresentation pres(2, 3);
  pres.set_power(0, pres.unit(2));
  pres.set_power(1, pres.unit(2));
  pres.set_conjugate(0, 1, ExponentVector{0, 1, 1});
  pres.set_labels({"i", "j", "z"});
  return pres;
}

}  // namespace pgrp
