#include "pgrp/modular.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace pgrp::modular {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint64_t q) : q_(q) {
  if (q < 2 || q >= (1ull << 32)) throw std::invalid_argument("field modulus must lie in [2, 2^32)");
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1 % q_;
  a %= q_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % q_ == 0) throw std::domain_error("inverse of zero");
  return pow(a, q_ - 2);
}

std::uint64_t PrimeField::reduce(std::int64_t a) const {
  const auto q = static_cast<std::int64_t>(q_);
  const std::int64_t r = a % q;
  return static_cast<std::uint64_t>(r < 0 ? r + q : r);
}

namespace {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

void make_monic(const PrimeField& f, Poly& a) {
  if (a.empty()) return;
  const std::uint64_t c = f.inv(a.back());
  for (auto& x : a) x = f.mul(x, c);
}

Poly sub_poly(const PrimeField& f, Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.sub(a[i], b[i]);
  trim(a);
  return a;
}

// Quotient and remainder of a by m (m nonzero).
std::pair<Poly, Poly> divmod(const PrimeField& f, Poly a, const Poly& m) {
  trim(a);
  if (m.empty()) throw std::domain_error("polynomial division by zero");
  if (a.size() < m.size()) return {Poly{}, a};
  const std::uint64_t lead_inv = f.inv(m.back());
  Poly quo(a.size() - m.size() + 1, 0);
  for (std::size_t i = a.size(); i-- >= m.size();) {
    const std::uint64_t c = f.mul(a[i], lead_inv);
    const std::size_t shift = i + 1 - m.size();
    quo[shift] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < m.size(); ++j) a[shift + j] = f.sub(a[shift + j], f.mul(c, m[j]));
  }
  a.resize(m.size() - 1);
  trim(a);
  trim(quo);
  return {quo, a};
}

void split_roots(const PrimeField& f, const Poly& g, std::vector<std::uint64_t>& out) {
  // g is monic, squarefree and splits into distinct linear factors.
  if (g.size() <= 1) return;
  if (g.size() == 2) {
    out.push_back(f.neg(g[0]));
    return;
  }
  const std::uint64_t q = f.modulus();
  if (q == 2) {
    // Only x and x+1 are possible factors.
    if (g[0] == 0) out.push_back(0);
    std::uint64_t s = 0;
    for (auto c : g) s = f.add(s, c);
    if (s == 0) out.push_back(1);
    return;
  }
  for (std::uint64_t a = 0; a < q; ++a) {
    Poly h = poly_powmod(f, Poly{a, 1}, (q - 1) / 2, g);
    h = sub_poly(f, std::move(h), Poly{1});
    Poly d = poly_gcd(f, g, h);
    if (d.size() > 1 && d.size() < g.size()) {
      split_roots(f, d, out);
      split_roots(f, poly_divexact(f, g, d), out);
      return;
    }
  }
  throw std::runtime_error("root splitting failed");
}

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Minimal polynomial of a row vector v under v -> vA, monic.
Poly krylov_minimal_polynomial(const PrimeField& f, const Matrix& a, std::vector<std::uint64_t> v) {
  const std::size_t n = a.rows;
  std::vector<std::vector<std::uint64_t>> reduced;  // reduced vectors, pivot entry 1
  std::vector<std::size_t> pivots;
  std::vector<Poly> combos;  // reduced[i] = sum combos[i][s] * v_s
  std::vector<std::uint64_t> cur = std::move(v);
  for (std::size_t t = 0; t <= n; ++t) {
    std::vector<std::uint64_t> r = cur;
    Poly c(t + 1, 0);
    c[t] = 1;
    for (std::size_t i = 0; i < reduced.size(); ++i) {
      const std::uint64_t x = r[pivots[i]];
      if (x == 0) continue;
      const std::uint64_t m = f.neg(x);
      for (std::size_t j = 0; j < n; ++j)
        if (reduced[i][j]) r[j] = f.add(r[j], f.mul(m, reduced[i][j]));
      for (std::size_t s = 0; s < combos[i].size(); ++s) c[s] = f.add(c[s], f.mul(m, combos[i][s]));
    }
    auto nz = std::find_if(r.begin(), r.end(), [](std::uint64_t x) { return x != 0; });
    if (nz == r.end()) {
      trim(c);
      make_monic(f, c);
      return c;
    }
    const std::uint64_t s = f.inv(*nz);
    for (auto& x : r) x = f.mul(x, s);
    for (auto& x : c) x = f.mul(x, s);
    pivots.push_back(static_cast<std::size_t>(nz - r.begin()));
    reduced.push_back(std::move(r));
    combos.push_back(std::move(c));
    // cur <- cur * A
    std::vector<std::uint64_t> next(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (cur[i] == 0) continue;
      const auto row = a.row(i);
      for (std::size_t j = 0; j < n; ++j) next[j] = (next[j] + cur[i] * row[j]) % f.modulus();
    }
    cur = std::move(next);
  }
  throw std::logic_error("Krylov sequence did not terminate");
}

}  // namespace

Poly poly_rem(const PrimeField& f, Poly a, const Poly& m) { return divmod(f, std::move(a), m).second; }

Poly poly_divexact(const PrimeField& f, Poly a, const Poly& m) {
  auto [q, r] = divmod(f, std::move(a), m);
  if (!r.empty()) throw std::logic_error("inexact polynomial division");
  return q;
}

Poly poly_mulmod(const PrimeField& f, const Poly& a, const Poly& b, const Poly& m) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  return poly_rem(f, std::move(r), m);
}

Poly poly_powmod(const PrimeField& f, Poly base, std::uint64_t e, const Poly& m) {
  Poly r = poly_rem(f, Poly{1}, m);
  base = poly_rem(f, std::move(base), m);
  while (e) {
    if (e & 1) r = poly_mulmod(f, r, base, m);
    base = poly_mulmod(f, base, base, m);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(const PrimeField& f, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  make_monic(f, a);
  return a;
}

std::vector<std::uint64_t> distinct_roots(const PrimeField& f, const Poly& p) {
  Poly g = p;
  trim(g);
  if (g.empty()) throw std::domain_error("roots of the zero polynomial");
  make_monic(f, g);
  if (g.size() == 1) return {};
  // gcd with x^q - x keeps exactly the distinct linear factors.
  Poly xq = poly_powmod(f, Poly{0, 1}, f.modulus(), g);
  Poly split = poly_gcd(f, g, sub_poly(f, std::move(xq), Poly{0, 1}));
  std::vector<std::uint64_t> roots;
  split_roots(f, split, roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<std::size_t> rref(const PrimeField& f, Matrix& m) {
  const std::uint64_t q = f.modulus();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t sel = r;
    while (sel < m.rows && m.at(sel, c) == 0) ++sel;
    if (sel == m.rows) continue;
    if (sel != r)
      std::swap_ranges(m.row(sel).begin(), m.row(sel).end(), m.row(r).begin());
    auto pr = m.row(r);
    const std::uint64_t s = f.inv(pr[c]);
    for (std::size_t j = c; j < m.cols; ++j) pr[j] = f.mul(pr[j], s);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r) continue;
      auto ri = m.row(i);
      const std::uint64_t x = ri[c];
      if (x == 0) continue;
      const std::uint64_t neg = q - x;
      for (std::size_t j = c; j < m.cols; ++j) ri[j] = (ri[j] + neg * pr[j]) % q;
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(const PrimeField& f, Matrix m) { return rref(f, m).size(); }

Matrix nullspace(const PrimeField& f, Matrix m) {
  const auto pivots = rref(f, m);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  Matrix out(m.cols - pivots.size(), m.cols);
  std::size_t k = 0;
  for (std::size_t free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    out.at(k, free) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) out.at(k, pivots[r]) = f.neg(m.at(r, free));
    ++k;
  }
  return out;
}

std::vector<Eigenspace> left_eigenspaces(const PrimeField& f, const Matrix& a) {
  if (a.rows != a.cols) throw std::invalid_argument("eigenspaces of a non-square matrix");
  const std::size_t n = a.rows;
  std::vector<Eigenspace> spaces;
  if (n == 0) return spaces;
  std::size_t found = 0;
  std::uint64_t state = 0x5eed5eedull;
  constexpr int kAttempts = 12;
  for (int attempt = 0; attempt < kAttempts && found < n; ++attempt) {
    std::vector<std::uint64_t> v(n);
    for (auto& x : v) x = splitmix(state) % f.modulus();
    const Poly mp = krylov_minimal_polynomial(f, a, std::move(v));
    const auto roots = distinct_roots(f, mp);
    if (attempt == 0 && mp.size() == 2) {
      // Scalar matrices are common in practice; check directly.
      bool scalar = true;
      for (std::size_t i = 0; i < n && scalar; ++i)
        for (std::size_t j = 0; j < n && scalar; ++j)
          scalar = a.at(i, j) == (i == j ? roots[0] : 0);
      if (scalar) {
        Matrix id(n, n);
        for (std::size_t i = 0; i < n; ++i) id.at(i, i) = 1;
        return {{roots[0], std::move(id)}};
      }
    }
    if (roots.size() + 1 != mp.size())
      throw std::runtime_error("matrix is not diagonalizable over F_" + std::to_string(f.modulus()));
    for (std::uint64_t lambda : roots) {
      if (std::any_of(spaces.begin(), spaces.end(),
                      [&](const Eigenspace& e) { return e.eigenvalue == lambda; }))
        continue;
      // Left eigenvectors: x (A - lambda) = 0, i.e. (A - lambda)^T x^T = 0.
      Matrix t(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t.at(j, i) = a.at(i, j);
      for (std::size_t i = 0; i < n; ++i) t.at(i, i) = f.sub(t.at(i, i), lambda);
      Matrix basis = nullspace(f, std::move(t));
      found += basis.rows;
      spaces.push_back({lambda, std::move(basis)});
    }
  }
  if (found != n)
    throw std::runtime_error("eigenspaces do not span: found " + std::to_string(found) + " of " +
                             std::to_string(n));
  std::sort(spaces.begin(), spaces.end(),
            [](const Eigenspace& x, const Eigenspace& y) { return x.eigenvalue < y.eigenvalue; });
  return spaces;
}

}  // namespace pgrp::modular
