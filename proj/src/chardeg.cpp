#include "pgrp/chardeg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "pgrp/combinators.hpp"
#include "pgrp/modular.hpp"

namespace pgrp {

using modular::Matrix;
using modular::PrimeField;

std::uint64_t dixon_modulus(std::uint64_t order, std::uint64_t exponent, std::uint64_t limit) {
  std::uint64_t q = (order / exponent + 1) * exponent + 1;
  for (std::uint64_t n = 0; n < limit; ++n, q += exponent) {
    if (q >= (1ull << 32)) break;
    if (modular::is_prime(q)) return q;
  }
  throw ModulusSearchFailed("no prime q = 1 mod " + std::to_string(exponent) + " above " +
                            std::to_string(order) + " within " + std::to_string(limit) +
                            " candidates");
}

ClassAlgebra::ClassAlgebra(ConcreteGroup g, const ConjugacyData& conj) : g_(std::move(g)), conj_(&conj) {
  inverse_.resize(conj.count());
  for (std::size_t j = 0; j < conj.count(); ++j)
    inverse_[j] = conj.class_of[g_.invert(conj.classes[j].representative)];
}

ClassAlgebra::Matrix ClassAlgebra::matrix(std::size_t i) const {
  const ConjugacyData& conj = *conj_;
  const GroupImpl& impl = g_.impl();
  const std::size_t cn = conj.count();
  std::vector<ElementId> inv;
  for (ElementId x : conj.members(i)) inv.push_back(impl.invert(x));

  // Column by column (j of x^{-1} z_k), then transposed by counting.
  std::vector<std::uint32_t> col_j;
  std::vector<std::uint32_t> col_k;
  std::vector<std::uint32_t> hits;
  for (std::size_t k = 0; k < cn; ++k) {
    hits.clear();
    const ElementId z = conj.classes[k].representative;
    for (ElementId xi : inv) hits.push_back(conj.class_of[impl.multiply(xi, z)]);
    for (std::uint32_t j : hits) {
      col_j.push_back(j);
      col_k.push_back(static_cast<std::uint32_t>(k));
    }
  }
  Matrix m;
  m.offsets.assign(cn + 1, 0);
  for (std::uint32_t j : col_j) ++m.offsets[j + 1];
  for (std::size_t j = 0; j < cn; ++j) m.offsets[j + 1] += m.offsets[j];
  // Entries of a row arrive with k nondecreasing; merge repeats into counts.
  std::vector<std::uint32_t> fill(m.offsets.begin(), m.offsets.end() - 1);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> raw(col_j.size());
  for (std::size_t t = 0; t < col_j.size(); ++t) raw[fill[col_j[t]]++] = {col_k[t], 1};
  std::vector<std::uint32_t> offsets(cn + 1, 0);
  for (std::size_t j = 0; j < cn; ++j) {
    const std::size_t start = m.entries.size();
    for (std::uint32_t t = m.offsets[j]; t < m.offsets[j + 1]; ++t) {
      if (m.entries.size() > start && m.entries.back().first == raw[t].first) {
        ++m.entries.back().second;
      } else {
        m.entries.push_back(raw[t]);
      }
    }
    offsets[j + 1] = static_cast<std::uint32_t>(m.entries.size());
  }
  m.offsets = std::move(offsets);
  return m;
}

std::uint64_t ClassAlgebra::constant(std::size_t i, std::size_t j, std::size_t k) const {
  const ConjugacyData& conj = *conj_;
  const ElementId z = conj.classes[k].representative;
  std::uint64_t n = 0;
  for (ElementId x : conj.members(i))
    if (conj.class_of[g_.multiply(g_.invert(x), z)] == j) ++n;
  return n;
}

namespace {

std::uint64_t primitive_root(const PrimeField& f) {
  const std::uint64_t q = f.modulus();
  std::vector<std::uint64_t> primes;
  std::uint64_t m = q - 1;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d) continue;
    primes.push_back(d);
    while (m % d == 0) m /= d;
  }
  if (m > 1) primes.push_back(m);
  for (std::uint64_t g = 2; g < q; ++g) {
    if (std::all_of(primes.begin(), primes.end(),
                    [&](std::uint64_t r) { return f.pow(g, (q - 1) / r) != 1; }))
      return g;
  }
  return 1;
}

// A common invariant subspace: rows in reduced echelon form over the class
// index coordinates.
struct Space {
  Matrix basis;
  std::vector<std::size_t> pivots;
};

Space echelon_space(const PrimeField& f, Matrix rows) {
  Space s;
  s.pivots = modular::rref(f, rows);
  rows.rows = s.pivots.size();
  rows.data.resize(rows.rows * rows.cols);
  s.basis = std::move(rows);
  return s;
}

// Eigenspaces of the central class matrices. For central z the matrix M_z
// permutes coordinates (C -> zC), so a common eigenvector with eigenvalue
// lambda(z) is determined by its values on Z-orbits of classes.
std::vector<Space> central_split(const ConcreteGroup& g, const ConjugacyData& conj,
                                 const PrimeField& f) {
  const std::size_t cn = conj.count();
  std::vector<ElementId> z_elems;
  for (const auto& c : conj.classes)
    if (c.size == 1) z_elems.push_back(c.representative);
  const SubgroupSet z = subgroup_from_members(g, z_elems);
  const auto& gens = z.generators();
  const std::uint64_t root = primitive_root(f);
  const std::uint64_t q = f.modulus();

  // Characters of Z: assignments of roots of unity to generators that extend
  // to homomorphisms.
  std::vector<std::vector<std::uint64_t>> chars;  // value per generator
  std::vector<std::uint64_t> orders;
  for (ElementId x : gens) orders.push_back(g.element_order(x));
  std::vector<std::uint64_t> idx(gens.size(), 0);
  std::map<ElementId, std::uint64_t> value;
  while (true) {
    std::vector<std::uint64_t> vals;
    for (std::size_t k = 0; k < gens.size(); ++k)
      vals.push_back(f.pow(f.pow(root, (q - 1) / orders[k]), idx[k]));
    value.clear();
    value[0] = 1;
    std::vector<ElementId> queue{0};
    bool ok = true;
    for (std::size_t h = 0; h < queue.size() && ok; ++h) {
      for (std::size_t k = 0; k < gens.size(); ++k) {
        const ElementId y = g.multiply(queue[h], gens[k]);
        const std::uint64_t v = f.mul(value[queue[h]], vals[k]);
        auto [it, inserted] = value.emplace(y, v);
        if (inserted) {
          queue.push_back(y);
        } else if (it->second != v) {
          ok = false;
          break;
        }
      }
    }
    if (ok) chars.push_back(vals);
    std::size_t k = 0;
    for (; k < gens.size(); ++k) {
      if (++idx[k] < orders[k]) break;
      idx[k] = 0;
    }
    if (k == gens.size()) break;
  }
  if (chars.size() != z.order())
    throw DegreeComputationError("central character count differs from |Z(G)|");

  // Action of the generators of Z on classes.
  std::vector<std::vector<std::uint32_t>> act(gens.size(), std::vector<std::uint32_t>(cn));
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (std::size_t c = 0; c < cn; ++c)
      act[k][c] = conj.class_of[g.multiply(gens[k], conj.classes[c].representative)];

  std::vector<Space> spaces;
  std::vector<std::uint64_t> val(cn);
  std::vector<bool> seen(cn);
  for (const auto& lam : chars) {
    std::vector<std::vector<std::uint64_t>> rows;
    std::fill(seen.begin(), seen.end(), false);
    for (std::size_t c0 = 0; c0 < cn; ++c0) {
      if (seen[c0]) continue;
      std::vector<std::size_t> orbit{c0};
      seen[c0] = true;
      val[c0] = 1;
      bool ok = true;
      for (std::size_t h = 0; h < orbit.size(); ++h) {
        for (std::size_t k = 0; k < gens.size(); ++k) {
          const std::size_t d = act[k][orbit[h]];
          const std::uint64_t v = f.mul(val[orbit[h]], lam[k]);
          if (!seen[d]) {
            seen[d] = true;
            val[d] = v;
            orbit.push_back(d);
          } else if (val[d] != v) {
            ok = false;
          }
        }
      }
      if (!ok) continue;
      std::vector<std::uint64_t> row(cn, 0);
      for (std::size_t c : orbit) row[c] = val[c];
      rows.push_back(std::move(row));
    }
    if (rows.empty()) continue;
    Matrix m(rows.size(), cn);
    for (std::size_t r = 0; r < rows.size(); ++r) std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
    spaces.push_back(echelon_space(f, std::move(m)));
  }
  return spaces;
}

// Eigenspaces of M restricted to s; empty when M acts on s as a scalar.
std::vector<Space> split(const PrimeField& f, const Space& s, const ClassAlgebra::Matrix& m) {
  const std::size_t k = s.basis.rows;
  const std::size_t cn = s.basis.cols;
  const std::uint64_t q = f.modulus();
  // A[r][t]: coordinate of M w_r along w_t. Since M w_r lies in the span, it
  // is determined by its entries at the pivot columns.
  Matrix a(k, k);
  for (std::size_t r = 0; r < k; ++r) {
    const auto w = s.basis.row(r);
    for (std::size_t t = 0; t < k; ++t) {
      std::uint64_t x = 0;
      for (const auto& [c, n] : m.row(s.pivots[t])) x = (x + n * w[c]) % q;
      a.at(r, t) = x;
    }
  }
  bool scalar = true;
  for (std::size_t r = 0; r < k && scalar; ++r)
    for (std::size_t t = 0; t < k && scalar; ++t) scalar = a.at(r, t) == (r == t ? a.at(0, 0) : 0);
  if (scalar) return {};
  auto eig = modular::left_eigenspaces(f, a);
  if (eig.size() == 1) return {};
  std::vector<Space> out;
  for (auto& e : eig) {
    Matrix rows(e.basis.rows, cn);
    for (std::size_t i = 0; i < e.basis.rows; ++i) {
      auto dst = rows.row(i);
      for (std::size_t r = 0; r < k; ++r) {
        const std::uint64_t c = e.basis.at(i, r);
        if (c == 0) continue;
        const auto w = s.basis.row(r);
        for (std::size_t j = 0; j < cn; ++j)
          if (w[j]) dst[j] = (dst[j] + c * w[j]) % q;
      }
    }
    out.push_back(echelon_space(f, std::move(rows)));
  }
  return out;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

DegreeProfile dixon_degrees(const ConcreteGroup& g, const ConjugacyData& conj,
                            const DixonOptions& opts) {
  const std::size_t cn = conj.count();
  if (cn > opts.class_cap)
    throw ClassCapExceeded("class count " + std::to_string(cn) + " exceeds cap " +
                           std::to_string(opts.class_cap));
  const std::uint64_t order = g.order();
  const std::uint64_t exponent = g.exponent();
  std::uint64_t q = 0;
  if (opts.modulus) {
    q = *opts.modulus;
    if (!modular::is_prime(q) || q <= order || (q - 1) % exponent != 0)
      throw ModulusSearchFailed("modulus " + std::to_string(q) + " is unsuitable");
  } else {
    q = dixon_modulus(order, exponent, opts.modulus_search_limit);
  }
  const PrimeField f(q);
  const ClassAlgebra algebra(g, conj);

  std::vector<Space> spaces = central_split(g, conj, f);
  for (std::size_t i = 1; i < cn; ++i) {
    if (std::all_of(spaces.begin(), spaces.end(), [](const Space& s) { return s.basis.rows == 1; }))
      break;
    if (conj.classes[i].size == 1) continue;
    const auto m = algebra.matrix(i);
    std::vector<Space> next;
    for (Space& s : spaces) {
      auto parts = s.basis.rows == 1 ? std::vector<Space>{} : split(f, s, m);
      if (parts.empty()) {
        next.push_back(std::move(s));
        continue;
      }
      for (auto& t : parts) next.push_back(std::move(t));
    }
    spaces = std::move(next);
  }

  std::vector<std::uint64_t> inv_size(cn);
  for (std::size_t j = 0; j < cn; ++j) inv_size[j] = f.inv(conj.classes[j].size % q);
  DegreeProfile profile;
  profile.p = g.prime();
  for (const Space& s : spaces) {
    if (s.basis.rows != 1)
      throw DegreeComputationError("terminal eigenspace of dimension " +
                                   std::to_string(s.basis.rows));
    const auto w = s.basis.row(0);
    if (w[0] == 0) throw DegreeComputationError("eigenvector vanishes on the identity class");
    const std::uint64_t s0 = f.inv(w[0]);
    std::uint64_t sum = 0;
    for (std::size_t j = 0; j < cn; ++j) {
      const std::uint64_t wj = f.mul(w[j], s0);
      const std::uint64_t wi = f.mul(w[algebra.inverse_class(j)], s0);
      sum = f.add(sum, f.mul(f.mul(wj, wi), inv_size[j]));
    }
    if (sum == 0) throw DegreeComputationError("degenerate orthogonality sum");
    const std::uint64_t d2 = f.mul(order % q, f.inv(sum));
    const std::uint64_t d = isqrt(d2);
    if (d * d != d2 || order % d2 != 0)
      throw DegreeComputationError("recovered squared degree " + std::to_string(d2) +
                                   " is not a square dividing |G|");
    profile.multiplicity[log_p(d, g.prime())] += 1;
  }
  return profile;
}

DegreeProfile dixon_degrees(const ConcreteGroup& g, const DixonOptions& opts) {
  return dixon_degrees(g, conjugacy_data(g), opts);
}

bool class2_applicable(const ConcreteGroup& g, const SeriesData& series) {
  if (g.prime() == 2 || series.nilpotency_class > 2) return false;
  return g.exponent() <= g.prime();
}

namespace {

// Greedy basis of an elementary abelian section from candidate elements;
// `span` tests membership of the current span.
std::vector<ElementId> greedy_basis(const ConcreteGroup& g, const std::vector<ElementId>& cands,
                                    const SubgroupSet& floor) {
  std::vector<ElementId> basis;
  std::vector<ElementId> gens = floor.generators();
  SubgroupSet span = subgroup_closure(g, gens);
  for (ElementId x : cands) {
    if (span.contains(x)) continue;
    basis.push_back(x);
    gens.push_back(x);
    span = subgroup_closure(g, gens);
  }
  return basis;
}

}  // namespace

DegreeProfile class2_degrees(const ConcreteGroup& g) {
  const SeriesData series = central_series(g);
  if (!class2_applicable(g, series))
    throw GroupError("class2_degrees requires odd p, class at most 2 and exponent p");
  const std::uint32_t p = g.prime();
  const SubgroupSet& w = series.derived;
  const SubgroupSet one = trivial_subgroup(g);

  const std::vector<ElementId> v_basis = greedy_basis(g, g.generators(), w);
  const std::vector<ElementId> w_basis = greedy_basis(g, w.members(), one);
  const std::size_t r = v_basis.size();
  const std::size_t s = w_basis.size();

  // Coordinates of elements of G' in the chosen basis.
  std::map<ElementId, std::vector<Residue>> coords;
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < s; ++k) total *= p;
  std::vector<Residue> c(s);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    unrank(idx, p, c);
    ElementId e = 0;
    for (std::size_t k = 0; k < s; ++k) e = g.multiply(e, g.power(w_basis[k], c[k]));
    coords[e] = c;
  }
  if (coords.size() != w.order()) throw GroupError("derived subgroup basis is inconsistent");

  std::vector<std::vector<std::vector<Residue>>> form(r, std::vector<std::vector<Residue>>(r));
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) form[a][b] = coords.at(g.commutator(v_basis[a], v_basis[b]));

  const PrimeField f(p);
  DegreeProfile profile;
  profile.p = p;
  std::vector<Residue> lam(s);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    unrank(idx, p, lam);
    Matrix m(r, r);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) {
        std::uint64_t x = 0;
        for (std::size_t k = 0; k < s; ++k) x += static_cast<std::uint64_t>(lam[k]) * form[a][b][k];
        m.at(a, b) = x % p;
      }
    const std::size_t rho = modular::rank(f, std::move(m));
    if (rho % 2) throw GroupError("alternating form of odd rank");
    std::uint64_t mult = 1;
    for (std::size_t k = rho; k < r; ++k) mult *= p;
    profile.multiplicity[static_cast<int>(rho / 2)] += mult;
  }
  return profile;
}

void check_profile_invariants(const DegreeProfile& profile, const ConcreteGroup& g,
                              const SeriesData& series, const ConjugacyData& conj) {
  auto fail = [](const std::string& what) {
    throw DegreeComputationError("degree profile invariant violated: " + what);
  };
  if (profile.sum_of_squares() != g.order()) fail("sum of squared degrees != |G|");
  if (profile.class_count() != conj.count()) fail("number of characters != class count");
  if (profile.count(0) != g.order() / series.derived.order()) fail("linear characters != [G:G']");
  const std::uint64_t index_center = g.order() / series.center().order();
  for (const auto& [e, m] : profile.multiplicity) {
    std::uint64_t d2 = 1;
    for (int k = 0; k < 2 * e; ++k) d2 *= g.prime();
    if (index_center % d2 != 0) fail("squared degree does not divide [G:Z(G)]");
  }
}

DegreeProfile degree_profile(const ConcreteGroup& g, DegreeMethod method, const DixonOptions& opts) {
  const SeriesData series = central_series(g);
  const ConjugacyData conj = conjugacy_data(g);
  DegreeProfile profile;
  profile.p = g.prime();
  switch (method) {
    case DegreeMethod::Dixon:
      profile = dixon_degrees(g, conj, opts);
      break;
    case DegreeMethod::Class2:
      profile = class2_degrees(g);
      break;
    case DegreeMethod::Auto:
      if (series.nilpotency_class <= 1) {
        profile.multiplicity[0] = g.order();
      } else if (class2_applicable(g, series)) {
        profile = class2_degrees(g);
      } else if (conj.count() <= opts.class_cap) {
        profile = dixon_degrees(g, conj, opts);
      } else if (auto fs = g.factors()) {
        profile = degree_profile(fs->first, method, opts).convolve(degree_profile(fs->second, method, opts));
      } else {
        throw ClassCapExceeded("class count " + std::to_string(conj.count()) + " exceeds cap " +
                               std::to_string(opts.class_cap) + " and no factorization is known");
      }
      break;
  }
  check_profile_invariants(profile, g, series, conj);
  return profile;
}

BreadthDegreeType breadth_degree_type(const ConcreteGroup& g, const DixonOptions& opts) {
  const ConjugacyData conj = conjugacy_data(g);
  return {conj.breadth, degree_profile(g, DegreeMethod::Auto, opts).max_exponent()};
}

}  // namespace pgrp
