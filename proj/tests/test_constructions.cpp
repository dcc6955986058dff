#include <random>
#include <set>
#include <vector>

#include <doctest.h>

#include "pgrp/chardeg.hpp"
#include "pgrp/constructions.hpp"
#include "pgrp/structure.hpp"

using namespace pgrp;

namespace {

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.size(), std::vector<std::int64_t>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// Fraction-free Bareiss determinant.
std::int64_t det(IntMatrix m) {
  const std::size_t n = m.size();
  std::int64_t sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

void check_smith(const IntMatrix& a) {
  const SmithForm s = smith_normal_form(a);
  CHECK(multiply(multiply(s.u, a), s.v) == s.d);
  CHECK(std::abs(det(s.u)) == 1);
  CHECK(std::abs(det(s.v)) == 1);
  const std::size_t n = std::min(a.size(), a[0].size());
  for (std::size_t i = 0; i < s.d.size(); ++i)
    for (std::size_t j = 0; j < s.d[0].size(); ++j)
      if (i != j) CHECK(s.d[i][j] == 0);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(s.d[i][i] >= 0);
    if (i + 1 < n && s.d[i][i] != 0) CHECK(s.d[i + 1][i + 1] % s.d[i][i] == 0);
    if (s.d[i][i] == 0 && i + 1 < n) CHECK(s.d[i + 1][i + 1] == 0);
  }
}

std::vector<Residue> to_coords(std::uint64_t v, std::uint32_t p, int d) {
  std::vector<Residue> c(d);
  for (int k = 0; k < d; ++k, v /= p) c[k] = v % p;
  return c;
}

}  // namespace

TEST_CASE("Smith normal form of a textbook matrix") {
  const IntMatrix a{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  const SmithForm s = smith_normal_form(a);
  CHECK(s.d[0][0] == 2);
  CHECK(s.d[1][1] == 6);
  CHECK(s.d[2][2] == 12);
  check_smith(a);
}

TEST_CASE("Smith normal form of random matrices") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-6, 6);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = 1 + trial % 4, cols = 1 + (trial / 4) % 4;
    IntMatrix a(rows, std::vector<std::int64_t>(cols));
    for (auto& r : a)
      for (auto& x : r) x = entry(rng);
    check_smith(a);
  }
  check_smith(IntMatrix{{0, 0}, {0, 0}});
}

TEST_CASE("irreducibility against root counting") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    int count = 0;
    for (Residue c0 = 0; c0 < p; ++c0)
      for (Residue c1 = 0; c1 < p; ++c1) {
        bool root = false;
        for (Residue x = 0; x < p; ++x) root |= (x * x + c1 * x + c0) % p == 0;
        CHECK(is_irreducible(p, {c0, c1}) == !root);
        count += !root;
      }
    CHECK(count == static_cast<int>((p * p - p) / 2));
  }
}

TEST_CASE("finite field multiplication") {
  for (auto [p, d] : {std::pair{2u, 3}, std::pair{3u, 2}, std::pair{5u, 2}, std::pair{2u, 4}}) {
    const FieldRep f = field_rep(p, d);
    CHECK(is_irreducible(p, f.poly));
    std::uint64_t q = 1;
    for (int k = 0; k < d; ++k) q *= p;
    std::vector<std::vector<Residue>> elems;
    for (std::uint64_t v = 0; v < q; ++v) elems.push_back(to_coords(v, p, d));
    const std::vector<Residue> one = to_coords(1, p, d);
    for (const auto& a : elems) {
      for (const auto& b : elems) {
        CHECK(f.multiply(a, b) == f.multiply(b, a));
        for (std::size_t c = 0; c < elems.size(); c += 3)
          CHECK(f.multiply(f.multiply(a, b), elems[c]) == f.multiply(a, f.multiply(b, elems[c])));
      }
      // a^(q-1) = 1 for nonzero a
      if (a == elems[0]) continue;
      std::vector<Residue> x = one;
      for (std::uint64_t k = 0; k + 1 < q; ++k) x = f.multiply(x, a);
      CHECK(x == one);
    }
  }
  // F_4 is defined by x^2 + x + 1, the only irreducible quadratic over F_2.
  CHECK(field_rep(2, 2).poly == std::vector<Residue>{1, 1});
}

TEST_CASE("cyclotomic quotient has order p^length") {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (int len = 1; len <= 6; ++len) {
      const CyclotomicModuleData m = cyclotomic_module(p, len);
      std::int64_t order = 1;
      for (auto e : m.invariants) order *= e;
      std::int64_t expected = 1;
      for (int k = 0; k < len; ++k) expected *= p;
      CHECK(order == expected);
    }
  }
}

TEST_CASE("family orders, types and stem property") {
  struct Case {
    PcPresentation pres;
    int log_order, b, d;
  };
  const std::vector<Case> cases{
      {extraspecial(3, 1), 3, 1, 1},        {extraspecial(5, 2), 5, 1, 2},
      {extraspecial(2, 2), 5, 1, 2},        {maximal_class_m(2, 5), 5, 3, 1},
      {maximal_class_m(3, 6), 6, 4, 1},     {heisenberg(3, 2, 1), 5, 1, 2},
      {heisenberg(3, 2, 2), 6, 2, 2},       {heisenberg(2, 2, 1), 5, 1, 2},
      {free_class2(3, 3), 6, 2, 1},         {t_group_presentation(3, 3, 2), 7, 3, 2},
  };
  for (const auto& c : cases) {
    const ConcreteGroup g = presentation_group(c.pres);
    CAPTURE(c.log_order);
    CHECK(g.log_order() == c.log_order);
    const auto t = breadth_degree_type(g);
    CHECK(t.breadth == c.b);
    CHECK(t.rexp == c.d);
    CHECK(stem_data(g).is_stem);
  }
}

TEST_CASE("maximal class groups have an abelian maximal subgroup") {
  for (int i = 4; i <= 6; ++i) {
    const ConcreteGroup g = presentation_group(maximal_class_m(3, i));
    const SubgroupSet a = maximal_class_abelian_subgroup(g);
    CHECK(a.order() * 3 == g.order());
    CHECK(is_abelian(g, a));
  }
}

TEST_CASE("product-backed and block T groups agree") {
  const ConcreteGroup a = t_group(3, 3, 2);
  const ConcreteGroup b = presentation_group(t_group_presentation(3, 3, 2));
  CHECK(a.order() == b.order());
  CHECK(isoclinism_fingerprint(a) == isoclinism_fingerprint(b));
  CHECK(degree_profile(a) == degree_profile(b));
}

TEST_CASE("constructor preconditions") {
  CHECK_THROWS(free_class2(2, 3));
  CHECK_THROWS(t_group_presentation(3, 1, 2));
  CHECK_THROWS(maximal_class_m(3, 2));
  CHECK_THROWS(heisenberg(3, 1, 2));
}
