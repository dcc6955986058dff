#include <map>
#include <vector>

#include <doctest.h>

#include "pgrp/chardeg.hpp"
#include "pgrp/constructions.hpp"
#include "pgrp/modular.hpp"

using namespace pgrp;
using namespace pgrp::modular;

namespace {

DegreeProfile profile(std::uint32_t p, std::map<int, std::uint64_t> m) {
  DegreeProfile d;
  d.p = p;
  d.multiplicity = std::move(m);
  return d;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  const PrimeField f(101);
  for (std::uint64_t a = 1; a < 101; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
  CHECK(f.pow(3, 100) == 1);
  CHECK(f.reduce(-1) == 100);
  CHECK(is_prime(65537));
  CHECK_FALSE(is_prime(65535));
}

TEST_CASE("row reduction and nullspace") {
  const PrimeField f(7);
  Matrix m(3, 4);
  const std::uint64_t rows[3][4] = {{1, 2, 3, 4}, {2, 4, 6, 2}, {0, 1, 1, 1}};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 4; ++c) m.at(r, c) = rows[r][c];
  CHECK(rank(f, m) == 3);
  const Matrix ns = nullspace(f, m);
  REQUIRE(ns.rows == 1);
  for (std::size_t r = 0; r < 3; ++r) {
    std::uint64_t s = 0;
    for (std::size_t c = 0; c < 4; ++c) s = f.add(s, f.mul(m.at(r, c), ns.at(0, c)));
    CHECK(s == 0);
  }
}

TEST_CASE("left eigenspaces of a diagonalizable matrix") {
  // A = P diag(2, 3, 3) P^{-1} over F_11 with P upper unitriangular.
  const PrimeField f(11);
  Matrix a(3, 3);
  const std::uint64_t rows[3][3] = {{2, 1, 10}, {0, 3, 0}, {0, 0, 3}};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) a.at(r, c) = rows[r][c];
  const auto spaces = left_eigenspaces(f, a);
  REQUIRE(spaces.size() == 2);
  CHECK(spaces[0].eigenvalue == 2);
  CHECK(spaces[0].basis.rows == 1);
  CHECK(spaces[1].eigenvalue == 3);
  CHECK(spaces[1].basis.rows == 2);
  for (const auto& sp : spaces) {
    for (std::size_t r = 0; r < sp.basis.rows; ++r) {
      for (std::size_t c = 0; c < 3; ++c) {
        std::uint64_t s = 0;
        for (std::size_t k = 0; k < 3; ++k) s = f.add(s, f.mul(sp.basis.at(r, k), a.at(k, c)));
        CHECK(s == f.mul(sp.eigenvalue, sp.basis.at(r, c)));
      }
    }
  }
}

TEST_CASE("polynomial roots") {
  const PrimeField f(13);
  // (x-2)(x-5)(x-5) = x^3 - 12x^2 + 45x - 50
  const Poly p{f.reduce(-50), 45 % 13, f.reduce(-12), 1};
  CHECK(distinct_roots(f, p) == std::vector<std::uint64_t>{2, 5});
}

TEST_CASE("class algebra constants of D8 match brute force") {
  const ConcreteGroup g = presentation_group(dihedral8());
  const ConjugacyData conj = conjugacy_data(g);
  const ClassAlgebra alg(g, conj);
  REQUIRE(alg.class_count() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      for (std::size_t k = 0; k < 5; ++k) {
        const ElementId z = conj.members(k)[0];
        std::uint64_t count = 0;
        for (ElementId x : conj.members(i))
          for (ElementId y : conj.members(j)) count += g.multiply(x, y) == z;
        CHECK(alg.constant(i, j, k) == count);
      }
    }
    const auto m = alg.matrix(i);
    for (std::size_t j = 0; j < 5; ++j)
      for (const auto& [k, a] : m.row(j)) CHECK(alg.constant(i, j, k) == a);
  }
  for (std::size_t j = 0; j < 5; ++j) {
    const ElementId x = conj.members(j)[0];
    CHECK(conj.class_of[g.invert(x)] == alg.inverse_class(j));
  }
}

TEST_CASE("Dixon-Schneider on known groups") {
  CHECK(dixon_degrees(presentation_group(dihedral8())) == profile(2, {{0, 4}, {1, 1}}));
  CHECK(dixon_degrees(presentation_group(quaternion8())) == profile(2, {{0, 4}, {1, 1}}));
  CHECK(dixon_degrees(presentation_group(maximal_class_m(3, 4))) == profile(3, {{0, 9}, {1, 8}}));
  CHECK(dixon_degrees(presentation_group(extraspecial(3, 2))) == profile(3, {{0, 81}, {2, 2}}));
  CHECK(dixon_degrees(presentation_group(extraspecial(2, 2))) == profile(2, {{0, 16}, {2, 1}}));
}

TEST_CASE("Dixon-Schneider agrees with the class-2 formula") {
  for (const auto& pres : {extraspecial(3, 1), extraspecial(5, 1), heisenberg(3, 2, 1),
                           heisenberg(3, 2, 2), free_class2(3, 3), extraspecial(3, 2)}) {
    const ConcreteGroup g = presentation_group(pres);
    REQUIRE(class2_applicable(g, central_series(g)));
    CHECK(dixon_degrees(g) == class2_degrees(g));
  }
  CHECK_FALSE(class2_applicable(presentation_group(dihedral8()),
                                central_series(presentation_group(dihedral8()))));
}

TEST_CASE("degree profiles of products convolve") {
  const ConcreteGroup a = presentation_group(maximal_class_m(3, 4));
  const ConcreteGroup b = presentation_group(extraspecial(3, 1));
  const ConcreteGroup ab = direct_product(a, b);
  CHECK(dixon_degrees(ab, [] {
          DixonOptions o;
          o.class_cap = 4096;
          return o;
        }()) == dixon_degrees(a).convolve(dixon_degrees(b)));
  CHECK(degree_profile(ab) == dixon_degrees(a).convolve(dixon_degrees(b)));
}

TEST_CASE("profile invariants") {
  for (const auto& pres : {dihedral8(), maximal_class_m(2, 6), maximal_class_m(3, 5),
                           free_class2(3, 3), heisenberg(2, 2, 1)}) {
    const ConcreteGroup g = presentation_group(pres);
    const DegreeProfile prof = degree_profile(g);
    CHECK(prof.sum_of_squares() == g.order());
    const SeriesData s = central_series(g);
    const ConjugacyData c = conjugacy_data(g);
    CHECK_NOTHROW(check_profile_invariants(prof, g, s, c));
  }
  DegreeProfile wrong = profile(2, {{0, 8}});
  const ConcreteGroup d8 = presentation_group(dihedral8());
  CHECK_THROWS_AS(check_profile_invariants(wrong, d8, central_series(d8), conjugacy_data(d8)),
                  DegreeComputationError);
}

TEST_CASE("class cap and modulus selection") {
  DixonOptions o;
  o.class_cap = 4;
  CHECK_THROWS_AS(dixon_degrees(presentation_group(dihedral8()), o), ClassCapExceeded);
  const std::uint64_t q = dixon_modulus(81, 9, 1000);
  CHECK(q > 81);
  CHECK(q % 9 == 1);
  CHECK(is_prime(q));
}

TEST_CASE("profile arithmetic") {
  const DegreeProfile d8 = profile(2, {{0, 4}, {1, 1}});
  const DegreeProfile c2 = profile(2, {{0, 2}});
  CHECK(d8.minus(profile(2, {{0, 4}})) == profile(2, {{1, 1}}));
  CHECK_THROWS(c2.minus(d8));
  CHECK(d8.convolve(c2) == profile(2, {{0, 8}, {1, 2}}));
  CHECK(d8.class_count() == 5);
  CHECK(d8.max_exponent() == 1);
}
