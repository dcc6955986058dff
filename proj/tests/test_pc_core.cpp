#include <array>
#include <map>
#include <vector>

#include <doctest.h>

#include "pgrp/constructions.hpp"
#include "pgrp/group.hpp"
#include "pgrp/presentation.hpp"

using namespace pgrp;

namespace {

void check_group_axioms(const ConcreteGroup& g) {
  const std::uint64_t n = g.order();
  for (ElementId a = 0; a < n; ++a) {
    CHECK(g.multiply(a, 0) == a);
    CHECK(g.multiply(0, a) == a);
    CHECK(g.multiply(a, g.invert(a)) == 0);
    for (ElementId b = 0; b < n; ++b) {
      const ElementId ab = g.multiply(a, b);
      for (ElementId c = 0; c < n; ++c) {
        if (g.multiply(ab, c) != g.multiply(a, g.multiply(b, c))) {
          FAIL("associativity fails at (" << a << "," << b << "," << c << ")");
        }
      }
    }
  }
}

// 3x3 unitriangular matrices over F_p, stored as the entries (a, b, c) of
// [[1,a,c],[0,1,b],[0,0,1]].
struct Uni {
  std::uint32_t a, b, c;
  friend bool operator==(const Uni&, const Uni&) = default;
};

Uni mul(const Uni& x, const Uni& y, std::uint32_t p) {
  return {(x.a + y.a) % p, (x.b + y.b) % p, (x.c + y.c + x.a * y.b) % p};
}

Uni inv(const Uni& x, std::uint32_t p) {
  // [[1,-a,ab-c],[0,1,-b],[0,0,1]]
  return {(p - x.a) % p, (p - x.b) % p, (x.a * x.b + p * p - x.c) % p};
}

Uni pow(Uni x, std::uint32_t e, std::uint32_t p) {
  Uni r{0, 0, 0};
  for (std::uint32_t k = 0; k < e; ++k) r = mul(r, x, p);
  return r;
}

}  // namespace

TEST_CASE("collection satisfies the group axioms on small groups") {
  for (const auto& pres : {extraspecial(3, 1), dihedral8(), quaternion8(), maximal_class_m(3, 4),
                           maximal_class_m(2, 5), extraspecial(5, 1)}) {
    CAPTURE(pres.prime());
    CAPTURE(pres.rank());
    check_group_axioms(presentation_group(pres));
  }
}

TEST_CASE("extraspecial 27 agrees with unitriangular matrices") {
  // x -> E12, y -> E23; then y^x = y [y,x] forces z = [y,x].
  const std::uint32_t p = 3;
  const ConcreteGroup g = presentation_group(extraspecial(p, 1));
  const Uni x{1, 0, 0}, y{0, 1, 0};
  const Uni z = mul(mul(inv(y, p), inv(x, p), p), mul(y, x, p), p);
  REQUIRE(g.order() == 27);
  std::map<ElementId, Uni> image;
  for (ElementId e = 0; e < g.order(); ++e) {
    const ExponentVector w = word_of(g, e);
    image[e] = mul(mul(pow(x, w[0], p), pow(y, w[1], p), p), pow(z, w[2], p), p);
  }
  for (ElementId a = 0; a < g.order(); ++a) {
    for (ElementId b = 0; b < g.order(); ++b) {
      CHECK(image[g.multiply(a, b)] == mul(image[a], image[b], p));
    }
  }
  for (ElementId a = 1; a < g.order(); ++a) CHECK_FALSE(image[a] == Uni{0, 0, 0});
}

TEST_CASE("normal forms reproduce the defining relations") {
  const PcPresentation pres = maximal_class_m(3, 5);
  for (std::size_t i = 0; i < pres.rank(); ++i) {
    const std::vector<Letter> power{{i, 3}};
    CHECK(collect_normal_form(pres, power) == pres.power(i));
    for (std::size_t j = i + 1; j < pres.rank(); ++j) {
      const std::vector<Letter> conj{{i, -1}, {j, 1}, {i, 1}};
      CHECK(collect_normal_form(pres, conj) == pres.conjugate(i, j));
    }
  }
}

TEST_CASE("mixed-radix ids round-trip") {
  const std::uint32_t p = 5;
  std::array<Residue, 4> v{};
  for (std::uint64_t id = 0; id < 625; ++id) {
    unrank(id, p, v);
    CHECK(rank_of(v, p) == id);
  }
  const std::array<Residue, 3> first{1, 0, 0};
  CHECK(rank_of(first, 3) == 9);
}

TEST_CASE("constructions are consistent") {
  for (const auto& pres :
       {extraspecial(2, 2), extraspecial(3, 3), maximal_class_m(2, 7), maximal_class_m(5, 6),
        heisenberg(3, 2, 1), heisenberg(2, 2, 2), free_class2(3, 4), t_group_presentation(3, 4, 2),
        dihedral8(), quaternion8()}) {
    const auto v = check_consistency(pres);
    CHECK_MESSAGE(!v.has_value(), (v ? v->describe() : ""));
  }
}

TEST_CASE("corrupted dihedral relations are detected") {
  PcPresentation d8 = dihedral8();
  d8.set_power(0, d8.unit(1));  // a^2 = b, but b does not commute with a
  const auto v = check_consistency(d8);
  REQUIRE(v.has_value());
  CHECK(v->kind == ConsistencyViolation::Kind::PowerSelf);
  CHECK(v->lhs != v->rhs);
  CHECK(v->describe().find("g1") != std::string::npos);
}

TEST_CASE("relations must be written in later generators") {
  PcPresentation pres(3, 3);
  CHECK_THROWS(pres.set_power(1, ExponentVector{1, 0, 0}));
  CHECK_THROWS(pres.set_conjugate(0, 2, ExponentVector{0, 1, 0}));
  CHECK_THROWS(pres.set_power(0, ExponentVector{0, 3, 0}));
}

TEST_CASE("commutators in the free class-2 group land on the labelled generator") {
  const PcPresentation pres = free_class2(3, 3);
  const ConcreteGroup g = presentation_group(pres);
  REQUIRE(g.log_order() == 6);
  REQUIRE(pres.labels()[3] == "c1_2");
  const ElementId x1 = element_of(g, pres.unit(0));
  const ElementId x2 = element_of(g, pres.unit(1));
  const ElementId x3 = element_of(g, pres.unit(2));
  CHECK(g.commutator(x1, x2) == element_of(g, pres.unit(3)));
  CHECK(g.commutator(x1, x3) == element_of(g, pres.unit(4)));
  CHECK(g.commutator(x2, x3) == element_of(g, pres.unit(5)));
  CHECK(g.commutator(x2, x1) == g.invert(element_of(g, pres.unit(3))));
}

TEST_CASE("direct products multiply componentwise") {
  const ConcreteGroup a = presentation_group(dihedral8());
  const ConcreteGroup b = presentation_group(extraspecial(2, 1));
  const ConcreteGroup ab = direct_product(a, b);
  REQUIRE(ab.order() == 64);
  for (ElementId x = 0; x < 8; x += 3)
    for (ElementId y = 0; y < 8; ++y)
      for (ElementId u = 0; u < 8; ++u)
        for (ElementId v = 0; v < 8; v += 2)
          CHECK(ab.multiply(product_element(ab, x, y), product_element(ab, u, v)) ==
                product_element(ab, a.multiply(x, u), b.multiply(y, v)));
  const ConcreteGroup pres_ab = presentation_group(direct_product_presentation(dihedral8(), dihedral8()));
  CHECK(pres_ab.order() == 64);
}

TEST_CASE("order cap rejects oversized groups") {
  CHECK_THROWS_AS(presentation_group(extraspecial(5, 3), 1000), GroupError);
}
