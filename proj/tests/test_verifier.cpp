#include <algorithm>
#include <string>

#include <doctest.h>

#include "pgrp/constructions.hpp"
#include "pgrp/verifier.hpp"

using namespace pgrp;

namespace {

GroupContext context(const PcPresentation& pres) { return GroupContext(presentation_group(pres)); }

bool has_check(const std::vector<Finding>& f, const std::string& prefix, Verdict v) {
  return std::any_of(f.begin(), f.end(), [&](const Finding& x) {
    return x.check.rfind(prefix, 0) == 0 && x.verdict == v;
  });
}

std::string failures(const std::vector<Finding>& f) {
  std::string s;
  for (const auto& x : f)
    if (x.verdict == Verdict::Fail) s += x.check + " " + x.left + " vs " + x.right + "; ";
  return s;
}

DixonOptions wide() {
  DixonOptions o;
  o.class_cap = 4096;
  return o;
}

}  // namespace

TEST_CASE("bound exponents at documented points") {
  for (int d = 1; d <= 6; ++d) {
    const BoundReport r = sigma_bounds(3, 1, d);
    CHECK(r.theorem_exponent == 2 * d + 1);
    CHECK(r.recursive_exponent == 2 * d + 1);
  }
  const BoundReport r21 = sigma_bounds(5, 2, 1);
  CHECK(r21.theorem_exponent == 9);
  CHECK(r21.recursive_exponent == 9);
  CHECK(sigma_bounds(3, 2, 1).lower_exponent == 6);
  CHECK(sigma_bounds(3, 1, 1).lower_exponent == 3);
  const BoundReport r43 = sigma_bounds(3, 4, 3);
  CHECK(r43.recursive_exponent == 43);
  CHECK(r43.refined[1].value == Rational(67));
  CHECK_FALSE(r43.refined[1].matches);
  CHECK(sigma_bounds(3, 2, 1).refined[2].value == Rational(112, 6));
  const BoundReport ab = sigma_bounds(3, 0, 0);
  CHECK(ab.theorem_exponent == 0);
  CHECK(ab.lower_exponent == 0);
}

TEST_CASE("recursion by hand") {
  // sigma(b,d) = factor(b,d) sigma(b-1,d), sigma(1,d) = p^{2d+1}
  for (int d = 1; d <= 8; ++d) {
    std::int64_t e = 2 * d + 1;
    for (int b = 2; b <= 8; ++b) {
      if (3 * b <= 2 * d + 3) e += b + 2 * d + 2;
      else if (b <= 2 * d - 1) e += 4 * b - 1;
      else e += 3 * b + 2 * d - 2;
      CHECK(recursive_exponent(b, d) == e);
      CHECK(e <= theorem_exponent(b, d));
    }
  }
  CHECK(bound_regime(1, 3) == 0);
  CHECK(bound_regime(2, 3) == 1);
  CHECK(bound_regime(4, 3) == 2);
  CHECK(bound_regime(6, 3) == 3);
}

TEST_CASE("first closed form matches the recursion on its regime") {
  for (int b = 1; b <= 8; ++b)
    for (int d = 1; d <= 8; ++d) {
      const BoundReport r = sigma_bounds(2, b, d);
      if (r.refined[0].applies) CHECK(r.refined[0].matches);
      CHECK(r.lower_exponent <= r.theorem_exponent);
    }
}

TEST_CASE("stem reduction") {
  SUBCASE("heisenberg with b* = 2 loses one factor p") {
    const GroupContext h = context(heisenberg(3, 2, 2));
    const StemReduction r = stem_reduction(h);
    CHECK(r.b_star == 2);
    CHECK(r.reduced->group().log_order() == h.group().log_order() - 1);
    CHECK(r.reduced->stem().is_stem);
    CHECK(all_pass(r.checks));
  }
  SUBCASE("b* = 1 leaves the group unchanged") {
    const GroupContext h = context(extraspecial(3, 1));
    const StemReduction r = stem_reduction(h);
    CHECK(r.b_star == 1);
    CHECK(r.quotient.kernel.order() == 1);
    CHECK(r.reduced->group().order() == 27);
  }
  SUBCASE("T(3,3,2)") {
    const GroupContext h(t_group(3, 3, 2));
    const StemReduction r = stem_reduction(h);
    CHECK(all_pass(r.checks));
    CHECK(r.reduced->conj().breadth_of(r.image) == 1);
    CHECK(r.reduced->series().upper_term(2).contains(r.image));
  }
  CHECK_THROWS_AS(stem_reduction(GroupContext(presentation_group(PcPresentation(3, 2)))), GroupError);
}

TEST_CASE("central quotient lemma on small examples") {
  for (const auto& pres : {extraspecial(3, 1), maximal_class_m(3, 4), dihedral8()}) {
    const GroupContext ctx = context(pres);
    const auto w = min_breadth_second_center(ctx.group(), ctx.series(), ctx.conj());
    REQUIRE(w.breadth == 1);
    const auto f = lemma_central_quotient_audit(ctx, w.element);
    CHECK_MESSAGE(all_pass(f), failures(f));
    CHECK(has_check(f, "m_maximal", Verdict::Pass));
    CHECK(has_check(f, "outside_m_breadth", Verdict::Pass));
  }
  const GroupContext m4 = context(maximal_class_m(3, 4));
  CHECK_THROWS(lemma_central_quotient_audit(m4, 0));
}

TEST_CASE("maximal subgroup lemma branches") {
  SUBCASE("extraspecial 27: C nonabelian, item 4") {
    const GroupContext ctx = context(extraspecial(3, 1));
    const auto ns = central_subgroups_of_order_p(ctx);
    REQUIRE(ns.size() == 1);
    const auto f = lemma_maximal_audit(ctx, ns[0], wide());
    CHECK_MESSAGE(all_pass(f), failures(f));
    CHECK(has_check(f, "item4.witness", Verdict::Pass));
  }
  SUBCASE("M_4(3): C abelian, item 5") {
    const GroupContext ctx = context(maximal_class_m(3, 4));
    const auto ns = central_subgroups_of_order_p(ctx);
    REQUIRE(ns.size() == 1);
    const auto f = lemma_maximal_audit(ctx, ns[0], wide());
    CHECK_MESSAGE(all_pass(f), failures(f));
    CHECK(has_check(f, "item5.dichotomy", Verdict::Pass));
  }
  SUBCASE("extraspecial 3^5: equality and central product") {
    const GroupContext ctx = context(heisenberg(3, 2, 1));
    const auto ns = central_subgroups_of_order_p(ctx);
    REQUIRE(ns.size() == 1);
    const auto f = lemma_maximal_audit(ctx, ns[0], wide());
    CHECK_MESSAGE(all_pass(f), failures(f));
    CHECK(has_check(f, "item2.index_equality", Verdict::Pass));
    CHECK(has_check(f, "item3.central_product", Verdict::Pass));
    CHECK(has_check(f, "item3.d_over_n_stem", Verdict::Pass));
  }
  SUBCASE("item 1 over every maximal subgroup") {
    for (const auto& pres : {maximal_class_m(2, 6), free_class2(3, 3), heisenberg(3, 2, 2)}) {
      const auto f = lemma_maximal_item1_audit(context(pres));
      CHECK_MESSAGE(all_pass(f), failures(f));
    }
  }
}

TEST_CASE("corollary on breadth-one subgroups") {
  CHECK(has_check(corollary_b1_audit(context(extraspecial(3, 1))), "corollary_b1", Verdict::Pass));
  CHECK(has_check(corollary_b1_audit(context(maximal_class_m(2, 5))), "corollary_b1",
                  Verdict::Vacuous));
  const GroupContext d8d8(direct_product(presentation_group(dihedral8()),
                                         presentation_group(dihedral8())));
  CHECK(has_check(corollary_b1_audit(d8d8), "corollary_b1", Verdict::Pass));
}

TEST_CASE("proposition classification") {
  SUBCASE("M_4(3) is case 3a") {
    const CaseReport r = proposition_classify(context(maximal_class_m(3, 4)), wide());
    CHECK(r.kase == PropositionCase::ThreeA);
    CHECK(r.k == 4);
    CHECK(r.b == 2);
    CHECK_MESSAGE(all_pass(r.checks), failures(r.checks));
  }
  SUBCASE("T(3,3,2)") {
    const CaseReport r = proposition_classify(GroupContext(t_group(3, 3, 2)), wide());
    CHECK(r.log_c_over_z == r.log_g_over_d);
    CHECK_MESSAGE(all_pass(r.checks), failures(r.checks));
  }
  SUBCASE("D8 x D8 has a nonabelian B_1") {
    const GroupContext h(direct_product(presentation_group(dihedral8()),
                                        presentation_group(dihedral8())));
    REQUIRE(h.stem().is_stem);
    const CaseReport r = proposition_classify(h, wide());
    CHECK_MESSAGE(all_pass(r.checks), failures(r.checks));
    CHECK(r.factor <= 3 * r.b + 2 * r.d - 2);
  }
  SUBCASE("conclusion holds across families") {
    for (const auto& pres : {maximal_class_m(2, 6), maximal_class_m(5, 5), free_class2(3, 3),
                             heisenberg(3, 2, 2), t_group_presentation(2, 3, 1)}) {
      const CaseReport r = proposition_classify(context(pres), wide());
      CHECK_MESSAGE(all_pass(r.checks), failures(r.checks));
      CHECK(r.k <= r.factor + r.log_exhibited);
    }
  }
  CHECK_THROWS_AS(proposition_classify(context(extraspecial(3, 2)), wide()), GroupError);
}

TEST_CASE("suites are deterministic across worker counts") {
  std::vector<CatalogGroup> catalog;
  catalog.push_back({"e27", "extraspecial", 3, {{"n", 1}}, presentation_group(extraspecial(3, 1))});
  catalog.push_back({"m5", "maxclass", 2, {{"i", 5}}, presentation_group(maximal_class_m(2, 5))});
  catalog.push_back({"f3", "freeclass2", 3, {{"r", 3}}, presentation_group(free_class2(3, 3))});
  catalog.push_back({"q8", "quaternion8", 2, {}, presentation_group(quaternion8())});
  for (Suite s : {Suite::Lemmas, Suite::Proposition, Suite::Bounds, Suite::Properties}) {
    SuiteOptions one, three;
    three.jobs = 3;
    const auto a = run_suite(s, catalog, one);
    const auto b = run_suite(s, catalog, three);
    CHECK(a == b);
    CHECK(std::none_of(a.begin(), a.end(), [](const ReportRow& r) { return r.verdict == Verdict::Fail; }));
    CHECK(std::is_sorted(a.begin(), a.end(), [](const ReportRow& x, const ReportRow& y) {
      return std::tie(x.group_id, x.check) < std::tie(y.group_id, y.check);
    }));
  }
  CHECK(parse_suite("lemmas") == Suite::Lemmas);
  CHECK_FALSE(parse_suite("lemma").has_value());
}
