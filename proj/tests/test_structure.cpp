#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include <doctest.h>

#include "pgrp/chardeg.hpp"
#include "pgrp/combinators.hpp"
#include "pgrp/constructions.hpp"
#include "pgrp/structure.hpp"

using namespace pgrp;

namespace {

// Class sizes by conjugating with every element.
std::multiset<std::uint64_t> brute_class_sizes(const ConcreteGroup& g) {
  std::vector<bool> seen(g.order());
  std::multiset<std::uint64_t> sizes;
  for (ElementId x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    std::set<ElementId> cls;
    for (ElementId y = 0; y < g.order(); ++y) cls.insert(g.conjugate(x, y));
    for (ElementId c : cls) seen[c] = true;
    sizes.insert(cls.size());
  }
  return sizes;
}

std::set<ElementId> brute_center(const ConcreteGroup& g) {
  std::set<ElementId> z;
  for (ElementId x = 0; x < g.order(); ++x) {
    bool central = true;
    for (ElementId y = 0; y < g.order() && central; ++y)
      central = g.multiply(x, y) == g.multiply(y, x);
    if (central) z.insert(x);
  }
  return z;
}

std::set<ElementId> brute_derived(const ConcreteGroup& g) {
  std::set<ElementId> d{0};
  for (ElementId x = 0; x < g.order(); ++x)
    for (ElementId y = 0; y < g.order(); ++y) d.insert(g.commutator(x, y));
  // close under products
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<ElementId> cur(d.begin(), d.end());
    for (ElementId a : cur)
      for (ElementId b : cur) grew |= d.insert(g.multiply(a, b)).second;
  }
  return d;
}

std::set<ElementId> as_set(const SubgroupSet& s) { return {s.members().begin(), s.members().end()}; }

std::vector<ConcreteGroup> small_groups() {
  return {presentation_group(extraspecial(3, 1)), presentation_group(dihedral8()),
          presentation_group(quaternion8()),      presentation_group(maximal_class_m(3, 4)),
          presentation_group(maximal_class_m(2, 5)), presentation_group(heisenberg(3, 2, 1)),
          t_group(2, 2, 2),                       presentation_group(free_class2(3, 3))};
}

}  // namespace

TEST_CASE("conjugacy classes match brute force") {
  for (const auto& g : small_groups()) {
    CAPTURE(g.order());
    const ConjugacyData conj = conjugacy_data(g);
    std::multiset<std::uint64_t> sizes;
    int breadth = 0;
    for (std::size_t c = 0; c < conj.count(); ++c) {
      sizes.insert(conj.members(c).size());
      breadth = std::max(breadth, log_p(conj.members(c).size(), g.prime()));
    }
    CHECK(sizes == brute_class_sizes(g));
    CHECK(conj.breadth == breadth);
  }
}

TEST_CASE("center and derived subgroup match brute force") {
  for (const auto& g : small_groups()) {
    CAPTURE(g.order());
    const SeriesData s = central_series(g);
    CHECK(as_set(s.center()) == brute_center(g));
    CHECK(as_set(s.derived) == brute_derived(g));
    CHECK(s.lower.back().order() == 1);
    CHECK(s.upper.back().order() == g.order());
    CHECK(s.lower.size() == s.upper.size());
  }
}

TEST_CASE("maximal class and stem data") {
  for (int i = 3; i <= 6; ++i) {
    const ConcreteGroup g = presentation_group(maximal_class_m(3, i));
    CHECK(central_series(g).nilpotency_class == i - 1);
    const StemData st = stem_data(g);
    CHECK(st.is_stem);
    CHECK(st.log_stem_order == i);
  }
  // D8 x C_2 is not stem; its stem order is 8.
  const ConcreteGroup g = direct_product(presentation_group(dihedral8()),
                                         presentation_group(PcPresentation(2, 1)));
  const StemData st = stem_data(g);
  CHECK_FALSE(st.is_stem);
  CHECK(st.log_stem_order == 3);
}

TEST_CASE("maximal subgroups are the hyperplane preimages") {
  for (const auto& g : small_groups()) {
    const SeriesData s = central_series(g);
    const int r = g.log_order() - s.frattini.log_order(g.prime());
    std::uint64_t expected = 0;
    for (int k = 0, pk = 1; k < r; ++k, pk *= g.prime()) expected += pk;
    const auto maxes = maximal_subgroups(g, s);
    CHECK(maxes.size() == expected);
    for (const auto& m : maxes) {
      CHECK(m.order() * g.prime() == g.order());
      CHECK(is_normal(g, m));
      CHECK(s.frattini.is_subset_of(m));
    }
  }
}

TEST_CASE("second-center witness has least breadth") {
  const ConcreteGroup g = presentation_group(maximal_class_m(3, 5));
  const SeriesData s = central_series(g);
  const ConjugacyData conj = conjugacy_data(g);
  const auto w = min_breadth_second_center(g, s, conj);
  CHECK(s.upper_term(2).contains(w.element));
  CHECK_FALSE(s.center().contains(w.element));
  for (ElementId x : s.upper_term(2).members())
    if (!s.center().contains(x)) CHECK(conj.breadth_of(x) >= w.breadth);
  CHECK(w.breadth == 1);
}

TEST_CASE("breadth subgroups") {
  const ConcreteGroup d8 = presentation_group(dihedral8());
  CHECK(breadth_subgroup(d8, 1).order() == 8);
  CHECK(breadth_subgroup(d8, 0).order() == 2);
  const ConcreteGroup m5 = presentation_group(maximal_class_m(2, 5));
  const SubgroupSet b1 = breadth_subgroup(m5, 1);
  CHECK(is_abelian(m5, b1));
}

TEST_CASE("quotients and subgroup views") {
  const ConcreteGroup g = presentation_group(extraspecial(3, 2));
  const SeriesData s = central_series(g);
  const Quotient q = quotient_group(g, s.center());
  CHECK(q.group.order() == 81);
  CHECK(is_abelian(q.group));
  for (ElementId x = 0; x < g.order(); x += 7)
    for (ElementId y = 0; y < g.order(); y += 11)
      CHECK(q.project(g.multiply(x, y)) == q.group.multiply(q.project(x), q.project(y)));
  CHECK(q.preimage(trivial_subgroup(q.group)) == s.center());
  const SubgroupSet c = centralizer(g, g.generators()[0]);
  CHECK(c.order() == 81);
  CHECK(is_normal(g, c));
}

TEST_CASE("isoclinism fingerprints") {
  const ConcreteGroup d8 = presentation_group(dihedral8());
  const ConcreteGroup q8 = presentation_group(quaternion8());
  CHECK(isoclinism_fingerprint(d8) == isoclinism_fingerprint(q8));
  CHECK(isoclinism_fingerprint(d8).hash() == isoclinism_fingerprint(q8).hash());

  for (const auto& g : small_groups()) {
    const ConcreteGroup gx = direct_product(g, presentation_group(PcPresentation(g.prime(), 1)));
    const DegreeProfile pg = degree_profile(g), px = degree_profile(gx);
    const auto diff = isoclinism_fingerprint(g, &pg).differences(isoclinism_fingerprint(gx, &px));
    CHECK_MESSAGE(diff.empty(), (diff.empty() ? "" : diff.front()));
  }
  const auto e27 = isoclinism_fingerprint(presentation_group(extraspecial(3, 1)));
  const auto m4 = isoclinism_fingerprint(presentation_group(maximal_class_m(3, 4)));
  CHECK_FALSE(e27.differences(m4).empty());
}
