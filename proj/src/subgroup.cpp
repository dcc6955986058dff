#include "pgrp/subgroup.hpp"

#include <algorithm>
#include <deque>

namespace pgrp {

SubgroupSet::SubgroupSet(std::uint64_t ambient_order, std::vector<ElementId> sorted_members,
                         std::vector<ElementId> generators)
    : members_(std::move(sorted_members)),
      generators_(std::move(generators)),
      mask_(ambient_order, false) {
  for (ElementId x : members_) mask_[x] = true;
}

int SubgroupSet::log_order(std::uint32_t p) const { return log_p(order(), p); }

bool SubgroupSet::is_subset_of(const SubgroupSet& other) const {
  return std::all_of(members_.begin(), members_.end(),
                     [&](ElementId x) { return other.contains(x); });
}

int log_p(std::uint64_t n, std::uint32_t p) {
  int e = 0;
  while (n > 1) {
    if (n % p != 0) throw GroupError(std::to_string(n) + " is not a power of " + std::to_string(p));
    n /= p;
    ++e;
  }
  return e;
}

int log_index(const SubgroupSet& a, const SubgroupSet& b, std::uint32_t p) {
  return a.log_order(p) - b.log_order(p);
}

SubgroupSet trivial_subgroup(const ConcreteGroup& g) {
  return SubgroupSet(g.order(), {ConcreteGroup::identity()}, {});
}

SubgroupSet whole_group(const ConcreteGroup& g) {
  return SubgroupSet(g.order(), g.enumerate(), g.generators());
}

namespace {

std::vector<ElementId> clean_generators(std::span<const ElementId> gens) {
  std::vector<ElementId> out;
  for (ElementId x : gens)
    if (x != ConcreteGroup::identity() && std::find(out.begin(), out.end(), x) == out.end())
      out.push_back(x);
  return out;
}

std::vector<ElementId> closure_members(const ConcreteGroup& g, std::span<const ElementId> gens,
                                       std::vector<bool>& seen) {
  std::vector<ElementId> members{ConcreteGroup::identity()};
  seen.assign(g.order(), false);
  seen[0] = true;
  for (std::size_t head = 0; head < members.size(); ++head) {
    const ElementId x = members[head];
    for (ElementId s : gens) {
      const ElementId y = g.impl().multiply(x, s);
      if (!seen[y]) {
        seen[y] = true;
        members.push_back(y);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

}  // namespace

SubgroupSet subgroup_closure(const ConcreteGroup& g, std::span<const ElementId> gens) {
  for (ElementId x : gens) g.check(x);
  auto cleaned = clean_generators(gens);
  std::vector<bool> seen;
  auto members = closure_members(g, cleaned, seen);
  return SubgroupSet(g.order(), std::move(members), std::move(cleaned));
}

SubgroupSet subgroup_from_members(const ConcreteGroup& g, std::vector<ElementId> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty() || members.front() != ConcreteGroup::identity())
    throw GroupError("subgroup must contain the identity");
  std::vector<bool> target(g.order(), false);
  for (ElementId x : members) {
    g.check(x);
    target[x] = true;
  }
  std::vector<ElementId> gens;
  std::vector<bool> seen(g.order(), false);
  seen[0] = true;
  std::size_t covered = 1;
  for (ElementId x : members) {
    if (seen[x]) continue;
    gens.push_back(x);
    auto closed = closure_members(g, gens, seen);
    for (ElementId y : closed)
      if (!target[y]) throw GroupError("member set is not closed under multiplication");
    covered = closed.size();
  }
  if (covered != members.size()) throw GroupError("member set is not a subgroup");
  return SubgroupSet(g.order(), std::move(members), std::move(gens));
}

SubgroupSet normal_closure(const ConcreteGroup& g, std::span<const ElementId> gens) {
  SubgroupSet s = subgroup_closure(g, gens);
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<ElementId> extended = s.generators();
    for (ElementId x : s.generators())
      for (ElementId t : g.generators()) {
        const ElementId c = g.conjugate(x, t);
        if (!s.contains(c) &&
            std::find(extended.begin(), extended.end(), c) == extended.end()) {
          extended.push_back(c);
          changed = true;
        }
      }
    if (changed) s = subgroup_closure(g, extended);
  }
  return s;
}

bool is_normal(const ConcreteGroup& g, const SubgroupSet& h) {
  for (ElementId x : h.generators())
    for (ElementId t : g.generators())
      if (!h.contains(g.conjugate(x, t))) return false;
  return true;
}

bool is_abelian(const ConcreteGroup& g, const SubgroupSet& h) {
  const auto& gens = h.generators();
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a + 1; b < gens.size(); ++b)
      if (g.multiply(gens[a], gens[b]) != g.multiply(gens[b], gens[a])) return false;
  return true;
}

bool is_abelian(const ConcreteGroup& g) {
  const auto& gens = g.generators();
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a + 1; b < gens.size(); ++b)
      if (g.multiply(gens[a], gens[b]) != g.multiply(gens[b], gens[a])) return false;
  return true;
}

SubgroupSet centralizer(const ConcreteGroup& g, ElementId x) {
  const ElementId one[] = {x};
  return centralizer_of_set(g, one);
}

SubgroupSet centralizer_of_set(const ConcreteGroup& g, std::span<const ElementId> s) {
  for (ElementId x : s) g.check(x);
  std::vector<ElementId> members;
  for (ElementId y = 0; y < g.order(); ++y) {
    bool ok = true;
    for (ElementId x : s)
      if (g.impl().multiply(x, y) != g.impl().multiply(y, x)) {
        ok = false;
        break;
      }
    if (ok) members.push_back(y);
  }
  return subgroup_from_members(g, std::move(members));
}

SubgroupSet center(const ConcreteGroup& g) { return centralizer_of_set(g, g.generators()); }

SubgroupSet commutator_subgroup(const ConcreteGroup& g, const SubgroupSet& a,
                                const SubgroupSet& b) {
  std::vector<ElementId> comms;
  for (ElementId x : a.generators())
    for (ElementId y : b.generators()) comms.push_back(g.commutator(x, y));
  return normal_closure(g, comms);
}

SubgroupSet derived_subgroup(const ConcreteGroup& g) {
  const SubgroupSet all = whole_group(g);
  return commutator_subgroup(g, all, all);
}

SubgroupSet intersect(const ConcreteGroup& g, const SubgroupSet& a, const SubgroupSet& b) {
  std::vector<ElementId> members;
  for (ElementId x : a.members())
    if (b.contains(x)) members.push_back(x);
  return subgroup_from_members(g, std::move(members));
}

SubgroupSet join(const ConcreteGroup& g, const SubgroupSet& a, const SubgroupSet& b) {
  std::vector<ElementId> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return subgroup_closure(g, gens);
}

}  // namespace pgrp
