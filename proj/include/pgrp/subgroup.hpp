#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pgrp/group.hpp"

namespace pgrp {

/// A subgroup of a ConcreteGroup stored as its sorted member ids together with
/// a generating list.
class SubgroupSet {
 public:
  SubgroupSet() = default;
  SubgroupSet(std::uint64_t ambient_order, std::vector<ElementId> sorted_members,
              std::vector<ElementId> generators);

  std::uint64_t order() const { return members_.size(); }
  int log_order(std::uint32_t p) const;
  bool contains(ElementId x) const { return x < mask_.size() && mask_[x]; }
  const std::vector<ElementId>& members() const { return members_; }
  const std::vector<ElementId>& generators() const { return generators_; }
  std::uint64_t ambient_order() const { return mask_.size(); }

  bool is_subset_of(const SubgroupSet& other) const;
  friend bool operator==(const SubgroupSet& a, const SubgroupSet& b) {
    return a.members_ == b.members_;
  }

 private:
  std::vector<ElementId> members_;
  std::vector<ElementId> generators_;
  std::vector<bool> mask_;
};

SubgroupSet trivial_subgroup(const ConcreteGroup& g);
SubgroupSet whole_group(const ConcreteGroup& g);

/// Least subgroup containing `gens` (breadth-first closure).
SubgroupSet subgroup_closure(const ConcreteGroup& g, std::span<const ElementId> gens);
/// Subgroup with the given members; throws if they are not closed. A small
/// generating list is chosen greedily in increasing id order.
SubgroupSet subgroup_from_members(const ConcreteGroup& g, std::vector<ElementId> members);
/// Least normal subgroup containing `gens`.
SubgroupSet normal_closure(const ConcreteGroup& g, std::span<const ElementId> gens);

/// Normality under conjugation by the generators of g.
bool is_normal(const ConcreteGroup& g, const SubgroupSet& h);
bool is_abelian(const ConcreteGroup& g, const SubgroupSet& h);
bool is_abelian(const ConcreteGroup& g);

SubgroupSet centralizer(const ConcreteGroup& g, ElementId x);
SubgroupSet centralizer_of_set(const ConcreteGroup& g, std::span<const ElementId> s);
SubgroupSet center(const ConcreteGroup& g);
/// [A,B] for normal subgroups A and B.
SubgroupSet commutator_subgroup(const ConcreteGroup& g, const SubgroupSet& a, const SubgroupSet& b);
SubgroupSet derived_subgroup(const ConcreteGroup& g);
SubgroupSet intersect(const ConcreteGroup& g, const SubgroupSet& a, const SubgroupSet& b);
/// AB, assuming one of the factors is normal.
SubgroupSet join(const ConcreteGroup& g, const SubgroupSet& a, const SubgroupSet& b);

/// Index [A:B] as a p-exponent, B <= A.
int log_index(const SubgroupSet& a, const SubgroupSet& b, std::uint32_t p);

int log_p(std::uint64_t n, std::uint32_t p);

}  // namespace pgrp
