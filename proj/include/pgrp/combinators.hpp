#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "pgrp/group.hpp"
#include "pgrp/subgroup.hpp"

namespace pgrp {

/// G/N realized on cosets. The canonical representative of a coset is its
/// least element id; quotient ids follow the order of representatives, so the
/// identity coset has id 0.
class Quotient {
 public:
  Quotient(ConcreteGroup group, ConcreteGroup parent, SubgroupSet kernel,
           std::shared_ptr<const std::vector<ElementId>> projection,
           std::shared_ptr<const std::vector<ElementId>> representatives)
      : group(std::move(group)),
        parent(std::move(parent)),
        kernel(std::move(kernel)),
        projection_(std::move(projection)),
        representatives_(std::move(representatives)) {}

  ConcreteGroup group;
  ConcreteGroup parent;
  SubgroupSet kernel;

  ElementId project(ElementId x) const { return (*projection_)[x]; }
  ElementId lift(ElementId coset) const { return (*representatives_)[coset]; }
  /// Image of a subgroup of the parent.
  SubgroupSet image(const SubgroupSet& h) const;
  /// Full preimage of a subgroup of the quotient.
  SubgroupSet preimage(const SubgroupSet& h) const;

 private:
  std::shared_ptr<const std::vector<ElementId>> projection_;
  std::shared_ptr<const std::vector<ElementId>> representatives_;
};

/// Throws GroupError if N is not a subgroup or not normal.
Quotient quotient_group(const ConcreteGroup& g, const SubgroupSet& n);

/// A subgroup viewed as a group in its own right; ids are positions in the
/// sorted member list.
class SubgroupView {
 public:
  SubgroupView(ConcreteGroup group, ConcreteGroup parent, SubgroupSet members)
      : group(std::move(group)), parent(std::move(parent)), members(std::move(members)) {}

  ConcreteGroup group;
  ConcreteGroup parent;
  SubgroupSet members;

  ElementId embed(ElementId local) const { return members.members()[local]; }
  std::optional<ElementId> locate(ElementId parent_id) const;
  SubgroupSet embed(const SubgroupSet& local) const;
  SubgroupSet restrict(const SubgroupSet& parent_subgroup) const;
};

SubgroupView subgroup_view(const ConcreteGroup& g, const SubgroupSet& h);

/// Identification of central subgroups U <= Z(A) and V <= Z(B) given on
/// generators: u_k -> v_k.
struct CentralPairing {
  std::vector<std::pair<ElementId, ElementId>> generator_images;
};

/// (A x B)/{(u, phi(u)^{-1})}. Throws GroupError when the pairing does not
/// extend to an isomorphism of central subgroups.
Quotient central_product(const ConcreteGroup& a, const ConcreteGroup& b,
                         const CentralPairing& pairing);

}  // namespace pgrp
