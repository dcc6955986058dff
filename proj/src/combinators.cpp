#include "pgrp/combinators.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace pgrp {

namespace {

class QuotientGroupImpl final : public GroupImpl {
 public:
  QuotientGroupImpl(ConcreteGroup parent, std::shared_ptr<const std::vector<ElementId>> proj,
                    std::shared_ptr<const std::vector<ElementId>> reps, int kernel_log)
      : parent_(std::move(parent)), proj_(std::move(proj)), reps_(std::move(reps)) {
    p = parent_.prime();
    log_order = parent_.log_order() - kernel_log;
    order = reps_->size();
    for (ElementId g : parent_.generators()) {
      const ElementId c = (*proj_)[g];
      if (c != 0 && std::find(generators.begin(), generators.end(), c) == generators.end())
        generators.push_back(c);
    }
  }

  ElementId multiply(ElementId a, ElementId b) const override {
    return (*proj_)[parent_.impl().multiply((*reps_)[a], (*reps_)[b])];
  }
  ElementId invert(ElementId a) const override {
    return (*proj_)[parent_.impl().invert((*reps_)[a])];
  }
  Realization realization() const override { return Realization::Quotient; }

 private:
  ConcreteGroup parent_;
  std::shared_ptr<const std::vector<ElementId>> proj_;
  std::shared_ptr<const std::vector<ElementId>> reps_;
};

class SubgroupGroupImpl final : public GroupImpl {
 public:
  SubgroupGroupImpl(ConcreteGroup parent, const SubgroupSet& h)
      : parent_(std::move(parent)), members_(h.members()) {
    p = parent_.prime();
    order = members_.size();
    log_order = log_p(order, p);
    for (ElementId g : h.generators()) generators.push_back(locate(g));
  }

  ElementId locate(ElementId x) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), x);
    return static_cast<ElementId>(it - members_.begin());
  }

  ElementId multiply(ElementId a, ElementId b) const override {
    return locate(parent_.impl().multiply(members_[a], members_[b]));
  }
  ElementId invert(ElementId a) const override {
    return locate(parent_.impl().invert(members_[a]));
  }
  Realization realization() const override { return Realization::Subgroup; }

 private:
  ConcreteGroup parent_;
  std::vector<ElementId> members_;
};

}  // namespace

SubgroupSet Quotient::image(const SubgroupSet& h) const {
  std::vector<ElementId> gens;
  for (ElementId x : h.generators()) gens.push_back(project(x));
  return subgroup_closure(group, gens);
}

SubgroupSet Quotient::preimage(const SubgroupSet& h) const {
  std::vector<ElementId> members;
  for (ElementId x = 0; x < parent.order(); ++x)
    if (h.contains(project(x))) members.push_back(x);
  std::vector<ElementId> gens = kernel.generators();
  for (ElementId c : h.generators()) gens.push_back(lift(c));
  auto cleaned = subgroup_closure(parent, gens);
  if (cleaned.members() != members) throw GroupError("preimage computation is inconsistent");
  return cleaned;
}

Quotient quotient_group(const ConcreteGroup& g, const SubgroupSet& n) {
  if (n.ambient_order() != g.order()) throw GroupError("subgroup belongs to a different group");
  if (subgroup_closure(g, n.generators()).members() != n.members())
    throw GroupError("quotient: N is not a subgroup");
  if (!is_normal(g, n)) throw GroupError("quotient: N is not normal");

  constexpr ElementId kUnset = std::numeric_limits<ElementId>::max();
  auto proj = std::make_shared<std::vector<ElementId>>(g.order(), kUnset);
  auto reps = std::make_shared<std::vector<ElementId>>();
  reps->reserve(g.order() / n.order());
  for (ElementId x = 0; x < g.order(); ++x) {
    if ((*proj)[x] != kUnset) continue;
    const auto c = static_cast<ElementId>(reps->size());
    reps->push_back(x);
    for (ElementId m : n.members()) (*proj)[g.impl().multiply(x, m)] = c;
  }
  auto impl = std::make_shared<QuotientGroupImpl>(g, proj, reps, n.log_order(g.prime()));
  return Quotient(ConcreteGroup(std::move(impl)), g, n, proj, reps);
}

std::optional<ElementId> SubgroupView::locate(ElementId parent_id) const {
  if (!members.contains(parent_id)) return std::nullopt;
  const auto& m = members.members();
  return static_cast<ElementId>(std::lower_bound(m.begin(), m.end(), parent_id) - m.begin());
}

SubgroupSet SubgroupView::embed(const SubgroupSet& local) const {
  std::vector<ElementId> mem, gens;
  for (ElementId x : local.members()) mem.push_back(embed(x));
  for (ElementId x : local.generators()) gens.push_back(embed(x));
  std::sort(mem.begin(), mem.end());
  return SubgroupSet(parent.order(), std::move(mem), std::move(gens));
}

SubgroupSet SubgroupView::restrict(const SubgroupSet& parent_subgroup) const {
  std::vector<ElementId> mem;
  for (ElementId x : parent_subgroup.members())
    if (auto l = locate(x)) mem.push_back(*l);
  return subgroup_from_members(group, std::move(mem));
}

SubgroupView subgroup_view(const ConcreteGroup& g, const SubgroupSet& h) {
  if (h.ambient_order() != g.order()) throw GroupError("subgroup belongs to a different group");
  auto impl = std::make_shared<SubgroupGroupImpl>(g, h);
  return SubgroupView(ConcreteGroup(std::move(impl)), g, h);
}

Quotient central_product(const ConcreteGroup& a, const ConcreteGroup& b,
                         const CentralPairing& pairing) {
  const ConcreteGroup prod = direct_product(a, b);
  std::unordered_map<ElementId, ElementId> phi{{0, 0}};
  std::vector<ElementId> queue{0};
  for (const auto& [u, v] : pairing.generator_images) {
    a.check(u);
    b.check(v);
    for (ElementId t : a.generators())
      if (a.multiply(u, t) != a.multiply(t, u))
        throw GroupError("central product: pairing source is not central");
    for (ElementId t : b.generators())
      if (b.multiply(v, t) != b.multiply(t, v))
        throw GroupError("central product: pairing target is not central");
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const ElementId u = queue[head];
    for (const auto& [ug, vg] : pairing.generator_images) {
      const ElementId u2 = a.multiply(u, ug);
      const ElementId v2 = b.multiply(phi.at(u), vg);
      auto [it, inserted] = phi.emplace(u2, v2);
      if (inserted) {
        queue.push_back(u2);
      } else if (it->second != v2) {
        throw GroupError("central product: pairing is not a homomorphism");
      }
    }
  }
  std::vector<ElementId> image;
  for (const auto& [u, v] : phi) image.push_back(v);
  std::sort(image.begin(), image.end());
  if (std::adjacent_find(image.begin(), image.end()) != image.end())
    throw GroupError("central product: pairing is not injective");

  std::vector<ElementId> kernel_gens;
  for (const auto& [u, v] : pairing.generator_images)
    kernel_gens.push_back(product_element(prod, u, b.invert(v)));
  const SubgroupSet k = subgroup_closure(prod, kernel_gens);
  if (k.order() != phi.size()) throw GroupError("central product: inconsistent identification");
  return quotient_group(prod, k);
}

}  // namespace pgrp
