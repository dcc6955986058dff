#include "pgrp/group.hpp"

#include <array>
#include <cstdlib>
#include <mutex>
#include <string>

namespace pgrp {

std::uint64_t default_order_cap() {
  static const std::uint64_t cap = [] {
    if (const char* env = std::getenv("PGRP_ORDER_CAP")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) return static_cast<std::uint64_t>(v);
    }
    return std::uint64_t{1} << 22;
  }();
  return cap;
}

void check_order_cap(std::uint64_t order, std::uint64_t cap) {
  if (order > cap)
    throw OrderCapExceeded("group of order " + std::to_string(order) + " exceeds the order cap " +
                           std::to_string(cap) + " (raise PGRP_ORDER_CAP to override)");
}

namespace {

std::uint64_t checked_pow(std::uint32_t p, std::size_t n) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (r > (std::uint64_t{1} << 40) / p) throw OrderCapExceeded("group order overflows");
    r *= p;
  }
  return r;
}

class PresentationGroupImpl final : public GroupImpl {
 public:
  PresentationGroupImpl(const PcPresentation& pres) : pres_(pres), collector_(pres) {
    const std::size_t n = pres.rank();
    p = pres.prime();
    log_order = static_cast<int>(n);
    order = checked_pow(p, n);
    for (std::size_t i = 0; i < n; ++i)
      generators.push_back(static_cast<ElementId>(rank_of(pres.unit(i), p)));
  }

  ElementId multiply(ElementId a, ElementId b) const override {
    if (tabulated()) {
      // Right-multiply a by the normal word of b, one generator at a time.
      const std::size_t n = pres_.rank();
      ElementId x = a;
      ElementId rest = b;
      for (std::size_t j = n; j-- > 0;) {
        digits_[j] = rest % p;
        rest /= p;
      }
      for (std::size_t j = 0; j < n; ++j)
        for (Residue e = 0; e < digits_[j]; ++e) x = right_[x * n + j];
      return x;
    }
    return collect_product(a, b);
  }

  ElementId invert(ElementId a) const override {
    if (tabulated()) return inverse_[a];
    return collect_inverse(a);
  }

  Realization realization() const override { return Realization::Presentation; }

  const PcPresentation& presentation() const { return pres_; }

 private:
  // Groups small enough get a table of right multiplications by generators.
  static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 23;

  bool tabulated() const {
    if (order * pres_.rank() > kTableLimit) return false;
    std::call_once(table_once_, [this] { build_table(); });
    return true;
  }

  void build_table() const {
    const std::size_t n = pres_.rank();
    right_.resize(order * n);
    inverse_.resize(order);
    std::array<Residue, kMaxRank> v{}, w{};
    for (ElementId a = 0; a < order; ++a) {
      unrank(a, p, std::span<Residue>(v.data(), n));
      for (std::size_t j = 0; j < n; ++j) {
        w = v;
        collector_.multiply_generator(std::span<Residue>(w.data(), n), j, 1);
        right_[a * n + j] = static_cast<ElementId>(rank_of(std::span<const Residue>(w.data(), n), p));
      }
      inverse_[a] = collect_inverse(a);
    }
  }

  ElementId collect_product(ElementId a, ElementId b) const {
    const std::size_t n = pres_.rank();
    std::array<Residue, kMaxRank> va{}, vb{};
    unrank(a, p, std::span<Residue>(va.data(), n));
    unrank(b, p, std::span<Residue>(vb.data(), n));
    collector_.multiply(std::span<Residue>(va.data(), n), std::span<const Residue>(vb.data(), n));
    return static_cast<ElementId>(rank_of(std::span<const Residue>(va.data(), n), p));
  }

  ElementId collect_inverse(ElementId a) const {
    const std::size_t n = pres_.rank();
    std::array<Residue, kMaxRank> va{}, out{};
    unrank(a, p, std::span<Residue>(va.data(), n));
    collector_.invert(std::span<const Residue>(va.data(), n), std::span<Residue>(out.data(), n));
    return static_cast<ElementId>(rank_of(std::span<const Residue>(out.data(), n), p));
  }

  PcPresentation pres_;
  Collector collector_;
  mutable std::once_flag table_once_;
  mutable std::vector<ElementId> right_;
  mutable std::vector<ElementId> inverse_;
  static thread_local std::array<Residue, kMaxRank> digits_;
};

thread_local std::array<Residue, kMaxRank> PresentationGroupImpl::digits_{};

class ProductGroupImpl final : public GroupImpl {
 public:
  ProductGroupImpl(ConcreteGroup a, ConcreteGroup b) : a_(std::move(a)), b_(std::move(b)) {
    p = a_.prime();
    log_order = a_.log_order() + b_.log_order();
    order = a_.order() * b_.order();
    const auto nb = static_cast<ElementId>(b_.order());
    for (ElementId g : a_.generators()) generators.push_back(g * nb);
    for (ElementId h : b_.generators()) generators.push_back(h);
  }

  ElementId multiply(ElementId x, ElementId y) const override {
    const auto nb = static_cast<ElementId>(b_.order());
    return a_.impl().multiply(x / nb, y / nb) * nb + b_.impl().multiply(x % nb, y % nb);
  }
  ElementId invert(ElementId x) const override {
    const auto nb = static_cast<ElementId>(b_.order());
    return a_.impl().invert(x / nb) * nb + b_.impl().invert(x % nb);
  }
  Realization realization() const override { return Realization::Product; }

  const ConcreteGroup& left() const { return a_; }
  const ConcreteGroup& right() const { return b_; }

 private:
  ConcreteGroup a_;
  ConcreteGroup b_;
};

}  // namespace

ElementId ConcreteGroup::power(ElementId a, std::uint64_t k) const {
  check(a);
  ElementId result = identity();
  ElementId base = a;
  while (k > 0) {
    if (k & 1) result = impl_->multiply(result, base);
    base = impl_->multiply(base, base);
    k >>= 1;
  }
  return result;
}

ElementId ConcreteGroup::conjugate(ElementId a, ElementId by) const {
  check(a);
  check(by);
  return impl_->multiply(impl_->multiply(impl_->invert(by), a), by);
}

ElementId ConcreteGroup::commutator(ElementId a, ElementId b) const {
  check(a);
  check(b);
  const ElementId ab = impl_->multiply(a, b);
  const ElementId ba = impl_->multiply(b, a);
  return impl_->multiply(impl_->invert(ba), ab);
}

std::uint64_t ConcreteGroup::element_order(ElementId a) const {
  check(a);
  std::uint64_t ord = 1;
  ElementId x = a;
  while (x != identity()) {
    x = power(x, prime());
    ord *= prime();
    if (ord > order()) throw GroupError("element order exceeds group order");
  }
  return ord;
}

std::uint64_t ConcreteGroup::exponent() const {
  std::uint64_t e = 1;
  for (ElementId x = 0; x < order(); ++x) {
    // x^e == 1 already means ord(x) divides e.
    if (power(x, e) == identity()) continue;
    e = std::max(e, element_order(x));
  }
  return e;
}

std::vector<ElementId> ConcreteGroup::enumerate() const {
  std::vector<ElementId> all(order());
  for (ElementId x = 0; x < order(); ++x) all[x] = x;
  return all;
}

const PcPresentation* ConcreteGroup::presentation() const {
  if (auto* pg = dynamic_cast<const PresentationGroupImpl*>(impl_.get())) return &pg->presentation();
  return nullptr;
}

std::optional<std::pair<ConcreteGroup, ConcreteGroup>> ConcreteGroup::factors() const {
  if (auto* pg = dynamic_cast<const ProductGroupImpl*>(impl_.get()))
    return std::make_pair(pg->left(), pg->right());
  return std::nullopt;
}

ConcreteGroup presentation_group(const PcPresentation& pres, std::uint64_t order_cap) {
  check_order_cap(checked_pow(pres.prime(), pres.rank()), order_cap);
  return ConcreteGroup(std::make_shared<PresentationGroupImpl>(pres));
}

ElementId element_of(const ConcreteGroup& g, std::span<const Residue> word) {
  const PcPresentation* pres = g.presentation();
  if (!pres) throw GroupError("element_of needs a presentation-backed group");
  if (word.size() != pres->rank()) throw GroupError("word length does not match rank");
  for (Residue r : word)
    if (r >= pres->prime()) throw GroupError("exponent out of range");
  return static_cast<ElementId>(rank_of(word, pres->prime()));
}

ExponentVector word_of(const ConcreteGroup& g, ElementId a) {
  const PcPresentation* pres = g.presentation();
  if (!pres) throw GroupError("word_of needs a presentation-backed group");
  g.check(a);
  ExponentVector v(pres->rank());
  unrank(a, pres->prime(), v);
  return v;
}

ConcreteGroup direct_product(const ConcreteGroup& a, const ConcreteGroup& b,
                             std::uint64_t order_cap) {
  if (a.prime() != b.prime())
    throw GroupError("direct product of groups over different primes " + std::to_string(a.prime()) +
                     " and " + std::to_string(b.prime()));
  check_order_cap(a.order() * b.order(), order_cap);
  return ConcreteGroup(std::make_shared<ProductGroupImpl>(a, b));
}

ElementId product_element(const ConcreteGroup& product, ElementId a, ElementId b) {
  auto f = product.factors();
  if (!f) throw GroupError("not a product-backed group");
  f->first.check(a);
  f->second.check(b);
  return a * static_cast<ElementId>(f->second.order()) + b;
}

std::pair<ElementId, ElementId> product_components(const ConcreteGroup& product, ElementId x) {
  auto f = product.factors();
  if (!f) throw GroupError("not a product-backed group");
  product.check(x);
  const auto nb = static_cast<ElementId>(f->second.order());
  return {x / nb, x % nb};
}

PcPresentation direct_product_presentation(const PcPresentation& a, const PcPresentation& b) {
  if (a.prime() != b.prime()) throw GroupError("direct product of groups over different primes");
  const std::size_t na = a.rank(), nb = b.rank(), n = na + nb;
  PcPresentation out(a.prime(), n);
  auto embed = [&](const ExponentVector& w, std::size_t offset) {
    ExponentVector v(n, 0);
    for (std::size_t k = 0; k < w.size(); ++k) v[offset + k] = w[k];
    return v;
  };
  for (std::size_t i = 0; i < na; ++i) {
    out.set_power(i, embed(a.power(i), 0));
    for (std::size_t j = i + 1; j < na; ++j) out.set_conjugate(i, j, embed(a.conjugate(i, j), 0));
  }
  for (std::size_t i = 0; i < nb; ++i) {
    out.set_power(na + i, embed(b.power(i), na));
    for (std::size_t j = i + 1; j < nb; ++j)
      out.set_conjugate(na + i, na + j, embed(b.conjugate(i, j), na));
  }
  if (!a.labels().empty() && !b.labels().empty()) {
    auto labels = a.labels();
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    out.set_labels(std::move(labels));
  }
  return out;
}

}  // namespace pgrp
