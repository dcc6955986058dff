#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pgrp/presentation.hpp"

namespace pgrp {

using ElementId = std::uint32_t;

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OrderCapExceeded : public GroupError {
 public:
  using GroupError::GroupError;
};

/// Refusal threshold for enumerable groups. Defaults to 2^22 elements and can
/// be raised with the PGRP_ORDER_CAP environment variable or explicitly.
std::uint64_t default_order_cap();
void check_order_cap(std::uint64_t order, std::uint64_t cap);

enum class Realization { Presentation, Quotient, Product, Subgroup };

class GroupImpl {
 public:
  virtual ~GroupImpl() = default;
  virtual ElementId multiply(ElementId a, ElementId b) const = 0;
  virtual ElementId invert(ElementId a) const = 0;
  virtual Realization realization() const = 0;

  std::uint32_t p = 0;
  int log_order = 0;
  std::uint64_t order = 1;
  std::vector<ElementId> generators;
};

/// An enumerable finite p-group with element ids 0..|G|-1, id 0 the identity.
/// Cheap to copy; the underlying realization is shared and immutable.
class ConcreteGroup {
 public:
  explicit ConcreteGroup(std::shared_ptr<const GroupImpl> impl) : impl_(std::move(impl)) {}

  std::uint32_t prime() const { return impl_->p; }
  std::uint64_t order() const { return impl_->order; }
  int log_order() const { return impl_->log_order; }
  static constexpr ElementId identity() { return 0; }
  Realization realization() const { return impl_->realization(); }

  /// Generating set used by orbit and closure algorithms.
  const std::vector<ElementId>& generators() const { return impl_->generators; }

  ElementId multiply(ElementId a, ElementId b) const {
    check(a);
    check(b);
    return impl_->multiply(a, b);
  }
  ElementId invert(ElementId a) const {
    check(a);
    return impl_->invert(a);
  }
  ElementId power(ElementId a, std::uint64_t k) const;
  /// b^{-1} a b
  ElementId conjugate(ElementId a, ElementId by) const;
  /// [a,b] = a^{-1} b^{-1} a b
  ElementId commutator(ElementId a, ElementId b) const;
  /// Least p^k with a^{p^k} = 1.
  std::uint64_t element_order(ElementId a) const;
  /// Maximal element order.
  std::uint64_t exponent() const;
  std::vector<ElementId> enumerate() const;

  void check(ElementId a) const {
    if (a >= impl_->order)
      throw GroupError("element id " + std::to_string(a) + " out of range for group of order " +
                       std::to_string(impl_->order));
  }

  const GroupImpl& impl() const { return *impl_; }
  const std::shared_ptr<const GroupImpl>& shared_impl() const { return impl_; }

  /// Presentation-backed groups only.
  const PcPresentation* presentation() const;
  /// Product-backed groups only: the two factors.
  std::optional<std::pair<ConcreteGroup, ConcreteGroup>> factors() const;

 private:
  std::shared_ptr<const GroupImpl> impl_;
};

ConcreteGroup presentation_group(const PcPresentation& pres,
                                 std::uint64_t order_cap = default_order_cap());

/// Element id of a normal word, and back.
ElementId element_of(const ConcreteGroup& g, std::span<const Residue> word);
ExponentVector word_of(const ConcreteGroup& g, ElementId a);

/// A x B with id(a,b) = a*|B| + b.
ConcreteGroup direct_product(const ConcreteGroup& a, const ConcreteGroup& b,
                             std::uint64_t order_cap = default_order_cap());
ElementId product_element(const ConcreteGroup& product, ElementId a, ElementId b);
std::pair<ElementId, ElementId> product_components(const ConcreteGroup& product, ElementId x);

/// Block presentation of A x B (generators of A first).
PcPresentation direct_product_presentation(const PcPresentation& a, const PcPresentation& b);

}  // namespace pgrp
