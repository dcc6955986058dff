#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace pgrp {

/// Multiset of irreducible character degrees p^e, keyed by e.
struct DegreeProfile {
  std::uint32_t p = 2;
  std::map<int, std::uint64_t> multiplicity;

  /// rexp: exponent of the largest degree.
  int max_exponent() const { return multiplicity.empty() ? 0 : multiplicity.rbegin()->first; }
  std::uint64_t class_count() const;
  /// Sum of m_e * p^{2e}, which must equal |G|.
  std::uint64_t sum_of_squares() const;
  std::uint64_t count(int e) const {
    auto it = multiplicity.find(e);
    return it == multiplicity.end() ? 0 : it->second;
  }

  /// Characters of this profile not present in `sub` (multiset difference).
  /// Throws if `sub` is not a sub-multiset.
  DegreeProfile minus(const DegreeProfile& sub) const;
  /// Profile of a direct product.
  DegreeProfile convolve(const DegreeProfile& other) const;

  std::string to_string() const;

  friend bool operator==(const DegreeProfile&, const DegreeProfile&) = default;
};

}  // namespace pgrp
