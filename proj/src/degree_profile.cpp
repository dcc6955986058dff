#include "pgrp/degree_profile.hpp"

#include <sstream>
#include <stdexcept>

namespace pgrp {

std::uint64_t DegreeProfile::class_count() const {
  std::uint64_t n = 0;
  for (const auto& [e, m] : multiplicity) n += m;
  return n;
}

std::uint64_t DegreeProfile::sum_of_squares() const {
  std::uint64_t n = 0;
  for (const auto& [e, m] : multiplicity) {
    std::uint64_t d2 = 1;
    for (int k = 0; k < 2 * e; ++k) d2 *= p;
    n += m * d2;
  }
  return n;
}

DegreeProfile DegreeProfile::minus(const DegreeProfile& sub) const {
  if (sub.p != p) throw std::invalid_argument("degree profiles over different primes");
  DegreeProfile out = *this;
  for (const auto& [e, m] : sub.multiplicity) {
    auto it = out.multiplicity.find(e);
    if (it == out.multiplicity.end() || it->second < m)
      throw std::invalid_argument("degree profile is not a sub-multiset");
    it->second -= m;
    if (it->second == 0) out.multiplicity.erase(it);
  }
  return out;
}

DegreeProfile DegreeProfile::convolve(const DegreeProfile& other) const {
  if (other.p != p) throw std::invalid_argument("degree profiles over different primes");
  DegreeProfile out;
  out.p = p;
  for (const auto& [e1, m1] : multiplicity)
    for (const auto& [e2, m2] : other.multiplicity) out.multiplicity[e1 + e2] += m1 * m2;
  return out;
}

std::string DegreeProfile::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, m] : multiplicity) {
    std::uint64_t d = 1;
    for (int k = 0; k < e; ++k) d *= p;
    os << (first ? "" : " ") << d << "^" << m;
    first = false;
  }
  return os.str();
}

}  // namespace pgrp
