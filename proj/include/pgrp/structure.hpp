#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "pgrp/degree_profile.hpp"
#include "pgrp/group.hpp"
#include "pgrp/subgroup.hpp"

namespace pgrp {

using Rational = boost::rational<std::int64_t>;

struct ConjugacyClass {
  ElementId representative;  // least id in the class
  std::uint64_t size;
  int breadth;
};

struct ConjugacyData {
  std::uint32_t p = 2;
  std::vector<ConjugacyClass> classes;  // ordered by representative
  std::vector<std::uint32_t> class_of;
  int breadth = 0;

  std::size_t count() const { return classes.size(); }
  int breadth_of(ElementId x) const { return classes[class_of[x]].breadth; }
  std::span<const ElementId> members(std::size_t c) const {
    return {members_.data() + offsets_[c], offsets_[c + 1] - offsets_[c]};
  }

  std::vector<ElementId> members_;
  std::vector<std::size_t> offsets_;
};

/// Orbits under conjugation by the generating set.
ConjugacyData conjugacy_data(const ConcreteGroup& g);

struct SeriesData {
  std::vector<SubgroupSet> lower;  // gamma_1 = G, ..., trivial
  std::vector<SubgroupSet> upper;  // Z_0 = 1, ..., G
  SubgroupSet derived;
  SubgroupSet frattini;
  int nilpotency_class = 0;

  const SubgroupSet& center() const { return upper.size() > 1 ? upper[1] : upper[0]; }
  /// Z_i, saturating at G.
  const SubgroupSet& upper_term(std::size_t i) const {
    return upper[std::min(i, upper.size() - 1)];
  }
};

SeriesData central_series(const ConcreteGroup& g);

/// Subgroup generated by elements of breadth at most i.
SubgroupSet breadth_subgroup(const ConcreteGroup& g, const ConjugacyData& conj, int i);
SubgroupSet breadth_subgroup(const ConcreteGroup& g, int i);

struct StemData {
  bool is_stem = false;
  int log_stem_order = 0;  // [G:Z(G)] * |Z(G) n G'| as a p-exponent
};

StemData stem_data(const ConcreteGroup& g);
StemData stem_data(const ConcreteGroup& g, const SeriesData& series);

/// Element of Z_2(G) \ Z(G) of least breadth (least id among minimizers).
struct SecondCenterWitness {
  ElementId element;
  int breadth;
};
SecondCenterWitness min_breadth_second_center(const ConcreteGroup& g);
SecondCenterWitness min_breadth_second_center(const ConcreteGroup& g, const SeriesData& series,
                                              const ConjugacyData& conj);

/// Maximal subgroups as preimages of hyperplanes of G/Frat(G), ordered by the
/// normalized hyperplane coefficient vectors.
std::vector<SubgroupSet> maximal_subgroups(const ConcreteGroup& g, const SeriesData& series);
std::vector<SubgroupSet> maximal_subgroups(const ConcreteGroup& g);

/// Necessary invariants of the isoclinism class. Counts are normalized by |G|
/// so that every field is unchanged under G -> G x A with A abelian.
struct IsoclinismFingerprint {
  std::uint32_t p = 2;
  int log_index_center = 0;
  int log_derived = 0;
  int log_center_meet_derived = 0;
  std::map<int, Rational> class_breadth_ratio;  // breadth k -> #classes of size p^k / |G|
  int breadth = 0;
  std::vector<int> lower_factor_logs;  // log_p |gamma_i / gamma_{i+1}|, i >= 2
  Rational commuting_ratio;            // cn(G)/|G|
  int log_stem_order = 0;
  std::optional<std::map<int, Rational>> degree_ratio;  // e -> m_e / |G|
  std::optional<int> rexp;

  friend bool operator==(const IsoclinismFingerprint&, const IsoclinismFingerprint&) = default;

  /// Field-wise differences against another fingerprint (empty when equal).
  std::vector<std::string> differences(const IsoclinismFingerprint& other) const;
  std::string serialize() const;
  std::uint64_t hash() const;
};

IsoclinismFingerprint isoclinism_fingerprint(const ConcreteGroup& g,
                                             const DegreeProfile* degrees = nullptr);
IsoclinismFingerprint isoclinism_fingerprint(const ConcreteGroup& g, const SeriesData& series,
                                             const ConjugacyData& conj,
                                             const DegreeProfile* degrees);

std::string to_string(const Rational& r);

}  // namespace pgrp
