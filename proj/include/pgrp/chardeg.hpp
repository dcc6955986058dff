#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pgrp/degree_profile.hpp"
#include "pgrp/group.hpp"
#include "pgrp/structure.hpp"

namespace pgrp {

class ClassCapExceeded : public GroupError {
 public:
  using GroupError::GroupError;
};

class ModulusSearchFailed : public GroupError {
 public:
  using GroupError::GroupError;
};

class DegreeComputationError : public GroupError {
 public:
  using GroupError::GroupError;
};

struct DixonOptions {
  std::size_t class_cap = 512;
  /// Fixed modulus; must be prime, exceed |G| and be 1 mod exp(G).
  std::optional<std::uint64_t> modulus;
  std::uint64_t modulus_search_limit = 1'000'000;
};

/// Smallest prime q > |G| with q = 1 mod exp(G), scanning at most `limit`
/// candidates.
std::uint64_t dixon_modulus(std::uint64_t order, std::uint64_t exponent, std::uint64_t limit);

/// Class algebra constants a_{ijk} = #{(x,y) in C_i x C_j : xy = z_k} for a
/// fixed z_k in C_k. Matrices are built on demand in sparse column form.
class ClassAlgebra {
 public:
  ClassAlgebra(ConcreteGroup g, const ConjugacyData& conj);

  std::size_t class_count() const { return conj_->count(); }
  const ConjugacyData& conjugacy() const { return *conj_; }
  /// Index of the class of inverses.
  std::size_t inverse_class(std::size_t j) const { return inverse_[j]; }

  /// M_i in compressed row form: row j lists (k, a_{ijk}) for nonzero
  /// constants, k ascending.
  struct Matrix {
    std::vector<std::uint32_t> offsets;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;

    std::span<const std::pair<std::uint32_t, std::uint32_t>> row(std::size_t j) const {
      return {entries.data() + offsets[j], offsets[j + 1] - offsets[j]};
    }
  };
  Matrix matrix(std::size_t i) const;
  std::uint64_t constant(std::size_t i, std::size_t j, std::size_t k) const;

 private:
  ConcreteGroup g_;
  const ConjugacyData* conj_;
  std::vector<std::size_t> inverse_;
};

/// Character degrees by Dixon-Schneider over F_q. Throws ClassCapExceeded,
/// ModulusSearchFailed or DegreeComputationError.
DegreeProfile dixon_degrees(const ConcreteGroup& g, const ConjugacyData& conj,
                            const DixonOptions& opts = {});
DegreeProfile dixon_degrees(const ConcreteGroup& g, const DixonOptions& opts = {});

/// Degrees of a class-2 group of exponent p (p odd) from the ranks of the
/// commutator forms lambda o [.,.] on G/G'. Throws GroupError if the
/// preconditions fail.
DegreeProfile class2_degrees(const ConcreteGroup& g);
bool class2_applicable(const ConcreteGroup& g, const SeriesData& series);

enum class DegreeMethod { Auto, Dixon, Class2 };

/// Degree multiset with the usual invariants checked: sum m_e p^{2e} = |G|,
/// sum m_e = k(G), m_0 = [G:G'] and p^{2e} | [G:Z(G)].
DegreeProfile degree_profile(const ConcreteGroup& g, DegreeMethod method = DegreeMethod::Auto,
                             const DixonOptions& opts = {});

/// Throws DegreeComputationError naming the first failed invariant.
void check_profile_invariants(const DegreeProfile& profile, const ConcreteGroup& g,
                              const SeriesData& series, const ConjugacyData& conj);

struct BreadthDegreeType {
  int breadth;
  int rexp;
};
BreadthDegreeType breadth_degree_type(const ConcreteGroup& g, const DixonOptions& opts = {});

}  // namespace pgrp
