#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pgrp/chardeg.hpp"
#include "pgrp/combinators.hpp"
#include "pgrp/degree_profile.hpp"
#include "pgrp/group.hpp"
#include "pgrp/structure.hpp"
#include "pgrp/subgroup.hpp"

namespace pgrp {

enum class Verdict { Pass, Fail, Vacuous };
const char* to_string(Verdict v);

/// One audited claim. Orders and indices are written as p^e.
struct Finding {
  std::string check;
  Verdict verdict = Verdict::Pass;
  std::string left;
  std::string right;
  std::string witness;
};

struct ReportRow {
  std::string group_id;
  std::string check;
  Verdict verdict = Verdict::Pass;
  std::string left;
  std::string right;
  std::string witness;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

bool all_pass(const std::vector<Finding>& findings);

// ---------------------------------------------------------------- bounds

/// 1 for 2 <= b <= floor(2d/3 + 1), 2 up to 2d - 1, 3 beyond; 0 for b < 2.
int bound_regime(int b, int d);
std::int64_t theorem_exponent(int b, int d);
/// Regime recursion from sigma(1,d) = p^{2d+1}.
std::int64_t recursive_exponent(int b, int d);

struct RefinedExponent {
  int regime;
  Rational value;     // closed form evaluated exactly
  bool applies;       // (b,d) lies in the regime
  bool integral;
  bool matches;       // applies, integral and equal to the recursion
};

struct BoundReport {
  std::uint32_t p = 2;
  int b = 0;
  int d = 0;
  std::int64_t theorem_exponent = 0;
  std::int64_t recursive_exponent = 0;
  std::array<RefinedExponent, 3> refined{};
  std::int64_t lower_exponent = 0;
  bool recursive_within_theorem = true;
  bool lower_within_theorem = true;
};

/// b = 0 or d = 0 gives the abelian case with every exponent 0.
BoundReport sigma_bounds(std::uint32_t p, int b, int d);

// ---------------------------------------------------------------- audits

/// Series, classes and stem data of one group, computed once.
class GroupContext {
 public:
  explicit GroupContext(ConcreteGroup g);

  const ConcreteGroup& group() const { return g_; }
  const SeriesData& series() const { return series_; }
  const ConjugacyData& conj() const { return conj_; }
  const StemData& stem() const { return stem_; }
  std::uint32_t p() const { return g_.prime(); }
  int breadth() const { return conj_.breadth; }

  /// Computed on first use; not thread-safe.
  const DegreeProfile& degrees(const DixonOptions& opts) const;
  int rexp(const DixonOptions& opts) const { return degrees(opts).max_exponent(); }

  /// Class representatives of maximal breadth with their centralizers and
  /// commutator sets [x,G] (as membership masks).
  struct TopClass {
    ElementId rep;
    SubgroupSet centralizer;
    std::vector<bool> commutators;
  };
  const std::vector<TopClass>& top_classes() const;

 private:
  ConcreteGroup g_;
  SeriesData series_;
  ConjugacyData conj_;
  StemData stem_;
  mutable std::optional<DegreeProfile> degrees_;
  mutable std::optional<std::vector<TopClass>> top_;
};

/// g in Z_2(G) with breadth 1 and a breadth-1 element x not commuting with
/// g, least ids first. Returns (g, x).
std::optional<std::pair<ElementId, ElementId>> breadth_one_witness(const GroupContext& ctx);

struct StemReduction {
  ElementId witness = 0;  // g in H
  int b_star = 0;
  SubgroupSet commutators;  // [g,H]
  Quotient quotient;        // G = H/N, kernel N
  ElementId image = 0;      // gN
  std::shared_ptr<const GroupContext> reduced;
  std::vector<Finding> checks;
};

/// Throws GroupError if H is abelian or not stem.
StemReduction stem_reduction(const GroupContext& h);

/// Throws GroupError unless [g,G] is central of order p.
std::vector<Finding> lemma_central_quotient_audit(const GroupContext& ctx, ElementId g);

/// Item (1) for every maximal M containing Z(G); independent of N.
std::vector<Finding> lemma_maximal_item1_audit(const GroupContext& ctx);
/// Items (2)-(5) and the stem consequences for one central N of order p.
std::vector<Finding> lemma_maximal_audit(const GroupContext& ctx, const SubgroupSet& n,
                                         const DixonOptions& opts);
/// Central subgroups of order p, ordered by least nontrivial member.
std::vector<SubgroupSet> central_subgroups_of_order_p(const GroupContext& ctx);

std::vector<Finding> corollary_b1_audit(const GroupContext& ctx);

enum class PropositionCase { One, Two, ThreeA, ThreeB };
const char* to_string(PropositionCase c);

struct CaseReport {
  int k = 0;  // log |H|
  int b = 0;
  int d = 0;
  ElementId witness = 0;  // in H
  int b_star = 0;
  int log_g = 0;          // log |G|
  ElementId g = 0;        // breadth-1 element of Z_2(G)
  SubgroupSet n, m, c, d_sub;
  int t = 0;
  int log_c_over_z = 0;   // [C:Z(G)]
  int log_g_over_d = 0;   // [G:D]
  int log_missing = 0;    // [Z(M/N)(M/N)':(M/N)']
  DegreeProfile over_n;
  PropositionCase kase = PropositionCase::One;
  int factor = 0;
  int log_exhibited = 0;  // order of the smaller stem group exhibited
  std::vector<Finding> checks;
};

/// Throws GroupError unless H is stem with breadth at least 2.
CaseReport proposition_classify(const GroupContext& h, const DixonOptions& opts);

// ---------------------------------------------------------------- catalog

struct CatalogGroup {
  std::string id;
  std::string family;  // empty for groups read from files
  std::uint32_t p = 2;
  std::vector<std::pair<std::string, int>> params;
  ConcreteGroup group;

  std::optional<int> param(const std::string& name) const;
};

enum class Suite { Lemmas, Proposition, Bounds, Properties };
const char* to_string(Suite s);
std::optional<Suite> parse_suite(const std::string& name);

struct SuiteOptions {
  unsigned jobs = 1;
  DixonOptions dixon = [] {
    DixonOptions o;
    o.class_cap = 4096;
    return o;
  }();
  /// Lemma, oracle and fingerprint audits skip groups larger than this.
  std::uint64_t small_order_limit = 729;
};

/// Rows sorted by group id, then check name.
std::vector<ReportRow> run_suite(Suite suite, const std::vector<CatalogGroup>& catalog,
                                 const SuiteOptions& opts);
void sort_rows(std::vector<ReportRow>& rows);

}  // namespace pgrp
