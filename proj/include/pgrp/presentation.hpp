#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pgrp {

using Residue = std::uint32_t;
using ExponentVector = std::vector<Residue>;

inline constexpr std::size_t kMaxRank = 40;

class PresentationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A factor g_i^e of a word. Generator indices are 0-based here; the file
/// format and the mathematical notation count from 1.
struct Letter {
  std::size_t generator;
  std::int64_t exponent;
};

/// Power-commutator presentation of a group of order p^n.
///
/// Generator g_i has relative order p. The relation g_i^p is a normal word in
/// g_{i+1},...,g_n, and for i < j the conjugate g_j^{g_i} = g_i^{-1} g_j g_i is
/// a normal word in g_j,...,g_n. Unset relations are trivial (g_i^p = 1 and
/// g_j^{g_i} = g_j).
class PcPresentation {
 public:
  PcPresentation(std::uint32_t p, std::size_t rank);

  std::uint32_t prime() const { return p_; }
  std::size_t rank() const { return rank_; }

  const ExponentVector& power(std::size_t i) const;
  /// Normal word of g_j^{g_i}, i < j.
  const ExponentVector& conjugate(std::size_t i, std::size_t j) const;
  bool conjugate_is_trivial(std::size_t i, std::size_t j) const;

  void set_power(std::size_t i, ExponentVector word);
  void set_conjugate(std::size_t i, std::size_t j, ExponentVector word);

  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels);

  ExponentVector unit(std::size_t i, Residue e = 1) const;

  friend bool operator==(const PcPresentation&, const PcPresentation&) = default;

 private:
  void check_word(const ExponentVector& word, std::size_t first_allowed,
                  const std::string& what) const;

  std::uint32_t p_;
  std::size_t rank_;
  std::vector<ExponentVector> power_;
  std::vector<ExponentVector> conj_;  // row-major rank x rank, used for i < j
  std::vector<std::string> labels_;
};

/// Collection from the left over a fixed presentation. Immutable after
/// construction and safe to share between threads.
class Collector {
 public:
  explicit Collector(const PcPresentation& pres);

  std::uint32_t prime() const { return p_; }
  std::size_t rank() const { return rank_; }

  /// acc <- acc * rhs, both normal words.
  void multiply(std::span<Residue> acc, std::span<const Residue> rhs) const;
  /// acc <- acc * g_j^e, e >= 0.
  void multiply_generator(std::span<Residue> acc, std::size_t j, std::uint64_t e) const;
  void invert(std::span<const Residue> a, std::span<Residue> out) const;

  /// Normal form of an arbitrary word.
  ExponentVector collect(std::span<const Letter> word) const;

 private:
  struct Term {
    std::uint32_t gen;
    std::uint64_t exp;
  };

  void run(std::span<Residue> a, std::vector<Term>& stack) const;
  void push_word(std::vector<Term>& stack, const std::vector<Term>& word) const;

  std::uint32_t p_;
  std::size_t rank_;
  std::vector<std::vector<Term>> power_terms_;
  std::vector<std::vector<Term>> conj_terms_;
  std::vector<bool> conj_trivial_;
  std::vector<ExponentVector> generator_inverse_;
};

/// Normal form of `word` in the group defined by `pres`.
ExponentVector collect_normal_form(const PcPresentation& pres, std::span<const Letter> word);

struct ConsistencyViolation {
  enum class Kind { Overlap, PowerLeft, PowerRight, PowerSelf };
  Kind kind;
  // 0-based generator indices; unused ones are equal to rank.
  std::size_t k;
  std::size_t j;
  std::size_t i;
  ExponentVector lhs;
  ExponentVector rhs;

  std::string describe() const;
};

/// Runs the overlap tests in the order: all (k>j>i) triples, then
/// (g_j^p)g_i, g_j(g_i^p) for j>i, then g_i^p g_i. Returns the first failure.
std::optional<ConsistencyViolation> check_consistency(const PcPresentation& pres);

/// Mixed-radix rank with generator 1 as the most significant digit.
std::uint64_t rank_of(std::span<const Residue> v, std::uint32_t p);
void unrank(std::uint64_t id, std::uint32_t p, std::span<Residue> out);

}  // namespace pgrp
