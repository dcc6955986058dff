#include "pgrp/presentation.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace pgrp {

PcPresentation::PcPresentation(std::uint32_t p, std::size_t rank) : p_(p), rank_(rank) {
  if (p < 2) throw PresentationError("prime must be at least 2");
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) throw PresentationError("p = " + std::to_string(p) + " is not prime");
  if (rank > kMaxRank) throw PresentationError("rank exceeds " + std::to_string(kMaxRank));
  power_.assign(rank, ExponentVector(rank, 0));
  conj_.assign(rank * rank, ExponentVector(rank, 0));
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = i + 1; j < rank; ++j) conj_[i * rank + j][j] = 1;
}

const ExponentVector& PcPresentation::power(std::size_t i) const {
  if (i >= rank_) throw PresentationError("generator index out of range");
  return power_[i];
}

const ExponentVector& PcPresentation::conjugate(std::size_t i, std::size_t j) const {
  if (i >= j || j >= rank_) throw PresentationError("conjugate relation needs i < j < rank");
  return conj_[i * rank_ + j];
}

bool PcPresentation::conjugate_is_trivial(std::size_t i, std::size_t j) const {
  const auto& w = conjugate(i, j);
  for (std::size_t k = 0; k < rank_; ++k)
    if (w[k] != (k == j ? 1u : 0u)) return false;
  return true;
}

void PcPresentation::check_word(const ExponentVector& word, std::size_t first_allowed,
                                const std::string& what) const {
  if (word.size() != rank_)
    throw PresentationError(what + ": expected " + std::to_string(rank_) + " entries, got " +
                            std::to_string(word.size()));
  for (std::size_t k = 0; k < rank_; ++k) {
    if (word[k] >= p_)
      throw PresentationError(what + "[" + std::to_string(k) + "]: exponent " +
                              std::to_string(word[k]) + " outside [0," + std::to_string(p_) + ")");
    if (k < first_allowed && word[k] != 0)
      throw PresentationError(what + "[" + std::to_string(k) +
                              "]: must be zero (relation may only involve later generators)");
  }
}

void PcPresentation::set_power(std::size_t i, ExponentVector word) {
  if (i >= rank_) throw PresentationError("power: generator index out of range");
  check_word(word, i + 1, "power[" + std::to_string(i + 1) + "]");
  power_[i] = std::move(word);
}

void PcPresentation::set_conjugate(std::size_t i, std::size_t j, ExponentVector word) {
  if (i >= j || j >= rank_) throw PresentationError("conj: relation needs 1 <= i < j <= rank");
  check_word(word, j, "conj[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]");
  conj_[i * rank_ + j] = std::move(word);
}

void PcPresentation::set_labels(std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != rank_)
    throw PresentationError("labels: expected " + std::to_string(rank_) + " names");
  labels_ = std::move(labels);
}

ExponentVector PcPresentation::unit(std::size_t i, Residue e) const {
  ExponentVector v(rank_, 0);
  v.at(i) = e % p_;
  return v;
}

// ---------------------------------------------------------------------------

Collector::Collector(const PcPresentation& pres) : p_(pres.prime()), rank_(pres.rank()) {
  auto terms = [](const ExponentVector& w) {
    std::vector<Term> out;
    for (std::size_t k = 0; k < w.size(); ++k)
      if (w[k] != 0) out.push_back({static_cast<std::uint32_t>(k), w[k]});
    return out;
  };
  power_terms_.resize(rank_);
  conj_terms_.resize(rank_ * rank_);
  conj_trivial_.assign(rank_ * rank_, true);
  for (std::size_t i = 0; i < rank_; ++i) {
    power_terms_[i] = terms(pres.power(i));
    for (std::size_t j = i + 1; j < rank_; ++j) {
      conj_terms_[i * rank_ + j] = terms(pres.conjugate(i, j));
      conj_trivial_[i * rank_ + j] = pres.conjugate_is_trivial(i, j);
    }
  }
  generator_inverse_.resize(rank_);
  for (std::size_t i = 0; i < rank_; ++i) {
    ExponentVector g = pres.unit(i);
    generator_inverse_[i].assign(rank_, 0);
    invert(g, generator_inverse_[i]);
  }
}

void Collector::push_word(std::vector<Term>& stack, const std::vector<Term>& word) const {
  for (auto it = word.rbegin(); it != word.rend(); ++it) stack.push_back(*it);
}

// Each popped term g_j^e is multiplied onto the right of the normal word `a`.
// If every entry of `a` after j is zero this is an exponent update; otherwise
// one copy of g_j is moved past the tail, which is replaced by its conjugate
// under g_j and pushed back for collection.
void Collector::run(std::span<Residue> a, std::vector<Term>& stack) const {
  std::array<Residue, kMaxRank> tail{};
  while (!stack.empty()) {
    const Term t = stack.back();
    stack.pop_back();
    if (t.exp == 0) continue;
    const std::size_t j = t.gen;
    std::size_t last = rank_;
    for (std::size_t k = rank_; k-- > j + 1;)
      if (a[k] != 0) {
        last = k;
        break;
      }
    if (last == rank_) {
      std::uint64_t s = static_cast<std::uint64_t>(a[j]) + t.exp;
      a[j] = static_cast<Residue>(s % p_);
      for (std::uint64_t w = s / p_; w > 0; --w) push_word(stack, power_terms_[j]);
      continue;
    }
    if (t.exp > 1) stack.push_back({t.gen, t.exp - 1});
    for (std::size_t k = j + 1; k <= last; ++k) {
      tail[k] = a[k];
      a[k] = 0;
    }
    const bool wrap = (++a[j] == p_);
    if (wrap) a[j] = 0;
    for (std::size_t k = last + 1; k-- > j + 1;) {
      const Residue m = tail[k];
      if (m == 0) continue;
      if (conj_trivial_[j * rank_ + k]) {
        stack.push_back({static_cast<std::uint32_t>(k), m});
      } else {
        for (Residue r = 0; r < m; ++r) push_word(stack, conj_terms_[j * rank_ + k]);
      }
    }
    if (wrap) push_word(stack, power_terms_[j]);
  }
}

void Collector::multiply(std::span<Residue> acc, std::span<const Residue> rhs) const {
  thread_local std::vector<Term> stack;
  stack.clear();
  for (std::size_t k = rank_; k-- > 0;)
    if (rhs[k] != 0) stack.push_back({static_cast<std::uint32_t>(k), rhs[k]});
  run(acc, stack);
}

void Collector::multiply_generator(std::span<Residue> acc, std::size_t j, std::uint64_t e) const {
  thread_local std::vector<Term> stack;
  stack.clear();
  stack.push_back({static_cast<std::uint32_t>(j), e});
  run(acc, stack);
}

// Builds the inverse x = g_1^{e_1}...g_n^{e_n} digit by digit: after step i
// the running product a*g_1^{e_1}...g_i^{e_i} vanishes in positions <= i.
void Collector::invert(std::span<const Residue> a, std::span<Residue> out) const {
  std::array<Residue, kMaxRank> r{};
  std::copy(a.begin(), a.end(), r.begin());
  std::span<Residue> rs(r.data(), rank_);
  for (std::size_t i = 0; i < rank_; ++i) {
    const Residue e = (p_ - r[i]) % p_;
    out[i] = e;
    if (e != 0) multiply_generator(rs, i, e);
  }
}

ExponentVector Collector::collect(std::span<const Letter> word) const {
  ExponentVector a(rank_, 0);
  for (const Letter& l : word) {
    if (l.generator >= rank_)
      throw PresentationError("word letter refers to generator " + std::to_string(l.generator + 1) +
                              " but rank is " + std::to_string(rank_));
    if (l.exponent >= 0) {
      multiply_generator(a, l.generator, static_cast<std::uint64_t>(l.exponent));
    } else {
      for (std::int64_t r = 0; r < -l.exponent; ++r) multiply(a, generator_inverse_[l.generator]);
    }
  }
  return a;
}

ExponentVector collect_normal_form(const PcPresentation& pres, std::span<const Letter> word) {
  return Collector(pres).collect(word);
}

// ---------------------------------------------------------------------------

std::string ConsistencyViolation::describe() const {
  std::ostringstream os;
  auto word = [](const ExponentVector& v) {
    std::ostringstream w;
    w << '(';
    for (std::size_t t = 0; t < v.size(); ++t) w << (t ? "," : "") << v[t];
    w << ')';
    return w.str();
  };
  switch (kind) {
    case Kind::Overlap:
      os << "g" << k + 1 << "(g" << j + 1 << " g" << i + 1 << ") != (g" << k + 1 << " g" << j + 1
         << ")g" << i + 1;
      break;
    case Kind::PowerLeft:
      os << "(g" << j + 1 << "^p)g" << i + 1 << " != g" << j + 1 << "^(p-1)(g" << j + 1 << " g"
         << i + 1 << ")";
      break;
    case Kind::PowerRight:
      os << "g" << j + 1 << "(g" << i + 1 << "^p) != (g" << j + 1 << " g" << i + 1 << ")g" << i + 1
         << "^(p-1)";
      break;
    case Kind::PowerSelf:
      os << "(g" << i + 1 << "^p)g" << i + 1 << " != g" << i + 1 << "(g" << i + 1 << "^p)";
      break;
  }
  os << ": " << word(lhs) << " vs " << word(rhs);
  return os.str();
}

std::optional<ConsistencyViolation> check_consistency(const PcPresentation& pres) {
  const Collector c(pres);
  const std::size_t n = pres.rank();
  const Residue p = pres.prime();
  auto mul = [&](ExponentVector a, const ExponentVector& b) {
    c.multiply(a, b);
    return a;
  };
  auto g = [&](std::size_t i) { return pres.unit(i); };

  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < j; ++i) {
        auto lhs = mul(g(k), mul(g(j), g(i)));
        auto rhs = mul(mul(g(k), g(j)), g(i));
        if (lhs != rhs)
          return ConsistencyViolation{ConsistencyViolation::Kind::Overlap, k, j, i, lhs, rhs};
      }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      auto lhs = mul(pres.power(j), g(i));
      auto rhs = mul(pres.unit(j, p - 1), mul(g(j), g(i)));
      if (lhs != rhs)
        return ConsistencyViolation{ConsistencyViolation::Kind::PowerLeft, n, j, i, lhs, rhs};
      lhs = mul(g(j), pres.power(i));
      rhs = mul(mul(g(j), g(i)), pres.unit(i, p - 1));
      if (lhs != rhs)
        return ConsistencyViolation{ConsistencyViolation::Kind::PowerRight, n, j, i, lhs, rhs};
    }
  for (std::size_t i = 0; i < n; ++i) {
    auto lhs = mul(pres.power(i), g(i));
    auto rhs = mul(g(i), pres.power(i));
    if (lhs != rhs)
      return ConsistencyViolation{ConsistencyViolation::Kind::PowerSelf, n, n, i, lhs, rhs};
  }
  return std::nullopt;
}

std::uint64_t rank_of(std::span<const Residue> v, std::uint32_t p) {
  std::uint64_t id = 0;
  for (Residue r : v) id = id * p + r;
  return id;
}

void unrank(std::uint64_t id, std::uint32_t p, std::span<Residue> out) {
  for (std::size_t k = out.size(); k-- > 0;) {
    out[k] = static_cast<Residue>(id % p);
    id /= p;
  }
}

}  // namespace pgrp
