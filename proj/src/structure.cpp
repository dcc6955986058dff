#include "pgrp/structure.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "pgrp/combinators.hpp"

namespace pgrp {

ConjugacyData conjugacy_data(const ConcreteGroup& g) {
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  ConjugacyData data;
  data.p = g.prime();
  data.class_of.assign(g.order(), kUnset);
  data.members_.reserve(g.order());
  data.offsets_.push_back(0);

  const auto& gens = g.generators();
  std::vector<ElementId> inv;
  for (ElementId s : gens) inv.push_back(g.invert(s));
  const GroupImpl& impl = g.impl();

  for (ElementId x = 0; x < g.order(); ++x) {
    if (data.class_of[x] != kUnset) continue;
    const auto c = static_cast<std::uint32_t>(data.classes.size());
    const std::size_t start = data.members_.size();
    data.class_of[x] = c;
    data.members_.push_back(x);
    for (std::size_t head = start; head < data.members_.size(); ++head) {
      const ElementId y = data.members_[head];
      for (std::size_t k = 0; k < gens.size(); ++k) {
        const ElementId z = impl.multiply(impl.multiply(inv[k], y), gens[k]);
        if (data.class_of[z] == kUnset) {
          data.class_of[z] = c;
          data.members_.push_back(z);
        }
      }
    }
    const std::uint64_t size = data.members_.size() - start;
    const int b = log_p(size, g.prime());
    data.classes.push_back({x, size, b});
    data.offsets_.push_back(data.members_.size());
    data.breadth = std::max(data.breadth, b);
  }
  return data;
}

SeriesData central_series(const ConcreteGroup& g) {
  SeriesData s;
  const SubgroupSet all = whole_group(g);
  s.lower.push_back(all);
  while (s.lower.back().order() > 1) {
    SubgroupSet next = commutator_subgroup(g, s.lower.back(), all);
    if (next.order() == s.lower.back().order())
      throw GroupError("lower central series stalls: group is not nilpotent");
    s.lower.push_back(std::move(next));
  }
  s.nilpotency_class = static_cast<int>(s.lower.size()) - 1;

  s.upper.push_back(trivial_subgroup(g));
  while (s.upper.back().order() < g.order()) {
    const Quotient q = quotient_group(g, s.upper.back());
    SubgroupSet next = q.preimage(center(q.group));
    if (next.order() == s.upper.back().order())
      throw GroupError("upper central series stalls: group is not nilpotent");
    s.upper.push_back(std::move(next));
  }
  if (static_cast<int>(s.upper.size()) - 1 != s.nilpotency_class)
    throw GroupError("upper and lower central series have different lengths");

  s.derived = s.lower.size() > 1 ? s.lower[1] : trivial_subgroup(g);
  std::vector<ElementId> gens = s.derived.generators();
  for (ElementId x : g.generators()) gens.push_back(g.power(x, g.prime()));
  s.frattini = subgroup_closure(g, gens);
  return s;
}

SubgroupSet breadth_subgroup(const ConcreteGroup& g, const ConjugacyData& conj, int i) {
  if (i < 0) throw GroupError("breadth bound must be non-negative");
  std::vector<ElementId> gens;
  SubgroupSet current = trivial_subgroup(g);
  for (ElementId x = 0; x < g.order(); ++x) {
    if (conj.breadth_of(x) > i || current.contains(x)) continue;
    gens.push_back(x);
    current = subgroup_closure(g, gens);
  }
  return current;
}

SubgroupSet breadth_subgroup(const ConcreteGroup& g, int i) {
  return breadth_subgroup(g, conjugacy_data(g), i);
}

StemData stem_data(const ConcreteGroup& g, const SeriesData& series) {
  const SubgroupSet& z = series.center();
  const SubgroupSet meet = intersect(g, z, series.derived);
  StemData d;
  d.is_stem = z.is_subset_of(series.derived);
  d.log_stem_order = g.log_order() - z.log_order(g.prime()) + meet.log_order(g.prime());
  return d;
}

StemData stem_data(const ConcreteGroup& g) { return stem_data(g, central_series(g)); }

SecondCenterWitness min_breadth_second_center(const ConcreteGroup&, const SeriesData& series,
                                              const ConjugacyData& conj) {
  if (series.nilpotency_class < 2) throw GroupError("group is abelian");
  const SubgroupSet& z = series.upper[1];
  const SubgroupSet& z2 = series.upper[2];
  SecondCenterWitness best{0, std::numeric_limits<int>::max()};
  for (ElementId x : z2.members()) {
    if (z.contains(x)) continue;
    const int b = conj.breadth_of(x);
    if (b < best.breadth) best = {x, b};
  }
  return best;
}

SecondCenterWitness min_breadth_second_center(const ConcreteGroup& g) {
  return min_breadth_second_center(g, central_series(g), conjugacy_data(g));
}

std::vector<SubgroupSet> maximal_subgroups(const ConcreteGroup& g, const SeriesData& series) {
  const std::uint32_t p = g.prime();
  const Quotient q = quotient_group(g, series.frattini);
  const ConcreteGroup& v = q.group;

  // Basis of the elementary abelian quotient from the generator images.
  std::vector<ElementId> basis;
  SubgroupSet span = trivial_subgroup(v);
  for (ElementId x : v.generators()) {
    if (span.contains(x)) continue;
    basis.push_back(x);
    span = subgroup_closure(v, basis);
  }
  const std::size_t r = basis.size();
  if (span.order() != v.order()) throw GroupError("Frattini quotient basis is incomplete");

  auto lift_vector = [&](const std::vector<Residue>& coef) {
    ElementId e = 0;
    for (std::size_t k = 0; k < r; ++k) e = v.multiply(e, v.power(basis[k], coef[k]));
    return q.lift(e);
  };

  // Hyperplane ker(lambda) with lambda normalized so its first nonzero entry
  // is 1; its kernel is spanned by e_k - lambda_k e_f for k != f.
  std::vector<SubgroupSet> out;
  std::vector<Residue> lambda(r, 0);
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < r; ++k) total *= p;
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    unrank(idx, p, lambda);
    const auto f = static_cast<std::size_t>(
        std::find_if(lambda.begin(), lambda.end(), [](Residue x) { return x != 0; }) -
        lambda.begin());
    if (lambda[f] != 1) continue;
    std::vector<ElementId> gens = series.frattini.generators();
    for (std::size_t k = 0; k < r; ++k) {
      if (k == f) continue;
      std::vector<Residue> coef(r, 0);
      coef[k] = 1;
      coef[f] = (p - lambda[k]) % p;
      gens.push_back(lift_vector(coef));
    }
    SubgroupSet m = subgroup_closure(g, gens);
    if (m.order() * p != g.order()) throw GroupError("hyperplane preimage has wrong index");
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<SubgroupSet> maximal_subgroups(const ConcreteGroup& g) {
  return maximal_subgroups(g, central_series(g));
}

std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

IsoclinismFingerprint isoclinism_fingerprint(const ConcreteGroup& g, const SeriesData& series,
                                             const ConjugacyData& conj,
                                             const DegreeProfile* degrees) {
  const std::uint32_t p = g.prime();
  IsoclinismFingerprint f;
  f.p = p;
  const SubgroupSet& z = series.center();
  f.log_index_center = g.log_order() - z.log_order(p);
  f.log_derived = series.derived.log_order(p);
  f.log_center_meet_derived = intersect(g, z, series.derived).log_order(p);
  const auto n = static_cast<std::int64_t>(g.order());
  std::map<int, std::int64_t> counts;
  for (const auto& c : conj.classes) ++counts[c.breadth];
  for (const auto& [b, k] : counts) f.class_breadth_ratio[b] = Rational(k, n);
  f.breadth = conj.breadth;
  for (std::size_t i = 1; i + 1 < series.lower.size(); ++i)
    f.lower_factor_logs.push_back(series.lower[i].log_order(p) - series.lower[i + 1].log_order(p));
  f.commuting_ratio = Rational(static_cast<std::int64_t>(conj.count()), n);
  f.log_stem_order = stem_data(g, series).log_stem_order;
  if (degrees) {
    std::map<int, Rational> ratio;
    for (const auto& [e, m] : degrees->multiplicity)
      ratio[e] = Rational(static_cast<std::int64_t>(m), n);
    f.degree_ratio = std::move(ratio);
    f.rexp = degrees->max_exponent();
  }
  return f;
}

IsoclinismFingerprint isoclinism_fingerprint(const ConcreteGroup& g, const DegreeProfile* degrees) {
  return isoclinism_fingerprint(g, central_series(g), conjugacy_data(g), degrees);
}

namespace {

std::string ratio_map(const std::map<int, Rational>& m) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [k, r] : m) {
    os << (first ? "" : ",") << k << ':' << to_string(r);
    first = false;
  }
  os << '}';
  return os.str();
}

}  // namespace

std::vector<std::string> IsoclinismFingerprint::differences(const IsoclinismFingerprint& o) const {
  std::vector<std::string> d;
  auto cmp = [&](const char* name, const auto& a, const auto& b) {
    if (a != b) d.emplace_back(name);
  };
  cmp("p", p, o.p);
  cmp("index_center", log_index_center, o.log_index_center);
  cmp("derived_order", log_derived, o.log_derived);
  cmp("center_meet_derived", log_center_meet_derived, o.log_center_meet_derived);
  cmp("class_breadth_ratio", class_breadth_ratio, o.class_breadth_ratio);
  cmp("breadth", breadth, o.breadth);
  cmp("lower_central_factors", lower_factor_logs, o.lower_factor_logs);
  cmp("commuting_ratio", commuting_ratio, o.commuting_ratio);
  cmp("stem_order", log_stem_order, o.log_stem_order);
  cmp("degree_ratio", degree_ratio, o.degree_ratio);
  cmp("rexp", rexp, o.rexp);
  return d;
}

std::string IsoclinismFingerprint::serialize() const {
  std::ostringstream os;
  os << "p=" << p << ";index_center=" << log_index_center << ";derived=" << log_derived
     << ";center_meet_derived=" << log_center_meet_derived
     << ";class_breadth_ratio=" << ratio_map(class_breadth_ratio) << ";breadth=" << breadth
     << ";lower_factors=[";
  for (std::size_t i = 0; i < lower_factor_logs.size(); ++i)
    os << (i ? "," : "") << lower_factor_logs[i];
  os << "];commuting_ratio=" << to_string(commuting_ratio) << ";stem_order=" << log_stem_order;
  if (degree_ratio) os << ";degree_ratio=" << ratio_map(*degree_ratio) << ";rexp=" << *rexp;
  return os.str();
}

std::uint64_t IsoclinismFingerprint::hash() const {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char ch : serialize()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace pgrp
