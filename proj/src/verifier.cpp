#include "pgrp/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include "pgrp/constructions.hpp"

namespace pgrp {

namespace {

std::string pw(std::uint32_t p, std::int64_t e) {
  return std::to_string(p) + "^" + std::to_string(e);
}

Finding row(std::string check, bool ok, std::string left, std::string right,
            std::string witness = {}) {
  return {std::move(check), ok ? Verdict::Pass : Verdict::Fail, std::move(left), std::move(right),
          std::move(witness)};
}

Finding vacuous(std::string check, std::string left = {}, std::string right = {},
                std::string witness = {}) {
  return {std::move(check), Verdict::Vacuous, std::move(left), std::move(right),
          std::move(witness)};
}

/// p^a <= p^b
Finding le(std::string check, std::uint32_t p, std::int64_t a, std::int64_t b,
           std::string witness = {}) {
  return row(std::move(check), a <= b, pw(p, a), pw(p, b), std::move(witness));
}

Finding eq(std::string check, std::uint32_t p, std::int64_t a, std::int64_t b,
           std::string witness = {}) {
  return row(std::move(check), a == b, pw(p, a), pw(p, b), std::move(witness));
}

Finding int_le(std::string check, std::int64_t a, std::int64_t b, std::string witness = {}) {
  return row(std::move(check), a <= b, std::to_string(a), std::to_string(b), std::move(witness));
}

std::string id_list(const std::vector<ElementId>& ids) {
  std::string s = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(ids[i]);
  }
  return s + "}";
}

std::string gens(const SubgroupSet& h) {
  std::string s = id_list(h.generators());
  return "<" + s.substr(1, s.size() - 2) + ">";
}

void append(std::vector<Finding>& out, std::vector<Finding> more, const std::string& prefix = {}) {
  for (auto& f : more) {
    f.check = prefix + f.check;
    out.push_back(std::move(f));
  }
}

/// M/N realized as a quotient of a subgroup view.
struct Section {
  SubgroupView view;
  Quotient quotient;
};

Section section(const ConcreteGroup& g, const SubgroupSet& m, const SubgroupSet& n) {
  SubgroupView view = subgroup_view(g, m);
  SubgroupSet local = view.restrict(n);
  Quotient q = quotient_group(view.group, local);
  return {std::move(view), std::move(q)};
}

SubgroupSet subgroup_center(const ConcreteGroup& g, const SubgroupSet& m) {
  SubgroupView view = subgroup_view(g, m);
  return view.embed(center(view.group));
}

SubgroupSet subgroup_derived(const ConcreteGroup& g, const SubgroupSet& m) {
  SubgroupView view = subgroup_view(g, m);
  return view.embed(derived_subgroup(view.group));
}

/// log [Z(X)X' : X'] = log |X| - stem order.
int log_missing(const GroupContext& x) {
  return x.group().log_order() - x.stem().log_stem_order;
}

std::vector<bool> commutator_mask(const ConcreteGroup& g, ElementId x) {
  std::vector<bool> mask(g.order(), false);
  for (ElementId y = 0; y < g.order(); ++y) mask[g.commutator(x, y)] = true;
  return mask;
}

std::vector<ElementId> mask_members(const std::vector<bool>& mask) {
  std::vector<ElementId> out;
  for (ElementId i = 0; i < mask.size(); ++i)
    if (mask[i]) out.push_back(i);
  return out;
}

std::string n_label(const SubgroupSet& n) {
  return "[N=" + std::to_string(n.members().size() > 1 ? n.members()[1] : 0) + "]";
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Vacuous: return "vacuous";
  }
  return "?";
}

bool all_pass(const std::vector<Finding>& findings) {
  return std::none_of(findings.begin(), findings.end(),
                      [](const Finding& f) { return f.verdict == Verdict::Fail; });
}

// ---------------------------------------------------------------- bounds

int bound_regime(int b, int d) {
  if (b < 2) return 0;
  if (b <= (2 * d + 3) / 3) return 1;
  if (b <= 2 * d - 1) return 2;
  return 3;
}

std::int64_t theorem_exponent(int b, int d) {
  const std::int64_t bb = b, dd = d;
  return bb * (3 * bb + 4 * dd - 1) / 2;
}

std::int64_t recursive_exponent(int b, int d) {
  std::int64_t e = 2 * static_cast<std::int64_t>(d) + 1;
  for (int s = 2; s <= b; ++s) {
    switch (bound_regime(s, d)) {
      case 1: e += s + 2 * d + 2; break;
      case 2: e += 4 * s - 1; break;
      default: e += 3 * s + 2 * d - 2; break;
    }
  }
  return e;
}

BoundReport sigma_bounds(std::uint32_t p, int b, int d) {
  BoundReport r;
  r.p = p;
  r.b = b;
  r.d = d;
  for (int k = 0; k < 3; ++k) r.refined[k] = {k + 1, Rational(0), false, true, false};
  if (b <= 0 || d <= 0) return r;

  r.theorem_exponent = theorem_exponent(b, d);
  r.recursive_exponent = recursive_exponent(b, d);
  const std::int64_t bb = b, dd = d;
  const std::array<Rational, 3> forms{
      Rational(bb * bb + 4 * bb * dd + 5 * bb - 4, 2),
      Rational(6 * bb * bb + 2 * dd * dd + 9 * bb + 15 * dd + 6, 3),
      Rational(9 * bb * bb + 12 * bb * dd - 8 * dd * dd - 3 * bb + 72 * dd - 6, 6)};
  const int regime = bound_regime(b, d);
  for (int k = 0; k < 3; ++k) {
    RefinedExponent& f = r.refined[k];
    f.value = forms[k];
    f.applies = regime == k + 1;
    f.integral = forms[k].denominator() == 1;
    f.matches = f.applies && f.integral && forms[k].numerator() == r.recursive_exponent;
  }
  r.lower_exponent = bb + 2 * dd;
  if (p % 2 == 1) {
    const std::int64_t bp = std::min(bb, 2 * dd);
    r.lower_exponent = std::max(r.lower_exponent, (bp + 1) * (bp + 2) / 2);
  }
  r.recursive_within_theorem = r.recursive_exponent <= r.theorem_exponent;
  r.lower_within_theorem = r.lower_exponent <= r.theorem_exponent;
  return r;
}

// ---------------------------------------------------------------- context

GroupContext::GroupContext(ConcreteGroup g)
    : g_(std::move(g)), series_(central_series(g_)), conj_(conjugacy_data(g_)),
      stem_(stem_data(g_, series_)) {}

const DegreeProfile& GroupContext::degrees(const DixonOptions& opts) const {
  if (!degrees_) degrees_ = degree_profile(g_, DegreeMethod::Auto, opts);
  return *degrees_;
}

const std::vector<GroupContext::TopClass>& GroupContext::top_classes() const {
  if (!top_) {
    std::vector<TopClass> out;
    for (const auto& c : conj_.classes) {
      if (c.breadth != conj_.breadth) continue;
      out.push_back({c.representative, centralizer(g_, c.representative),
                     commutator_mask(g_, c.representative)});
    }
    top_ = std::move(out);
  }
  return *top_;
}

std::optional<std::pair<ElementId, ElementId>> breadth_one_witness(const GroupContext& ctx) {
  const auto& g = ctx.group();
  std::vector<ElementId> ones;
  for (ElementId x = 0; x < g.order(); ++x)
    if (ctx.conj().breadth_of(x) == 1) ones.push_back(x);
  const SubgroupSet& z2 = ctx.series().upper_term(2);
  for (ElementId a : ones) {
    if (!z2.contains(a)) continue;
    for (ElementId x : ones)
      if (g.commutator(a, x) != 0) return std::pair{a, x};
  }
  return std::nullopt;
}

StemReduction stem_reduction(const GroupContext& h) {
  const auto& g = h.group();
  const std::uint32_t p = h.p();
  if (h.breadth() == 0) throw GroupError("stem reduction needs a nonabelian group");
  if (!h.stem().is_stem) throw GroupError("stem reduction needs a stem group");

  const SecondCenterWitness w = min_breadth_second_center(g, h.series(), h.conj());
  SubgroupSet k = subgroup_from_members(g, mask_members(commutator_mask(g, w.element)));

  SubgroupSet n = trivial_subgroup(g);
  if (k.order() > p) {
    SubgroupView view = subgroup_view(g, k);
    std::optional<SubgroupSet> best;
    for (const auto& local : maximal_subgroups(view.group)) {
      SubgroupSet cand = view.embed(local);
      if (!best || cand.members() < best->members()) best = std::move(cand);
    }
    n = std::move(*best);
  }
  Quotient q = quotient_group(g, n);
  const ElementId image = q.project(w.element);
  auto reduced = std::make_shared<const GroupContext>(q.group);

  std::vector<Finding> checks;
  checks.push_back(eq("commutator_order", p, k.log_order(p), w.breadth, gens(k)));
  checks.push_back(row("quotient_stem", reduced->stem().is_stem, "stem",
                       reduced->stem().is_stem ? "stem" : "not stem"));
  checks.push_back(le("quotient_order", p, g.log_order() - (w.breadth - 1),
                      reduced->group().log_order()));
  checks.push_back(row("image_breadth_one", reduced->conj().breadth_of(image) == 1,
                       std::to_string(reduced->conj().breadth_of(image)), "1",
                       "gN=" + std::to_string(image)));
  checks.push_back(row("image_in_second_center",
                       reduced->series().upper_term(2).contains(image) &&
                           !reduced->series().center().contains(image),
                       "gN", "Z_2(G)\\Z(G)", "gN=" + std::to_string(image)));
  return StemReduction{w.element, w.breadth, std::move(k), std::move(q), image, std::move(reduced),
                       std::move(checks)};
}

// ---------------------------------------------------------------- lemmas

std::vector<Finding> lemma_central_quotient_audit(const GroupContext& ctx, ElementId g) {
  const auto& grp = ctx.group();
  const std::uint32_t p = ctx.p();
  const int b = ctx.breadth();
  const SubgroupSet& z = ctx.series().center();

  const std::vector<ElementId> comm = mask_members(commutator_mask(grp, g));
  if (comm.size() != p || !std::all_of(comm.begin(), comm.end(), [&](ElementId c) {
        return z.contains(c);
      }))
    throw GroupError("[g,G] is not central of order p for g = " + std::to_string(g));
  SubgroupSet n = subgroup_from_members(grp, comm);
  SubgroupSet m = centralizer(grp, g);

  std::vector<Finding> out;
  out.push_back(eq("m_maximal", p, grp.log_order() - m.log_order(p), 1, gens(m)));
  out.push_back(row("m_contains_n", n.is_subset_of(m), gens(n), gens(m)));

  Section mn = section(grp, m, n);
  const int br_mn = conjugacy_data(mn.quotient.group).breadth;
  out.push_back(int_le("quotient_of_m_breadth", br_mn, b - 1));

  Quotient gn = quotient_group(grp, n);
  const ConjugacyData gn_conj = conjugacy_data(gn.group);
  int worst = -1;
  ElementId worst_y = 0;
  for (ElementId y = 0; y < grp.order(); ++y) {
    if (m.contains(y)) continue;
    const int br = gn_conj.breadth_of(gn.project(y));
    if (br > worst) {
      worst = br;
      worst_y = y;
    }
  }
  out.push_back(int_le("outside_m_breadth", worst, b - 1, "y=" + std::to_string(worst_y)));

  std::size_t checked = 0, failed = 0;
  std::string first;
  for (const auto& top : ctx.top_classes()) {
    if (top.centralizer.is_subset_of(m)) continue;
    ++checked;
    const bool ok = std::all_of(n.members().begin(), n.members().end(),
                                [&](ElementId c) { return top.commutators[c]; });
    if (!ok) {
      if (!failed) first = "x=" + std::to_string(top.rep);
      ++failed;
    }
  }
  if (checked == 0)
    out.push_back(vacuous("top_breadth_contains_n", "0", "0", "no class qualifies"));
  else
    out.push_back(row("top_breadth_contains_n", failed == 0, std::to_string(failed),
                      "0", failed ? first : std::to_string(checked) + " classes"));
  return out;
}

std::vector<SubgroupSet> central_subgroups_of_order_p(const GroupContext& ctx) {
  const auto& g = ctx.group();
  std::vector<SubgroupSet> out;
  std::vector<bool> seen(g.order(), false);
  for (ElementId z : ctx.series().center().members()) {
    if (z == 0 || seen[z] || g.element_order(z) != ctx.p()) continue;
    const ElementId gen[] = {z};
    SubgroupSet n = subgroup_closure(g, gen);
    for (ElementId x : n.members()) seen[x] = true;
    out.push_back(std::move(n));
  }
  return out;
}

std::vector<Finding> lemma_maximal_item1_audit(const GroupContext& ctx) {
  const auto& g = ctx.group();
  const std::uint32_t p = ctx.p();
  const SubgroupSet& z = ctx.series().center();
  const SubgroupSet& gd = ctx.series().derived;
  const int log_zg_over_g = join(g, z, gd).log_order(p) - gd.log_order(p);
  const bool stem = ctx.stem().is_stem;

  std::vector<Finding> out;
  const auto maximals = maximal_subgroups(g, ctx.series());
  for (std::size_t i = 0; i < maximals.size(); ++i) {
    const SubgroupSet& m = maximals[i];
    if (!z.is_subset_of(m)) continue;
    const std::string tag = "[M=" + std::to_string(i) + "]";
    int t = std::numeric_limits<int>::max();
    ElementId x_min = 0;
    for (ElementId x = 0; x < g.order(); ++x) {
      if (m.contains(x)) continue;
      if (ctx.conj().breadth_of(x) < t) {
        t = ctx.conj().breadth_of(x);
        x_min = x;
      }
    }
    const SubgroupSet zm = subgroup_center(g, m);
    const SubgroupSet md = subgroup_derived(g, m);
    const int missing = join(g, zm, md).log_order(p) - md.log_order(p);
    const std::string wit = gens(m) + " x=" + std::to_string(x_min);
    out.push_back(le("item1.center_index" + tag, p, zm.log_order(p) - z.log_order(p), t, wit));
    out.push_back(le("item1.missing_to_stem" + tag, p, missing, 2 * t + log_zg_over_g, wit));
    if (stem) {
      out.push_back(le("item1.stem" + tag, p, missing, 2 * t, wit));
      out.push_back(le("in_particular.missing_to_stem" + tag, p, missing, 2 * ctx.breadth(), wit));
    }
  }
  if (out.empty()) out.push_back(vacuous("item1", "", "", "no maximal subgroup contains Z(G)"));
  return out;
}

std::vector<Finding> lemma_maximal_audit(const GroupContext& ctx, const SubgroupSet& n,
                                         const DixonOptions& opts) {
  const auto& g = ctx.group();
  const std::uint32_t p = ctx.p();
  const int b = ctx.breadth();
  const SubgroupSet& z = ctx.series().center();
  if (b == 0) throw GroupError("maximal-subgroup lemma needs a nonabelian group");
  if (n.order() != p || !n.is_subset_of(z))
    throw GroupError("N must be a central subgroup of order p");
  const int d = ctx.rexp(opts);

  Quotient q = quotient_group(g, n);
  const GroupContext gn(q.group);
  const SubgroupSet c = q.preimage(gn.series().center());
  const SubgroupSet dd = centralizer_of_set(g, c.generators());
  const int c_over_z = c.log_order(p) - z.log_order(p);
  const int g_over_d = g.log_order() - dd.log_order(p);
  const DegreeProfile over = ctx.degrees(opts).minus(gn.degrees(opts));

  std::vector<Finding> out;
  out.push_back(eq("item2.index_equality", p, c_over_z, g_over_d, "C=" + gens(c)));
  if (over.multiplicity.empty()) {
    out.push_back(row("item2.over_n_nonempty", false, "0", ">0"));
    return out;
  }
  const int e_min = over.multiplicity.begin()->first;
  out.push_back(le("item2.degree_bound", p, g_over_d, 2 * e_min, "over N: " + over.to_string()));

  std::optional<int> e_eq;
  if (g_over_d % 2 == 0 && over.count(g_over_d / 2) > 0) e_eq = g_over_d / 2;
  if (!e_eq) {
    out.push_back(vacuous("item3", pw(p, g_over_d), "", "no over-N degree squares to [G:D]"));
  } else {
    const SubgroupSet cd = intersect(g, c, dd);
    out.push_back(row("item3.c_meet_d_is_center", cd == z, gens(cd), gens(z)));
    const SubgroupSet d_der = subgroup_derived(g, dd);
    const SubgroupSet n_meet = intersect(g, n, d_der);
    out.push_back(eq("item3.n_meet_d_derived_trivial", p, n_meet.log_order(p), 0));
    const SubgroupSet nd = join(g, n, d_der);
    out.push_back(row("item3.derived_in_nd", ctx.series().derived.is_subset_of(nd),
                      gens(ctx.series().derived), gens(nd)));
    out.push_back(eq("item3.central_product", p,
                     c.log_order(p) + dd.log_order(p) - cd.log_order(p), g.log_order()));
    if (*e_eq > 0) {
      const SubgroupSet c_der = subgroup_derived(g, c);
      out.push_back(row("item3.c_nonabelian", c_der.order() > 1, pw(p, c_der.log_order(p)),
                        ">" + pw(p, 0)));
    }
    if (ctx.stem().is_stem) {
      Section dn = section(g, dd, n);
      const GroupContext dn_ctx(dn.quotient.group);
      out.push_back(row("item3.d_over_n_stem", dn_ctx.stem().is_stem, "stem",
                        dn_ctx.stem().is_stem ? "stem" : "not stem"));
      const GroupContext d_ctx(dn.view.group);
      const auto fd = isoclinism_fingerprint(d_ctx.group(), d_ctx.series(), d_ctx.conj(), nullptr);
      const auto fdn =
          isoclinism_fingerprint(dn_ctx.group(), dn_ctx.series(), dn_ctx.conj(), nullptr);
      const auto diff = fd.differences(fdn);
      out.push_back(row("item3.d_isoclinic_to_d_over_n", diff.empty(),
                        std::to_string(fd.hash()), std::to_string(fdn.hash()),
                        diff.empty() ? "" : diff.front()));
      if (*e_eq > 0) out.push_back(int_le("item3.d_breadth", d_ctx.breadth(), b - 1));
    }
  }

  if (!is_abelian(g, c)) {
    const GroupContext& gc = ctx;
    auto w = breadth_one_witness(gc);
    out.push_back(row("item4.witness", w.has_value(), w ? "found" : "none", "found",
                      w ? "g=" + std::to_string(w->first) + " x=" + std::to_string(w->second)
                        : ""));
    out.push_back(vacuous("item5", "", "", "C nonabelian"));
  } else {
    out.push_back(vacuous("item4", "", "", "C abelian"));
    const int bound = std::min(b, 2 * d - 1);
    const bool ok = gn.breadth() == b - 1 || g_over_d <= bound;
    out.push_back(row("item5.dichotomy", ok,
                      "br(G/N)=" + std::to_string(gn.breadth()) + " [G:D]=" + pw(p, g_over_d),
                      "br=" + std::to_string(b - 1) + " or " + pw(p, bound)));
  }
  if (ctx.stem().is_stem)
    out.push_back(le("in_particular.index_bound", p, c_over_z, 2 * d));
  return out;
}

std::vector<Finding> corollary_b1_audit(const GroupContext& ctx) {
  const SubgroupSet b1 = breadth_subgroup(ctx.group(), ctx.conj(), 1);
  if (is_abelian(ctx.group(), b1))
    return {vacuous("corollary_b1", "B1 abelian", "", gens(b1))};
  auto w = breadth_one_witness(ctx);
  return {row("corollary_b1", w.has_value(), w ? "found" : "none", "found",
              w ? "g=" + std::to_string(w->first) + " x=" + std::to_string(w->second) : "")};
}

// ---------------------------------------------------------------- proposition

const char* to_string(PropositionCase c) {
  switch (c) {
    case PropositionCase::One: return "1";
    case PropositionCase::Two: return "2";
    case PropositionCase::ThreeA: return "3a";
    case PropositionCase::ThreeB: return "3b";
  }
  return "?";
}

CaseReport proposition_classify(const GroupContext& h, const DixonOptions& opts) {
  const std::uint32_t p = h.p();
  if (!h.stem().is_stem) throw GroupError("proposition needs a stem group");
  if (h.breadth() < 2) throw GroupError("proposition needs breadth at least 2");

  CaseReport r;
  r.k = h.group().log_order();
  r.b = h.breadth();
  r.d = h.rexp(opts);
  const int b = r.b, d = r.d;

  StemReduction red = stem_reduction(h);
  r.witness = red.witness;
  r.b_star = red.b_star;
  append(r.checks, std::move(red.checks), "reduction.");
  if (!all_pass(r.checks)) return r;

  const GroupContext& gc = *red.reduced;
  const ConcreteGroup& g = gc.group();
  r.log_g = g.log_order();
  r.g = red.image;
  const SubgroupSet& z = gc.series().center();

  r.n = subgroup_from_members(g, mask_members(commutator_mask(g, r.g)));
  r.m = centralizer(g, r.g);
  Quotient q = quotient_group(g, r.n);
  const GroupContext gn(q.group);
  r.c = q.preimage(gn.series().center());
  r.d_sub = centralizer_of_set(g, r.c.generators());
  r.log_c_over_z = r.c.log_order(p) - z.log_order(p);
  r.log_g_over_d = r.log_g - r.d_sub.log_order(p);
  r.over_n = gc.degrees(opts).minus(gn.degrees(opts));

  r.t = std::numeric_limits<int>::max();
  for (ElementId x = 0; x < g.order(); ++x)
    if (!r.m.contains(x)) r.t = std::min(r.t, gn.conj().breadth_of(q.project(x)));

  Section mn = section(g, r.m, r.n);
  const GroupContext mn_ctx(mn.quotient.group);
  r.log_missing = log_missing(mn_ctx);
  const int log_mn = mn_ctx.group().log_order();
  const int c_over_cg = r.c.log_order(p) - intersect(g, r.c, gc.series().derived).log_order(p);

  auto& out = r.checks;
  out.push_back(le("order_after_reduction", p, r.k - b + 1, r.log_g));
  out.push_back(row("n_central_order_p", r.n.log_order(p) == 1 && r.n.is_subset_of(z),
                    pw(p, r.n.log_order(p)), pw(p, 1), gens(r.n)));
  out.push_back(eq("m_maximal", p, r.log_g - r.m.log_order(p), 1, gens(r.m)));
  out.push_back(row("c_exceeds_center", r.log_c_over_z >= 1, pw(p, r.log_c_over_z), ">" + pw(p, 0)));
  out.push_back(eq("index_equality", p, r.log_c_over_z, r.log_g_over_d));
  out.push_back(int_le("t_below_b", r.t, b - 1));
  out.push_back(le("missing_to_stem.derived", p, r.log_missing, 2 * r.t + c_over_cg));
  out.push_back(le("missing_to_stem", p, r.log_missing, 2 * r.t + r.log_c_over_z));

  std::optional<int> e_eq;
  if (r.log_g_over_d % 2 == 0 && r.over_n.count(r.log_g_over_d / 2) > 0)
    e_eq = r.log_g_over_d / 2;
  const bool b1_abelian = is_abelian(g, breadth_subgroup(g, gc.conj(), 1));

  auto dt_rows = [&](const std::string& prefix, const GroupContext& x) {
    out.push_back(int_le(prefix + ".breadth", x.breadth(), b - 1));
    out.push_back(int_le(prefix + ".rexp", x.rexp(opts), d));
  };

  if (e_eq) {
    r.kase = PropositionCase::One;
    r.factor = b + 2 * d;
    out.push_back(le("case1.index_bound", p, r.log_g_over_d, 2 * d));
    const SubgroupSet c_der = subgroup_derived(g, r.c);
    out.push_back(row("case1.c_derived_is_n", c_der == r.n, gens(c_der), gens(r.n)));
    Section dn = section(g, r.d_sub, r.n);
    const GroupContext dn_ctx(dn.quotient.group);
    out.push_back(row("case1.d_over_n_stem", dn_ctx.stem().is_stem, "stem",
                      dn_ctx.stem().is_stem ? "stem" : "not stem"));
    dt_rows("case1.d_over_n", dn_ctx);
    r.log_exhibited = dn_ctx.group().log_order();
    out.push_back(le("case1.order_chain", p, r.log_g, 2 * d + 1 + r.log_exhibited));
  } else if (!b1_abelian) {
    r.kase = PropositionCase::Two;
    r.factor = b + 2 * d + 2;
    out.push_back(le("case2.index_bound", p, r.log_g_over_d, 2 * d - 1));
    out.push_back(int_le("case2.t_is_one", r.t, 1));
    out.push_back(le("case2.missing_to_stem", p, r.log_missing, 2 * d + 1));
    out.push_back(le("case2.stem_order", p, log_mn - (2 * d + 1), mn_ctx.stem().log_stem_order));
    dt_rows("case2.m_over_n", mn_ctx);
    r.log_exhibited = mn_ctx.stem().log_stem_order;
  } else {
    out.push_back(row("case3.c_abelian", is_abelian(g, r.c), "abelian",
                      is_abelian(g, r.c) ? "abelian" : "nonabelian"));
    out.push_back(le("case3.index_bound", p, r.log_g_over_d, 2 * d - 1));
    if (gn.breadth() <= b - 1) {
      r.kase = PropositionCase::ThreeA;
      r.factor = b + 2 * d - 1;
      const int log_gn = gn.group().log_order();
      out.push_back(le("case3a.stem_order", p, log_gn - r.log_c_over_z, gn.stem().log_stem_order));
      out.push_back(le("case3a.stem_order_bound", p, log_gn - (2 * d - 1),
                       gn.stem().log_stem_order));
      dt_rows("case3a.g_over_n", gn);
      r.log_exhibited = gn.stem().log_stem_order;
    } else {
      r.kase = PropositionCase::ThreeB;
      const int mn_bound = std::min(b, 2 * d - 1);
      r.factor = 3 * b - 1 + mn_bound;
      out.push_back(int_le("case3b.quotient_breadth", gn.breadth(), b));
      out.push_back(le("case3b.index_bound", p, r.log_c_over_z, mn_bound));
      out.push_back(le("case3b.stem_order", p, log_mn - (2 * (b - 1) + mn_bound),
                       mn_ctx.stem().log_stem_order));
      dt_rows("case3b.m_over_n", mn_ctx);
      r.log_exhibited = mn_ctx.stem().log_stem_order;
    }
  }
  out.push_back(le("conclusion", p, r.k, r.factor + r.log_exhibited,
                   std::string("case ") + to_string(r.kase)));
  out.push_back(int_le("factor_within_uniform", r.factor, 3 * b + 2 * d - 2));
  return r;
}

// ---------------------------------------------------------------- catalog

std::optional<int> CatalogGroup::param(const std::string& name) const {
  for (const auto& [k, v] : params)
    if (k == name) return v;
  return std::nullopt;
}

const char* to_string(Suite s) {
  switch (s) {
    case Suite::Lemmas: return "lemmas";
    case Suite::Proposition: return "proposition";
    case Suite::Bounds: return "bounds";
    case Suite::Properties: return "properties";
  }
  return "?";
}

std::optional<Suite> parse_suite(const std::string& name) {
  for (Suite s : {Suite::Lemmas, Suite::Proposition, Suite::Bounds, Suite::Properties})
    if (name == to_string(s)) return s;
  return std::nullopt;
}

void sort_rows(std::vector<ReportRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    return std::tie(a.group_id, a.check) < std::tie(b.group_id, b.check);
  });
}

namespace {

std::string pad(int v) { return (v < 10 ? "0" : "") + std::to_string(v); }

std::vector<Finding> lemma_rows(const GroupContext& ctx, const SuiteOptions& opts) {
  std::vector<Finding> out;
  append(out, corollary_b1_audit(ctx));
  append(out, lemma_maximal_item1_audit(ctx), "lemma_maximal.");
  for (const auto& n : central_subgroups_of_order_p(ctx))
    append(out, lemma_maximal_audit(ctx, n, opts.dixon), "lemma_maximal" + n_label(n) + ".");
  const SubgroupSet& z = ctx.series().center();
  bool any = false;
  for (const auto& c : ctx.conj().classes) {
    if (c.breadth != 1) continue;
    const auto comm = mask_members(commutator_mask(ctx.group(), c.representative));
    if (!std::all_of(comm.begin(), comm.end(), [&](ElementId x) { return z.contains(x); }))
      continue;
    any = true;
    append(out, lemma_central_quotient_audit(ctx, c.representative),
           "lemma_central_quotient[g=" + std::to_string(c.representative) + "].");
  }
  if (!any)
    out.push_back(vacuous("lemma_central_quotient", "", "", "no breadth-1 class with central [g,G]"));
  return out;
}

std::vector<Finding> proposition_rows(const GroupContext& ctx, const SuiteOptions& opts) {
  if (!ctx.stem().is_stem || ctx.breadth() < 2)
    return {vacuous("proposition", "br=" + std::to_string(ctx.breadth()),
                    ctx.stem().is_stem ? "stem" : "not stem", "needs stem and breadth >= 2")};
  CaseReport r = proposition_classify(ctx, opts.dixon);
  std::vector<Finding> out;
  out.push_back({"proposition.case", Verdict::Pass, to_string(r.kase),
                 "factor " + std::to_string(r.factor),
                 "g=" + std::to_string(r.witness) + " b*=" + std::to_string(r.b_star)});
  append(out, std::move(r.checks), "proposition.");
  return out;
}

std::vector<Finding> bound_rows(const GroupContext& ctx, const SuiteOptions& opts) {
  const std::uint32_t p = ctx.p();
  if (!ctx.stem().is_stem || ctx.breadth() == 0)
    return {vacuous("theorem.bound", pw(p, ctx.group().log_order()), "",
                    ctx.breadth() == 0 ? "abelian" : "not stem")};
  const int b = ctx.breadth(), d = ctx.rexp(opts.dixon);
  const std::string dt = "dt=(" + std::to_string(b) + "," + std::to_string(d) + ")";
  std::vector<Finding> out;
  out.push_back(le("theorem.bound", p, ctx.group().log_order(), theorem_exponent(b, d), dt));
  if (b == 1)
    out.push_back(eq("theorem.equality", p, ctx.group().log_order(), theorem_exponent(b, d), dt));
  return out;
}

std::string expected_dt(const CatalogGroup& e, int& b, int& d, int& log_order) {
  auto P = [&](const char* k) { return e.param(k).value_or(0); };
  if (e.family == "extraspecial") {
    b = 1, d = P("n"), log_order = 2 * d + 1;
  } else if (e.family == "maxclass") {
    b = P("i") - 2, d = 1, log_order = P("i");
  } else if (e.family == "heisenberg") {
    b = P("b"), d = P("d"), log_order = b + 2 * d;
  } else if (e.family == "freeclass2") {
    const int r = P("r");
    b = r - 1, d = r / 2, log_order = r * (r + 1) / 2;
  } else if (e.family == "tgroup") {
    b = P("b"), d = P("d"), log_order = b + 2 * d;
  } else {
    return {};
  }
  return e.family;
}

std::vector<Finding> property_rows(const CatalogGroup& e, const GroupContext& ctx,
                                   const SuiteOptions& opts) {
  const std::uint32_t p = ctx.p();
  const auto& g = ctx.group();
  const int b = ctx.breadth();
  const int log_der = ctx.series().derived.log_order(p);
  const int log_z = ctx.series().center().log_order(p);
  const DegreeProfile& prof = ctx.degrees(opts.dixon);
  const int d = prof.max_exponent();
  const bool small = g.order() <= opts.small_order_limit;
  std::vector<Finding> out;

  check_profile_invariants(prof, g, ctx.series(), ctx.conj());
  out.push_back(row("degrees.invariants", true, prof.to_string(), pw(p, g.log_order())));
  out.push_back(row("abelian_iff", (b == 0) == is_abelian(g) && (d == 0) == (b == 0),
                    "br=" + std::to_string(b) + " rexp=" + std::to_string(d),
                    is_abelian(g) ? "abelian" : "nonabelian"));
  out.push_back(row("knoche", (b == 1) == (log_der == 1), "br=" + std::to_string(b),
                    "|G'|=" + pw(p, log_der)));
  out.push_back(le("vaughan_lee", p, log_der, b * (b + 1) / 2));
  if (e.family == "freeclass2")
    out.push_back(eq("vaughan_lee.equality", p, log_der, b * (b + 1) / 2));
  out.push_back(le("degree_square", p, 2 * d, g.log_order() - log_z));

  if (b > 0) {
    int m = std::numeric_limits<int>::max();
    for (const auto& c : ctx.conj().classes)
      if (c.breadth > 0) m = std::min(m, c.breadth);
    const SubgroupSet bm = breadth_subgroup(g, ctx.conj(), m);
    const SubgroupView view = subgroup_view(g, bm);
    const int cls = central_series(view.group).nilpotency_class;
    out.push_back(int_le("mann", cls, 3, "B_" + std::to_string(m) + "=" + gens(bm)));
  } else {
    out.push_back(vacuous("mann", "", "", "abelian"));
  }

  int eb = 0, ed = 0, elog = 0;
  if (!expected_dt(e, eb, ed, elog).empty()) {
    out.push_back(eq("family.order", p, g.log_order(), elog));
    out.push_back(row("family.type", b == eb && d == ed,
                      "(" + std::to_string(b) + "," + std::to_string(d) + ")",
                      "(" + std::to_string(eb) + "," + std::to_string(ed) + ")"));
    out.push_back(row("family.stem", ctx.stem().is_stem, ctx.stem().is_stem ? "stem" : "not stem",
                      "stem"));
  }

  if (small && class2_applicable(g, ctx.series())) {
    const DegreeProfile dix = dixon_degrees(g, ctx.conj(), opts.dixon);
    const DegreeProfile c2 = class2_degrees(g);
    out.push_back(row("oracle.dixon_class2", dix == c2, dix.to_string(), c2.to_string()));
  }
  if (auto f = g.factors(); f && small) {
    const DegreeProfile conv = degree_profile(f->first, DegreeMethod::Auto, opts.dixon)
                                   .convolve(degree_profile(f->second, DegreeMethod::Auto,
                                                            opts.dixon));
    const DegreeProfile dix = dixon_degrees(g, ctx.conj(), opts.dixon);
    out.push_back(row("degrees.product_convolution", conv == dix, conv.to_string(),
                      dix.to_string()));
  }
  if (small) {
    const ConcreteGroup cp = presentation_group(PcPresentation(p, 1));
    const ConcreteGroup gx = direct_product(g, cp);
    const DegreeProfile px = degree_profile(gx, DegreeMethod::Auto, opts.dixon);
    const auto fg = isoclinism_fingerprint(g, ctx.series(), ctx.conj(), &prof);
    const auto fx = isoclinism_fingerprint(gx, &px);
    const auto diff = fg.differences(fx);
    out.push_back(row("isoclinism.direct_factor", diff.empty(), std::to_string(fg.hash()),
                      std::to_string(fx.hash()), diff.empty() ? "" : diff.front()));
  }
  if (e.family == "quaternion8") {
    const ConcreteGroup d8 = presentation_group(dihedral8());
    const DegreeProfile pd = degree_profile(d8);
    const auto fq = isoclinism_fingerprint(g, ctx.series(), ctx.conj(), &prof);
    const auto fd = isoclinism_fingerprint(d8, &pd);
    const auto diff = fq.differences(fd);
    out.push_back(row("isoclinism.dihedral8", diff.empty(), std::to_string(fq.hash()),
                      std::to_string(fd.hash()), diff.empty() ? "" : diff.front()));
  }
  return out;
}

std::vector<ReportRow> algebra_rows() {
  std::vector<ReportRow> rows;
  for (std::uint32_t p : {2u, 3u}) {
    for (int b = 1; b <= 8; ++b) {
      for (int d = 1; d <= 8; ++d) {
        const BoundReport r = sigma_bounds(p, b, d);
        const std::string id = "sigma_p" + std::to_string(p) + "_b" + std::to_string(b) + "_d" +
                               std::to_string(d);
        std::vector<Finding> f;
        f.push_back(int_le("recursion_within_theorem", r.recursive_exponent, r.theorem_exponent));
        f.push_back(int_le("lower_within_theorem", r.lower_exponent, r.theorem_exponent));
        for (const auto& c : r.refined) {
          const std::string name = "closed_form" + std::to_string(c.regime);
          const std::string value = to_string(c.value);
          const std::string rec = std::to_string(r.recursive_exponent);
          if (!c.applies)
            f.push_back(vacuous(name, value, rec, "outside regime"));
          else if (c.regime == 1)
            f.push_back(row(name, c.matches, value, rec));
          else
            f.push_back(vacuous(name, value, rec, c.matches ? "match" : "mismatch"));
        }
        if (b == 1)
          f.push_back(row("sigma_1d_exact", r.theorem_exponent == 2 * d + 1,
                          std::to_string(r.theorem_exponent), std::to_string(2 * d + 1)));
        if (b == 2 * d - 1) {
          const std::int64_t dd = d;
          f.push_back(row("theorem_at_2d_minus_1", r.theorem_exponent == 10 * dd * dd - 9 * dd + 2,
                          std::to_string(r.theorem_exponent),
                          std::to_string(10 * dd * dd - 9 * dd + 2)));
        }
        for (auto& x : f)
          rows.push_back({id, std::move(x.check), x.verdict, std::move(x.left), std::move(x.right),
                          std::move(x.witness)});
      }
    }
  }
  return rows;
}

/// Stem orders along a family parameter must strictly increase.
std::vector<ReportRow> divergence_rows(const std::vector<CatalogGroup>& catalog) {
  std::vector<ReportRow> rows;
  for (const auto& [family, key] : {std::pair{"maxclass", "i"}, std::pair{"extraspecial", "n"}}) {
    std::map<std::uint32_t, std::map<int, int>> stems;
    for (const auto& e : catalog) {
      if (e.family != family) continue;
      const auto v = e.param(key);
      if (!v) continue;
      stems[e.p][*v] = stem_data(e.group).log_stem_order;
    }
    for (const auto& [p, seq] : stems) {
      const std::string id = std::string("family_") + family + "_p" + std::to_string(p);
      if (seq.size() < 2) {
        rows.push_back({id, "stem_order_increases", Verdict::Vacuous, "", "", "fewer than two"});
        continue;
      }
      for (auto it = std::next(seq.begin()); it != seq.end(); ++it) {
        const auto prev = std::prev(it);
        rows.push_back({id, "stem_order_increases[" + std::string(key) + "=" + pad(it->first) + "]",
                        it->second > prev->second ? Verdict::Pass : Verdict::Fail,
                        pw(p, prev->second), pw(p, it->second),
                        std::string(key) + "=" + std::to_string(prev->first) + "->" +
                            std::to_string(it->first)});
      }
    }
  }
  return rows;
}

std::vector<Finding> group_rows(Suite suite, const CatalogGroup& e, const SuiteOptions& opts) {
  const GroupContext ctx(e.group);
  switch (suite) {
    case Suite::Lemmas:
      if (ctx.breadth() == 0 || e.group.order() > opts.small_order_limit)
        return {vacuous("lemmas", pw(ctx.p(), e.group.log_order()), "",
                        ctx.breadth() == 0 ? "abelian" : "outside audited order range")};
      return lemma_rows(ctx, opts);
    case Suite::Proposition: return proposition_rows(ctx, opts);
    case Suite::Bounds: return bound_rows(ctx, opts);
    case Suite::Properties: return property_rows(e, ctx, opts);
  }
  return {};
}

}  // namespace

std::vector<ReportRow> run_suite(Suite suite, const std::vector<CatalogGroup>& catalog,
                                 const SuiteOptions& opts) {
  std::vector<std::vector<ReportRow>> per_group(catalog.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < catalog.size();) {
      const CatalogGroup& e = catalog[i];
      std::vector<Finding> findings;
      try {
        findings = group_rows(suite, e, opts);
      } catch (const std::exception& ex) {
        findings = {{"error", Verdict::Fail, "exception", "none", ex.what()}};
      }
      for (auto& f : findings)
        per_group[i].push_back({e.id, std::move(f.check), f.verdict, std::move(f.left),
                                std::move(f.right), std::move(f.witness)});
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, catalog.size()));
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < jobs; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  std::vector<ReportRow> rows;
  for (auto& v : per_group)
    for (auto& r : v) rows.push_back(std::move(r));
  if (suite == Suite::Bounds) {
    for (auto& r : algebra_rows()) rows.push_back(std::move(r));
    for (auto& r : divergence_rows(catalog)) rows.push_back(std::move(r));
  }
  sort_rows(rows);
  return rows;
}

}  // namespace pgrp
