// Acceptance run: one line per criterion, exit 0 iff every criterion passes
// within its time limit.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pgrp/chardeg.hpp"
#include "pgrp/constructions.hpp"
#include "pgrp/io.hpp"
#include "pgrp/structure.hpp"
#include "pgrp/verifier.hpp"

using namespace pgrp;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  std::vector<std::string> problems;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (problems.size() < 5) problems.push_back(what);
    }
  }
};

DixonOptions dixon() {
  DixonOptions o;
  o.class_cap = 4096;
  return o;
}

std::string dt(int b, int d) { return "(" + std::to_string(b) + "," + std::to_string(d) + ")"; }

std::uint64_t order_of(const ConcreteGroup& g) {
  std::uint64_t n = 1;
  for (int k = 0; k < g.log_order(); ++k) n *= g.prime();
  return n;
}

struct Shared {
  std::vector<CatalogGroup> catalog;
  std::vector<InvariantRecord> records;
  std::vector<ReportRow> lemma_rows, proposition_rows, bounds_rows;
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = fn();
  } catch (const std::exception& e) {
    out.ok = false;
    out.problems.push_back(std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > limit_s) {
    out.ok = false;
    out.problems.push_back("over time limit");
  }
  if (!out.ok) ++failures;
  std::ostringstream line;
  line << (out.ok ? "PASS" : "FAIL") << " [" << std::setw(2) << id << "] " << name << " ("
       << std::fixed << std::setprecision(2) << secs << "s / " << std::setprecision(0) << limit_s
       << "s)";
  if (!out.detail.empty()) line << " " << out.detail;
  for (const auto& p : out.problems) line << "\n       - " << p;
  std::cout << line.str() << std::endl;
}

bool is_small(const ConcreteGroup& g) { return order_of(g) <= 729; }

std::size_t count_verdict(const std::vector<ReportRow>& rows, Verdict v) {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.verdict == v;
  return n;
}

}  // namespace

int main() {
  Shared shared;
  {
    const auto start = std::chrono::steady_clock::now();
    const auto specs = grid_entries("default");
    for (const auto& s : *specs)
      shared.catalog.push_back({s.id(), s.family, s.p, s.params, construct_group(s)});
    for (const auto& g : shared.catalog)
      shared.records.push_back(invariant_record(g.group, false, dixon()));
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "setup: " << shared.catalog.size() << " catalog groups with cached invariants ("
              << std::fixed << std::setprecision(2) << secs << "s)" << std::endl;
  }

  criterion(1, "extraspecial baseline", 1, [] {
    Outcome o;
    int checked = 0;
    for (std::uint32_t p : {2u, 3u, 5u}) {
      for (int n = 1; n <= 2; ++n) {
        const ConcreteGroup g = presentation_group(extraspecial(p, n));
        const auto t = breadth_degree_type(g, dixon());
        const std::string tag = "E(p=" + std::to_string(p) + ",n=" + std::to_string(n) + ")";
        o.require(g.log_order() == 2 * n + 1, tag + " order");
        o.require(t.breadth == 1 && t.rexp == n, tag + " dt=" + dt(t.breadth, t.rexp));
        o.require(stem_data(g).is_stem, tag + " not stem");
        o.require(theorem_exponent(1, n) == 2 * n + 1, tag + " theorem bound");
        ++checked;
      }
    }
    o.detail = std::to_string(checked) + " groups";
    return o;
  });

  criterion(2, "maximal-class family", 10, [] {
    Outcome o;
    int checked = 0;
    for (std::uint32_t p : {2u, 3u}) {
      for (int i = 3; i <= 7; ++i) {
        const ConcreteGroup g = presentation_group(maximal_class_m(p, i));
        const std::string tag = "M_" + std::to_string(i) + "(p=" + std::to_string(p) + ")";
        const DegreeProfile prof = degree_profile(g, DegreeMethod::Auto, dixon());
        std::set<int> exps;
        for (const auto& [e, m] : prof.multiplicity) exps.insert(e);
        o.require(g.log_order() == i, tag + " order");
        o.require(central_series(g).nilpotency_class == i - 1, tag + " not of maximal class");
        o.require(conjugacy_data(g).breadth == i - 2, tag + " breadth");
        o.require(exps == std::set<int>{0, 1}, tag + " degrees " + prof.to_string());
        ++checked;
      }
    }
    o.detail = std::to_string(checked) + " groups";
    return o;
  });

  criterion(3, "T-family", 60, [] {
    Outcome o;
    int checked = 0;
    for (int d = 1; 3 * d <= 9; ++d) {
      for (int b = d; b + 2 * d <= 9; ++b) {
        const ConcreteGroup g = t_group(3, b, d);
        const auto t = breadth_degree_type(g, dixon());
        const std::string tag = "T(" + std::to_string(b) + "," + std::to_string(d) + ")";
        o.require(g.log_order() == b + 2 * d, tag + " order");
        o.require(stem_data(g).is_stem, tag + " not stem");
        o.require(t.breadth == b && t.rexp == d, tag + " dt=" + dt(t.breadth, t.rexp));
        ++checked;
      }
    }
    o.detail = std::to_string(checked) + " groups";
    return o;
  });

  criterion(4, "Heisenberg family", 30, [] {
    Outcome o;
    int checked = 0;
    for (int d = 1; d <= 2; ++d) {
      for (int b = 1; b <= d; ++b) {
        const ConcreteGroup g = presentation_group(heisenberg(3, d, b));
        const auto t = breadth_degree_type(g, dixon());
        const std::string tag = "H(d=" + std::to_string(d) + ",b=" + std::to_string(b) + ")";
        o.require(g.log_order() == b + 2 * d, tag + " order");
        o.require(stem_data(g).is_stem, tag + " not stem");
        o.require(t.breadth == b && t.rexp == d, tag + " dt=" + dt(t.breadth, t.rexp));
        ++checked;
      }
    }
    o.detail = std::to_string(checked) + " groups";
    return o;
  });

  criterion(5, "free class-2 family", 120, [] {
    Outcome o;
    for (int r = 2; r <= 4; ++r) {
      const int b = r - 1;
      const ConcreteGroup g = presentation_group(free_class2(3, r));
      const SeriesData series = central_series(g);
      const std::string tag = "F_" + std::to_string(r);
      o.require(class2_applicable(g, series), tag + " not a class-2 exponent-p group");
      const DegreeProfile prof = class2_degrees(g);
      o.require(g.log_order() == (b * b + 3 * b + 2) / 2, tag + " order");
      o.require(conjugacy_data(g).breadth == b, tag + " breadth");
      o.require(series.derived.log_order(3) == b * (b + 1) / 2, tag + " derived order");
      o.require(prof.max_exponent() == (b + 1) / 2, tag + " rexp " + prof.to_string());
    }
    o.detail = "F_2..F_4";
    return o;
  });

  criterion(6, "oracle equivalence", 60, [&] {
    Outcome o;
    int compared = 0, profiles = 0;
    for (const auto& e : shared.catalog) {
      const ConcreteGroup& g = e.group;
      if (!is_small(g)) continue;
      const SeriesData series = central_series(g);
      const ConjugacyData conj = conjugacy_data(g);
      const DegreeProfile dix = dixon_degrees(g, conj, dixon());
      std::vector<DegreeProfile> computed{dix};
      if (class2_applicable(g, series)) {
        const DegreeProfile c2 = class2_degrees(g);
        o.require(dix == c2, e.id + ": dixon " + dix.to_string() + " vs class2 " + c2.to_string());
        computed.push_back(c2);
        ++compared;
      }
      const int log_index_center = g.log_order() - series.center().log_order(g.prime());
      for (const auto& prof : computed) {
        ++profiles;
        std::uint64_t sum = 0, count = 0;
        for (const auto& [ex, m] : prof.multiplicity) {
          std::uint64_t sq = 1;
          for (int k = 0; k < 2 * ex; ++k) sq *= g.prime();
          sum += m * sq;
          count += m;
          o.require(2 * ex <= log_index_center, e.id + ": degree^2 does not divide [G:Z]");
        }
        o.require(sum == order_of(g), e.id + ": sum of squares");
        o.require(count == conj.count(), e.id + ": class count");
        const int log_abel = g.log_order() - series.derived.log_order(g.prime());
        std::uint64_t abel = 1;
        for (int k = 0; k < log_abel; ++k) abel *= g.prime();
        o.require(prof.count(0) == abel, e.id + ": linear characters");
        check_profile_invariants(prof, g, series, conj);
      }
    }
    o.require(compared > 0, "no class-2 group compared");
    o.detail = std::to_string(compared) + " oracle comparisons, " + std::to_string(profiles) +
               " profiles checked";
    return o;
  });

  SuiteOptions suite_opts;

  criterion(7, "lemma suite", 300, [&] {
    Outcome o;
    shared.lemma_rows = run_suite(Suite::Lemmas, shared.catalog, suite_opts);
    std::set<std::string> audited;
    for (const auto& r : shared.lemma_rows) {
      o.require(r.verdict != Verdict::Fail, r.group_id + " " + r.check + ": " + r.left + " vs " +
                                                r.right);
      if (r.verdict == Verdict::Pass) audited.insert(r.group_id);
    }
    std::size_t expected = 0;
    for (const auto& e : shared.catalog) {
      const SeriesData s = central_series(e.group);
      expected += is_small(e.group) && s.nilpotency_class >= 2;
    }
    o.require(audited.size() == expected, "audited " + std::to_string(audited.size()) + " of " +
                                              std::to_string(expected) + " groups");
    o.detail = std::to_string(count_verdict(shared.lemma_rows, Verdict::Pass)) + " pass rows over " +
               std::to_string(audited.size()) + " groups";
    return o;
  });

  criterion(8, "proposition suite", 300, [&] {
    Outcome o;
    shared.proposition_rows = run_suite(Suite::Proposition, shared.catalog, suite_opts);
    std::map<std::string, int> cases;
    for (const auto& r : shared.proposition_rows) {
      o.require(r.verdict != Verdict::Fail, r.group_id + " " + r.check + ": " + r.left + " vs " +
                                                r.right);
      if (r.check == "proposition.case" && r.verdict == Verdict::Pass) ++cases[r.left];
    }
    std::size_t expected = 0;
    for (std::size_t i = 0; i < shared.catalog.size(); ++i)
      expected += shared.records[i].stem && shared.records[i].breadth >= 2;
    std::size_t classified = 0;
    std::string dist;
    for (const auto& [k, n] : cases) {
      classified += n;
      dist += " " + k + ":" + std::to_string(n);
    }
    o.require(classified == expected, "classified " + std::to_string(classified) + " of " +
                                          std::to_string(expected) + " stem groups with b >= 2");
    o.detail = std::to_string(classified) + " groups, cases" + dist;
    return o;
  });

  criterion(9, "theorem bound", 10, [&] {
    Outcome o;
    int stems = 0, equality = 0;
    for (std::size_t i = 0; i < shared.catalog.size(); ++i) {
      const auto& r = shared.records[i];
      if (!r.stem || r.breadth == 0) continue;
      o.require(r.rexp.has_value(), shared.catalog[i].id + ": no cached rexp");
      if (!r.rexp) continue;
      ++stems;
      o.require(r.log_order <= theorem_exponent(r.breadth, *r.rexp),
                shared.catalog[i].id + ": order exceeds the bound");
      if (r.breadth == 1 && r.log_order == theorem_exponent(1, *r.rexp)) ++equality;
    }
    o.require(equality > 0, "no equality witness at (1,d)");
    o.detail = std::to_string(stems) + " stem groups, " + std::to_string(equality) +
               " equality witnesses";
    return o;
  });

  criterion(10, "bound algebra", 1, [] {
    Outcome o;
    int mismatches = 0, regime1 = 0;
    for (int b = 1; b <= 8; ++b) {
      for (int d = 1; d <= 8; ++d) {
        const BoundReport r = sigma_bounds(3, b, d);
        const std::string tag = "(" + std::to_string(b) + "," + std::to_string(d) + ")";
        o.require(r.recursive_exponent <= r.theorem_exponent, tag + " recursion exceeds theorem");
        o.require(r.theorem_exponent * 2 == static_cast<std::int64_t>(b) * (3 * b + 4 * d - 1),
                  tag + " theorem exponent");
        if (r.refined[0].applies) {
          ++regime1;
          o.require(r.refined[0].matches, tag + " first closed form " + to_string(r.refined[0].value) +
                                              " vs " + std::to_string(r.recursive_exponent));
        }
        for (int k = 1; k < 3; ++k) mismatches += r.refined[k].applies && !r.refined[k].matches;
      }
      const int d = (b + 1) / 2;
      if (b == 2 * d - 1)
        o.require(theorem_exponent(b, d) == 10 * d * d - 9 * d + 2,
                  "theorem at b=2d-1, d=" + std::to_string(d));
    }
    o.require(regime1 > 0, "first regime never applies");
    o.detail = std::to_string(regime1) + " first-regime points match; " +
               std::to_string(mismatches) + " second/third closed-form mismatches reported as data";
    return o;
  });

  criterion(11, "unboundedness", 10, [] {
    Outcome o;
    for (std::uint32_t p : {2u, 3u}) {
      int prev = 0;
      for (int i = 3; i <= 7; ++i) {
        const ConcreteGroup g = presentation_group(maximal_class_m(p, i));
        const int s = stem_data(g).log_stem_order;
        const std::string tag = "M_" + std::to_string(i) + "(p=" + std::to_string(p) + ")";
        o.require(breadth_degree_type(g, dixon()).rexp == 1, tag + " rexp");
        o.require(s > prev, tag + " stem order does not increase");
        prev = s;
      }
    }
    int prev = 0;
    for (int n = 1; n <= 3; ++n) {
      const ConcreteGroup g = presentation_group(extraspecial(3, n));
      const int s = stem_data(g).log_stem_order;
      o.require(conjugacy_data(g).breadth == 1, "E(3," + std::to_string(n) + ") breadth");
      o.require(s > prev, "E(3," + std::to_string(n) + ") stem order does not increase");
      prev = s;
    }
    o.detail = "M_3..M_7 for p=2,3; E(3,1..3)";
    return o;
  });

  criterion(12, "isoclinism invariance", 60, [&] {
    Outcome o;
    int checked = 0;
    for (const auto& e : shared.catalog) {
      const ConcreteGroup& g = e.group;
      if (!is_small(g)) continue;
      // only p-groups are supported, so the abelian factor is C_p
      const ConcreteGroup gx = direct_product(g, presentation_group(PcPresentation(g.prime(), 1)));
      const DegreeProfile pg = degree_profile(g, DegreeMethod::Auto, dixon());
      const DegreeProfile px = degree_profile(gx, DegreeMethod::Auto, dixon());
      const auto fg = isoclinism_fingerprint(g, &pg);
      const auto fx = isoclinism_fingerprint(gx, &px);
      const auto diff = fg.differences(fx);
      o.require(diff.empty(), e.id + ": " + (diff.empty() ? "" : diff.front()));
      ++checked;
    }
    const ConcreteGroup d8 = presentation_group(dihedral8());
    const ConcreteGroup q8 = presentation_group(quaternion8());
    const DegreeProfile pd = degree_profile(d8), pq = degree_profile(q8);
    const auto diff = isoclinism_fingerprint(d8, &pd).differences(isoclinism_fingerprint(q8, &pq));
    o.require(diff.empty(), "D8 vs Q8: " + (diff.empty() ? "" : diff.front()));
    o.detail = std::to_string(checked) + " groups against G x C_p, D8 = Q8";
    return o;
  });

  criterion(13, "determinism", 600, [&] {
    Outcome o;
    const std::vector<std::pair<Suite, const std::vector<ReportRow>*>> earlier = {
        {Suite::Lemmas, &shared.lemma_rows},
        {Suite::Proposition, &shared.proposition_rows},
        {Suite::Bounds, nullptr},
        {Suite::Properties, nullptr}};
    for (const auto& [suite, rows] : earlier) {
      const std::string name = to_string(suite);
      std::string reference;
      if (rows) {
        reference = emit_report(*rows, ReportFormat::Csv);
      } else {
        SuiteOptions one = suite_opts;
        one.jobs = 1;
        reference = emit_report(run_suite(suite, shared.catalog, one), ReportFormat::Csv);
      }
      for (const char* jobs : {"2", "4"}) {
        std::ostringstream out, err;
        const char* argv[] = {"pgrp",     "verify", "--suite",  name.c_str(), "--catalog",
                              "default/", "--format", "csv",    "--jobs",     jobs};
        const int rc = run_command(10, argv, out, err);
        o.require(rc == 0, name + " --jobs " + jobs + " exit " + std::to_string(rc) + " " +
                               err.str());
        o.require(out.str() == reference, name + " --jobs " + jobs + " report differs");
      }
    }
    o.detail = "4 suites at jobs 1, 2, 4 byte-identical";
    return o;
  });

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
