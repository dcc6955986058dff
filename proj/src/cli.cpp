#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pgrp/io.hpp"
#include "pgrp/modular.hpp"

namespace pgrp {

namespace fs = std::filesystem;
using ordered = nlohmann::ordered_json;

namespace {

constexpr int kUsage = 2;

struct Options {
  std::string family;
  std::uint32_t p = 0;
  int n = -1, i = -1, d = -1, b = -1, r = -1;
  std::string output;
  std::string file;
  bool degrees = false;
  bool unchecked = false;
  std::string format = "json";
  std::string method = "auto";
  std::string suite;
  std::string catalog;
  std::string grid;
  std::string dir;
  unsigned jobs = 1;
  std::size_t class_cap = 4096;
};

DixonOptions dixon_options(const Options& o) {
  DixonOptions d;
  d.class_cap = o.class_cap;
  return d;
}

ReportFormat format_of(const Options& o) {
  if (auto f = parse_format(o.format)) return *f;
  throw CLI::ValidationError("--format", "expected json or csv");
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw GroupError("cannot write " + path);
  f << text;
}

CatalogSpec construct_spec(const Options& o) {
  CatalogSpec s{o.family, o.p, {}};
  auto need = [&](const char* name, int value) {
    if (value < 0) throw CLI::ValidationError(std::string("--") + name, "required for " + o.family);
    s.params.emplace_back(name, value);
  };
  if (o.family == "extraspecial") {
    need("n", o.n);
  } else if (o.family == "maxclass") {
    need("i", o.i);
  } else if (o.family == "heisenberg" || o.family == "tgroup") {
    if (o.family == "tgroup") {
      need("b", o.b);
      need("d", o.d);
    } else {
      need("d", o.d);
      need("b", o.b);
    }
  } else if (o.family == "freeclass2") {
    need("r", o.r);
  }
  return s;
}

int cmd_construct(const Options& o, std::ostream& out) {
  const PcPresentation pres = construct_presentation(construct_spec(o));
  write_output(serialize_presentation(pres), o.output, out);
  return 0;
}

int cmd_invariants(const Options& o, std::ostream& out) {
  const ConcreteGroup g = presentation_group(read_presentation(o.file, o.unchecked));
  write_output(emit_record(invariant_record(g, o.degrees, dixon_options(o)), format_of(o)),
               o.output, out);
  return 0;
}

int cmd_degrees(const Options& o, std::ostream& out) {
  DegreeMethod method = DegreeMethod::Auto;
  if (o.method == "dixon") method = DegreeMethod::Dixon;
  else if (o.method == "class2") method = DegreeMethod::Class2;
  const ConcreteGroup g = presentation_group(read_presentation(o.file, o.unchecked));
  const DegreeProfile prof = degree_profile(g, method, dixon_options(o));
  std::string text;
  if (format_of(o) == ReportFormat::Json) {
    ordered j;
    j["p"] = g.prime();
    j["method"] = o.method;
    j["class_count"] = prof.class_count();
    j["rexp"] = prof.max_exponent();
    ordered m = ordered::object();
    for (const auto& [e, c] : prof.multiplicity) m[std::to_string(e)] = c;
    j["degrees"] = std::move(m);
    text = j.dump(2) + "\n";
  } else {
    text = "exponent,multiplicity\n";
    for (const auto& [e, c] : prof.multiplicity)
      text += std::to_string(e) + "," + std::to_string(c) + "\n";
  }
  write_output(text, o.output, out);
  return 0;
}

int cmd_bounds(const Options& o, std::ostream& out) {
  if (!modular::is_prime(o.p)) throw CLI::ValidationError("--p", "must be prime");
  if (o.b < 1 || o.d < 1) throw CLI::ValidationError("--b/--d", "must be positive");
  const BoundReport r = sigma_bounds(o.p, o.b, o.d);
  std::string text;
  if (format_of(o) == ReportFormat::Json) {
    ordered j;
    j["p"] = r.p;
    j["b"] = r.b;
    j["d"] = r.d;
    j["theorem_exponent"] = r.theorem_exponent;
    j["recursive_exponent"] = r.recursive_exponent;
    j["lower_exponent"] = r.lower_exponent;
    j["regime"] = bound_regime(r.b, r.d);
    ordered refined = ordered::array();
    for (const auto& f : r.refined) {
      ordered e;
      e["regime"] = f.regime;
      e["value"] = to_string(f.value);
      e["applies"] = f.applies;
      e["integral"] = f.integral;
      e["matches_recursion"] = f.matches;
      refined.push_back(std::move(e));
    }
    j["closed_forms"] = std::move(refined);
    j["recursive_within_theorem"] = r.recursive_within_theorem;
    j["lower_within_theorem"] = r.lower_within_theorem;
    text = j.dump(2) + "\n";
  } else {
    text = "field,value\n";
    text += "p," + std::to_string(r.p) + "\nb," + std::to_string(r.b) + "\nd," +
            std::to_string(r.d) + "\n";
    text += "theorem_exponent," + std::to_string(r.theorem_exponent) + "\n";
    text += "recursive_exponent," + std::to_string(r.recursive_exponent) + "\n";
    text += "lower_exponent," + std::to_string(r.lower_exponent) + "\n";
    for (const auto& f : r.refined)
      text += "closed_form" + std::to_string(f.regime) + "," + to_string(f.value) + "\n";
  }
  write_output(text, o.output, out);
  return r.recursive_within_theorem && r.lower_within_theorem ? 0 : 1;
}

std::vector<CatalogGroup> open_catalog(const Options& o) {
  const fs::path dir(o.catalog);
  if (!fs::exists(dir)) {
    // a bare grid name stands for the grid built in memory
    fs::path name = dir;
    if (name.filename().empty()) name = name.parent_path();
    if (auto specs = grid_entries(name.filename().string()); specs && name.parent_path().empty()) {
      std::vector<CatalogGroup> out;
      for (const auto& s : *specs)
        out.push_back({s.id(), s.family, s.p, s.params, construct_group(s)});
      return out;
    }
  }
  return load_catalog(dir, o.unchecked);
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto suite = parse_suite(o.suite);
  if (!suite) throw CLI::ValidationError("--suite", "expected lemmas, proposition, bounds or properties");
  const ReportFormat format = format_of(o);
  SuiteOptions opts;
  opts.jobs = std::max(1u, o.jobs);
  opts.dixon = dixon_options(o);
  const auto rows = run_suite(*suite, open_catalog(o), opts);
  write_output(emit_report(rows, format), o.output, out);
  for (const auto& r : rows)
    if (r.verdict == Verdict::Fail) return 1;
  return 0;
}

int cmd_catalog_build(const Options& o, std::ostream& out) {
  auto specs = grid_entries(o.grid);
  if (!specs) throw CLI::ValidationError("--grid", "unknown grid " + o.grid + " (default, small)");
  const auto groups = build_catalog(*specs, o.dir, dixon_options(o), std::max(1u, o.jobs));
  out << "wrote " << groups.size() << " groups to " << o.dir << "\n";
  return 0;
}

}  // namespace

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite p-group engine: constructions, invariants and bound audits", "pgrp"};
  app.require_subcommand(1);
  Options o;

  auto add_cap = [&](CLI::App* c) {
    c->add_option("--class-cap", o.class_cap, "Class count limit for Dixon-Schneider");
  };
  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* construct = app.add_subcommand("construct", "Write a family member as a presentation file");
  construct->add_option("--family", o.family)
      ->required()
      ->check(CLI::IsMember(
          {"extraspecial", "maxclass", "heisenberg", "freeclass2", "tgroup", "quaternion8", "dihedral8"}));
  construct->add_option("--p", o.p)->required();
  construct->add_option("--n", o.n, "extraspecial: order p^{2n+1}");
  construct->add_option("--i", o.i, "maxclass: order p^i");
  construct->add_option("--d", o.d);
  construct->add_option("--b", o.b);
  construct->add_option("--r", o.r, "freeclass2: rank");
  construct->add_option("-o,--output", o.output, "Output file (stdout if omitted)");

  auto* invariants = app.add_subcommand("invariants", "Print the invariant record of a presentation");
  invariants->add_option("file", o.file)->required();
  invariants->add_flag("--degrees", o.degrees, "Include the degree multiset");
  add_format(invariants);
  add_cap(invariants);
  invariants->add_flag("--unchecked", o.unchecked, "Skip the consistency check");
  invariants->add_option("-o,--output", o.output);

  auto* degrees = app.add_subcommand("degrees", "Compute irreducible character degrees");
  degrees->add_option("file", o.file)->required();
  degrees->add_option("--method", o.method)->check(CLI::IsMember({"auto", "dixon", "class2"}));
  add_format(degrees);
  add_cap(degrees);
  degrees->add_flag("--unchecked", o.unchecked);
  degrees->add_option("-o,--output", o.output);

  auto* bounds = app.add_subcommand("bounds", "Upper and lower exponents for sigma(b,d)");
  bounds->add_option("--p", o.p)->required();
  bounds->add_option("--b", o.b)->required();
  bounds->add_option("--d", o.d)->required();
  add_format(bounds);
  bounds->add_option("-o,--output", o.output);

  auto* verify = app.add_subcommand("verify", "Run an audit suite over a catalog");
  verify->add_option("--suite", o.suite)
      ->required()
      ->check(CLI::IsMember({"lemmas", "proposition", "bounds", "properties"}));
  verify->add_option("--catalog", o.catalog, "Catalog directory, or a grid name")->required();
  add_format(verify);
  verify->add_option("--jobs", o.jobs, "Worker threads");
  add_cap(verify);
  verify->add_flag("--unchecked", o.unchecked);
  verify->add_option("-o,--output", o.output);

  auto* catalog = app.add_subcommand("catalog", "Catalog management");
  catalog->require_subcommand(1);
  auto* build = catalog->add_subcommand("build", "Construct a grid and write its presentations");
  build->add_option("--grid", o.grid, "default or small")->required();
  build->add_option("dir", o.dir)->required();
  build->add_option("--jobs", o.jobs);
  add_cap(build);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*construct) return cmd_construct(o, out);
    if (*invariants) return cmd_invariants(o, out);
    if (*degrees) return cmd_degrees(o, out);
    if (*bounds) return cmd_bounds(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*build) return cmd_catalog_build(o, out);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace pgrp
