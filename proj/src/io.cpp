#include "pgrp/io.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "pgrp/constructions.hpp"
#include "pgrp/modular.hpp"
#include "pgrp/structure.hpp"

namespace pgrp {

namespace fs = std::filesystem;
using nlohmann::json;
using ordered = nlohmann::ordered_json;

ParseError::ParseError(std::string field, std::size_t line, const std::string& message,
                       const std::string& source)
    : GroupError((source.empty() ? std::string() : source + ": ") +
                 (line ? "line " + std::to_string(line) + ": " : std::string()) +
                 (field.empty() ? "" : "field " + field + ": ") + message),
      field_(std::move(field)),
      message_(message),
      line_(line) {}

namespace {

/// Line of the first occurrence of `needle`, 0 if absent.
std::size_t line_of(std::string_view text, std::string_view needle, std::size_t from = 0) {
  const auto pos = text.find(needle, from);
  if (pos == std::string_view::npos) return 0;
  return 1 + std::count(text.begin(), text.begin() + pos, '\n');
}

std::size_t nth_line_after(std::string_view text, std::string_view key, std::size_t offset) {
  const std::size_t l = line_of(text, key);
  return l ? l + offset : 0;
}

std::int64_t get_int(const json& j, const std::string& field, std::size_t line) {
  if (!j.is_number_integer()) throw ParseError(field, line, "expected an integer");
  return j.get<std::int64_t>();
}

ExponentVector get_word(const json& j, const std::string& field, std::size_t line,
                        std::uint32_t p, std::size_t rank) {
  if (!j.is_array()) throw ParseError(field, line, "expected an array of exponents");
  if (j.size() != rank)
    throw ParseError(field, line,
                     "expected " + std::to_string(rank) + " entries, got " +
                         std::to_string(j.size()));
  ExponentVector w(rank);
  for (std::size_t k = 0; k < rank; ++k) {
    const std::string f = field + "[" + std::to_string(k) + "]";
    const std::int64_t e = get_int(j[k], f, line);
    if (e < 0 || e >= static_cast<std::int64_t>(p))
      throw ParseError(f, line, "exponent " + std::to_string(e) + " outside [0," +
                                    std::to_string(p) + ")");
    w[k] = static_cast<Residue>(e);
  }
  return w;
}

std::string word_json(const ExponentVector& w) {
  std::string s = "[";
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(w[k]);
  }
  return s + "]";
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("", 0, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GroupError("cannot write " + path.string());
  out << text;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

PcPresentation parse_presentation(std::string_view text, bool unchecked) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("", 0, e.what());
  }
  if (!j.is_object()) throw ParseError("", 1, "expected a JSON object");
  for (const auto& [key, _] : j.items())
    if (key != "p" && key != "rank" && key != "power" && key != "conj" && key != "labels")
      throw ParseError(key, line_of(text, "\"" + key + "\""), "unknown field");
  for (const char* key : {"p", "rank", "power"})
    if (!j.contains(key)) throw ParseError(key, 0, "missing field");

  const std::int64_t p = get_int(j["p"], "p", line_of(text, "\"p\""));
  if (p < 2 || !modular::is_prime(static_cast<std::uint64_t>(p)) || p > 65521)
    throw ParseError("p", line_of(text, "\"p\""), std::to_string(p) + " is not a supported prime");
  const std::int64_t rank = get_int(j["rank"], "rank", line_of(text, "\"rank\""));
  if (rank < 0 || rank > 64)
    throw ParseError("rank", line_of(text, "\"rank\""), "rank must lie in [0,64]");
  const auto P = static_cast<std::uint32_t>(p);
  const auto n = static_cast<std::size_t>(rank);
  PcPresentation pres(P, n);

  const json& power = j["power"];
  if (!power.is_array() || power.size() != n)
    throw ParseError("power", line_of(text, "\"power\""),
                     "expected " + std::to_string(n) + " power words");
  for (std::size_t i = 0; i < n; ++i) {
    const std::string f = "power[" + std::to_string(i) + "]";
    const std::size_t line = nth_line_after(text, "\"power\"", i + 1);
    ExponentVector w = get_word(power[i], f, line, P, n);
    try {
      pres.set_power(i, std::move(w));
    } catch (const std::invalid_argument& e) {
      throw ParseError(f, line, e.what());
    }
  }

  if (j.contains("conj")) {
    const json& conj = j["conj"];
    if (!conj.is_object()) throw ParseError("conj", line_of(text, "\"conj\""), "expected an object");
    for (const auto& [key, value] : conj.items()) {
      const std::string f = "conj[\"" + key + "\"]";
      const std::size_t line = line_of(text, "\"" + key + "\"", text.find("\"conj\""));
      std::size_t a = 0, b = 0;
      char comma = 0;
      std::istringstream ks(key);
      if (!(ks >> a >> comma >> b) || comma != ',' || !ks.eof())
        throw ParseError(f, line, "key must have the form \"i,j\"");
      if (a < 1 || b <= a || b > n)
        throw ParseError(f, line, "need 1 <= i < j <= rank");
      ExponentVector w = get_word(value, f, line, P, n);
      try {
        pres.set_conjugate(a - 1, b - 1, std::move(w));
      } catch (const std::invalid_argument& e) {
        throw ParseError(f, line, e.what());
      }
    }
  }

  if (j.contains("labels")) {
    const json& labels = j["labels"];
    const std::size_t line = line_of(text, "\"labels\"");
    if (!labels.is_array() || labels.size() != n)
      throw ParseError("labels", line, "expected " + std::to_string(n) + " strings");
    std::vector<std::string> names;
    for (const auto& l : labels) {
      if (!l.is_string()) throw ParseError("labels", line, "expected strings");
      names.push_back(l.get<std::string>());
    }
    try {
      pres.set_labels(std::move(names));
    } catch (const std::invalid_argument& e) {
      throw ParseError("labels", line, e.what());
    }
  }

  if (!unchecked) {
    if (auto v = check_consistency(pres))
      throw ParseError("consistency", 0, "inconsistent presentation: " + v->describe());
  }
  return pres;
}

PcPresentation read_presentation(const fs::path& path, bool unchecked) {
  const std::string text = read_file(path);
  try {
    return parse_presentation(text, unchecked);
  } catch (const ParseError& e) {
    throw ParseError(e.field(), e.line(), e.message(), path.string());
  }
}

std::string serialize_presentation(const PcPresentation& pres) {
  const std::size_t n = pres.rank();
  std::string s = "{\n";
  s += "  \"p\": " + std::to_string(pres.prime()) + ",\n";
  s += "  \"rank\": " + std::to_string(n) + ",\n";
  s += "  \"power\": [";
  for (std::size_t i = 0; i < n; ++i) s += std::string(i ? "," : "") + "\n    " + word_json(pres.power(i));
  s += n ? "\n  ],\n" : "],\n";
  s += "  \"conj\": {";
  bool first = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      if (pres.conjugate_is_trivial(i, k)) continue;
      s += std::string(first ? "" : ",") + "\n    \"" + std::to_string(i + 1) + "," +
           std::to_string(k + 1) + "\": " + word_json(pres.conjugate(i, k));
      first = false;
    }
  }
  s += first ? "}" : "\n  }";
  if (!pres.labels().empty()) {
    s += ",\n  \"labels\": [";
    for (std::size_t i = 0; i < n; ++i) s += std::string(i ? ", " : "") + json(pres.labels()[i]).dump();
    s += "]";
  }
  return s + "\n}\n";
}

void write_presentation(const PcPresentation& pres, const fs::path& path) {
  write_file(path, serialize_presentation(pres));
}

std::optional<ReportFormat> parse_format(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  return std::nullopt;
}

std::string emit_report(std::vector<ReportRow> rows, ReportFormat format) {
  sort_rows(rows);
  if (format == ReportFormat::Csv) {
    std::string s = "group_id,check,verdict,left,right,witness\n";
    for (const auto& r : rows) {
      s += csv_field(r.group_id) + "," + csv_field(r.check) + "," + to_string(r.verdict) + "," +
           csv_field(r.left) + "," + csv_field(r.right) + "," + csv_field(r.witness) + "\n";
    }
    return s;
  }
  ordered arr = ordered::array();
  for (const auto& r : rows) {
    ordered o;
    o["group_id"] = r.group_id;
    o["check"] = r.check;
    o["verdict"] = to_string(r.verdict);
    o["left"] = r.left;
    o["right"] = r.right;
    o["witness"] = r.witness;
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

// ---------------------------------------------------------------- catalog

std::string CatalogSpec::id() const {
  std::string s = family + "_p" + std::to_string(p);
  for (const auto& [k, v] : params) s += "_" + k + std::to_string(v);
  return s;
}

namespace {

CatalogSpec spec(std::string family, std::uint32_t p,
                 std::vector<std::pair<std::string, int>> params = {}) {
  return {std::move(family), p, std::move(params)};
}

int param(const CatalogSpec& s, const std::string& key) {
  for (const auto& [k, v] : s.params)
    if (k == key) return v;
  throw GroupError(s.family + " needs parameter " + key);
}

}  // namespace

std::optional<std::vector<CatalogSpec>> grid_entries(const std::string& name) {
  struct Limits {
    int maxclass_top, extraspecial_top, freeclass2_top, tgroup_log;
  };
  std::vector<std::pair<std::uint32_t, Limits>> primes;
  if (name == "default") {
    primes = {{2, {7, 3, 0, 9}}, {3, {7, 3, 4, 9}}, {5, {7, 3, 3, 6}}};
  } else if (name == "small") {
    primes = {{2, {5, 2, 0, 6}}, {3, {5, 2, 3, 6}}};
  } else {
    return std::nullopt;
  }
  std::vector<CatalogSpec> out;
  for (const auto& [p, lim] : primes) {
    for (int n = 1; n <= lim.extraspecial_top; ++n) out.push_back(spec("extraspecial", p, {{"n", n}}));
    for (int i = 3; i <= lim.maxclass_top; ++i) out.push_back(spec("maxclass", p, {{"i", i}}));
    for (int d = 1; d <= 2; ++d)
      for (int b = 1; b <= d; ++b) out.push_back(spec("heisenberg", p, {{"d", d}, {"b", b}}));
    if (p % 2 == 1)
      for (int r = 2; r <= lim.freeclass2_top; ++r) out.push_back(spec("freeclass2", p, {{"r", r}}));
    for (int d = 1; 3 * d <= lim.tgroup_log; ++d)
      for (int b = d; b + 2 * d <= lim.tgroup_log; ++b)
        out.push_back(spec("tgroup", p, {{"b", b}, {"d", d}}));
  }
  out.push_back(spec("quaternion8", 2));
  std::sort(out.begin(), out.end(),
            [](const CatalogSpec& a, const CatalogSpec& b) { return a.id() < b.id(); });
  return out;
}

PcPresentation construct_presentation(const CatalogSpec& s) {
  if (s.family == "extraspecial") return extraspecial(s.p, param(s, "n"));
  if (s.family == "maxclass") return maximal_class_m(s.p, param(s, "i"));
  if (s.family == "heisenberg") return heisenberg(s.p, param(s, "d"), param(s, "b"));
  if (s.family == "freeclass2") return free_class2(s.p, param(s, "r"));
  if (s.family == "tgroup") return t_group_presentation(s.p, param(s, "b"), param(s, "d"));
  if (s.family == "quaternion8") {
    if (s.p != 2) throw GroupError("quaternion8 needs p = 2");
    return quaternion8();
  }
  if (s.family == "dihedral8") {
    if (s.p != 2) throw GroupError("dihedral8 needs p = 2");
    return dihedral8();
  }
  throw GroupError("unknown family " + s.family);
}

ConcreteGroup construct_group(const CatalogSpec& s) {
  if (s.family == "tgroup") return t_group(s.p, param(s, "b"), param(s, "d"));
  return presentation_group(construct_presentation(s));
}

InvariantRecord invariant_record(const ConcreteGroup& g, bool with_degrees,
                                 const DixonOptions& opts) {
  const SeriesData series = central_series(g);
  const ConjugacyData conj = conjugacy_data(g);
  const StemData stem = stem_data(g, series);
  InvariantRecord r;
  r.p = g.prime();
  r.log_order = g.log_order();
  r.nilpotency_class = series.nilpotency_class;
  r.breadth = conj.breadth;
  r.stem = stem.is_stem;
  r.log_stem_order = stem.log_stem_order;
  r.log_center = series.center().log_order(r.p);
  r.log_derived = series.derived.log_order(r.p);
  r.class_count = conj.count();
  std::optional<DegreeProfile> prof;
  try {
    prof = degree_profile(g, DegreeMethod::Auto, opts);
    r.rexp = prof->max_exponent();
    if (with_degrees) r.degrees = prof;
  } catch (const ClassCapExceeded&) {
    if (with_degrees) throw;
  }
  r.fingerprint_hash =
      isoclinism_fingerprint(g, series, conj, prof ? &*prof : nullptr).hash();
  return r;
}

namespace {

ordered record_json(const InvariantRecord& r) {
  ordered o;
  o["p"] = r.p;
  o["order_exponent"] = r.log_order;
  o["class"] = r.nilpotency_class;
  o["b"] = r.breadth;
  if (r.rexp) o["d"] = *r.rexp;
  o["stem"] = r.stem;
  o["stem_order_exponent"] = r.log_stem_order;
  o["center_exponent"] = r.log_center;
  o["derived_exponent"] = r.log_derived;
  o["class_count"] = r.class_count;
  o["fingerprint"] = r.fingerprint_hash;
  if (r.degrees) {
    ordered d = ordered::object();
    for (const auto& [e, m] : r.degrees->multiplicity) d[std::to_string(e)] = m;
    o["degrees"] = std::move(d);
  }
  return o;
}

}  // namespace

std::string emit_record(const InvariantRecord& r, ReportFormat format) {
  const ordered o = record_json(r);
  if (format == ReportFormat::Json) return o.dump(2) + "\n";
  std::string s = "field,value\n";
  for (const auto& [k, v] : o.items()) {
    if (k == "degrees") {
      s += "degrees," + csv_field(r.degrees->to_string()) + "\n";
    } else {
      s += k + "," + v.dump() + "\n";
    }
  }
  return s;
}

std::vector<CatalogGroup> build_catalog(const std::vector<CatalogSpec>& specs, const fs::path& dir,
                                        const DixonOptions& opts, unsigned jobs) {
  fs::create_directories(dir);
  std::vector<std::optional<CatalogGroup>> groups(specs.size());
  std::vector<InvariantRecord> records(specs.size());
  std::vector<std::string> errors(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < specs.size();) {
      const CatalogSpec& s = specs[i];
      try {
        write_presentation(construct_presentation(s), dir / (s.id() + ".json"));
        ConcreteGroup g = construct_group(s);
        records[i] = invariant_record(g, true, opts);
        groups[i].emplace(CatalogGroup{s.id(), s.family, s.p, s.params, std::move(g)});
      } catch (const std::exception& e) {
        errors[i] = s.id() + ": " + e.what();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, specs.size()));
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < n; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  for (const auto& e : errors)
    if (!e.empty()) throw GroupError(e);

  ordered index;
  ordered list = ordered::array();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    ordered e;
    e["id"] = specs[i].id();
    e["family"] = specs[i].family;
    e["p"] = specs[i].p;
    ordered params = ordered::object();
    for (const auto& [k, v] : specs[i].params) params[k] = v;
    e["params"] = std::move(params);
    e["file"] = specs[i].id() + ".json";
    ordered rec = record_json(records[i]);
    rec.erase("degrees");
    e["record"] = std::move(rec);
    list.push_back(std::move(e));
  }
  index["groups"] = std::move(list);
  write_file(dir / "catalog.json", index.dump(2) + "\n");
  std::vector<CatalogGroup> out;
  for (auto& g : groups) out.push_back(std::move(*g));
  return out;
}

std::vector<CatalogGroup> load_catalog(const fs::path& dir, bool unchecked) {
  if (!fs::is_directory(dir)) throw ParseError("", 0, "catalog directory " + dir.string() + " not found");
  std::vector<CatalogGroup> out;
  const fs::path index = dir / "catalog.json";
  if (fs::exists(index)) {
    const std::string text = read_file(index);
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError("", 0, index.string() + ": " + e.what());
    }
    if (!j.contains("groups") || !j["groups"].is_array())
      throw ParseError("groups", 0, index.string() + ": expected a groups array");
    for (const auto& e : j["groups"]) {
      if (!e.contains("id") || !e["id"].is_string())
        throw ParseError("id", 0, index.string() + ": every entry needs an id");
      CatalogGroup g{e["id"].get<std::string>(), e.value("family", std::string()),
                     e.value("p", 2u), {}, ConcreteGroup(nullptr)};
      if (e.contains("params"))
        for (const auto& [k, v] : e["params"].items()) g.params.emplace_back(k, v.get<int>());
      if (!g.family.empty()) {
        g.group = construct_group(CatalogSpec{g.family, g.p, g.params});
      } else {
        const PcPresentation pres =
            read_presentation(dir / e.value("file", g.id + ".json"), unchecked);
        g.p = pres.prime();
        g.group = presentation_group(pres);
      }
      out.push_back(std::move(g));
    }
  } else {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      const PcPresentation pres = read_presentation(f, unchecked);
      out.push_back({f.stem().string(), "", pres.prime(), {}, presentation_group(pres)});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const CatalogGroup& a, const CatalogGroup& b) { return a.id < b.id; });
  return out;
}

}  // namespace pgrp
