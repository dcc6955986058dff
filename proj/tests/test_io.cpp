#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "pgrp/constructions.hpp"
#include "pgrp/io.hpp"

using namespace pgrp;
namespace fs = std::filesystem;

namespace {

struct Cli {
  int rc;
  std::string out, err;
};

Cli run(std::vector<std::string> args) {
  args.insert(args.begin(), "pgrp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int rc = run_command(static_cast<int>(argv.size()), argv.data(), out, err);
  return {rc, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("pgrp_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string replace_once(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("presentations round-trip byte for byte") {
  for (const auto& pres : {extraspecial(3, 1), extraspecial(2, 2), maximal_class_m(5, 6),
                           heisenberg(3, 2, 1), free_class2(3, 4), t_group_presentation(3, 4, 2),
                           quaternion8(), PcPresentation(7, 2), PcPresentation(2, 0)}) {
    const std::string text = serialize_presentation(pres);
    const PcPresentation back = parse_presentation(text);
    CHECK(back == pres);
    CHECK(serialize_presentation(back) == text);
  }
}

TEST_CASE("malformed presentations name the field and line") {
  const std::string good = serialize_presentation(extraspecial(3, 1));
  SUBCASE("exponent out of range") {
    const std::string bad = replace_once(good, "\"1,2\": [0,1,1]", "\"1,2\": [0,1,3]");
    try {
      parse_presentation(bad);
      FAIL("accepted");
    } catch (const ParseError& e) {
      CHECK(e.field() == "conj[\"1,2\"][2]");
      CHECK(e.line() == 10);
    }
  }
  SUBCASE("wrong word length") {
    const std::string bad = replace_once(good, "[0,0,0],\n    [0,0,0],", "[0,0],\n    [0,0,0],");
    try {
      parse_presentation(bad);
      FAIL("accepted");
    } catch (const ParseError& e) {
      CHECK(e.field() == "power[0]");
      CHECK(e.line() == 5);
    }
  }
  SUBCASE("relation outside its support") {
    const std::string bad = replace_once(good, "\"1,2\": [0,1,1]", "\"1,2\": [1,1,1]");
    CHECK_THROWS_AS(parse_presentation(bad), ParseError);
  }
  SUBCASE("bad keys and primes") {
    CHECK_THROWS_AS(parse_presentation(replace_once(good, "\"1,2\"", "\"2,1\"")), ParseError);
    CHECK_THROWS_AS(parse_presentation(replace_once(good, "\"p\": 3", "\"p\": 4")), ParseError);
    CHECK_THROWS_AS(parse_presentation(replace_once(good, "\"rank\"", "\"rnak\"")), ParseError);
    CHECK_THROWS_AS(parse_presentation("{\"p\": 3,"), ParseError);
  }
}

TEST_CASE("inconsistent input is refused unless unchecked") {
  const std::string good = serialize_presentation(dihedral8());
  const std::string bad = replace_once(good, "\"power\": [\n    [0,0,0]", "\"power\": [\n    [0,1,0]");
  try {
    parse_presentation(bad);
    FAIL("accepted");
  } catch (const ParseError& e) {
    CHECK(e.field() == "consistency");
    CHECK(std::string(e.what()).find("g1") != std::string::npos);
  }
  CHECK_NOTHROW(parse_presentation(bad, true));
}

TEST_CASE("report emission") {
  CHECK(emit_report({}, ReportFormat::Csv) == "group_id,check,verdict,left,right,witness\n");
  CHECK(emit_report({}, ReportFormat::Json) == "[]\n");
  const std::vector<ReportRow> rows{
      {"b", "x", Verdict::Fail, "3^4", "3^3", "dt=(1,2)"},
      {"a", "y", Verdict::Pass, "1", "1", ""},
      {"a", "x", Verdict::Vacuous, "", "", "say \"hi\""},
  };
  const std::string csv = emit_report(rows, ReportFormat::Csv);
  CHECK(csv ==
        "group_id,check,verdict,left,right,witness\n"
        "a,x,vacuous,,,\"say \"\"hi\"\"\"\n"
        "a,y,pass,1,1,\n"
        "b,x,fail,3^4,3^3,\"dt=(1,2)\"\n");
  const std::string json = emit_report(rows, ReportFormat::Json);
  CHECK(json.find("\"verdict\": \"fail\"") != std::string::npos);
  CHECK(json.find("\"group_id\": \"a\"") < json.find("\"group_id\": \"b\""));
}

TEST_CASE("catalog grids") {
  const auto grid = grid_entries("default");
  REQUIRE(grid.has_value());
  std::set<std::string> ids;
  for (const auto& s : *grid) ids.insert(s.id());
  CHECK(ids.size() == grid->size());
  CHECK(ids.count("heisenberg_p3_d2_b1") == 1);
  CHECK(ids.count("tgroup_p3_b3_d2") == 1);
  CHECK(ids.count("maxclass_p5_i7") == 1);
  CHECK(ids.count("quaternion8_p2") == 1);
  CHECK_FALSE(grid_entries("huge").has_value());
  CHECK(grid_entries("small")->size() < grid->size());
}

TEST_CASE("catalog build and reload") {
  const fs::path dir = scratch("catalog");
  const std::vector<CatalogSpec> specs{{"extraspecial", 3, {{"n", 1}}}, {"maxclass", 2, {{"i", 4}}},
                                       {"tgroup", 3, {{"b", 2}, {"d", 2}}}};
  const auto built = build_catalog(specs, dir, DixonOptions{}, 2);
  CHECK(built.size() == 3);
  CHECK(fs::exists(dir / "catalog.json"));
  CHECK(fs::exists(dir / "tgroup_p3_b2_d2.json"));
  const auto loaded = load_catalog(dir);
  REQUIRE(loaded.size() == 3);
  CHECK(loaded[0].id == "extraspecial_p3_n1");
  CHECK(loaded[2].group.order() == 729);

  fs::remove(dir / "catalog.json");
  const auto files = load_catalog(dir);
  REQUIRE(files.size() == 3);
  CHECK(files[1].id == "maxclass_p2_i4");
  CHECK(files[1].family.empty());
  CHECK(files[1].group.order() == 16);
  fs::remove_all(dir);
}

TEST_CASE("command line") {
  const fs::path dir = scratch("cli");
  const std::string file = (dir / "g.pcp").string();

  Cli c = run({"construct", "--family", "heisenberg", "--p", "3", "--d", "2", "--b", "1", "-o", file});
  CHECK(c.rc == 0);
  c = run({"invariants", file});
  CHECK(c.rc == 0);
  CHECK(c.out.find("\"order_exponent\": 5") != std::string::npos);
  CHECK(c.out.find("\"b\": 1") != std::string::npos);
  CHECK(c.out.find("\"d\": 2") != std::string::npos);
  CHECK(c.out.find("\"stem\": true") != std::string::npos);

  c = run({"degrees", file, "--method", "class2", "--format", "csv"});
  CHECK(c.rc == 0);
  CHECK(c.out == "exponent,multiplicity\n0,81\n2,2\n");

  c = run({"bounds", "--p", "3", "--b", "1", "--d", "1"});
  CHECK(c.rc == 0);
  CHECK(c.out.find("\"theorem_exponent\": 3") != std::string::npos);
  CHECK(c.out.find("\"lower_exponent\": 3") != std::string::npos);

  CHECK(run({}).rc == 2);
  CHECK(run({"bounds", "--p", "4", "--b", "1", "--d", "1"}).rc == 2);
  CHECK(run({"invariants", (dir / "missing.pcp").string()}).rc == 2);
  CHECK(run({"construct", "--family", "maxclass", "--p", "3"}).rc == 2);
  CHECK(run({"verify", "--suite", "nope", "--catalog", dir.string()}).rc == 2);
  CHECK(run({"--help"}).rc == 0);

  const std::string cat = (dir / "cat").string();
  CHECK(run({"catalog", "build", "--grid", "small", cat}).rc == 0);
  const Cli a = run({"verify", "--suite", "bounds", "--catalog", cat, "--format", "csv"});
  const Cli b = run({"verify", "--suite", "bounds", "--catalog", cat, "--format", "csv", "--jobs", "3"});
  CHECK(a.rc == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("group_id,check,verdict,left,right,witness\n", 0) == 0);

  fs::remove_all(dir);
}
