#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pgrp/chardeg.hpp"
#include "pgrp/group.hpp"
#include "pgrp/presentation.hpp"
#include "pgrp/verifier.hpp"

namespace pgrp {

/// Malformed or inconsistent presentation input. `line` is 1-based, 0 when
/// unknown.
class ParseError : public GroupError {
 public:
  /// `source` (a file name) prefixes the message when non-empty.
  ParseError(std::string field, std::size_t line, const std::string& message,
             const std::string& source = {});
  const std::string& field() const { return field_; }
  std::size_t line() const { return line_; }
  /// Message without the source, line and field prefixes.
  const std::string& message() const { return message_; }

 private:
  std::string field_;
  std::string message_;
  std::size_t line_;
};

/// {"p", "rank", "power", "conj" (1-based "i,j" keys, nontrivial only),
/// "labels"}. Runs check_consistency unless `unchecked`.
PcPresentation parse_presentation(std::string_view text, bool unchecked = false);
PcPresentation read_presentation(const std::filesystem::path& path, bool unchecked = false);
std::string serialize_presentation(const PcPresentation& pres);
void write_presentation(const PcPresentation& pres, const std::filesystem::path& path);

enum class ReportFormat { Csv, Json };
std::optional<ReportFormat> parse_format(const std::string& name);

/// Rows are sorted by group id then check before emission.
std::string emit_report(std::vector<ReportRow> rows, ReportFormat format);

// ---------------------------------------------------------------- catalog

struct CatalogSpec {
  std::string family;
  std::uint32_t p = 2;
  std::vector<std::pair<std::string, int>> params;

  std::string id() const;
};

/// Named grids: "default" and "small".
std::optional<std::vector<CatalogSpec>> grid_entries(const std::string& name);

/// Presentation of a family member (block presentation for tgroup).
PcPresentation construct_presentation(const CatalogSpec& spec);
/// Product-backed for tgroup so degree profiles can convolve.
ConcreteGroup construct_group(const CatalogSpec& spec);

struct InvariantRecord {
  std::uint32_t p = 2;
  int log_order = 0;
  int nilpotency_class = 0;
  int breadth = 0;
  std::optional<int> rexp;
  bool stem = false;
  int log_stem_order = 0;
  int log_center = 0;
  int log_derived = 0;
  std::uint64_t class_count = 0;
  std::uint64_t fingerprint_hash = 0;
  std::optional<DegreeProfile> degrees;
};

/// rexp is left empty when the class cap stops the degree computation;
/// `with_degrees` keeps the full multiset and makes that an error.
InvariantRecord invariant_record(const ConcreteGroup& g, bool with_degrees,
                                 const DixonOptions& opts);
std::string emit_record(const InvariantRecord& r, ReportFormat format);

/// Writes one presentation file per group plus catalog.json.
std::vector<CatalogGroup> build_catalog(const std::vector<CatalogSpec>& specs,
                                        const std::filesystem::path& dir, const DixonOptions& opts,
                                        unsigned jobs = 1);
/// Reads catalog.json (family members are rebuilt from their parameters), or
/// every *.json presentation in `dir` when no index exists.
std::vector<CatalogGroup> load_catalog(const std::filesystem::path& dir, bool unchecked = false);

// ---------------------------------------------------------------- cli

/// Exit codes: 0 all verdicts pass or vacuous, 1 some verdict fails,
/// 2 usage or input error.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pgrp
