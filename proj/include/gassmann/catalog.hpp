#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gassmann/equivalence.hpp"

namespace gassmann {

inline constexpr int kReportSchema = 1;
inline constexpr const char* kCatalogEnv = "GASSMANN_CATALOG";

struct ScanJob {
  std::filesystem::path catalog;
  Relation relation = Relation::local_integral();
  std::optional<std::size_t> index_filter;
  bool faithful_only = false;
  std::filesystem::path output;
  // 0 = hardware concurrency
  unsigned workers = 0;
  std::size_t max_order = kDefaultMaxOrder;
  std::size_t lattice_bound = kDefaultLatticeBound;
};

// Throws PreconditionFailed when the catalog has no group files or the filters are malformed.
void validate(const ScanJob& job);

// Catalog directory from the environment, if set.
std::optional<std::filesystem::path> default_catalog();

// *.grp files directly inside the directory, sorted by name.
std::vector<std::filesystem::path> catalog_files(const std::filesystem::path& dir);

struct ReportRecord {
  std::string group_label;
  std::size_t group_order = 0;
  std::size_t index = 0;
  // canonical generating sets in cycle notation
  std::vector<std::string> h1, h2;
  // rational, local-integral, solvable
  std::vector<std::pair<std::string, bool>> verdicts;
  nlohmann::json details;
  double seconds = 0;

  std::string pair_key() const;
  // Solvable => LocalIntegral => Rational
  bool monotone() const;
};

nlohmann::json to_json(const ReportRecord& r);
ReportRecord record_from_json(const nlohmann::json& j);

// Records for one group: every pair of conjugacy classes of subgroups passing the filters
// that falls in one block of the job's relation.
std::vector<ReportRecord> scan_group(const GroupSpec& spec, const std::string& label, const ScanJob& job);

struct ScanSummary {
  std::size_t groups = 0;
  std::size_t skipped = 0;
  std::size_t records = 0;
  std::size_t errors = 0;
};

// Appends to job.output: a schema header on creation, then records and one "group" line
// per finished group. Groups with a "group" line already present are skipped; records
// already present are not written again. Per-group errors are written as "error" lines.
ScanSummary scan_catalog(const ScanJob& job, const std::function<void(const ReportRecord&)>& on_record = {});

struct ReportContents {
  std::vector<ReportRecord> records;
  std::vector<std::string> finished_groups;
  std::vector<nlohmann::json> errors;
};

ReportContents read_report(const std::filesystem::path& path);

struct FixtureStatus {
  std::string name;
  std::string expected;
  std::string actual;
  bool ok() const { return !actual.empty() && expected == actual; }
};

std::string sha256_file(const std::filesystem::path& path);
// Checks every entry of <dir>/SHA256SUMS ("<hex>  <name>" lines).
std::vector<FixtureStatus> verify_fixtures(const std::filesystem::path& dir);

}  // namespace gassmann
