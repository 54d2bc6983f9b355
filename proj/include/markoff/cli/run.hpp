#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "markoff/matseq/sequence.hpp"

namespace markoff::cli {

enum class ExitStatus : int { ok = 0, check_failed = 1, precision = 2, usage = 3 };

inline constexpr int kHardKMax = 40;
inline constexpr const char* kOutputEnv = "MARKOFF_LAB_OUT";
inline constexpr const char* kDefaultOutputDir = "markoff-reports";

struct RunConfig {
  /// "canonical" or "a,b,c;d,e,f" for [[a,b],[b,c]] and [[d,e],[e,f]].
  std::string seed = "canonical";
  int k_max = 0;
  bool allow_large_k = false;
  std::optional<long> bits;
  std::string out_dir;
  /// Sequence cache read before the run (if present) and rewritten after it.
  std::optional<std::string> cache;
  bool write_reports = true;
};

/// Result of one subcommand before it is written out.
struct CommandReport {
  std::string command;
  /// File stem inside the output directory.
  std::string name;
  nlohmann::json config = nlohmann::json::object();
  nlohmann::json rows = nlohmann::json::array();
  nlohmann::json summary = nlohmann::json::object();
  std::vector<std::string> failures;
  /// One line per check, already formatted.
  std::vector<std::string> lines;

  void check(bool ok, const std::string& name, const std::string& detail);
};

/// Parses a seed spec; throws FormatError or InvariantViolation.
matseq::SeedPair parse_seed(const std::string& spec);

/// Writes <dir>/<name>.json and <dir>/<name>.csv through temporary files.
/// The JSON has the top-level keys command, seed, config, rows, summary,
/// failures and a header holding the only timestamp. Throws IoError.
void write_report(const CommandReport& report, const matseq::SeedPair& seed, const std::string& dir);

/// Writes through `<path>.tmp` and renames into place. Throws IoError.
void write_file_atomic(const std::string& path, const std::string& text);

/// Byte-stable JSON document for `report` (no header).
nlohmann::json report_body(const CommandReport& report, const matseq::SeedPair& seed);

/// CSV of report.rows: one column per key in order of first appearance;
/// nested values are written as compact JSON.
std::string rows_to_csv(const nlohmann::json& rows);

/// Runs `argv` (argv[0] is the program name) and returns the process exit code.
int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace markoff::cli
