#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "markoff/cli/run.hpp"
#include "markoff/error.hpp"

namespace markoff::cli {

namespace fs = std::filesystem;

namespace {

std::string csv_field(const nlohmann::json& v) {
  std::string s;
  if (v.is_string()) {
    s = v.get<std::string>();
  } else if (v.is_null()) {
    s = "";
  } else {
    s = v.dump();
  }
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void write_file_atomic(const std::string& path_text, const std::string& text) {
  const fs::path path(path_text);
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
    f << text;
    f.flush();
    if (!f) throw IoError("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

namespace {

nlohmann::json matrix_json(const matseq::SymMat2& m) {
  return nlohmann::json::array({to_dec(m.x0), to_dec(m.x1), to_dec(m.x2)});
}

}  // namespace

void CommandReport::check(bool ok, const std::string& check_name, const std::string& detail) {
  lines.push_back(std::string(ok ? "PASS " : "FAIL ") + check_name + ": " + detail);
  if (!ok) failures.push_back(check_name + ": " + detail);
}

nlohmann::json report_body(const CommandReport& report, const matseq::SeedPair& seed) {
  return {{"command", report.command},
          {"seed", {{"x1", matrix_json(seed.x1)}, {"x2", matrix_json(seed.x2)}, {"text", seed.to_string()}}},
          {"config", report.config},
          {"rows", report.rows},
          {"summary", report.summary},
          {"failures", report.failures}};
}

std::string rows_to_csv(const nlohmann::json& rows) {
  std::vector<std::string> cols;
  for (const auto& row : rows) {
    if (!row.is_object()) continue;
    for (const auto& [key, _] : row.items()) {
      if (std::find(cols.begin(), cols.end(), key) == cols.end()) cols.push_back(key);
    }
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << csv_field(cols[i]);
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) out << ",";
      if (row.is_object() && row.contains(cols[i])) out << csv_field(row.at(cols[i]));
    }
    out << "\n";
  }
  return out.str();
}

void write_report(const CommandReport& report, const matseq::SeedPair& seed, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
  nlohmann::json doc = report_body(report, seed);
  doc["header"] = {{"tool", "markoff_lab"}, {"generated_at", utc_now()}};
  write_file_atomic((fs::path(dir) / (report.name + ".json")).string(), doc.dump(2) + "\n");
  write_file_atomic((fs::path(dir) / (report.name + ".csv")).string(), rows_to_csv(report.rows));
}

}  // namespace markoff::cli
