#ifndef PLSM_REPORT_HPP
#define PLSM_REPORT_HPP

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "plsm/checks.hpp"
#include "plsm/config.hpp"

namespace plsm {

inline constexpr const char* kToolVersion = "0.1.0";

/// 17-significant-digit decimal form: round-trips IEEE doubles exactly.
inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

/// FNV-1a 64-bit over the canonical config dump; stable across runs and
/// platforms (std::hash makes no such promise).
inline std::string config_hash(const ModelConfig& cfg) {
  std::string text = config_to_json(cfg).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

/// One row of a convergence study: grid size and the observed residual.
struct ConvergenceRow {
  int nx;
  double flatness_residual;
  double cross_residual;
};

/// Machine-readable run summary; deterministic given (config, seed).
struct Report {
  std::string tool_version = kToolVersion;
  std::string command;
  std::string config_hash_hex;
  unsigned long seed = 0;
  std::vector<DefectReport> checks;
  std::vector<ConvergenceRow> convergence;
  std::vector<std::string> notes;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["tool_version"] = tool_version;
    j["command"] = command;
    j["config_hash"] = config_hash_hex;
    j["seed"] = seed;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
      nlohmann::json cj;
      cj["check"] = c.check_name;
      cj["max_defect"] = format_double(c.max_defect);
      cj["tolerance"] = format_double(c.tolerance);
      cj["pass"] = c.pass;
      if (!c.witness.empty()) cj["witness"] = c.witness;
      arr.push_back(cj);
    }
    j["checks"] = arr;
    if (!convergence.empty()) {
      nlohmann::json cv = nlohmann::json::array();
      for (const auto& r : convergence) {
        nlohmann::json rj;
        rj["nx"] = r.nx;
        rj["flatness_residual"] = format_double(r.flatness_residual);
        rj["cross_residual"] = format_double(r.cross_residual);
        cv.push_back(rj);
      }
      j["convergence"] = cv;
    }
    if (!notes.empty()) j["notes"] = notes;
    j["all_pass"] = all_pass();
    return j;
  }

  /// Serialized form used on disk and for byte-identity comparisons.
  std::string dump() const { return to_json().dump(2) + "\n"; }
};

/// CSV writer with fixed header and 17-digit floats; rows are emitted in
/// the order provided, so output is deterministic.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : columns_(std::move(header)) {}

  void add_row(const std::vector<std::string>& row) {
    if (row.size() != columns_.size()) throw InvalidInput("CsvWriter: row width mismatch");
    rows_.push_back(row);
  }

  std::string str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < columns_.size(); ++i)
      os << (i ? "," : "") << columns_[i];
    os << "\n";
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
      os << "\n";
    }
    return os.str();
  }

  void write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("CsvWriter: cannot open " + path);
    out << str();
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace plsm

#endif
