#ifndef PLSM_CONFIG_HPP
#define PLSM_CONFIG_HPP

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "plsm/catalog.hpp"

namespace plsm {

/// A (i, j, k, value) structure-constant entry as it appears in config files.
struct ConstantEntry {
  int i;
  int j;
  int k;
  double value;
};

/// Parsed model description: everything needed to rebuild a bialgebra,
/// plus run parameters.  Indices are 0-based in the file format.
struct ModelConfig {
  std::string name;
  int dimension = 0;
  std::vector<ConstantEntry> bracket;
  std::vector<ConstantEntry> cocommutator;
  std::optional<std::vector<ConstantEntry>> r_matrix;  // (i, j, value) with k unused
  double tolerance = kDefaultTol;
  double sampling_box = 1.0;
  unsigned long seed = 0;
  int points = 100;
  std::vector<int> grid = {17, 33, 65};

  StructureConstants structure_constants() const {
    return to_constants(bracket, "bracket");
  }
  Cocommutator cocommutator_data() const {
    return Cocommutator(to_constants(cocommutator, "cocommutator"));
  }
  std::optional<MatrixXd> r_matrix_data() const {
    if (!r_matrix) return std::nullopt;
    MatrixXd r = MatrixXd::Zero(dimension, dimension);
    for (const auto& e : r_matrix.value()) r(e.i, e.j) = e.value;
    return r;
  }

 private:
  StructureConstants to_constants(const std::vector<ConstantEntry>& entries,
                                  const std::string& what) const {
    std::vector<std::array<int, 3>> idx;
    std::vector<double> val;
    for (const auto& e : entries) {
      idx.push_back({e.i, e.j, e.k});
      val.push_back(e.value);
    }
    try {
      return StructureConstants::from_entries(dimension, idx, val);
    } catch (const InvalidInput& err) {
      throw InvalidInput(what + ": " + err.what());
    }
  }
};

namespace config_detail {

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw InvalidInput("config: " + msg);
}

inline std::vector<ConstantEntry> parse_entries(const nlohmann::json& arr, int dim,
                                                const std::string& field, int arity) {
  require(arr.is_array(), field + " must be an array");
  std::vector<ConstantEntry> out;
  std::set<std::vector<int>> seen;
  for (const auto& item : arr) {
    require(item.is_array() && static_cast<int>(item.size()) == arity + 1,
            field + " entries must be [indices..., value] with " + std::to_string(arity) +
                " indices");
    ConstantEntry e{0, 0, 0, 0.0};
    std::vector<int> key;
    for (int t = 0; t < arity; ++t) {
      require(item[t].is_number_integer(), field + ": index must be an integer");
      int v = item[t].get<int>();
      require(v >= 0 && v < dim, field + ": index " + std::to_string(v) + " out of range [0," +
                                     std::to_string(dim - 1) + "]");
      key.push_back(v);
      if (t == 0) e.i = v;
      if (t == 1) e.j = v;
      if (t == 2) e.k = v;
    }
    require(item[arity].is_number(), field + ": value must be a number");
    e.value = item[arity].get<double>();
    require(seen.insert(key).second, field + ": duplicate index tuple");
    out.push_back(e);
  }
  return out;
}

}  // namespace config_detail

/// Parses and validates a model config; throws InvalidInput naming the
/// offending field on schema violations.
inline ModelConfig parse_config(const nlohmann::json& j) {
  using config_detail::require;
  require(j.is_object(), "top level must be an object");
  static const std::set<std::string> known = {
      "name",   "dimension",    "bracket", "cocommutator", "r_matrix",
      "tolerance", "sampling_box", "seed",    "points",       "grid"};
  for (const auto& [key, _] : j.items())
    require(known.count(key) > 0, "unknown field '" + key + "'");
  ModelConfig cfg;
  require(j.contains("name") && j["name"].is_string(), "field 'name' (string) required");
  cfg.name = j["name"].get<std::string>();
  require(j.contains("dimension") && j["dimension"].is_number_integer(),
          "field 'dimension' (integer) required");
  cfg.dimension = j["dimension"].get<int>();
  require(cfg.dimension >= 1 && cfg.dimension <= 16, "dimension must be in [1,16]");
  require(j.contains("bracket"), "field 'bracket' required");
  cfg.bracket = config_detail::parse_entries(j["bracket"], cfg.dimension, "bracket", 3);
  require(j.contains("cocommutator"), "field 'cocommutator' required");
  cfg.cocommutator =
      config_detail::parse_entries(j["cocommutator"], cfg.dimension, "cocommutator", 3);
  if (j.contains("r_matrix"))
    cfg.r_matrix = config_detail::parse_entries(j["r_matrix"], cfg.dimension, "r_matrix", 2);
  if (j.contains("tolerance")) {
    require(j["tolerance"].is_number(), "tolerance must be a number");
    cfg.tolerance = j["tolerance"].get<double>();
    require(cfg.tolerance > 0.0 && cfg.tolerance < 1.0, "tolerance must be in (0,1)");
  }
  if (j.contains("sampling_box")) {
    require(j["sampling_box"].is_number(), "sampling_box must be a number");
    cfg.sampling_box = j["sampling_box"].get<double>();
    require(cfg.sampling_box > 0.0, "sampling_box must be positive");
  }
  if (j.contains("seed")) {
    require(j["seed"].is_number_unsigned() || j["seed"].is_number_integer(),
            "seed must be a nonnegative integer");
    long long s = j["seed"].get<long long>();
    require(s >= 0, "seed must be nonnegative");
    cfg.seed = static_cast<unsigned long>(s);
  }
  if (j.contains("points")) {
    require(j["points"].is_number_integer(), "points must be an integer");
    cfg.points = j["points"].get<int>();
    require(cfg.points >= 1 && cfg.points <= 100000, "points must be in [1,100000]");
  }
  if (j.contains("grid")) {
    require(j["grid"].is_array() && !j["grid"].empty(), "grid must be a nonempty array");
    cfg.grid.clear();
    for (const auto& g : j["grid"]) {
      require(g.is_number_integer(), "grid entries must be integers");
      int v = g.get<int>();
      require(v >= 2 && v <= 1025, "grid sizes must be in [2,1025]");
      cfg.grid.push_back(v);
    }
  }
  return cfg;
}

inline ModelConfig parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("config: JSON parse error: ") + e.what());
  }
  return parse_config(j);
}

/// Canonical JSON form of a config (sorted keys), used for hashing and for
/// catalog export.
inline nlohmann::json config_to_json(const ModelConfig& cfg) {
  nlohmann::json j;
  j["name"] = cfg.name;
  j["dimension"] = cfg.dimension;
  auto dump3 = [](const std::vector<ConstantEntry>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : v) arr.push_back({e.i, e.j, e.k, e.value});
    return arr;
  };
  j["bracket"] = dump3(cfg.bracket);
  j["cocommutator"] = dump3(cfg.cocommutator);
  if (cfg.r_matrix) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : cfg.r_matrix.value()) arr.push_back({e.i, e.j, e.value});
    j["r_matrix"] = arr;
  }
  j["tolerance"] = cfg.tolerance;
  j["sampling_box"] = cfg.sampling_box;
  j["seed"] = cfg.seed;
  j["points"] = cfg.points;
  j["grid"] = cfg.grid;
  return j;
}

/// Catalog entry -> config representation (the export path of cmd_catalog).
inline ModelConfig config_from_entry(const CatalogEntry& entry) {
  ModelConfig cfg;
  cfg.name = entry.name;
  cfg.dimension = entry.c.dim();
  const int n = cfg.dimension;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (entry.c.c(i, j, k) != 0.0) cfg.bracket.push_back({i, j, k, entry.c.c(i, j, k)});
        if (entry.f.f(i, j, k) != 0.0) cfg.cocommutator.push_back({i, j, k, entry.f.f(i, j, k)});
      }
  if (entry.r) {
    std::vector<ConstantEntry> rm;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if ((*entry.r)(i, j) != 0.0) rm.push_back({i, j, 0, (*entry.r)(i, j)});
    cfg.r_matrix = rm;
  }
  cfg.sampling_box = entry.sampling_box;
  return cfg;
}

}  // namespace plsm

#endif
