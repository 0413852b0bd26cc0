#include <catch2/catch_amalgamated.hpp>

#include <plsm.hpp>

using namespace plsm;
using nlohmann::json;

namespace {

json valid_config() {
  return json{{"name", "example_beta"},
              {"dimension", 2},
              {"bracket", json::array({json::array({0, 1, 1, 1.0})})},
              {"cocommutator", json::array({json::array({0, 1, 1, 1.0})})},
              {"tolerance", 1e-10},
              {"sampling_box", 1.0},
              {"seed", 7},
              {"points", 50},
              {"grid", json::array({9, 17})}};
}

}  // namespace

TEST_CASE("parse_config accepts a complete valid config") {
  ModelConfig cfg = parse_config(valid_config());
  REQUIRE(cfg.name == "example_beta");
  REQUIRE(cfg.dimension == 2);
  REQUIRE(cfg.bracket.size() == 1);
  REQUIRE(cfg.bracket[0].k == 1);
  REQUIRE(cfg.seed == 7);
  REQUIRE(cfg.points == 50);
  REQUIRE(cfg.grid == std::vector<int>{9, 17});
  StructureConstants c = cfg.structure_constants();
  REQUIRE(c.c(0, 1, 1) == 1.0);
  REQUIRE(c.c(1, 0, 1) == -1.0);
  REQUIRE(cfg.cocommutator_data().f(0, 1, 1) == 1.0);
  REQUIRE_FALSE(cfg.r_matrix_data().has_value());
}

TEST_CASE("parse_config applies documented defaults") {
  json j = json{{"name", "m"},
                {"dimension", 2},
                {"bracket", json::array()},
                {"cocommutator", json::array()}};
  ModelConfig cfg = parse_config(j);
  REQUIRE(cfg.tolerance == kDefaultTol);
  REQUIRE(cfg.sampling_box == 1.0);
  REQUIRE(cfg.seed == 0);
  REQUIRE(cfg.points == 100);
  REQUIRE(cfg.grid == std::vector<int>{17, 33, 65});
}

TEST_CASE("parse_config rejects schema violations with the field name") {
  auto expect_error = [](json j, const std::string& needle) {
    try {
      parse_config(j);
      FAIL("expected InvalidInput");
    } catch (const InvalidInput& e) {
      REQUIRE(std::string(e.what()).find("config:") != std::string::npos);
      REQUIRE(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  json j = valid_config();
  j.erase("name");
  expect_error(j, "name");
  j = valid_config();
  j.erase("bracket");
  expect_error(j, "bracket");
  j = valid_config();
  j["unknown_knob"] = 1;
  expect_error(j, "unknown_knob");
  j = valid_config();
  j["bracket"] = json::array({json::array({0, 5, 1, 1.0})});
  expect_error(j, "out of range");
  j = valid_config();
  j["bracket"] = json::array({json::array({0, 1, 1, 1.0}), json::array({0, 1, 1, 2.0})});
  expect_error(j, "duplicate");
  j = valid_config();
  j["bracket"] = json::array({json::array({0, 1, 1.0})});
  expect_error(j, "entries must be");
  j = valid_config();
  j["dimension"] = 0;
  expect_error(j, "dimension");
  j = valid_config();
  j["tolerance"] = -1.0;
  expect_error(j, "tolerance");
  j = valid_config();
  j["seed"] = -3;
  expect_error(j, "seed");
  j = valid_config();
  j["grid"] = json::array({1});
  expect_error(j, "grid");
  expect_error(json::array(), "object");
}

TEST_CASE("parse_config reports JSON syntax errors as input errors") {
  REQUIRE_THROWS_AS(parse_config(std::string("{ not json")), InvalidInput);
}

TEST_CASE("conflicting bracket data is rejected on conversion") {
  // from_entries fills the antisymmetric partner itself, so listing both
  // (0,1,k) and (1,0,k) is a conflict and must be rejected, as is a nonzero
  // diagonal entry.
  json j = valid_config();
  j["bracket"] = json::array({json::array({0, 1, 1, 1.0}), json::array({1, 0, 1, 1.0})});
  ModelConfig cfg = parse_config(j);
  REQUIRE_THROWS_AS(cfg.structure_constants(), InvalidInput);
  j["bracket"] = json::array({json::array({0, 0, 1, 1.0})});
  REQUIRE_THROWS_AS(parse_config(j).structure_constants(), InvalidInput);
}

TEST_CASE("config round trip preserves the parsed model") {
  ModelConfig cfg = parse_config(valid_config());
  ModelConfig back = parse_config(config_to_json(cfg));
  REQUIRE(back.name == cfg.name);
  REQUIRE(back.dimension == cfg.dimension);
  REQUIRE(back.bracket.size() == cfg.bracket.size());
  REQUIRE(config_hash(back) == config_hash(cfg));
}

TEST_CASE("config_from_entry produces a parseable config for every fixture") {
  for (const auto& e : entries()) {
    ModelConfig cfg = config_from_entry(e);
    ModelConfig back = parse_config(config_to_json(cfg));
    StructureConstants c = back.structure_constants();
    for (int i = 0; i < e.c.dim(); ++i)
      for (int j = 0; j < e.c.dim(); ++j)
        for (int k = 0; k < e.c.dim(); ++k) {
          REQUIRE(c.c(i, j, k) == e.c.c(i, j, k));
          REQUIRE(back.cocommutator_data().f(i, j, k) == e.f.f(i, j, k));
        }
    if (e.r) {
      auto r = back.r_matrix_data();
      REQUIRE(r.has_value());
      REQUIRE((*r - *e.r).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("config_hash is stable and sensitive") {
  ModelConfig a = parse_config(valid_config());
  ModelConfig b = parse_config(valid_config());
  REQUIRE(config_hash(a) == config_hash(b));
  REQUIRE(config_hash(a).size() == 16);
  b.seed = 8;
  REQUIRE(config_hash(a) != config_hash(b));
}

TEST_CASE("format_double round trips IEEE doubles") {
  for (double v : {0.0, 1.0 / 3.0, -2.5e-13, 6.02214076e23, 1e-300}) {
    REQUIRE(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("report serialization is deterministic and carries all checks") {
  Report r;
  r.command = "verify";
  r.config_hash_hex = "00ff";
  r.seed = 7;
  r.checks.push_back(DefectReport::make("jacobi", 1e-13, 1e-10, "(0,1,2)"));
  r.checks.push_back(DefectReport::make("cocycle", 2e-9, 1e-10));
  r.convergence.push_back({17, 1e-3, 2e-3});
  REQUIRE_FALSE(r.all_pass());
  std::string d1 = r.dump();
  std::string d2 = r.dump();
  REQUIRE(d1 == d2);
  json j = json::parse(d1);
  REQUIRE(j["tool_version"] == kToolVersion);
  REQUIRE(j["checks"].size() == 2);
  REQUIRE(j["checks"][0]["pass"] == true);
  REQUIRE(j["checks"][1]["pass"] == false);
  REQUIRE(j["all_pass"] == false);
  REQUIRE(j["convergence"][0]["nx"] == 17);
  // Defect values are stored in full 17-digit precision.
  REQUIRE(std::stod(j["checks"][1]["max_defect"].get<std::string>()) == 2e-9);
}

TEST_CASE("CSV writer emits the fixed header and rejects ragged rows") {
  CsvWriter w({"check", "max_defect", "tolerance", "pass"});
  w.add_row({"jacobi", format_double(1e-13), format_double(1e-10), "1"});
  REQUIRE_THROWS_AS(w.add_row({"short"}), InvalidInput);
  std::string s = w.str();
  REQUIRE(s.rfind("check,max_defect,tolerance,pass\n", 0) == 0);
  REQUIRE(s.find("jacobi,") != std::string::npos);
  // Deterministic output.
  REQUIRE(s == w.str());
}
