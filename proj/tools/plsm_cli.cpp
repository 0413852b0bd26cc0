/// Command-line front end: verify | construct | simulate | catalog.
/// Exit codes: 0 all checks pass, 1 check failure, 2 input error.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include <plsm.hpp>

namespace {

using namespace plsm;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitInputError = 2;

struct CommonOptions {
  std::string config_path;
  std::string model_name;
  std::string output_dir = ".";
  double tolerance = -1.0;     // < 0: keep config value
  long long seed = -1;         // < 0: keep config value
  int points = -1;             // < 0: keep config value
  std::string grid_spec;       // empty: keep config value
  int refine = -1;             // < 0: keep config value
};

void add_common_options(CLI::App* cmd, CommonOptions& opt, bool wants_model) {
  if (wants_model) {
    cmd->add_option("--config", opt.config_path, "Path to a model config JSON file");
    cmd->add_option("--model", opt.model_name, "Built-in catalog entry name");
  }
  cmd->add_option("--output-dir", opt.output_dir, "Directory for report and CSV output");
  cmd->add_option("--tolerance", opt.tolerance, "Override the config tolerance");
  cmd->add_option("--seed", opt.seed, "Override the config RNG seed");
  cmd->add_option("--points", opt.points, "Override the number of sample points");
  cmd->add_option("--grid", opt.grid_spec, "Override the grid sizes, e.g. 17,33,65");
  cmd->add_option("--refine", opt.refine, "Use only the first N grid sizes");
}

ModelConfig load_config(const CommonOptions& opt) {
  if (!opt.config_path.empty() && !opt.model_name.empty())
    throw InvalidInput("give either --config or --model, not both");
  ModelConfig cfg;
  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path);
    if (!in) throw InvalidInput("cannot open config file: " + opt.config_path);
    std::stringstream ss;
    ss << in.rdbuf();
    cfg = parse_config(ss.str());
  } else if (!opt.model_name.empty()) {
    cfg = config_from_entry(entry_by_name(opt.model_name));
  } else {
    throw InvalidInput("a model is required: pass --config FILE or --model NAME");
  }
  if (opt.tolerance > 0.0) cfg.tolerance = opt.tolerance;
  if (opt.seed >= 0) cfg.seed = static_cast<unsigned long>(opt.seed);
  if (opt.points > 0) cfg.points = opt.points;
  if (!opt.grid_spec.empty()) {
    cfg.grid.clear();
    std::stringstream ss(opt.grid_spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        cfg.grid.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw InvalidInput("--grid: cannot parse '" + tok + "'");
      }
      if (cfg.grid.back() < 2) throw InvalidInput("--grid: sizes must be >= 2");
    }
    if (cfg.grid.empty()) throw InvalidInput("--grid: empty list");
  }
  if (opt.refine > 0 && static_cast<int>(cfg.grid.size()) > opt.refine)
    cfg.grid.resize(opt.refine);
  return cfg;
}

void write_text(const std::string& dir, const std::string& name, const std::string& text) {
  std::filesystem::create_directories(dir);
  std::string path = (std::filesystem::path(dir) / name).string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

std::string witness_string(const Defect& d) {
  std::ostringstream os;
  os << "(" << d.witness[0] << "," << d.witness[1] << "," << d.witness[2] << ","
     << d.witness[3] << ")";
  return os.str();
}

/// Full verification battery: algebra validity, double construction, and the
/// Poisson-Lie geometric identities sampled at seeded random points.
Report run_verify(const ModelConfig& cfg) {
  Report rep;
  rep.command = "verify";
  rep.config_hash_hex = config_hash(cfg);
  rep.seed = cfg.seed;

  StructureConstants c = cfg.structure_constants();
  Cocommutator f = cfg.cocommutator_data();
  double scale = std::max(c.max_abs(), f.max_abs());
  double tol2 = scaled_tol(scale * scale, cfg.tolerance);

  Defect jc = jacobiator(c);
  rep.checks.push_back(DefectReport::make("base_jacobi", jc.value, tol2, witness_string(jc)));
  Defect jf = jacobiator(f.dual_constants());
  rep.checks.push_back(DefectReport::make("dual_jacobi", jf.value, tol2, witness_string(jf)));
  Defect cy = cocycle_defect(c, f);
  rep.checks.push_back(DefectReport::make("cocycle", cy.value, tol2, witness_string(cy)));

  // Assemble the double without the throwing gate so the defect is reported
  // as a named check instead of an exception.
  DoubleAlgebra d = build_double(c, f, 1e9);
  Defect jd = jacobiator(d.total().constants());
  rep.checks.push_back(DefectReport::make("double_jacobi", jd.value, tol2, witness_string(jd)));
  if (jd.value > tol2) {
    rep.notes.push_back("double construction invalid; geometric checks skipped");
    return rep;
  }
  Defect fi = d.form_ad_invariance_defect();
  rep.checks.push_back(
      DefectReport::make("form_ad_invariance", fi.value, tol2, witness_string(fi)));

  Rng rng(cfg.seed);
  const int n = d.n();
  double pi_asym = 0.0, pipeline = 0.0, jac_field = 0.0, mult = 0.0;
  std::vector<GroupPoint> pts;
  for (int t = 0; t < cfg.points; ++t) pts.emplace_back(d, sample_box(rng, n, cfg.sampling_box));
  for (const auto& g : pts) {
    MatrixXd pi = pi_matrix(d, g);
    double s = 1.0 + pi.cwiseAbs().maxCoeff();
    pi_asym = std::max(pi_asym, (pi + pi.transpose()).cwiseAbs().maxCoeff() / s);
    pipeline =
        std::max(pipeline, (pi - pi_matrix_by_projectors(d, g)).cwiseAbs().maxCoeff() / s);
    jac_field = std::max(jac_field, jacobiator_field(d, g, 1e-3));
  }
  rep.checks.push_back(DefectReport::make("pi_antisymmetry", pi_asym, 1e-11));
  rep.checks.push_back(DefectReport::make("pi_pipeline_agreement", pipeline, 1e-11));
  rep.checks.push_back(DefectReport::make("jacobiator_field", jac_field, 1e-6));
  for (int t = 0; t + 1 < static_cast<int>(pts.size()); t += 2) {
    const GroupPoint& p = pts[t];
    const GroupPoint& q = pts[t + 1];
    double s = 1.0 + std::pow(p.ad().cwiseAbs().maxCoeff(), 2);
    mult = std::max(mult, multiplicativity_defect(d, p, q) / s);
  }
  rep.checks.push_back(DefectReport::make("multiplicativity", mult, 1e-10));

  double deriv = 0.0;
  for (int t = 0; t < std::min(20, cfg.points); ++t) {
    const GroupPoint& g = pts[t];
    for (int k = 0; k < n; ++k)
      deriv = std::max(deriv, invariant_derivative_defect(d, g, k, 1e-3).maxCoeff());
  }
  rep.checks.push_back(DefectReport::make("invariant_derivative", deriv, 1e-8));
  rep.checks.push_back(
      DefectReport::make("tangent_roundtrip", tangent_bialgebra_roundtrip_defect(d), 1e-8));

  if (auto r = cfg.r_matrix_data()) {
    double delta_defect = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double v = 0.0;
          for (int a = 0; a < n; ++a)
            v += c.c(k, a, i) * (*r)(a, j) + c.c(k, a, j) * (*r)(i, a);
          delta_defect = std::max(delta_defect, std::abs(v - f.f(i, j, k)));
        }
    rep.checks.push_back(DefectReport::make("r_solves_cocommutator", delta_defect, tol2));
    MatrixXd a_skew = 0.5 * (*r - r->transpose());
    double skl = 0.0;
    for (const auto& g : pts)
      skl = std::max(
          skl, (pi_matrix(d, g) - sklyanin_components(d, g, a_skew)).cwiseAbs().maxCoeff());
    rep.checks.push_back(DefectReport::make("sklyanin_pipeline", skl, 1e-9));
  }
  return rep;
}

/// Tabulates Pi^{ij}, coordinate P^{ab} and the frame e at chart points.
std::string run_construct(const ModelConfig& cfg, const std::vector<double>& at) {
  DoubleAlgebra d = build_double(cfg.structure_constants(), cfg.cocommutator_data(),
                                 cfg.tolerance);
  const int n = d.n();
  std::vector<std::string> header;
  for (int i = 0; i < n; ++i) header.push_back("y" + std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      header.push_back("pi_" + std::to_string(i) + std::to_string(j));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      header.push_back("P_" + std::to_string(i) + std::to_string(j));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      header.push_back("e_" + std::to_string(i) + std::to_string(j));
  CsvWriter csv(header);

  std::vector<VectorXd> points;
  if (!at.empty()) {
    if (static_cast<int>(at.size()) != n)
      throw InvalidInput("--at needs exactly " + std::to_string(n) + " coordinates");
    points.push_back(Eigen::Map<const VectorXd>(at.data(), n));
  } else {
    Rng rng(cfg.seed);
    for (int t = 0; t < cfg.points; ++t) points.push_back(sample_box(rng, n, cfg.sampling_box));
  }
  for (const auto& y : points) {
    GroupPoint g(d, y);
    MatrixXd pi = pi_matrix(d, g);
    MatrixXd p = coordinate_bivector(d, g);
    MatrixXd e = frame_matrix(d, g).e;
    std::vector<std::string> row;
    for (int i = 0; i < n; ++i) row.push_back(format_double(y(i)));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) row.push_back(format_double(pi(i, j)));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) row.push_back(format_double(p(i, j)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) row.push_back(format_double(e(i, j)));
    csv.add_row(row);
  }
  return csv.str();
}

/// Convergence study: pure-gauge dual field flatness and anchor-equation
/// integration cross-residuals over the configured grid sizes.
Report run_simulate(const ModelConfig& cfg, CsvWriter* csv_out) {
  Report rep;
  rep.command = "simulate";
  rep.config_hash_hex = config_hash(cfg);
  rep.seed = cfg.seed;
  DoubleAlgebra d = build_double(cfg.structure_constants(), cfg.cocommutator_data(),
                                 cfg.tolerance);
  const int n = d.n();
  if (cfg.grid.size() < 2)
    rep.notes.push_back("single grid size: residuals reported, no order estimate");

  constexpr double kPiConst = 3.14159265358979323846;
  double amp = 0.3 * cfg.sampling_box;
  VectorXd x0 = VectorXd::Constant(n, 0.3 * cfg.sampling_box);
  for (int k = 1; k < n; k += 2) x0(k) += 0.1 * cfg.sampling_box;

  std::vector<ConvergenceRow> rows;
  for (int nx : cfg.grid) {
    Worldsheet ws(nx, nx);
    NodeGrid h(ws.nx, ws.ny, VectorXd::Zero(n));
    for (int i = 0; i < ws.nx; ++i)
      for (int j = 0; j < ws.ny; ++j)
        for (int k = 0; k < n; ++k)
          h(i, j)(k) = amp * std::sin(kPiConst * ws.sx(i) + 0.4 * k) *
                       std::sin(kPiConst * ws.sy(j) + 0.1 * k);
    EdgeField a = pure_gauge_dual_field(d, ws, h);
    double flat = grid_max_abs(lattice::dual_flatness_residual(d, ws, a));
    double cross = integrate_group_field(d, ws, a, x0).cross_residual_max;
    rows.push_back({nx, flat, cross});
  }
  rep.convergence = rows;
  if (csv_out) {
    for (const auto& r : rows)
      csv_out->add_row({std::to_string(r.nx), format_double(r.flatness_residual),
                        format_double(r.cross_residual)});
  }

  // Trivial-field invariants: zero A gives exactly zero residuals.
  {
    Worldsheet ws(cfg.grid.front(), cfg.grid.front());
    NodeGrid xc(ws.nx, ws.ny, x0);
    EdgeField zero(ws, n);
    EomResidual r = eom_residual_intrinsic(d, ws, xc, zero);
    double trivial = std::max(r.edge.max_abs(), grid_max_abs(r.plaq));
    rep.checks.push_back(DefectReport::make("trivial_fields_zero_residual", trivial, 1e-12));
  }

  auto order_check = [&](const std::string& name, auto field, double required) {
    double worst_order = 1e9;
    bool degenerate = true;
    for (size_t t = 0; t + 1 < rows.size(); ++t) {
      double r1 = field(rows[t]);
      double r2 = field(rows[t + 1]);
      if (r1 > 1e-13 || r2 > 1e-13) degenerate = false;
      if (r2 > 0.0 && r1 > 0.0)
        worst_order = std::min(worst_order, std::log2(r1 / r2));
    }
    if (rows.size() < 2) return;
    if (degenerate) {
      rep.checks.push_back(DefectReport::make(name, 0.0, 0.0, "residuals at machine zero"));
      return;
    }
    double defect = std::max(0.0, required - worst_order);
    std::ostringstream os;
    os << "measured order " << worst_order << ", required >= " << required;
    rep.checks.push_back(DefectReport::make(name, defect, 0.0, os.str()));
  };
  order_check("flatness_order", [](const ConvergenceRow& r) { return r.flatness_residual; },
              1.8);
  order_check("cross_residual_order", [](const ConvergenceRow& r) { return r.cross_residual; },
              0.9);
  return rep;
}

int run_catalog(const std::string& action, const std::string& name,
                const std::string& output_dir) {
  if (action == "list") {
    for (const auto& e : entries()) std::cout << e.name << ": " << e.doc << "\n";
    return kExitPass;
  }
  CatalogEntry e = entry_by_name(name);
  if (action == "show") {
    std::cout << config_to_json(config_from_entry(e)).dump(2) << "\n";
    bool all = true;
    for (const auto& cp : e.checkpoints) {
      double defect = cp.defect();
      bool pass = defect <= cp.tolerance;
      all = all && pass;
      std::cout << "checkpoint " << cp.name << ": defect " << format_double(defect)
                << " tolerance " << format_double(cp.tolerance) << " "
                << (pass ? "PASS" : "FAIL") << "\n";
    }
    return all ? kExitPass : kExitCheckFailure;
  }
  if (action == "export") {
    std::string text = config_to_json(config_from_entry(e)).dump(2) + "\n";
    write_text(output_dir, e.name + ".json", text);
    std::cout << text;
    return kExitPass;
  }
  throw InvalidInput("catalog action must be list, show or export");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisson-Lie structures on Drinfel'd doubles: construction, "
               "verification and lattice sigma-model studies"};
  app.require_subcommand(1);

  CommonOptions vopt, copt, sopt;
  CLI::App* verify = app.add_subcommand("verify", "Run the full verification battery");
  add_common_options(verify, vopt, true);

  CLI::App* construct =
      app.add_subcommand("construct", "Tabulate Pi, P and the frame at chart points");
  add_common_options(construct, copt, true);
  std::vector<double> at;
  construct->add_option("--at", at, "Evaluate at one chart point (comma-separated)")
      ->delimiter(',');

  CLI::App* simulate = app.add_subcommand("simulate", "Run the lattice convergence study");
  add_common_options(simulate, sopt, true);

  CLI::App* catalog = app.add_subcommand("catalog", "Inspect the built-in model catalog");
  std::string action, name;
  std::string catalog_dir = ".";
  catalog->add_option("action", action, "list | show | export")->required();
  catalog->add_option("name", name, "Entry name for show/export");
  catalog->add_option("--output-dir", catalog_dir, "Directory for exported configs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitInputError;
  }

  try {
    if (verify->parsed()) {
      ModelConfig cfg = load_config(vopt);
      Report rep = run_verify(cfg);
      write_text(vopt.output_dir, "report_verify.json", rep.dump());
      CsvWriter csv({"check", "max_defect", "tolerance", "pass"});
      for (const auto& ch : rep.checks)
        csv.add_row({ch.check_name, format_double(ch.max_defect), format_double(ch.tolerance),
                     ch.pass ? "1" : "0"});
      write_text(vopt.output_dir, "checks_verify.csv", csv.str());
      std::cout << rep.dump();
      return rep.all_pass() ? kExitPass : kExitCheckFailure;
    }
    if (construct->parsed()) {
      ModelConfig cfg = load_config(copt);
      std::string csv = run_construct(cfg, at);
      write_text(copt.output_dir, "construct.csv", csv);
      std::cout << csv;
      return kExitPass;
    }
    if (simulate->parsed()) {
      ModelConfig cfg = load_config(sopt);
      CsvWriter csv({"nx", "flatness_residual", "cross_residual"});
      Report rep = run_simulate(cfg, &csv);
      write_text(sopt.output_dir, "report_simulate.json", rep.dump());
      write_text(sopt.output_dir, "convergence.csv", csv.str());
      std::cout << rep.dump();
      return rep.all_pass() ? kExitPass : kExitCheckFailure;
    }
    return run_catalog(action, name, catalog_dir);
  } catch (const ChartBoundary& e) {
    std::cerr << "chart boundary: " << e.what() << "\n";
    return kExitCheckFailure;
  } catch (const DoubleJacobiFailure& e) {
    std::cerr << "inconsistent model: " << e.what() << "\n";
    return kExitCheckFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
