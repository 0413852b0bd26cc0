#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <plsm.hpp>

using namespace plsm;

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Smooth node field on the worldsheet around an anchor point.
NodeGrid smooth_nodes(const Worldsheet& ws, int n, const VectorXd& anchor, double amp) {
  NodeGrid x(ws.nx, ws.ny, VectorXd::Zero(n));
  for (int i = 0; i < ws.nx; ++i)
    for (int j = 0; j < ws.ny; ++j) {
      VectorXd v = anchor;
      for (int k = 0; k < n; ++k)
        v(k) += amp * std::sin(kPi * ws.sx(i) + 0.3 * k) * std::cos(kPi * ws.sy(j) - 0.2 * k);
      x(i, j) = v;
    }
  return x;
}

/// Smooth edge 1-form with the edge-integral h factor built in.
EdgeField smooth_edges(const Worldsheet& ws, int n, double amp) {
  EdgeField a(ws, n);
  auto val = [&](double s1, double s2, int k) {
    return amp * (std::sin(2.0 * kPi * s1 + k) * std::cos(kPi * s2) + 0.2 * k);
  };
  for (int i = 0; i < ws.nx - 1; ++i)
    for (int j = 0; j < ws.ny; ++j)
      for (int k = 0; k < n; ++k)
        a.ex(i, j)(k) = ws.hx() * val(ws.sx(i) + 0.5 * ws.hx(), ws.sy(j), k);
  for (int i = 0; i < ws.nx; ++i)
    for (int j = 0; j < ws.ny - 1; ++j)
      for (int k = 0; k < n; ++k)
        a.ey(i, j)(k) = ws.hy() * val(ws.sx(i), ws.sy(j) + 0.5 * ws.hy(), k + 7);
  return a;
}

/// Smooth dual-group node field for pure-gauge construction.
NodeGrid smooth_dual_nodes(const Worldsheet& ws, int n, double amp) {
  NodeGrid h(ws.nx, ws.ny, VectorXd::Zero(n));
  for (int i = 0; i < ws.nx; ++i)
    for (int j = 0; j < ws.ny; ++j)
      for (int k = 0; k < n; ++k)
        h(i, j)(k) = amp * std::sin(kPi * ws.sx(i) + 0.4 * k) * std::sin(kPi * ws.sy(j) + 0.1 * k);
  return h;
}

double edge_max(const EdgeField& a) { return a.max_abs(); }

double residual_max(const EomResidual& r) {
  return std::max(r.edge.max_abs(), grid_max_abs(r.plaq));
}

}  // namespace

TEST_CASE("wedge and d_edge primitives") {
  // wedge(a, a) = 0 for identical scalar forms; antisymmetry under swap.
  REQUIRE(lattice::wedge(1.0, 2.0, 3.0, 4.0, 1.0, 2.0, 3.0, 4.0) == 0.0);
  double w1 = lattice::wedge(1.0, 2.0, 3.0, 4.0, 5.0, -1.0, 2.0, 0.5);
  double w2 = lattice::wedge(5.0, -1.0, 2.0, 0.5, 1.0, 2.0, 3.0, 4.0);
  REQUIRE(w1 == -w2);
  // d of an exact 1-form (telescoped node differences) vanishes identically.
  // Edges b = f10-f00, t = f11-f01, l = f01-f00, r = f11-f10.
  double f00 = 0.3, f10 = -1.2, f01 = 2.5, f11 = 0.7;
  REQUIRE(lattice::d_edge(f10 - f00, f11 - f01, f01 - f00, f11 - f10) == 0.0);
}

TEST_CASE("action: A = 0 gives S = 0; constant X with vanishing P gives S = 0") {
  Worldsheet ws(5, 5);
  DoubleAlgebra d = make_abelian_dual().make_double();
  BivectorField p = chart_bivector(d);
  NodeGrid x = smooth_nodes(ws, 2, VectorXd::Zero(2), 0.3);
  EdgeField zero(ws, 2);
  REQUIRE(action(p, ws, x, zero) == 0.0);
  NodeGrid xc(ws.nx, ws.ny, (VectorXd(2) << 0.2, -0.4).finished());
  EdgeField a = smooth_edges(ws, 2, 1.0);
  REQUIRE(std::abs(action(p, ws, xc, a)) <= 1e-14);
}

TEST_CASE("action oracle: X = s1 v, A = w ds2 on a flat model gives S = -<w, v>") {
  Worldsheet ws(5, 7);
  DoubleAlgebra d = make_abelian_dual().make_double();
  BivectorField p = chart_bivector(d);
  VectorXd v(2), w(2);
  v << 0.7, -0.3;
  w << 1.1, 0.5;
  NodeGrid x(ws.nx, ws.ny, VectorXd::Zero(2));
  for (int i = 0; i < ws.nx; ++i)
    for (int j = 0; j < ws.ny; ++j) x(i, j) = ws.sx(i) * v;
  EdgeField a(ws, 2);
  for (int i = 0; i < ws.nx; ++i)
    for (int j = 0; j < ws.ny - 1; ++j) a.ey(i, j) = ws.hy() * w;
  double s = action(p, ws, x, a);
  REQUIRE(std::abs(s - (-w.dot(v))) <= 1e-13);
}

TEST_CASE("coordinate residuals vanish for constant X with A = 0") {
  Worldsheet ws(6, 6);
  for (const auto& e : entries()) {
    DoubleAlgebra d = e.make_double();
    BivectorField p = chart_bivector(d);
    NodeGrid x(ws.nx, ws.ny, VectorXd::Constant(d.n(), 0.2));
    EdgeField zero(ws, d.n());
    EomResidual r = eom_residual_coordinate(p, ws, x, zero, 1e-2);
    REQUIRE(residual_max(r) <= 1e-13);
  }
}

TEST_CASE("coordinate residuals on the flat model: r1 = dX, r2 = dA") {
  Worldsheet ws(7, 5);
  DoubleAlgebra d = make_abelian_dual().make_double();
  BivectorField p = chart_bivector(d);
  NodeGrid x = smooth_nodes(ws, 2, VectorXd::Zero(2), 0.4);
  EdgeField a = smooth_edges(ws, 2, 0.8);
  EomResidual r = eom_residual_coordinate(p, ws, x, a, 1e-2);
  for (int i = 0; i < ws.nx - 1; ++i)
    for (int j = 0; j < ws.ny; ++j)
      REQUIRE((r.edge.ex(i, j) - (x(i + 1, j) - x(i, j))).cwiseAbs().maxCoeff() <= 1e-14);
  PlaquetteGrid flat = lattice::dual_flatness_residual(d, ws, a);
  for (int i = 0; i < ws.nx - 1; ++i)
    for (int j = 0; j < ws.ny - 1; ++j)
      REQUIRE((r.plaq(i, j) - flat(i, j)).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("coordinate residuals reproduce the closed-form nonlinear system") {
  // For the solvable model P^{01}(y) = beta y_1 in chart coordinates, the
  // system is dX^0 + beta X^1 A_1 = 0, dX^1 - beta X^1 A_0 = 0,
  // dA_0 = 0, dA_1 - beta A_0 ^ A_1 = 0 (signs as the action's own
  // Euler-Lagrange equations).
  double beta = 1.0;
  Worldsheet ws(9, 9);
  DoubleAlgebra d = make_example_beta(beta).make_double();
  BivectorField p = chart_bivector(d);
  NodeGrid x = smooth_nodes(ws, 2, (VectorXd(2) << 0.1, 0.3).finished(), 0.3);
  EdgeField a = smooth_edges(ws, 2, 0.7);
  EomResidual r = eom_residual_coordinate(p, ws, x, a, 1e-2);

  EdgeField expect_edge(ws, 2);
  lattice::for_each_edge(ws, x, a, expect_edge,
                         [&](const VectorXd& tail, const VectorXd& head, const VectorXd& ae) {
                           double y1 = 0.5 * (tail(1) + head(1));
                           VectorXd v(2);
                           v(0) = head(0) - tail(0) + beta * y1 * ae(1);
                           v(1) = head(1) - tail(1) - beta * y1 * ae(0);
                           return v;
                         });
  for (int i = 0; i < ws.nx - 1; ++i)
    for (int j = 0; j < ws.ny; ++j)
      REQUIRE((r.edge.ex(i, j) - expect_edge.ex(i, j)).cwiseAbs().maxCoeff() <= 1e-12);
  for (int i = 0; i < ws.nx; ++i)
    for (int j = 0; j < ws.ny - 1; ++j)
      REQUIRE((r.edge.ey(i, j) - expect_edge.ey(i, j)).cwiseAbs().maxCoeff() <= 1e-12);

  for (int i = 0; i < ws.nx - 1; ++i)
    for (int j = 0; j < ws.ny - 1; ++j) {
      auto ae = lattice::around(a, i, j);
      double wedge01 = lattice::wedge(ae.b(0), ae.t(0), ae.l(0), ae.r(0), ae.b(1), ae.t(1),
                                      ae.l(1), ae.r(1));
      double da0 = lattice::d_edge(a.ex(i, j)(0), a.ex(i, j + 1)(0), a.ey(i, j)(0),
                                   a.ey(i + 1, j)(0));
      double da1 = lattice::d_edge(a.ex(i, j)(1), a.ex(i, j + 1)(1), a.ey(i, j)(1),
                                   a.ey(i + 1, j)(1));
      REQUIRE(std::abs(r.plaq(i, j)(0) - da0) <= 1e-12);
      REQUIRE(std::abs(r.plaq(i, j)(1) - (da1 - beta * wedge01)) <= 1e-12);
    }
}

TEST_CASE("coordinate and invariant first equations agree through the frame") {
  Worldsheet ws(9, 9);
  for (const auto& e : {make_example_beta(), make_sl2_standard()}) {
    DoubleAlgebra d = e.make_double();
    BivectorField p = chart_bivector(d);
    int n = d.n();
    NodeGrid x = smooth_nodes(ws, n, VectorXd::Constant(n, 0.1), 0.25 * e.sampling_box);
    EdgeField a = smooth_edges(ws, n, 0.5 * e.sampling_box);
    EdgeField a_coord = invariant_to_coordinate(d, ws, x, a);
    EomResidual rc = eom_residual_coordinate(p, ws, x, a_coord, 1e-2);
    EomResidual ri = eom_residual_invariant(d, ws, x, a);
    EdgeField conv(ws, n);
    lattice::for_each_edge(ws, x, rc.edge, conv,
                           [&](const VectorXd& tail, const VectorXd& head, const VectorXd& re) {
                             FrameChange fc = frame_matrix(d.base(), 0.5 * (tail + head));
                             return VectorXd(fc.e * re);
                           });
    auto close = [](const VectorXd& u, const VectorXd& v) {
      return (u - v).cwiseAbs().maxCoeff() <= 1e-10;
    };
    for (int i = 0; i < ws.nx - 1; ++i)
      for (int j = 0; j < ws.ny; ++j) REQUIRE(close(conv.ex(i, j), ri.edge.ex(i, j)));
    for (int i = 0; i < ws.nx; ++i)
      for (int j = 0; j < ws.ny - 1; ++j) REQUIRE(close(conv.ey(i, j), ri.edge.ey(i, j)));
  }
}

TEST_CASE("intrinsic second equation never reads X") {
  Worldsheet ws(6, 6);
  DoubleAlgebra d = make_example_beta().make_double();
  EdgeField a = smooth_edges(ws, 2, 0.9);
  PlaquetteGrid r1 = lattice::dual_flatness_residual(d, ws, a);
  PlaquetteGrid r2 = lattice::dual_flatness_residual(d, ws, a);
  for (size_t k = 0; k < r1.v.size(); ++k)
    REQUIRE((r1.v[k] - r2.v[k]).cwiseAbs().maxCoeff() == 0.0);
  // Intrinsic residuals through two unrelated X grids give bitwise-equal
  // second equations.
  NodeGrid xa = smooth_nodes(ws, 2, VectorXd::Zero(2), 0.4);
  NodeGrid xb = smooth_nodes(ws, 2, VectorXd::Constant(2, 0.5), 0.2);
  EomResidual ra = eom_residual_intrinsic(d, ws, xa, a);
  EomResidual rb = eom_residual_intrinsic(d, ws, xb, a);
  for (size_t k = 0; k < ra.plaq.v.size(); ++k)
    REQUIRE((ra.plaq.v[k] - rb.plaq.v[k]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("invariant and intrinsic residuals differ by the exact bracket correction") {
  Worldsheet ws(8, 8);
  DoubleAlgebra d = make_example_beta().make_double();
  int n = 2;
  NodeGrid x = smooth_nodes(ws, n, VectorXd::Constant(n, 0.2), 0.3);
  EdgeField a = smooth_edges(ws, n, 0.6);
  EomResidual ri = eom_residual_intrinsic(d, ws, x, a);
  EomResidual rv = eom_residual_invariant(d, ws, x, a);
  // First equations are shared.
  for (int i = 0; i < ws.nx - 1; ++i)
    for (int j = 0; j < ws.ny; ++j)
      REQUIRE((ri.edge.ex(i, j) - rv.edge.ex(i, j)).cwiseAbs().maxCoeff() == 0.0);
  // Second equations differ by c_{kj}^i A_i ^ r1^j per plaquette.
  for (int i = 0; i < ws.nx - 1; ++i)
    for (int j = 0; j < ws.ny - 1; ++j) {
      auto ae = lattice::around(a, i, j);
      auto re = lattice::around(ri.edge, i, j);
      MatrixXd w = lattice::wedge_matrix(ae, re);
      VectorXd corr = VectorXd::Zero(n);
      for (int k = 0; k < n; ++k)
        for (int ii = 0; ii < n; ++ii)
          for (int jj = 0; jj < n; ++jj)
            corr(k) += d.base().constants().c(k, jj, ii) * w(ii, jj);
      REQUIRE((rv.plaq(i, j) - ri.plaq(i, j) - corr).cwiseAbs().maxCoeff() <= 1e-15);
    }
}

TEST_CASE("coboundary residuals are the K-conjugate of the intrinsic ones (sl2)") {
  Worldsheet ws(8, 8);
  CatalogEntry e = make_sl2_standard();
  DoubleAlgebra d = e.make_double();
  auto solved = solve_r_matrix(e.c, e.f);
  REQUIRE(std::holds_alternative<CoboundaryData>(solved));
  const auto& cb = std::get<CoboundaryData>(solved);
  NodeGrid x = smooth_nodes(ws, 3, VectorXd::Constant(3, 0.1), 0.15);
  EdgeField a = smooth_edges(ws, 3, 0.3);
  EomResidual rc = eom_residual_coboundary(d, cb, ws, x, a);
  EomResidual ri = eom_residual_intrinsic(d, ws, x, a);
  MatrixXd kinv = d.base().killing_form().inverse();
  double scale = std::max(rc.edge.max_abs(), 1.0);
  for (int i = 0; i < ws.nx - 1; ++i)
    for (int j = 0; j < ws.ny; ++j)
      REQUIRE((rc.edge.ex(i, j) - ri.edge.ex(i, j)).cwiseAbs().maxCoeff() <= 1e-10 * scale);
  for (int i = 0; i < ws.nx; ++i)
    for (int j = 0; j < ws.ny - 1; ++j)
      REQUIRE((rc.edge.ey(i, j) - ri.edge.ey(i, j)).cwiseAbs().maxCoeff() <= 1e-10 * scale);
  for (int i = 0; i < ws.nx - 1; ++i)
    for (int j = 0; j < ws.ny - 1; ++j)
      REQUIRE((rc.plaq(i, j) - kinv * ri.plaq(i, j)).cwiseAbs().maxCoeff() <= 1e-10 * scale);
}

TEST_CASE("coboundary residuals reject unsuitable models") {
  Worldsheet ws(4, 4);
  CatalogEntry sl2 = make_sl2_standard();
  auto cb = std::get<CoboundaryData>(solve_r_matrix(sl2.c, sl2.f));
  DoubleAlgebra solvable = make_example_beta().make_double();
  NodeGrid x2(ws.nx, ws.ny, VectorXd::Zero(2));
  REQUIRE_THROWS_AS(eom_residual_coboundary(solvable, cb, ws, x2, EdgeField(ws, 2)),
                    NotSemisimple);
  CoboundaryData no_big = cb;
  no_big.big_r.reset();
  DoubleAlgebra d = sl2.make_double();
  NodeGrid x3(ws.nx, ws.ny, VectorXd::Zero(3));
  REQUIRE_THROWS_AS(eom_residual_coboundary(d, no_big, ws, x3, EdgeField(ws, 3)), NotCoboundary);
}

TEST_CASE("coboundary with R = 0 degenerates to pure frame + flatness equations") {
  // so(3) with f = 0 is coboundary with r = 0; the first equation loses its
  // A-term and the second is plain dB.
  Worldsheet ws(6, 6);
  CatalogEntry so3 = make_linear_so3();
  DoubleAlgebra d = so3.make_double();
  auto cb = std::get<CoboundaryData>(solve_r_matrix(so3.c, so3.f));
  NodeGrid x = smooth_nodes(ws, 3, VectorXd::Constant(3, 0.2), 0.2);
  EdgeField a = smooth_edges(ws, 3, 0.5);
  EomResidual r = eom_residual_coboundary(d, cb, ws, x, a);
  MatrixXd kinv = d.base().killing_form().inverse();
  for (int i = 0; i < ws.nx - 1; ++i)
    for (int j = 0; j < ws.ny; ++j) {
      VectorXd mid = 0.5 * (x(i, j) + x(i + 1, j));
      VectorXd expect = frame_matrix(d.base(), mid).e * (x(i + 1, j) - x(i, j));
      REQUIRE((r.edge.ex(i, j) - expect).cwiseAbs().maxCoeff() <= 1e-12);
    }
  EdgeField b(ws, 3);
  lattice::for_each_edge(ws, x, a, b,
                         [&](const VectorXd&, const VectorXd&, const VectorXd& ae) {
                           return VectorXd(kinv * ae);
                         });
  for (int i = 0; i < ws.nx - 1; ++i)
    for (int j = 0; j < ws.ny - 1; ++j)
      for (int k = 0; k < 3; ++k) {
        double db = lattice::d_edge(b.ex(i, j)(k), b.ex(i, j + 1)(k), b.ey(i, j)(k),
                                    b.ey(i + 1, j)(k));
        REQUIRE(std::abs(r.plaq(i, j)(k) - db) <= 1e-14);
      }
}

TEST_CASE("linear residuals: abelian algebra reduces to dX and dA") {
  Worldsheet ws(6, 6);
  LieAlgebra abelian(StructureConstants::zero(2));
  NodeGrid x = smooth_nodes(ws, 2, VectorXd::Zero(2), 0.5);
  EdgeField a = smooth_edges(ws, 2, 0.7);
  EomResidual r = eom_residual_linear(abelian, ws, x, a);
  for (int i = 0; i < ws.nx - 1; ++i)
    for (int j = 0; j < ws.ny; ++j)
      REQUIRE((r.edge.ex(i, j) - (x(i + 1, j) - x(i, j))).cwiseAbs().maxCoeff() == 0.0);
  for (int i = 0; i < ws.nx - 1; ++i)
    for (int j = 0; j < ws.ny - 1; ++j)
      for (int k = 0; k < 2; ++k) {
        double da = lattice::d_edge(a.ex(i, j)(k), a.ex(i, j + 1)(k), a.ey(i, j)(k),
                                    a.ey(i + 1, j)(k));
        REQUIRE(r.plaq(i, j)(k) == da);
      }
}

TEST_CASE("linear second equation is exactly zero on exact pure-gauge A = d lambda") {
  Worldsheet ws(7, 7);
  LieAlgebra abelian(StructureConstants::zero(2));
  NodeGrid lambda = smooth_nodes(ws, 2, VectorXd::Zero(2), 0.8);
  EdgeField a(ws, 2);
  for (int i = 0; i < ws.nx - 1; ++i)
    for (int j = 0; j < ws.ny; ++j) a.ex(i, j) = lambda(i + 1, j) - lambda(i, j);
  for (int i = 0; i < ws.nx; ++i)
    for (int j = 0; j < ws.ny - 1; ++j) a.ey(i, j) = lambda(i, j + 1) - lambda(i, j);
  NodeGrid x = smooth_nodes(ws, 2, VectorXd::Zero(2), 0.3);
  EomResidual r = eom_residual_linear(abelian, ws, x, a);
  // Telescoping is exact up to the rounding of the node differences.
  REQUIRE(grid_max_abs(r.plaq) <= 1e-15);
}

TEST_CASE("linear Killing variant is the exact K^{-1}-conjugate (so(3))") {
  Worldsheet ws(8, 8);
  CatalogEntry so3 = make_linear_so3();
  LieAlgebra alg(so3.c);
  NodeGrid x = smooth_nodes(ws, 3, VectorXd::Constant(3, 0.3), 0.4);
  EdgeField a = smooth_edges(ws, 3, 0.6);
  EomResidual r = eom_residual_linear(alg, ws, x, a);
  EdgeField rk = eom_residual_linear_killing(alg, ws, x, a);
  MatrixXd kinv = alg.killing_form().inverse();
  for (int i = 0; i < ws.nx - 1; ++i)
    for (int j = 0; j < ws.ny; ++j)
      REQUIRE((rk.ex(i, j) - kinv * r.edge.ex(i, j)).cwiseAbs().maxCoeff() <= 1e-14);
  for (int i = 0; i < ws.nx; ++i)
    for (int j = 0; j < ws.ny - 1; ++j)
      REQUIRE((rk.ey(i, j) - kinv * r.edge.ey(i, j)).cwiseAbs().maxCoeff() <= 1e-14);

  LieAlgebra solvable(StructureConstants::from_entries(2, {{{0, 1, 1}}}, {1.0}));
  REQUIRE_THROWS_AS(eom_residual_linear_killing(solvable, ws, x, a), NotSemisimple);
}

TEST_CASE("pure gauge: constant dual field gives A~ = 0") {
  Worldsheet ws(5, 5);
  DoubleAlgebra d = make_example_beta().make_double();
  NodeGrid h(ws.nx, ws.ny, VectorXd::Constant(2, 0.4));
  EdgeField a = pure_gauge_dual_field(d, ws, h);
  REQUIRE(edge_max(a) <= 1e-12);
}

TEST_CASE("pure gauge on an abelian dual is exact: differences and zero curvature") {
  Worldsheet ws(7, 7);
  DoubleAlgebra d = make_abelian_dual().make_double();
  NodeGrid h = smooth_dual_nodes(ws, 2, 0.7);
  EdgeField a = pure_gauge_dual_field(d, ws, h);
  for (int i = 0; i < ws.nx - 1; ++i)
    for (int j = 0; j < ws.ny; ++j)
      REQUIRE((a.ex(i, j) - (h(i + 1, j) - h(i, j))).cwiseAbs().maxCoeff() <= 1e-12);
  PlaquetteGrid flat = lattice::dual_flatness_residual(d, ws, a);
  REQUIRE(grid_max_abs(flat) <= 1e-12);
}

TEST_CASE("pure-gauge flatness residual converges at second order") {
  DoubleAlgebra d = make_example_beta().make_double();
  std::vector<double> res;
  for (int nx : {9, 17, 33}) {
    Worldsheet ws(nx, nx);
    EdgeField a = pure_gauge_dual_field(d, ws, smooth_dual_nodes(ws, 2, 0.3));
    res.push_back(grid_max_abs(lattice::dual_flatness_residual(d, ws, a)));
  }
  REQUIRE(std::log2(res[0] / res[1]) >= 1.7);
  REQUIRE(std::log2(res[1] / res[2]) >= 1.7);
}

TEST_CASE("integration: A~ = 0 reproduces the constant anchor field") {
  Worldsheet ws(6, 6);
  DoubleAlgebra d = make_example_beta().make_double();
  VectorXd x0(2);
  x0 << 0.3, 0.4;
  IntegrationResult out = integrate_group_field(d, ws, EdgeField(ws, 2), x0);
  for (const auto& v : out.x.v) REQUIRE((v - x0).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(out.cross_residual_max <= 1e-13);
}

TEST_CASE("integration on the flat model (Pi = 0) keeps X constant for any A~") {
  Worldsheet ws(6, 6);
  DoubleAlgebra d = make_abelian_dual().make_double();
  EdgeField a = smooth_edges(ws, 2, 0.8);
  VectorXd x0(2);
  x0 << 0.2, -0.1;
  IntegrationResult out = integrate_group_field(d, ws, a, x0);
  for (const auto& v : out.x.v) REQUIRE((v - x0).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("integration cross-residual converges under refinement") {
  DoubleAlgebra d = make_example_beta().make_double();
  VectorXd x0(2);
  x0 << 0.3, 0.4;
  std::vector<double> res;
  for (int nx : {9, 17, 33}) {
    Worldsheet ws(nx, nx);
    EdgeField a = pure_gauge_dual_field(d, ws, smooth_dual_nodes(ws, 2, 0.3));
    res.push_back(integrate_group_field(d, ws, a, x0).cross_residual_max);
  }
  REQUIRE(std::log2(res[0] / res[1]) >= 0.8);
  REQUIRE(std::log2(res[1] / res[2]) >= 0.8);
}

TEST_CASE("variation probe: zero amplitudes return exactly zero; bounds enforced") {
  Worldsheet ws(6, 6);
  DoubleAlgebra d = make_example_beta().make_double();
  BivectorField p = chart_bivector(d);
  NodeGrid x = smooth_nodes(ws, 2, VectorXd::Constant(2, 0.2), 0.3);
  EdgeField a = smooth_edges(ws, 2, 0.5);
  VariationProbe probe;
  probe.y.value = [](const VectorXd& v) { return VectorXd(0.1 * v); };
  probe.y.jacobian = [](const VectorXd& v) {
    return MatrixXd(0.1 * MatrixXd::Identity(v.size(), v.size()));
  };
  probe.b = smooth_edges(ws, 2, 0.4);
  REQUIRE(first_variation_probe(p, ws, x, a, probe) == 0.0);
  probe.eps_tilde = 0.2;
  REQUIRE_THROWS_AS(first_variation_probe(p, ws, x, a, probe), InvalidInput);
}

TEST_CASE("variation probe: non-solution fields scale linearly in eps~") {
  Worldsheet ws(33, 33);
  DoubleAlgebra d = make_example_beta().make_double();
  BivectorField p = chart_bivector(d);
  NodeGrid x = smooth_nodes(ws, 2, VectorXd::Constant(2, 0.2), 0.3);
  EdgeField a = smooth_edges(ws, 2, 0.5);
  EdgeField a_coord = invariant_to_coordinate(d, ws, x, a);
  Rng rng(90);
  EdgeField b(ws, 2);
  double amp = ws.hx();
  for (auto& v : b.ex.v) v = amp * sample_box(rng, 2, 1.0);
  for (auto& v : b.ey.v) v = amp * sample_box(rng, 2, 1.0);
  VariationProbe probe;
  probe.y.value = [](const VectorXd& v) { return VectorXd(VectorXd::Zero(v.size())); };
  probe.y.jacobian = [](const VectorXd& v) {
    return MatrixXd(MatrixXd::Zero(v.size(), v.size()));
  };
  probe.b = b;
  probe.eps_tilde = 0.05;
  double d1 = first_variation_probe(p, ws, x, a_coord, probe);
  probe.eps_tilde = 0.1;
  double d2 = first_variation_probe(p, ws, x, a_coord, probe);
  double slope = std::log2(d2 / d1);
  REQUIRE(slope >= 0.85);
  REQUIRE(slope <= 1.15);
}

TEST_CASE("invariant_to_coordinate is inverted by the transpose frame") {
  Worldsheet ws(5, 5);
  DoubleAlgebra d = make_example_beta().make_double();
  NodeGrid x = smooth_nodes(ws, 2, VectorXd::Constant(2, 0.1), 0.3);
  EdgeField a = smooth_edges(ws, 2, 0.6);
  EdgeField ac = invariant_to_coordinate(d, ws, x, a);
  EdgeField back(ws, 2);
  lattice::for_each_edge(ws, x, ac, back,
                         [&](const VectorXd& tail, const VectorXd& head, const VectorXd& v) {
                           FrameChange fc = frame_matrix(d.base(), 0.5 * (tail + head));
                           return VectorXd(fc.f.transpose() * v);
                         });
  for (int i = 0; i < ws.nx - 1; ++i)
    for (int j = 0; j < ws.ny; ++j)
      REQUIRE((back.ex(i, j) - a.ex(i, j)).cwiseAbs().maxCoeff() <= 1e-13);
}
