#ifndef PLSM_LATTICE_HPP
#define PLSM_LATTICE_HPP

#include <functional>
#include <vector>

#include "plsm/checks.hpp"
#include "plsm/coboundary.hpp"

namespace plsm {

/// Rectangular worldsheet [0,1]^2 with nx x ny nodes.
struct Worldsheet {
  int nx;
  int ny;

  Worldsheet(int nx_, int ny_) : nx(nx_), ny(ny_) {
    if (nx < 2 || ny < 2) throw InvalidInput("Worldsheet: need at least 2 nodes per side");
  }

  double hx() const { return 1.0 / (nx - 1); }
  double hy() const { return 1.0 / (ny - 1); }
  double sx(int i) const { return i * hx(); }
  double sy(int j) const { return j * hy(); }
};

template <class T>
struct Grid2 {
  int mx = 0;
  int my = 0;
  std::vector<T> v;

  Grid2() = default;
  Grid2(int mx_, int my_, const T& init = T{}) : mx(mx_), my(my_), v(mx_ * my_, init) {}

  T& operator()(int i, int j) { return v[i * my + j]; }
  const T& operator()(int i, int j) const { return v[i * my + j]; }
};

using NodeGrid = Grid2<VectorXd>;

/// Edge-sampled 1-form: ex(i,j) lives on (i,j)->(i+1,j), ey(i,j) on
/// (i,j)->(i,j+1).  Values are edge integrals, so they carry the h factor.
struct EdgeField {
  Grid2<VectorXd> ex;
  Grid2<VectorXd> ey;

  EdgeField() = default;
  EdgeField(const Worldsheet& ws, int n)
      : ex(ws.nx - 1, ws.ny, VectorXd::Zero(n)), ey(ws.nx, ws.ny - 1, VectorXd::Zero(n)) {}

  double max_abs() const {
    double m = 0.0;
    for (const auto& e : ex.v) m = std::max(m, e.cwiseAbs().maxCoeff());
    for (const auto& e : ey.v) m = std::max(m, e.cwiseAbs().maxCoeff());
    return m;
  }
};

using PlaquetteGrid = Grid2<VectorXd>;

inline double grid_max_abs(const PlaquetteGrid& g) {
  double m = 0.0;
  for (const auto& e : g.v) m = std::max(m, e.cwiseAbs().maxCoeff());
  return m;
}

/// Node-sampled group field X and edge-sampled 1-form A.  `a` holds the
/// right-invariant components; `a_coord`, when populated, the coordinate
/// components.
struct LatticeFields {
  NodeGrid x;
  EdgeField a;
  EdgeField a_coord;
};

namespace lattice {

/// Antisymmetrized plaquette wedge of two scalar edge 1-forms given their
/// bottom/top/left/right edge values.
inline double wedge(double ab, double at, double al, double ar, double bb, double bt, double bl,
                    double br) {
  return 0.25 * ((ab + at) * (bl + br) - (al + ar) * (bb + bt));
}

/// Oriented boundary sum: exact discrete d of a 1-form on a plaquette.
inline double d_edge(double ab, double at, double al, double ar) { return ab + ar - at - al; }

/// Edge values of a vector 1-form around plaquette (i,j).
struct PlaqEdges {
  const VectorXd& b;
  const VectorXd& t;
  const VectorXd& l;
  const VectorXd& r;
};

inline PlaqEdges around(const EdgeField& a, int i, int j) {
  return PlaqEdges{a.ex(i, j), a.ex(i, j + 1), a.ey(i, j), a.ey(i + 1, j)};
}

/// Component wedge matrix W(i,j) = (A_i ^ B_j) on one plaquette.
inline MatrixXd wedge_matrix(const PlaqEdges& a, const PlaqEdges& b) {
  const int n = static_cast<int>(a.b.size());
  const int m = static_cast<int>(b.b.size());
  MatrixXd w(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      w(i, j) = wedge(a.b(i), a.t(i), a.l(i), a.r(i), b.b(j), b.t(j), b.l(j), b.r(j));
  return w;
}

inline VectorXd node_average(const NodeGrid& x, int i, int j) {
  return 0.25 * (x(i, j) + x(i + 1, j) + x(i, j + 1) + x(i + 1, j + 1));
}

/// Applies fn(i, j, tail, head, edge_value, out_value) to every edge of a.
template <class Fn>
void for_each_edge(const Worldsheet& ws, const NodeGrid& x, const EdgeField& a, EdgeField& out,
                   Fn&& fn) {
  for (int i = 0; i < ws.nx - 1; ++i)
    for (int j = 0; j < ws.ny; ++j)
      out.ex(i, j) = fn(x(i, j), x(i + 1, j), a.ex(i, j));
  for (int i = 0; i < ws.nx; ++i)
    for (int j = 0; j < ws.ny - 1; ++j)
      out.ey(i, j) = fn(x(i, j), x(i, j + 1), a.ey(i, j));
}

}  // namespace lattice

/// Discrete action S = sum_plaq A_i ^ dX^i + 1/2 P^{jk}(X) A_j ^ A_k,
/// with A in coordinate components and P evaluated at the plaquette-average
/// of the corner coordinates.
inline double action(const BivectorField& p, const Worldsheet& ws, const NodeGrid& x,
                     const EdgeField& a_coord) {
  double s = 0.0;
  EdgeField dx(ws, static_cast<int>(x(0, 0).size()));
  lattice::for_each_edge(ws, x, a_coord, dx,
                         [](const VectorXd& tail, const VectorXd& head, const VectorXd&) {
                           return VectorXd(head - tail);
                         });
  for (int i = 0; i < ws.nx - 1; ++i)
    for (int j = 0; j < ws.ny - 1; ++j) {
      auto ae = lattice::around(a_coord, i, j);
      auto dxe = lattice::around(dx, i, j);
      s += lattice::wedge_matrix(ae, dxe).trace();
      MatrixXd pv = p(lattice::node_average(x, i, j));
      s += 0.5 * (pv.cwiseProduct(lattice::wedge_matrix(ae, ae))).sum();
    }
  return s;
}

struct EomResidual {
  EdgeField edge;       // first equation, per edge
  PlaquetteGrid plaq;   // second equation, per plaquette
};

/// Coordinate-form residuals: dX^i + P^{ij}(X) A_j per edge (midpoint P) and
/// dA_k + 1/2 P^{ij}_{,k}(X) A_i ^ A_j per plaquette, with P derivatives by
/// central differences of step fd_step.
inline EomResidual eom_residual_coordinate(const BivectorField& p, const Worldsheet& ws,
                                           const NodeGrid& x, const EdgeField& a_coord,
                                           double fd_step = 1e-5) {
  const int n = static_cast<int>(x(0, 0).size());
  EomResidual r{EdgeField(ws, n), PlaquetteGrid(ws.nx - 1, ws.ny - 1, VectorXd::Zero(n))};
  lattice::for_each_edge(ws, x, a_coord, r.edge,
                         [&](const VectorXd& tail, const VectorXd& head, const VectorXd& ae) {
                           VectorXd mid = 0.5 * (tail + head);
                           return VectorXd(head - tail + p(mid) * ae);
                         });
  for (int i = 0; i < ws.nx - 1; ++i)
    for (int j = 0; j < ws.ny - 1; ++j) {
      auto ae = lattice::around(a_coord, i, j);
      MatrixXd ww = lattice::wedge_matrix(ae, ae);
      VectorXd xc = lattice::node_average(x, i, j);
      VectorXd res(n);
      auto grad = detail::bivector_gradient(p, xc, fd_step);
      for (int k = 0; k < n; ++k) {
        double v = lattice::d_edge(a_coord.ex(i, j)(k), a_coord.ex(i, j + 1)(k),
                                   a_coord.ey(i, j)(k), a_coord.ey(i + 1, j)(k));
        v += 0.5 * (grad[k].transpose().cwiseProduct(ww)).sum();
        res(k) = v;
      }
      r.plaq(i, j) = res;
    }
  return r;
}

namespace lattice {

/// Per-edge first-equation residual in right-invariant components:
/// r1 = e(X_mid) dX + Pi(X_mid) A.
inline EdgeField invariant_eq1_residual(const DoubleAlgebra& d, const Worldsheet& ws,
                                        const NodeGrid& x, const EdgeField& a) {
  EdgeField r(ws, d.n());
  for_each_edge(ws, x, a, r,
                [&](const VectorXd& tail, const VectorXd& head, const VectorXd& ae) {
                  VectorXd mid = 0.5 * (tail + head);
                  GroupPoint g(d, mid);
                  FrameChange fc = frame_matrix(d, g);
                  return VectorXd(fc.e * (head - tail) + pi_matrix(d, g) * ae);
                });
  return r;
}

/// Zero-curvature residual dA_k + 1/2 f^{ij}_k A_i ^ A_j per plaquette.
/// Reads only the dual structure constants, never X.
inline PlaquetteGrid dual_flatness_residual(const DoubleAlgebra& d, const Worldsheet& ws,
                                            const EdgeField& a) {
  const int n = d.n();
  PlaquetteGrid r(ws.nx - 1, ws.ny - 1, VectorXd::Zero(n));
  for (int i = 0; i < ws.nx - 1; ++i)
    for (int j = 0; j < ws.ny - 1; ++j) {
      auto ae = around(a, i, j);
      MatrixXd ww = wedge_matrix(ae, ae);
      VectorXd res(n);
      for (int k = 0; k < n; ++k) {
        double v = d_edge(a.ex(i, j)(k), a.ex(i, j + 1)(k), a.ey(i, j)(k), a.ey(i + 1, j)(k));
        for (int ii = 0; ii < n; ++ii)
          for (int jj = 0; jj < n; ++jj) v += 0.5 * d.cocommutator().f(ii, jj, k) * ww(ii, jj);
        res(k) = v;
      }
      r(i, j) = res;
    }
  return r;
}

}  // namespace lattice

/// Intrinsic (coordinate-free) residuals: Theta_R^X - Pi(X)(A~) per edge and
/// the zero-curvature equation per plaquette.
inline EomResidual eom_residual_intrinsic(const DoubleAlgebra& d, const Worldsheet& ws,
                                          const NodeGrid& x, const EdgeField& a) {
  return EomResidual{lattice::invariant_eq1_residual(d, ws, x, a),
                     lattice::dual_flatness_residual(d, ws, a)};
}

/// Right-invariant residuals.  The second equation uses the closed derivative
/// law for R_{T_k}(Pi), with the Pi-dependent part evaluated per edge; it
/// differs from the intrinsic form exactly by c_{kj}^i A_i ^ r1^j.
inline EomResidual eom_residual_invariant(const DoubleAlgebra& d, const Worldsheet& ws,
                                          const NodeGrid& x, const EdgeField& a) {
  const int n = d.n();
  EomResidual r = eom_residual_intrinsic(d, ws, x, a);
  for (int i = 0; i < ws.nx - 1; ++i)
    for (int j = 0; j < ws.ny - 1; ++j) {
      auto ae = lattice::around(a, i, j);
      auto re = lattice::around(r.edge, i, j);
      MatrixXd w = lattice::wedge_matrix(ae, re);
      VectorXd extra = VectorXd::Zero(n);
      for (int k = 0; k < n; ++k)
        for (int ii = 0; ii < n; ++ii)
          for (int jj = 0; jj < n; ++jj)
            extra(k) += d.base().constants().c(k, jj, ii) * w(ii, jj);
      r.plaq(i, j) += extra;
    }
  return r;
}

/// Coboundary-form residuals (semisimple base, r-matrix data):
/// Theta_R^X + (R - Ad_X R Ad_X^{-1})(B) = 0 and dB + 1/2 [B ^ B]_R = 0,
/// with B = K^{-1}(A~).
inline EomResidual eom_residual_coboundary(const DoubleAlgebra& d, const CoboundaryData& cb,
                                           const Worldsheet& ws, const NodeGrid& x,
                                           const EdgeField& a) {
  const int n = d.n();
  if (!d.base().is_semisimple()) throw NotSemisimple("eom_residual_coboundary: base not semisimple");
  if (!cb.big_r) throw NotCoboundary("eom_residual_coboundary: no R-map data");
  const MatrixXd& big_r = *cb.big_r;
  MatrixXd kinv = d.base().killing_form().inverse();

  EdgeField b(ws, n);
  lattice::for_each_edge(ws, x, a, b,
                         [&](const VectorXd&, const VectorXd&, const VectorXd& ae) {
                           return VectorXd(kinv * ae);
                         });
  EomResidual r{EdgeField(ws, n), PlaquetteGrid(ws.nx - 1, ws.ny - 1, VectorXd::Zero(n))};
  lattice::for_each_edge(ws, x, b, r.edge,
                         [&](const VectorXd& tail, const VectorXd& head, const VectorXd& be) {
                           VectorXd mid = 0.5 * (tail + head);
                           GroupPoint g(d, mid);
                           FrameChange fc = frame_matrix(d, g);
                           MatrixXd ag = g.ad().block(0, 0, n, n);
                           MatrixXd op = big_r - ag * big_r * ag.inverse();
                           return VectorXd(fc.e * (head - tail) + op * be);
                         });
  // R-bracket on the basis, [x, y]_R = [R x, y] + [x, R y]: this is the
  // bracket K^{-1}-conjugate to the dual bracket, which is what the
  // corollary's equivalence with the zero-curvature equation requires.
  std::vector<std::vector<VectorXd>> brk(n, std::vector<VectorXd>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      brk[i][j] = d.base().bracket(big_r.col(i), VectorXd::Unit(n, j)) +
                  d.base().bracket(VectorXd::Unit(n, i), big_r.col(j));
  for (int i = 0; i < ws.nx - 1; ++i)
    for (int j = 0; j < ws.ny - 1; ++j) {
      auto be = lattice::around(b, i, j);
      MatrixXd ww = lattice::wedge_matrix(be, be);
      VectorXd res = VectorXd::Zero(n);
      for (int k = 0; k < n; ++k)
        res(k) = lattice::d_edge(b.ex(i, j)(k), b.ex(i, j + 1)(k), b.ey(i, j)(k),
                                 b.ey(i + 1, j)(k));
      for (int ii = 0; ii < n; ++ii)
        for (int jj = 0; jj < n; ++jj) res += 0.5 * ww(ii, jj) * brk[ii][jj];
      r.plaq(i, j) = res;
    }
  return r;
}

/// Linear-model residuals on the dual space of the algebra: the field x holds
/// covectors, a holds algebra-valued edge components.
inline EomResidual eom_residual_linear(const LieAlgebra& alg, const Worldsheet& ws,
                                       const NodeGrid& x, const EdgeField& a) {
  const int n = alg.dim();
  EomResidual r{EdgeField(ws, n), PlaquetteGrid(ws.nx - 1, ws.ny - 1, VectorXd::Zero(n))};
  lattice::for_each_edge(ws, x, a, r.edge,
                         [&](const VectorXd& tail, const VectorXd& head, const VectorXd& ae) {
                           VectorXd mid = 0.5 * (tail + head);
                           return VectorXd(head - tail + alg.coadjoint(ae, mid));
                         });
  for (int i = 0; i < ws.nx - 1; ++i)
    for (int j = 0; j < ws.ny - 1; ++j) {
      auto ae = lattice::around(a, i, j);
      MatrixXd ww = lattice::wedge_matrix(ae, ae);
      VectorXd res(n);
      for (int k = 0; k < n; ++k) {
        double v = lattice::d_edge(a.ex(i, j)(k), a.ex(i, j + 1)(k), a.ey(i, j)(k),
                                   a.ey(i + 1, j)(k));
        for (int ii = 0; ii < n; ++ii)
          for (int jj = 0; jj < n; ++jj) v += 0.5 * alg.constants().c(ii, jj, k) * ww(ii, jj);
        res(k) = v;
      }
      r.plaq(i, j) = res;
    }
  return r;
}

/// Semisimple rewriting of the linear first equation, dX~ + [A~, X~] with
/// X~ = K^{-1}(X, .); must agree with K^{-1} applied to the plain residual.
inline EdgeField eom_residual_linear_killing(const LieAlgebra& alg, const Worldsheet& ws,
                                             const NodeGrid& x, const EdgeField& a) {
  if (!alg.is_semisimple()) throw NotSemisimple("eom_residual_linear_killing: K singular");
  MatrixXd kinv = alg.killing_form().inverse();
  EdgeField r(ws, alg.dim());
  lattice::for_each_edge(ws, x, a, r,
                         [&](const VectorXd& tail, const VectorXd& head, const VectorXd& ae) {
                           VectorXd mid = kinv * (0.5 * (tail + head));
                           return VectorXd(kinv * (head - tail) + alg.bracket(ae, mid));
                         });
  return r;
}

/// Edge field A~ from a node grid of dual-group points: per edge the
/// logarithm of the right difference h(head) h(tail)^{-1}, recovered from the
/// adjoint matrices by a least-squares solve against the dual ad basis.
inline EdgeField pure_gauge_dual_field(const DoubleAlgebra& d, const Worldsheet& ws,
                                       const NodeGrid& h_nodes) {
  const int n = d.n();
  const int N = 2 * n;
  // Directions with ad = 0 are central in the whole double; the adjoint
  // matrices carry no information about them, but their exponential factors
  // commute with everything, so the chart coordinate difference is exact.
  std::vector<int> central;
  MatrixXd basis(N * N, n);
  for (int k = 0; k < n; ++k) {
    const MatrixXd& adk = d.total().ad(n + k);
    basis.col(k) = Eigen::Map<const VectorXd>(adk.data(), N * N);
    if (adk.cwiseAbs().maxCoeff() == 0.0) central.push_back(k);
  }
  Eigen::ColPivHouseholderQR<MatrixXd> qr(basis);

  Grid2<MatrixXd> ad(ws.nx, ws.ny);
  Grid2<MatrixXd> ad_inv(ws.nx, ws.ny);
  for (int i = 0; i < ws.nx; ++i)
    for (int j = 0; j < ws.ny; ++j) {
      GroupPoint g(d, h_nodes(i, j), GroupRole::Dual);
      ad(i, j) = g.ad();
      ad_inv(i, j) = g.ad_inverse();
    }
  auto edge_log = [&](int ti, int tj, int hi, int hj) {
    MatrixXd diff = ad(hi, hj) * ad_inv(ti, tj);
    MatrixXd lg = matrix_log(diff);
    VectorXd xi = qr.solve(Eigen::Map<const VectorXd>(lg.data(), N * N));
    double res = (basis * xi - Eigen::Map<const VectorXd>(lg.data(), N * N)).cwiseAbs().maxCoeff();
    if (res > 1e-8 * (1.0 + lg.cwiseAbs().maxCoeff()))
      throw ChartBoundary("pure_gauge_dual_field: log is not in the dual algebra image");
    for (int k : central) xi(k) = h_nodes(hi, hj)(k) - h_nodes(ti, tj)(k);
    return xi;
  };
  EdgeField a(ws, n);
  for (int i = 0; i < ws.nx - 1; ++i)
    for (int j = 0; j < ws.ny; ++j) a.ex(i, j) = edge_log(i, j, i + 1, j);
  for (int i = 0; i < ws.nx; ++i)
    for (int j = 0; j < ws.ny - 1; ++j) a.ey(i, j) = edge_log(i, j, i, j + 1);
  return a;
}

struct IntegrationResult {
  NodeGrid x;
  double cross_residual_max = 0.0;
};

/// Integrates the anchor equation edge by edge: first the left column upward,
/// then each row rightward, stepping dX = -f(X_tail) Pi(X_tail) A_edge.
/// The residual on the unused y-edges is the integrability check.
inline IntegrationResult integrate_group_field(const DoubleAlgebra& d, const Worldsheet& ws,
                                               const EdgeField& a, const VectorXd& x0) {
  const int n = d.n();
  IntegrationResult out;
  out.x = NodeGrid(ws.nx, ws.ny, VectorXd::Zero(n));
  auto step = [&](const VectorXd& tail, const VectorXd& ae, int ni, int nj) {
    try {
      GroupPoint g(d, tail);
      FrameChange fc = frame_matrix(d, g);
      return VectorXd(tail - fc.f * (pi_matrix(d, g) * ae));
    } catch (const ChartBoundary& e) {
      throw ChartBoundary("integration left the chart stepping to node (" + std::to_string(ni) +
                          "," + std::to_string(nj) + "): " + e.what());
    }
  };
  out.x(0, 0) = x0;
  for (int j = 0; j < ws.ny - 1; ++j) out.x(0, j + 1) = step(out.x(0, j), a.ey(0, j), 0, j + 1);
  for (int j = 0; j < ws.ny; ++j)
    for (int i = 0; i < ws.nx - 1; ++i)
      out.x(i + 1, j) = step(out.x(i, j), a.ex(i, j), i + 1, j);
  // Unused-direction residuals: all y-edges with ix > 0.
  for (int i = 1; i < ws.nx; ++i)
    for (int j = 0; j < ws.ny - 1; ++j) {
      VectorXd mid = 0.5 * (out.x(i, j) + out.x(i, j + 1));
      GroupPoint g(d, mid);
      FrameChange fc = frame_matrix(d, g);
      VectorXd r = fc.e * (out.x(i, j + 1) - out.x(i, j)) + pi_matrix(d, g) * a.ey(i, j);
      out.cross_residual_max = std::max(out.cross_residual_max, r.cwiseAbs().maxCoeff());
    }
  return out;
}

/// Target vector field for the variation probe: value and Jacobian at a
/// chart point.
struct TargetVectorField {
  std::function<VectorXd(const VectorXd&)> value;
  std::function<MatrixXd(const VectorXd&)> jacobian;
};

struct VariationProbe {
  TargetVectorField y;
  EdgeField b;
  double eps = 0.0;
  double eps_tilde = 0.0;
};

/// |S[X~, A~] - S[X, A]| for the flow variation X~ = X + eps Y(X) (one Euler
/// step, Y forced to zero on boundary nodes) and the first-order pullback of
/// A + eps~ B.
inline double first_variation_probe(const BivectorField& p, const Worldsheet& ws,
                                    const NodeGrid& x, const EdgeField& a_coord,
                                    const VariationProbe& probe) {
  if (std::abs(probe.eps) > 0.1 || std::abs(probe.eps_tilde) > 0.1)
    throw InvalidInput("first_variation_probe: |eps| and |eps~| must be <= 0.1");
  const int n = static_cast<int>(x(0, 0).size());
  double s0 = action(p, ws, x, a_coord);
  auto boundary = [&](int i, int j) { return i == 0 || j == 0 || i == ws.nx - 1 || j == ws.ny - 1; };
  NodeGrid xs(ws.nx, ws.ny, VectorXd::Zero(n));
  for (int i = 0; i < ws.nx; ++i)
    for (int j = 0; j < ws.ny; ++j)
      xs(i, j) = boundary(i, j) ? x(i, j) : VectorXd(x(i, j) + probe.eps * probe.y.value(x(i, j)));
  Grid2<double> mask(ws.nx, ws.ny, 1.0);
  for (int i = 0; i < ws.nx; ++i)
    for (int j = 0; j < ws.ny; ++j)
      if (boundary(i, j)) mask(i, j) = 0.0;
  EdgeField as(ws, n);
  auto pull = [&](const VectorXd& mid, double m, const VectorXd& ae, const VectorXd& be) {
    VectorXd shifted = ae + probe.eps_tilde * be;
    return VectorXd(shifted - probe.eps * m * probe.y.jacobian(mid).transpose() * shifted);
  };
  for (int i = 0; i < ws.nx - 1; ++i)
    for (int j = 0; j < ws.ny; ++j)
      as.ex(i, j) = pull(0.5 * (x(i, j) + x(i + 1, j)), 0.5 * (mask(i, j) + mask(i + 1, j)),
                         a_coord.ex(i, j), probe.b.ex(i, j));
  for (int i = 0; i < ws.nx; ++i)
    for (int j = 0; j < ws.ny - 1; ++j)
      as.ey(i, j) = pull(0.5 * (x(i, j) + x(i, j + 1)), 0.5 * (mask(i, j) + mask(i, j + 1)),
                         a_coord.ey(i, j), probe.b.ey(i, j));
  return std::abs(action(p, ws, xs, as) - s0);
}

/// Conversion between right-invariant and coordinate edge components,
/// A_coord = e(X_mid)^T A, matching the evaluation point of the residual
/// evaluators.
inline EdgeField invariant_to_coordinate(const DoubleAlgebra& d, const Worldsheet& ws,
                                         const NodeGrid& x, const EdgeField& a) {
  EdgeField out(ws, d.n());
  lattice::for_each_edge(ws, x, a, out,
                         [&](const VectorXd& tail, const VectorXd& head, const VectorXd& ae) {
                           FrameChange fc = frame_matrix(d.base(), 0.5 * (tail + head));
                           return VectorXd(fc.e.transpose() * ae);
                         });
  return out;
}

}  // namespace plsm

#endif
