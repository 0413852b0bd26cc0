#ifndef PLSM_CHECKS_HPP
#define PLSM_CHECKS_HPP

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "plsm/group.hpp"

namespace plsm {

/// Result of one verification check; pass iff max_defect <= tolerance.
struct DefectReport {
  std::string check_name;
  double max_defect = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string witness;

  static DefectReport make(std::string name, double defect, double tol, std::string wit = "") {
    return DefectReport{std::move(name), defect, tol, defect <= tol, std::move(wit)};
  }
};

using BivectorField = std::function<MatrixXd(const VectorXd&)>;

inline BivectorField chart_bivector(const DoubleAlgebra& d) {
  return [&d](const VectorXd& y) {
    return coordinate_bivector(d, GroupPoint(d, y));
  };
}

namespace detail {

/// Central-difference gradient of a bivector field, d[l](j,k) ~ d P^{jk}/dy^l.
inline std::vector<MatrixXd> bivector_gradient(const BivectorField& p, const VectorXd& y,
                                               double h) {
  const int n = static_cast<int>(y.size());
  std::vector<MatrixXd> grad(n);
  for (int l = 0; l < n; ++l) {
    VectorXd yp = y, ym = y;
    yp(l) += h;
    ym(l) -= h;
    grad[l] = (p(yp) - p(ym)) / (2.0 * h);
  }
  return grad;
}

}  // namespace detail

/// Max-norm of the Jacobiator sum_cyc P^{il} d_l P^{jk} at a chart point,
/// with derivatives by central differences at steps h and h/2 combined by
/// Richardson extrapolation.
inline double jacobiator_field(const BivectorField& p, const VectorXd& y, double h) {
  const int n = static_cast<int>(y.size());
  MatrixXd pv = p(y);
  auto g1 = detail::bivector_gradient(p, y, h);
  auto g2 = detail::bivector_gradient(p, y, h / 2.0);
  std::vector<MatrixXd> grad(n);
  for (int l = 0; l < n; ++l) grad[l] = (4.0 * g2[l] - g1[l]) / 3.0;
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double sum = 0.0;
        for (int l = 0; l < n; ++l)
          sum += pv(i, l) * grad[l](j, k) + pv(j, l) * grad[l](k, i) + pv(k, l) * grad[l](i, j);
        worst = std::max(worst, std::abs(sum));
      }
  return worst;
}

inline double jacobiator_field(const DoubleAlgebra& d, const GroupPoint& p, double h) {
  return jacobiator_field(chart_bivector(d), p.coords(), h);
}

/// Multiplicativity in right-invariant components:
/// Pi(gh) = Pi(g) + A_g Pi(h) A_g^T, with Pi(gh) taken from the product
/// adjoint matrix directly.
inline double multiplicativity_defect(const DoubleAlgebra& d, const GroupPoint& p,
                                      const GroupPoint& q) {
  const int n = d.n();
  MatrixXd pi_p = pi_matrix(d, p);
  MatrixXd pi_q = pi_matrix(d, q);
  MatrixXd pi_pq = pi_matrix_from_ad(d, p.ad() * q.ad());
  MatrixXd ag = p.ad().block(0, 0, n, n);
  return (pi_pq - pi_p - ag * pi_q * ag.transpose()).cwiseAbs().maxCoeff();
}

/// Closed right-invariant derivative law for a multiplicative bivector:
/// R_{T_k}(Pi^{ij}) = c_{kl}^i Pi^{lj} - c_{kl}^j Pi^{li} + f^{ij}_k.
inline MatrixXd invariant_derivative_rhs(const DoubleAlgebra& d, const MatrixXd& pi, int k) {
  const int n = d.n();
  MatrixXd rhs(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v = d.cocommutator().f(i, j, k);
      for (int l = 0; l < n; ++l)
        v += d.base().constants().c(k, l, i) * pi(l, j) -
             d.base().constants().c(k, l, j) * pi(l, i);
      rhs(i, j) = v;
    }
  return rhs;
}

namespace detail {

/// Derivative of Pi along the right-invariant flow g(t) = exp(t T_k) g,
/// computed at the adjoint-matrix level with central differences + Richardson.
inline MatrixXd invariant_flow_derivative(const DoubleAlgebra& d, const MatrixXd& ad_g, int k,
                                          double h) {
  const MatrixXd& adk = d.total().ad(k);
  auto diff = [&](double step) {
    MatrixXd plus = pi_matrix_from_ad(d, matrix_exp(step * adk) * ad_g);
    MatrixXd minus = pi_matrix_from_ad(d, matrix_exp(-step * adk) * ad_g);
    return MatrixXd((plus - minus) / (2.0 * step));
  };
  return (4.0 * diff(h / 2.0) - diff(h)) / 3.0;
}

}  // namespace detail

/// Entrywise defect of Lemma-style derivative law at a point, for flow
/// direction T_k.
inline MatrixXd invariant_derivative_defect(const DoubleAlgebra& d, const GroupPoint& p, int k,
                                            double h) {
  MatrixXd lhs = detail::invariant_flow_derivative(d, p.ad(), k, h);
  MatrixXd rhs = invariant_derivative_rhs(d, pi_matrix(d, p), k);
  return (lhs - rhs).cwiseAbs();
}

/// Intrinsic-derivative estimate of the tangent cocommutator: the flow
/// derivative of Pi^{ij} at the identity, for each direction T_k.
/// est[k](i,j) must reproduce the input f^{ij}_k.
inline std::vector<MatrixXd> tangent_bialgebra(const DoubleAlgebra& d, double h = 1e-3) {
  const int n = d.n();
  MatrixXd id = MatrixXd::Identity(2 * n, 2 * n);
  std::vector<MatrixXd> est(n);
  for (int k = 0; k < n; ++k) est[k] = detail::invariant_flow_derivative(d, id, k, h);
  return est;
}

inline double tangent_bialgebra_roundtrip_defect(const DoubleAlgebra& d, double h = 1e-3) {
  auto est = tangent_bialgebra(d, h);
  double worst = 0.0;
  for (int k = 0; k < d.n(); ++k)
    for (int i = 0; i < d.n(); ++i)
      for (int j = 0; j < d.n(); ++j)
        worst = std::max(worst, std::abs(est[k](i, j) - d.cocommutator().f(i, j, k)));
  return worst;
}

}  // namespace plsm

#endif
