#ifndef PLSM_COBOUNDARY_HPP
#define PLSM_COBOUNDARY_HPP

#include <optional>
#include <variant>

#include "plsm/group.hpp"

namespace plsm {

/// An r-matrix reproducing the cocommutator, delta = ad^(2)(r), with its skew
/// part a (the only piece consumed downstream) and, for semisimple base
/// algebras, the matrix of the map R = a o K.
struct CoboundaryData {
  MatrixXd r;
  MatrixXd a_skew;
  std::optional<MatrixXd> big_r;
};

struct NoSolution {
  double residual;
};

/// Least-squares solve of the linear system Delta(r) = delta over r in R^{nxn}.
/// Returns CoboundaryData when the relative residual is below the threshold;
/// classical Yang-Baxter validity of r is not checked.
inline std::variant<CoboundaryData, NoSolution> solve_r_matrix(
    const StructureConstants& c, const Cocommutator& f, double residual_threshold = 1e-8) {
  const int n = c.dim();
  if (f.dim() != n) throw DimensionMismatch("solve_r_matrix: dimension mismatch");
  MatrixXd m = MatrixXd::Zero(n * n * n, n * n);
  VectorXd rhs(n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        int row = (i * n + j) * n + k;
        rhs(row) = f.f(i, j, k);
        // Delta(r)(T_k)^{ij} = c_{ka}^i r^{aj} + c_{kb}^j r^{ib}
        for (int a = 0; a < n; ++a) m(row, a * n + j) += c.c(k, a, i);
        for (int b = 0; b < n; ++b) m(row, i * n + b) += c.c(k, b, j);
      }
  VectorXd rvec = m.colPivHouseholderQr().solve(rhs);
  double fnorm = rhs.norm();
  double residual = (m * rvec - rhs).norm();
  double rel = fnorm > 0.0 ? residual / fnorm : residual;
  if (rel > residual_threshold) return NoSolution{rel};
  MatrixXd r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = rvec(i * n + j);
  CoboundaryData data;
  data.r = r;
  data.a_skew = 0.5 * (r - r.transpose());
  LieAlgebra base(c);
  if (base.is_semisimple()) {
    // (R)^i_j = K_{jl} a^{li}
    data.big_r = data.a_skew.transpose() * base.killing_form();
  }
  return data;
}

/// Sklyanin components Ad_g(a)^{ij} - a^{ij} in the right-invariant frame,
/// with Ad_g acting on both tensor slots through the g-block of the double
/// adjoint.  For a coboundary bialgebra this reproduces pi_matrix.
inline MatrixXd sklyanin_components(const DoubleAlgebra& d, const GroupPoint& g,
                                    const MatrixXd& a_skew) {
  const int n = d.n();
  if (a_skew.rows() != n || a_skew.cols() != n)
    throw DimensionMismatch("sklyanin_components: a_skew must be n x n");
  MatrixXd ag = g.ad().block(0, 0, n, n);
  return ag * a_skew * ag.transpose() - a_skew;
}

}  // namespace plsm

#endif
