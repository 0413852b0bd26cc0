#ifndef PLSM_GROUP_HPP
#define PLSM_GROUP_HPP

#include "plsm/bialgebra.hpp"
#include "plsm/linalg.hpp"

namespace plsm {

/// Which subgroup of the double a chart point lives in.
enum class GroupRole { Base, Dual };

/// Condition-number threshold on a(g) beyond which a point is considered
/// outside the valid neighbourhood of the exponential chart.
inline constexpr double kChartConditionLimit = 1e8;

/// A point of G (or G~) in the product-of-exponentials chart
/// g = exp(a_0 T_0) ... exp(a_{n-1} T_{n-1}).  The 2n x 2n adjoint matrix on
/// the double is the matrix model of the group element; it is computed
/// eagerly, together with its exact group inverse.
class GroupPoint {
 public:
  GroupPoint(const DoubleAlgebra& d, VectorXd coords, GroupRole role = GroupRole::Base)
      : coords_(std::move(coords)), role_(role) {
    const int n = d.n();
    if (coords_.size() != n) throw DimensionMismatch("GroupPoint: coords dimension");
    if (!coords_.allFinite()) throw InvalidInput("GroupPoint: non-finite coordinates");
    const int N = 2 * n;
    ad_ = MatrixXd::Identity(N, N);
    ad_inv_ = MatrixXd::Identity(N, N);
    for (int k = 0; k < n; ++k) {
      int b = role_ == GroupRole::Base ? k : n + k;
      ad_ = ad_ * matrix_exp(coords_(k) * d.total().ad(b));
      ad_inv_ = matrix_exp(-coords_(k) * d.total().ad(b)) * ad_inv_;
    }
  }

  const VectorXd& coords() const { return coords_; }
  GroupRole role() const { return role_; }
  const MatrixXd& ad() const { return ad_; }
  const MatrixXd& ad_inverse() const { return ad_inv_; }

 private:
  VectorXd coords_;
  GroupRole role_;
  MatrixXd ad_;
  MatrixXd ad_inv_;
};

/// Adjoint matrix of the chart point on the double.
inline MatrixXd adjoint(const DoubleAlgebra& d, const GroupPoint& p) { return p.ad(); }

/// Defect of Ad^T B Ad = B (the adjoint must preserve the bilinear form).
inline double adjoint_form_defect(const DoubleAlgebra& d, const MatrixXd& ad) {
  return (ad.transpose() * d.bform() * ad - d.bform()).cwiseAbs().maxCoeff();
}

/// Defect of Ad[x,y] = [Ad x, Ad y] over basis pairs of the double.
inline Defect adjoint_automorphism_defect(const DoubleAlgebra& d, const MatrixXd& ad) {
  const int N = 2 * d.n();
  Defect def;
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) {
      VectorXd lhs = ad * d.total().bracket(VectorXd::Unit(N, x), VectorXd::Unit(N, y));
      VectorXd rhs = d.total().bracket(ad.col(x), ad.col(y));
      def.update((lhs - rhs).cwiseAbs().maxCoeff(), x, y);
    }
  return def;
}

/// The three n x n blocks of (Ad_{g^{-1}})_X laid out as [[a^T, b^T],[0, d^T]].
struct AdjointDecomposition {
  MatrixXd a;
  MatrixXd b;
  MatrixXd d;
};

/// Extracts a(g), b(g), d(g) from the adjoint matrix of g^{-1}.  The lower
/// left block must vanish; a nonzero block means the point is not in G.
inline AdjointDecomposition decompose(const MatrixXd& ad_inv, double tol = kDefaultTol) {
  const int N = static_cast<int>(ad_inv.rows());
  if (N % 2 != 0 || ad_inv.cols() != N)
    throw DimensionMismatch("decompose: 2n x 2n matrix expected");
  const int n = N / 2;
  double scale = ad_inv.cwiseAbs().maxCoeff();
  double zero_block = ad_inv.block(n, 0, n, n).cwiseAbs().maxCoeff();
  if (zero_block > scaled_tol(scale, tol)) {
    throw ZeroBlockViolation("decompose: lower-left block is not zero (point not in G?), max " +
                             std::to_string(zero_block));
  }
  AdjointDecomposition dec;
  dec.a = ad_inv.block(0, 0, n, n).transpose();
  dec.b = ad_inv.block(0, n, n, n).transpose();
  dec.d = ad_inv.block(n, n, n, n).transpose();
  return dec;
}

namespace detail {
inline void check_chart(const MatrixXd& a, double cond_limit) {
  double cond = condition_number(a);
  if (!(cond < cond_limit))
    throw ChartBoundary("a(g) numerically singular (cond " + std::to_string(cond) +
                        "); point outside chart validity");
}
}  // namespace detail

/// Right-invariant components Pi^{ij} of the constructed bivector, from the
/// block formula b(g) a(g)^{-1}.  The overall sign is fixed so that Pi is the
/// matrix appearing in the equations of motion; see pi_matrix.
inline MatrixXd pi_matrix_from_ad(const DoubleAlgebra& d, const MatrixXd& ad_g,
                                  double cond_limit = kChartConditionLimit) {
  AdjointDecomposition dec = decompose(ad_g.inverse());
  detail::check_chart(dec.a, cond_limit);
  return -dec.b * dec.a.inverse();
}

/// The same map through the projector formula P Ad_g P~ Ad_{g^{-1}} P~,
/// kept as an independent pipeline for cross-checking.
inline MatrixXd pi_matrix_by_projectors(const DoubleAlgebra& d, const GroupPoint& p) {
  const int n = d.n();
  MatrixXd m = d.proj_g() * p.ad() * d.proj_gdual() * p.ad_inverse() * d.proj_gdual();
  return -m.block(0, n, n, n);
}

/// Pi^{ij}(g): both pipelines are evaluated and must agree; the block-formula
/// value is returned.  Pi(identity) = 0 and the output is antisymmetric.
inline MatrixXd pi_matrix(const DoubleAlgebra& d, const GroupPoint& p,
                          double cond_limit = kChartConditionLimit) {
  AdjointDecomposition dec = decompose(p.ad_inverse());
  detail::check_chart(dec.a, cond_limit);
  MatrixXd pi = -dec.b * dec.a.inverse();
  MatrixXd pi_proj = pi_matrix_by_projectors(d, p);
  double scale = pi.cwiseAbs().maxCoeff();
  if ((pi - pi_proj).cwiseAbs().maxCoeff() > scaled_tol(scale, 1e-11))
    throw InvalidInput("pi_matrix: block and projector pipelines disagree");
  return pi;
}

/// Frame-change matrices between the coordinate frame of the chart and the
/// right-invariant frame: e(k,j) = <T^k, Ad_{g_{<j}}(T_j)> with g_{<j} the
/// product of the strictly preceding exponential factors; f = e^{-1}.
struct FrameChange {
  MatrixXd e;
  MatrixXd f;
};

inline FrameChange frame_matrix(const LieAlgebra& a, const VectorXd& coords,
                                double cond_limit = kChartConditionLimit) {
  const int n = a.dim();
  if (coords.size() != n) throw DimensionMismatch("frame_matrix: coords dimension");
  MatrixXd e(n, n);
  MatrixXd prefix = MatrixXd::Identity(n, n);
  for (int j = 0; j < n; ++j) {
    e.col(j) = prefix.col(j);  // prefix * T_j
    prefix = prefix * matrix_exp(coords(j) * a.ad(j));
  }
  detail::check_chart(e, cond_limit);
  return FrameChange{e, e.inverse()};
}

inline FrameChange frame_matrix(const DoubleAlgebra& d, const GroupPoint& p,
                                double cond_limit = kChartConditionLimit) {
  return p.role() == GroupRole::Base ? frame_matrix(d.base(), p.coords(), cond_limit)
                                     : frame_matrix(d.dual(), p.coords(), cond_limit);
}

/// Coordinate components of the bivector: P^{ab} = f^a_m f^b_n Pi^{mn}.
inline MatrixXd coordinate_bivector(const DoubleAlgebra& d, const GroupPoint& p,
                                    double cond_limit = kChartConditionLimit) {
  MatrixXd pi = pi_matrix(d, p, cond_limit);
  FrameChange fc = frame_matrix(d, p, cond_limit);
  return fc.f * pi * fc.f.transpose();
}

}  // namespace plsm

#endif
