#ifndef PLSM_LIE_ALGEBRA_HPP
#define PLSM_LIE_ALGEBRA_HPP

#include <optional>
#include <vector>

#include "plsm/structure_constants.hpp"

namespace plsm {

/// An element of the algebra, as coordinates in the basis (T_i).
using AlgebraElement = VectorXd;

/// Finite-dimensional real Lie algebra given by structure constants.
/// Caches the ad matrices and the Killing form at construction; immutable
/// afterwards, safe for unrestricted concurrent use.
class LieAlgebra {
 public:
  explicit LieAlgebra(StructureConstants constants) : constants_(std::move(constants)) {
    const int n = constants_.dim();
    ad_.reserve(n);
    for (int i = 0; i < n; ++i) ad_.push_back(constants_.ad_matrix(i));
    killing_ = MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) killing_(i, j) = (ad_[i] * ad_[j]).trace();
  }

  int dim() const { return constants_.dim(); }
  const StructureConstants& constants() const { return constants_; }
  const MatrixXd& killing_form() const { return killing_; }
  const MatrixXd& ad(int i) const { return ad_[i]; }

  /// ad matrix of an arbitrary element x.
  MatrixXd ad_of(const AlgebraElement& x) const {
    check_dim(x);
    MatrixXd m = MatrixXd::Zero(dim(), dim());
    for (int i = 0; i < dim(); ++i) m += x(i) * ad_[i];
    return m;
  }

  AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) const {
    check_dim(x);
    check_dim(y);
    return ad_of(x) * y;
  }

  /// (ad*_y xi)_k = -xi_m c_{yk}^m: the coadjoint action on a dual vector.
  VectorXd coadjoint(const AlgebraElement& y, const VectorXd& xi) const {
    check_dim(y);
    check_dim(xi);
    return -ad_of(y).transpose() * xi;
  }

  bool is_semisimple(double singularity_threshold = 1e-10) const {
    const int n = dim();
    double scale = killing_.cwiseAbs().maxCoeff();
    if (scale == 0.0) return false;
    return std::abs(killing_.determinant()) > singularity_threshold * std::pow(scale, n);
  }

  /// Defect of K([z,x],y) + K(x,[z,y]) = 0 over all basis triples.
  Defect killing_ad_invariance_defect() const {
    const int n = dim();
    Defect d;
    for (int z = 0; z < n; ++z) {
      MatrixXd m = ad_[z].transpose() * killing_ + killing_ * ad_[z];
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) d.update(std::abs(m(x, y)), z, x, y);
    }
    return d;
  }

  /// Defect of the ad*-invariance of K^{-1}; empty when K is singular
  /// (the check does not apply to non-semisimple algebras).
  std::optional<Defect> killing_inverse_coadjoint_defect() const {
    if (!is_semisimple()) return std::nullopt;
    const int n = dim();
    MatrixXd kinv = killing_.inverse();
    Defect d;
    for (int x = 0; x < n; ++x) {
      // K^{-1}(ad*_x xi, eta) + K^{-1}(xi, ad*_x eta) over dual basis pairs.
      MatrixXd m = ad_[x] * kinv + kinv * ad_[x].transpose();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d.update(std::abs(m(i, j)), x, i, j);
    }
    return d;
  }

 private:
  void check_dim(const VectorXd& v) const {
    if (v.size() != dim()) throw DimensionMismatch("LieAlgebra: element has wrong dimension");
  }

  StructureConstants constants_;
  std::vector<MatrixXd> ad_;
  MatrixXd killing_;
};

}  // namespace plsm

#endif
