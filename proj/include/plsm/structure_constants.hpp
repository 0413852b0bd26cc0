#ifndef PLSM_STRUCTURE_CONSTANTS_HPP
#define PLSM_STRUCTURE_CONSTANTS_HPP

#include <cmath>
#include <vector>

#include "plsm/common.hpp"

namespace plsm {

/// Structure constants c_{ij}^k of a Lie bracket on a fixed basis,
/// [T_i, T_j] = sum_k c(i,j,k) T_k.  Indices are 0-based.
///
/// Construction rejects input that is not antisymmetric in (i,j); near-miss
/// data is a user error and is never silently symmetrized.
class StructureConstants {
 public:
  StructureConstants(int dim, std::vector<double> coeffs)
      : dim_(dim), coeffs_(std::move(coeffs)) {
    if (dim_ <= 0) throw InvalidInput("StructureConstants: dim must be positive");
    if (static_cast<int>(coeffs_.size()) != dim_ * dim_ * dim_)
      throw DimensionMismatch("StructureConstants: coeffs size != dim^3");
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        for (int k = 0; k < dim_; ++k)
          if (std::abs(c(i, j, k) + c(j, i, k)) > 1e-12)
            throw InvalidInput("StructureConstants: coefficients not antisymmetric in (i,j)");
  }

  static StructureConstants zero(int dim) {
    return StructureConstants(dim, std::vector<double>(dim * dim * dim, 0.0));
  }

  /// Builds from a sparse list of entries (i,j,k,value); the antisymmetric
  /// counterpart c(j,i,k) = -value is filled in automatically.
  static StructureConstants from_entries(
      int dim, const std::vector<std::array<int, 3>>& idx, const std::vector<double>& val) {
    std::vector<double> coeffs(dim * dim * dim, 0.0);
    std::vector<char> written(dim * dim * dim, 0);
    for (size_t e = 0; e < idx.size(); ++e) {
      auto [i, j, k] = idx[e];
      if (i < 0 || i >= dim || j < 0 || j >= dim || k < 0 || k >= dim)
        throw InvalidInput("StructureConstants: index out of range");
      if (i == j) {
        if (val[e] != 0.0)
          throw InvalidInput("StructureConstants: nonzero entry with i == j");
        continue;
      }
      int fwd = (i * dim + j) * dim + k;
      int rev = (j * dim + i) * dim + k;
      if (written[fwd] || written[rev])
        throw InvalidInput("StructureConstants: entry (i,j,k) set twice (possibly via (j,i,k))");
      written[fwd] = written[rev] = 1;
      coeffs[fwd] = val[e];
      coeffs[rev] = -val[e];
    }
    return StructureConstants(dim, std::move(coeffs));
  }

  int dim() const { return dim_; }

  double c(int i, int j, int k) const { return coeffs_[(i * dim_ + j) * dim_ + k]; }

  double max_abs() const {
    double m = 0.0;
    for (double v : coeffs_) m = std::max(m, std::abs(v));
    return m;
  }

  /// ad matrix of basis element T_i acting on coordinate columns:
  /// (ad_i)(k,j) = c(i,j,k), so that ad_i * y gives the coordinates of [T_i, y].
  MatrixXd ad_matrix(int i) const {
    MatrixXd m = MatrixXd::Zero(dim_, dim_);
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) m(k, j) = c(i, j, k);
    return m;
  }

  const std::vector<double>& coeffs() const { return coeffs_; }

 private:
  int dim_;
  std::vector<double> coeffs_;
};

/// Max-norm Jacobi defect: max over (i,j,k,s) of
/// |c_{jk}^r c_{ri}^s + c_{ki}^r c_{rj}^s + c_{ij}^r c_{rk}^s|.
inline Defect jacobiator(const StructureConstants& sc) {
  const int n = sc.dim();
  Defect d;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int s = 0; s < n; ++s) {
          double sum = 0.0;
          for (int r = 0; r < n; ++r)
            sum += sc.c(j, k, r) * sc.c(r, i, s) + sc.c(k, i, r) * sc.c(r, j, s) +
                   sc.c(i, j, r) * sc.c(r, k, s);
          d.update(std::abs(sum), i, j, k, s);
        }
  return d;
}

}  // namespace plsm

#endif
