#ifndef PLSM_LINALG_HPP
#define PLSM_LINALG_HPP

#include <cmath>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "plsm/common.hpp"

namespace plsm {

/// Matrix exponential (scaling-and-squaring, delegated to Eigen).
inline MatrixXd matrix_exp(const MatrixXd& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("matrix_exp: square matrix expected");
  if (!m.allFinite()) throw InvalidInput("matrix_exp: non-finite entries");
  return m.exp();
}

/// Principal matrix logarithm. Callers must stay near the identity,
/// away from the negative real axis of the spectrum.
inline MatrixXd matrix_log(const MatrixXd& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("matrix_log: square matrix expected");
  return m.log();
}

inline double condition_number(const MatrixXd& m) {
  Eigen::JacobiSVD<MatrixXd> svd(m);
  double smin = svd.singularValues()(svd.singularValues().size() - 1);
  double smax = svd.singularValues()(0);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

}  // namespace plsm

#endif
