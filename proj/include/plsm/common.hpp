#ifndef PLSM_COMMON_HPP
#define PLSM_COMMON_HPP

#include <array>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace plsm {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A point left the neighbourhood where the exponential chart is valid.
struct ChartBoundary : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DoubleJacobiFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroBlockViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotSemisimple : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotCoboundary : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Max-norm defect together with the worst-case index tuple.
/// Checks report this instead of a bare boolean so failures are diagnosable.
struct Defect {
  double value = 0.0;
  std::array<int, 4> witness{-1, -1, -1, -1};

  void update(double v, int i, int j = -1, int k = -1, int l = -1) {
    if (v > value) {
      value = v;
      witness = {i, j, k, l};
    }
  }
};

inline constexpr double kDefaultTol = 1e-10;

/// Scale-relative tolerance: tol * (1 + largest input magnitude).
inline double scaled_tol(double scale, double tol = kDefaultTol) {
  return tol * (1.0 + scale);
}

/// Seeded generator used by all sampling code; seeds are recorded in reports.
using Rng = std::mt19937_64;

inline VectorXd sample_box(Rng& rng, int n, double box) {
  std::uniform_real_distribution<double> u(-box, box);
  VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

}  // namespace plsm

#endif
