#ifndef PLSM_BIALGEBRA_HPP
#define PLSM_BIALGEBRA_HPP

#include <memory>
#include <sstream>

#include "plsm/lie_algebra.hpp"

namespace plsm {

/// Cocommutator coefficients f^{ij}_k, meaning
/// delta(T_k) = sum f(i,j,k) T_i (x) T_j, equivalently the dual bracket
/// [Tt^i, Tt^j] = f^{ij}_k Tt^k.  Stored as structure constants of the dual
/// algebra, which enforces antisymmetry in (i,j).
class Cocommutator {
 public:
  explicit Cocommutator(StructureConstants dual_constants)
      : dual_(std::move(dual_constants)) {}

  static Cocommutator zero(int dim) { return Cocommutator(StructureConstants::zero(dim)); }

  static Cocommutator from_entries(int dim, const std::vector<std::array<int, 3>>& idx,
                                   const std::vector<double>& val) {
    return Cocommutator(StructureConstants::from_entries(dim, idx, val));
  }

  int dim() const { return dual_.dim(); }
  double f(int i, int j, int k) const { return dual_.c(i, j, k); }
  const StructureConstants& dual_constants() const { return dual_; }
  double max_abs() const { return dual_.max_abs(); }

 private:
  StructureConstants dual_;
};

/// Max-norm of the 1-cocycle defect
///   Delta(delta)(T_a,T_b) = ad_a^(2) delta(T_b) - ad_b^(2) delta(T_a) - delta([T_a,T_b]),
/// written componentwise in the T_i (x) T_j basis.
inline Defect cocycle_defect(const StructureConstants& c, const Cocommutator& f) {
  const int n = c.dim();
  if (f.dim() != n) throw DimensionMismatch("cocycle_defect: dimension mismatch");
  Defect d;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double sum = 0.0;
          for (int m = 0; m < n; ++m) {
            sum += c.c(a, m, i) * f.f(m, j, b) + c.c(a, m, j) * f.f(i, m, b);
            sum -= c.c(b, m, i) * f.f(m, j, a) + c.c(b, m, j) * f.f(i, m, a);
            sum -= c.c(a, b, m) * f.f(i, j, m);
          }
          d.update(std::abs(sum), a, b, i, j);
        }
  return d;
}

/// The 2n-dimensional Manin-triple algebra d = g + g~ in the basis
/// (T_0..T_{n-1}, Tt^0..Tt^{n-1}), with its canonical bilinear form and the
/// projectors onto the two subalgebras.
class DoubleAlgebra {
 public:
  DoubleAlgebra(LieAlgebra base, LieAlgebra dual, LieAlgebra total, Cocommutator cocom)
      : base_(std::move(base)),
        dual_(std::move(dual)),
        total_(std::move(total)),
        cocom_(std::move(cocom)) {
    const int n = base_.dim();
    bform_ = MatrixXd::Zero(2 * n, 2 * n);
    bform_.block(0, n, n, n) = MatrixXd::Identity(n, n);
    bform_.block(n, 0, n, n) = MatrixXd::Identity(n, n);
    proj_g_ = MatrixXd::Zero(2 * n, 2 * n);
    proj_g_.block(0, 0, n, n) = MatrixXd::Identity(n, n);
    proj_gdual_ = MatrixXd::Identity(2 * n, 2 * n) - proj_g_;
  }

  int n() const { return base_.dim(); }
  const LieAlgebra& base() const { return base_; }
  const LieAlgebra& dual() const { return dual_; }
  const LieAlgebra& total() const { return total_; }
  const Cocommutator& cocommutator() const { return cocom_; }
  const MatrixXd& bform() const { return bform_; }
  const MatrixXd& proj_g() const { return proj_g_; }
  const MatrixXd& proj_gdual() const { return proj_gdual_; }

  /// Defect of <[Z,X],Y>_d + <X,[Z,Y]>_d = 0 over basis triples of d.
  Defect form_ad_invariance_defect() const {
    const int N = 2 * n();
    Defect d;
    for (int z = 0; z < N; ++z) {
      MatrixXd m = total_.ad(z).transpose() * bform_ + bform_ * total_.ad(z);
      for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y) d.update(std::abs(m(x, y)), z, x, y);
    }
    return d;
  }

 private:
  LieAlgebra base_;
  LieAlgebra dual_;
  LieAlgebra total_;
  Cocommutator cocom_;
  MatrixXd bform_;
  MatrixXd proj_g_;
  MatrixXd proj_gdual_;
};

/// Assembles the double from (c, f): g-block from c, g~-block from f and the
/// mixed bracket [T_i, Tt^j] = f^{jk}_i T_k - c_{ik}^j Tt^k.
/// Throws DoubleJacobiFailure when the assembled constants fail the Jacobi
/// identity, which signals inconsistent (c, f) input.
inline DoubleAlgebra build_double(const StructureConstants& c, const Cocommutator& f,
                                  double tol = kDefaultTol) {
  const int n = c.dim();
  if (f.dim() != n) throw DimensionMismatch("build_double: dimension mismatch");
  const int N = 2 * n;
  std::vector<double> C(N * N * N, 0.0);
  auto set = [&](int i, int j, int k, double v) {
    C[(i * N + j) * N + k] = v;
    C[(j * N + i) * N + k] = -v;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i < j) {
        for (int k = 0; k < n; ++k) {
          set(i, j, k, c.c(i, j, k));
          set(n + i, n + j, n + k, f.f(i, j, k));
        }
      }
      // [T_i, Tt^j]
      for (int k = 0; k < n; ++k) {
        C[(i * N + (n + j)) * N + k] = f.f(j, k, i);
        C[((n + j) * N + i) * N + k] = -f.f(j, k, i);
        C[(i * N + (n + j)) * N + (n + k)] = -c.c(i, k, j);
        C[((n + j) * N + i) * N + (n + k)] = c.c(i, k, j);
      }
    }
  StructureConstants total_c(N, std::move(C));
  double scale = std::max(c.max_abs(), f.max_abs());
  Defect jac = jacobiator(total_c);
  if (jac.value > scaled_tol(scale * scale, tol)) {
    std::ostringstream msg;
    msg << "build_double: Jacobi identity fails on the assembled double, defect "
        << jac.value << " at (" << jac.witness[0] << "," << jac.witness[1] << ","
        << jac.witness[2] << ")";
    throw DoubleJacobiFailure(msg.str());
  }
  return DoubleAlgebra(LieAlgebra(c), LieAlgebra(f.dual_constants()), LieAlgebra(total_c), f);
}

}  // namespace plsm

#endif
