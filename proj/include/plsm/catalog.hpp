#ifndef PLSM_CATALOG_HPP
#define PLSM_CATALOG_HPP

#include <optional>
#include <string>
#include <vector>

#include "plsm/checks.hpp"
#include "plsm/coboundary.hpp"

namespace plsm {

/// A named closed-form regression checkpoint; defect() must stay below
/// tolerance.
struct Checkpoint {
  std::string name;
  double tolerance;
  std::function<double()> defect;
};

/// A documented model fixture: bialgebra data, optional r-matrix, sampling
/// box for randomized checks, and its expected-values table.
struct CatalogEntry {
  std::string name;
  std::string doc;
  StructureConstants c = StructureConstants::zero(1);
  Cocommutator f = Cocommutator::zero(1);
  std::optional<MatrixXd> r;
  double sampling_box = 1.0;
  std::vector<Checkpoint> checkpoints;

  DoubleAlgebra make_double(double tol = kDefaultTol) const { return build_double(c, f, tol); }
};

namespace catalog_detail {

inline std::vector<VectorXd> sample_points(int dim, int count, double box, unsigned long seed) {
  Rng rng(seed);
  std::vector<VectorXd> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) pts.push_back(sample_box(rng, dim, box));
  return pts;
}

}  // namespace catalog_detail

/// Two-dimensional solvable base [T_0, T_1] = T_1 with cocommutator
/// delta(T_1) = beta (T_0 (x) T_1 - T_1 (x) T_0); the bivector has the
/// closed form Pi^{01}(y) = beta e^{y_0} y_1 and frame e = diag(1, e^{y_0}).
inline CatalogEntry make_example_beta(double beta = 1.0) {
  if (beta == 0.0) throw InvalidInput("example_beta: beta must be nonzero");
  CatalogEntry e;
  e.name = "example_beta";
  e.doc =
      "Nonlinear 2d model on the solvable group [T_0,T_1]=T_1 with "
      "delta(T_1)=beta(T_0^T_1-T_1^T_0); Pi^{01}=beta e^{y0} y1, e=diag(1,e^{y0}).";
  e.c = StructureConstants::from_entries(2, {{{0, 1, 1}}}, {1.0});
  e.f = Cocommutator::from_entries(2, {{{0, 1, 1}}}, {beta});
  e.sampling_box = 1.0;
  StructureConstants c = e.c;
  Cocommutator f = e.f;
  e.checkpoints.push_back(
      {"pi_closed_form", 1e-10, [c, f, beta]() {
         DoubleAlgebra d = build_double(c, f);
         double worst = 0.0;
         for (const auto& y : catalog_detail::sample_points(2, 25, 1.0, 20240601UL)) {
           MatrixXd pi = pi_matrix(d, GroupPoint(d, y));
           double expect = beta * std::exp(y(0)) * y(1);
           worst = std::max(worst, std::abs(pi(0, 1) - expect) / (1.0 + std::abs(expect)));
         }
         return worst;
       }});
  e.checkpoints.push_back(
      {"frame_closed_form", 1e-12, [c, f]() {
         DoubleAlgebra d = build_double(c, f);
         double worst = 0.0;
         for (const auto& y : catalog_detail::sample_points(2, 25, 1.0, 20240602UL)) {
           MatrixXd em(2, 2);
           em << 1.0, 0.0, 0.0, std::exp(y(0));
           worst = std::max(
               worst, (frame_matrix(d.base(), y).e - em).cwiseAbs().maxCoeff());
         }
         return worst;
       }});
  return e;
}

/// Same base algebra with the zero cocommutator: the dual is abelian and the
/// bivector vanishes identically.
inline CatalogEntry make_abelian_dual() {
  CatalogEntry e;
  e.name = "abelian_dual";
  e.doc = "Solvable 2d base [T_0,T_1]=T_1 with f = 0; Pi vanishes identically.";
  e.c = StructureConstants::from_entries(2, {{{0, 1, 1}}}, {1.0});
  e.f = Cocommutator::zero(2);
  e.sampling_box = 1.0;
  StructureConstants c = e.c;
  Cocommutator f = e.f;
  e.checkpoints.push_back({"pi_vanishes", 1e-12, [c, f]() {
                             DoubleAlgebra d = build_double(c, f);
                             double worst = 0.0;
                             for (const auto& y :
                                  catalog_detail::sample_points(2, 25, 1.0, 20240603UL))
                               worst = std::max(
                                   worst,
                                   pi_matrix(d, GroupPoint(d, y)).cwiseAbs().maxCoeff());
                             return worst;
                           }});
  return e;
}

/// so(3) with zero cocommutator: the linear model on the coadjoint space.
inline CatalogEntry make_linear_so3() {
  CatalogEntry e;
  e.name = "linear_so3";
  e.doc = "so(3) (c_{ijk} = epsilon_{ijk}) with f = 0; linear sigma model fixture, K = -2I.";
  e.c = StructureConstants::from_entries(3, {{{0, 1, 2}}, {{1, 2, 0}}, {{2, 0, 1}}},
                                         {1.0, 1.0, 1.0});
  e.f = Cocommutator::zero(3);
  e.sampling_box = 1.0;
  StructureConstants c = e.c;
  e.checkpoints.push_back({"killing_minus_2I", 1e-13, [c]() {
                             LieAlgebra a(c);
                             MatrixXd expect = -2.0 * MatrixXd::Identity(3, 3);
                             return (a.killing_form() - expect).cwiseAbs().maxCoeff();
                           }});
  return e;
}

/// sl(2,R) in the basis (H, E, F) with the standard skew r-matrix
/// r = (E (x) F - F (x) E)/2; the stored cocommutator is delta = Delta(r),
/// i.e. delta(E) = (E^H)/2-style entries f^{01}_1 = f^{02}_2 = -1/2.
inline CatalogEntry make_sl2_standard() {
  CatalogEntry e;
  e.name = "sl2_standard";
  e.doc =
      "sl(2,R), basis (H,E,F): [H,E]=2E, [H,F]=-2F, [E,F]=H; coboundary "
      "cocommutator from the standard skew r-matrix r^{12}=-r^{21}=1/2.";
  e.c = StructureConstants::from_entries(3, {{{0, 1, 1}}, {{0, 2, 2}}, {{1, 2, 0}}},
                                         {2.0, -2.0, 1.0});
  e.f = Cocommutator::from_entries(3, {{{0, 1, 1}}, {{0, 2, 2}}}, {-0.5, -0.5});
  MatrixXd r = MatrixXd::Zero(3, 3);
  r(1, 2) = 0.5;
  r(2, 1) = -0.5;
  e.r = r;
  e.sampling_box = 0.6;
  StructureConstants c = e.c;
  Cocommutator f = e.f;
  e.checkpoints.push_back({"cocommutator_is_coboundary", 1e-12, [c, f, r]() {
                             // Delta(r) recomputed entrywise must match f.
                             double worst = 0.0;
                             for (int i = 0; i < 3; ++i)
                               for (int j = 0; j < 3; ++j)
                                 for (int k = 0; k < 3; ++k) {
                                   double v = 0.0;
                                   for (int a = 0; a < 3; ++a)
                                     v += c.c(k, a, i) * r(a, j) + c.c(k, a, j) * r(i, a);
                                   worst = std::max(worst, std::abs(v - f.f(i, j, k)));
                                 }
                             return worst;
                           }});
  e.checkpoints.push_back(
      {"sklyanin_matches_pipeline", 1e-9, [c, f, r]() {
         DoubleAlgebra d = build_double(c, f);
         MatrixXd a_skew = 0.5 * (r - r.transpose());
         double worst = 0.0;
         for (const auto& y : catalog_detail::sample_points(3, 25, 0.6, 20240604UL)) {
           GroupPoint g(d, y);
           MatrixXd lhs = pi_matrix(d, g);
           MatrixXd rhs = sklyanin_components(d, g, a_skew);
           worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
         }
         return worst;
       }});
  return e;
}

/// All built-in fixtures, beta at its default.
inline std::vector<CatalogEntry> entries() {
  return {make_example_beta(), make_abelian_dual(), make_linear_so3(), make_sl2_standard()};
}

inline CatalogEntry entry_by_name(const std::string& name) {
  for (auto& e : entries())
    if (e.name == name) return e;
  throw InvalidInput("unknown catalog entry: " + name);
}

}  // namespace plsm

#endif
