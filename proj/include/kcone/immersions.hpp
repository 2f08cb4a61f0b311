#pragma once

#include <vector>

#include <Eigen/Dense>

#include "kcone/complex_structure.hpp"
#include "kcone/errors.hpp"
#include "kcone/forms.hpp"
#include "kcone/quad_space.hpp"
#include "kcone/surfaces.hpp"
#include "kcone/tolerance.hpp"

namespace kcone {

// Product of charted surfaces mapped block-wise into one Lorentzian ambient:
// the first factor is a hyperboloid in the leading L^3 block, every other
// factor a sphere in its own Euclidean block.
struct ProductImmersion {
  std::vector<SurfaceChart> factors;
  QuadSpace ambient;

  int factor_count() const { return static_cast<int>(factors.size()); }
  int param_dim() const { return 2 * factor_count(); }
};

// Validates the factor pattern (hyperbolic first, spheres after).
ProductImmersion make_product(const std::vector<SurfaceChart>& factors);

// -r_1^2 + sum_j r_j^2; the squared ambient norm of every image point.
double radius_identity(const ProductImmersion& imm);

// Image point for stacked parameters (u_1, v_1, ..., u_n, v_n).
Eigen::VectorXd immersion_value(const ProductImmersion& imm,
                                const Eigen::VectorXd& params);

// Analytic 2-jet of the product map: value, first derivatives by column,
// and one second-derivative vector per parameter pair (block sparse).
struct ImmersionJet {
  Eigen::VectorXd value;
  Eigen::MatrixXd first;
  std::vector<std::vector<Eigen::VectorXd>> second;
};

ImmersionJet immersion_jet(const ProductImmersion& imm,
                           const Eigen::VectorXd& params);

// Pointwise submanifold data in an adapted frame: per-factor orthonormal
// tangent pairs, unit factor normals, the second fundamental form in
// normal-frame coordinates, and the rotation J acting on the tangent pairs.
struct PointData {
  Eigen::VectorXd params;
  Eigen::VectorXd position;
  Eigen::MatrixXd tangent_basis;
  Eigen::MatrixXd metric;
  Eigen::MatrixXd normal_frame;
  QuadSpace ambient;
  QuadSpace normal_space;
  VectorValuedForm alpha;
  ComplexStructure j_action;
};

// Coordinates of an ambient normal vector over the point's normal frame.
Eigen::VectorXd normal_coordinates(const PointData& data,
                                   const Eigen::VectorXd& y);

// Second derivatives projected to the normal space with the indefinite
// ambient metric, expressed over the adapted frame. Throws StructureError
// when the normal gram degenerates (guarded; the charts cannot produce it).
PointData second_fundamental_form(const ProductImmersion& imm,
                                  const Eigen::VectorXd& params,
                                  const TolerancePolicy& tol);

// K(S, JS) = (<a(S,S), a(JS,JS)> - <a(S,JS), a(S,JS)>) / |S|^4 with the
// indefinite normal metric. Throws on the zero direction.
double sectional_curvature_J(const PointData& data,
                             const Eigen::VectorXd& s);

// Tangent endomorphism A with metric(A x, y) = <alpha(x, y), xi>; xi is
// given in normal-frame coordinates.
Eigen::MatrixXd shape_operator(const PointData& data,
                               const Eigen::VectorXd& xi);

int shape_operator_rank(const PointData& data, const Eigen::VectorXd& xi,
                        double rank_tol);

// Largest commutator entry over all pairs of coordinate-normal shape
// operators across the sampled points; zero means flat normal bundle.
double normal_curvature_defect(const std::vector<PointData>& grid);

}  // namespace kcone
