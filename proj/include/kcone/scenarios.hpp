#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "kcone/forms.hpp"
#include "kcone/immersions.hpp"
#include "kcone/lightcone.hpp"
#include "kcone/report.hpp"
#include "kcone/tolerance.hpp"

namespace kcone {

// Curvatures of the null product: one hyperbolic factor of curvature c < 0
// and n - 1 spherical factors tied by 1/c_2 + ... + 1/c_n = -1/c, which makes
// the squared radii satisfy -r_1^2 + sum_j r_j^2 = 0.
struct ExampleConfig {
  int n = 4;
  double c = -1.0;
  std::vector<double> c_list;  // n - 1 positive curvatures

  int codimension() const { return n - 2; }
  // Throws std::invalid_argument naming the violated constraint.
  void validate() const;
};

// n equal spherical curvatures c_j = n - 1 with c = -1.
ExampleConfig default_example_config(int n);

// The product immersion together with its light-cone reading: a frame whose
// null direction pairs positively with the lift, a parameter grid, and the
// conformal pair recovered from the lift samples.
struct ExampleBundle {
  ProductImmersion immersion;
  LightConeFrame frame;
  std::vector<Eigen::VectorXd> grid;
  ConformalPair pair;
};

// Nine interior parameter points: a 3 x 3 pattern applied to every factor at
// once, with the per-factor range shifted slightly so factors never move in
// lockstep.
std::vector<Eigen::VectorXd> example_grid(const ProductImmersion& imm);

ExampleBundle build_example(const ExampleConfig& config,
                            const TolerancePolicy& tol = {});

// Point data of the totally geodesic slice R^{2n} inside R^{2n+p} carried
// into the cone: the lift is the cone embedding restricted to the slice, so
// alpha = -(X,Y) w with w the frame's null direction, the induced metric is
// the identity, and every stored matrix is exact at the dyadic sample points.
std::vector<PointData> build_flat_testbed(int n, int p);

// Verification chain for the degenerate-image argument on one data point:
// the bound form identity, pair-form flatness, the product identity, trivial
// kernel, then the split of the image span and the umbilical subspace with
// its dimension bound m >= n - p and nonpositive curvature on it. When the
// image span turns out nondegenerate the report carries a failing
// kernel-dimension-bound check instead of the split. Throws
// std::invalid_argument unless 1 <= p_effective <= n - 3 and the data's
// normal space has dimension p_effective + 2.
VerificationReport run_theorem1_pipeline(const PointData& data, int p_effective,
                                         std::uint64_t seed = 0,
                                         const TolerancePolicy& tol = {});

// Full check list for the classification direction on an already built
// product immersion: lift nullity, positive conformal factor, conformality
// of the projected map, curvature positivity on the sphere sector, the
// product curvature oracle, image span dimension and nondegeneracy,
// diagonalizing basis, orthonormal frame vectors, flat normal bundle, shape
// operator ranks, block structure, and the radius identity. Never throws on
// defect: every violated identity is a failing check in the report.
VerificationReport theorem3_checks_on(const ProductImmersion& imm,
                                      const std::vector<Eigen::VectorXd>& grid,
                                      std::uint64_t seed = 0,
                                      const TolerancePolicy& tol = {});

// Validates the config, builds the example, and runs the full check list.
VerificationReport run_theorem3_checks(const ExampleConfig& config,
                                       std::uint64_t seed = 0,
                                       const TolerancePolicy& tol = {});

// Random symmetric form on R^{2n} into L^{p+2} whose pairing against the
// null direction e_0 + e_1 is pinned to -(X,Y) exactly: the first two
// coordinate matrices differ by the identity and share a dyadic diagonal.
VectorValuedForm random_shape_identity_alpha(int n, int p, std::mt19937_64& rng);

// Rank-one bound form alpha = -(X,Y) w0 with w0 light-like in L^{p+2}: the
// one-dimensional value span is totally null, so the pair form is flat by
// construction. w_dual satisfies <w0, w_dual> = 1.
struct RankOneBoundForm {
  VectorValuedForm alpha;
  Eigen::VectorXd w0;
  Eigen::VectorXd w_dual;
};

RankOneBoundForm random_rank_one_bound_form(int n, int p, std::mt19937_64& rng);

}  // namespace kcone
