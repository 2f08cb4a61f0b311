#pragma once

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "kcone/errors.hpp"
#include "kcone/quad_space.hpp"
#include "kcone/tolerance.hpp"

namespace kcone {

// Frame for the umbilic embedding of flat space into the light cone of a
// Lorentzian ambient: two light-like vectors with <v, w> = 1 and a linear
// isometry c of R^m onto their joint orthogonal complement.
struct LightConeFrame {
  QuadSpace ambient;
  Eigen::VectorXd v;
  Eigen::VectorXd w;
  Eigen::MatrixXd c;

  int map_dim() const { return static_cast<int>(c.cols()); }
};

// Largest violation among the frame invariants: <v,v> = <w,w> = 0,
// <v,w> = 1, c^T G c = I, c^T G v = c^T G w = 0.
double frame_defect(const LightConeFrame& frame);

// Canonical frame in L^{m+2}: v = (e1 - e0)/2, w = e0 + e1, c = (e2 ... ).
LightConeFrame make_frame(int m);

// Canonical frame moved by a random pseudo-orthogonal map; the invariants
// are preserved up to rounding.
LightConeFrame make_frame(int m, std::mt19937_64& rng);

// Negates v and w. Used when lifts pair negatively with the canonical w, so
// that the conformal factor 1 / <lift, w> stays positive.
LightConeFrame flip_frame(const LightConeFrame& frame);

// psi(x) = v + c x - |x|^2 w / 2; light-like with <psi(x), w> = 1.
Eigen::VectorXd psi(const LightConeFrame& frame, const Eigen::VectorXd& x);

// Differential of psi at x: columns c_i - x_i w. Pulls the ambient metric
// back to the Euclidean one exactly.
Eigen::MatrixXd psi_jacobian(const LightConeFrame& frame,
                             const Eigen::VectorXd& x);

// Normal component of the second derivative of psi along (x_dir, y_dir);
// equals -<x_dir, y_dir> w.
Eigen::VectorXd psi_second_fundamental_form(const LightConeFrame& frame,
                                            const Eigen::VectorXd& x,
                                            const Eigen::VectorXd& x_dir,
                                            const Eigen::VectorXd& y_dir,
                                            const TolerancePolicy& tol);

// y / <y, w>; scales y back onto the slice {<., w> = 1}. Throws
// StructureError when <y, w> vanishes (the ray of w is excluded).
Eigen::VectorXd pi_projection(const LightConeFrame& frame,
                              const Eigen::VectorXd& y,
                              const TolerancePolicy& tol);

// Inverse of psi after projection: c^T G (pi(y) - v). Round-trips psi
// exactly on the slice and along rays off it.
Eigen::VectorXd psi_inverse(const LightConeFrame& frame,
                            const Eigen::VectorXd& y,
                            const TolerancePolicy& tol);

// Matched samples of a conformal map f into flat space, its positive
// conformal factor, and the isometric lift psi(f) / lambda into the cone.
struct ConformalPair {
  std::vector<Eigen::VectorXd> f;
  std::vector<double> lambda;
  std::vector<Eigen::VectorXd> lift;
};

// Largest violation among the pair invariants: lifts light-like,
// <lift, w> = 1 / lambda, lift = psi(f) / lambda; infinite when some
// lambda is not positive.
double conformal_pair_defect(const ConformalPair& pair,
                             const LightConeFrame& frame);

// Lift pointwise samples of (f, lambda) to the cone. Throws StructureError
// on a non-positive factor.
ConformalPair conformal_to_isometric(const std::vector<Eigen::VectorXd>& f,
                                     const std::vector<double>& lambda,
                                     const LightConeFrame& frame,
                                     const TolerancePolicy& tol);

// Recover (f, lambda) from light-like lifts pairing positively with w.
// Throws StructureError on a lift that is not light-like or whose pairing
// with w is not positive.
ConformalPair isometric_to_conformal(const std::vector<Eigen::VectorXd>& lift,
                                     const LightConeFrame& frame,
                                     const TolerancePolicy& tol);

}  // namespace kcone
