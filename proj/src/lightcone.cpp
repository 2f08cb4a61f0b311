#include "kcone/lightcone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kcone {

namespace {

void require_frame(const LightConeFrame& frame) {
  if (frame_defect(frame) > 1e-10)
    throw StructureError("light-cone frame invariants are violated");
}

void require_point(const LightConeFrame& frame, const Eigen::VectorXd& x) {
  if (x.size() != frame.map_dim())
    throw std::invalid_argument("point dimension does not match the frame");
}

void require_ambient(const LightConeFrame& frame, const Eigen::VectorXd& y) {
  if (y.size() != frame.ambient.dim())
    throw std::invalid_argument("vector dimension does not match the ambient");
}

}  // namespace

double frame_defect(const LightConeFrame& frame) {
  const Eigen::MatrixXd& gram = frame.ambient.gram();
  int m = frame.map_dim();
  double defect = std::abs(frame.ambient.norm2(frame.v));
  defect = std::max(defect, std::abs(frame.ambient.norm2(frame.w)));
  defect =
      std::max(defect, std::abs(frame.ambient.inner(frame.v, frame.w) - 1.0));
  Eigen::MatrixXd cgc = frame.c.transpose() * gram * frame.c;
  defect = std::max(
      defect, (cgc - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff());
  defect = std::max(defect,
                    (frame.c.transpose() * gram * frame.v).cwiseAbs().maxCoeff());
  defect = std::max(defect,
                    (frame.c.transpose() * gram * frame.w).cwiseAbs().maxCoeff());
  return defect;
}

LightConeFrame make_frame(int m) {
  if (m < 1) throw std::invalid_argument("the flat factor needs dimension >= 1");
  int dim = m + 2;
  QuadSpace ambient = QuadSpace::lorentzian(dim);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
  v(0) = -0.5;
  v(1) = 0.5;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(dim);
  w(0) = 1.0;
  w(1) = 1.0;
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(dim, m);
  for (int i = 0; i < m; ++i) c(i + 2, i) = 1.0;
  return LightConeFrame{ambient, v, w, c};
}

LightConeFrame make_frame(int m, std::mt19937_64& rng) {
  LightConeFrame frame = make_frame(m);
  Eigen::MatrixXd q = random_isometry(frame.ambient, rng);
  frame.v = q * frame.v;
  frame.w = q * frame.w;
  frame.c = q * frame.c;
  return frame;
}

LightConeFrame flip_frame(const LightConeFrame& frame) {
  LightConeFrame flipped = frame;
  flipped.v = -frame.v;
  flipped.w = -frame.w;
  return flipped;
}

Eigen::VectorXd psi(const LightConeFrame& frame, const Eigen::VectorXd& x) {
  require_frame(frame);
  require_point(frame, x);
  return frame.v + frame.c * x - 0.5 * x.squaredNorm() * frame.w;
}

Eigen::MatrixXd psi_jacobian(const LightConeFrame& frame,
                             const Eigen::VectorXd& x) {
  require_frame(frame);
  require_point(frame, x);
  return frame.c - frame.w * x.transpose();
}

Eigen::VectorXd psi_second_fundamental_form(const LightConeFrame& frame,
                                            const Eigen::VectorXd& x,
                                            const Eigen::VectorXd& x_dir,
                                            const Eigen::VectorXd& y_dir,
                                            const TolerancePolicy& tol) {
  require_point(frame, x_dir);
  require_point(frame, y_dir);
  // psi is quadratic, so its second derivative along (x_dir, y_dir) is the
  // constant vector -<x_dir, y_dir> w; only the normal projection is left
  // to compute.
  Eigen::VectorXd second = -x_dir.dot(y_dir) * frame.w;
  Subspace tangent =
      span_of(frame.ambient, psi_jacobian(frame, x), tol.rank_tol);
  return second - project(tangent, second, tol.rank_tol);
}

Eigen::VectorXd pi_projection(const LightConeFrame& frame,
                              const Eigen::VectorXd& y,
                              const TolerancePolicy& tol) {
  require_frame(frame);
  require_ambient(frame, y);
  double pairing = frame.ambient.inner(y, frame.w);
  if (std::abs(pairing) <= tol.defect_tol * std::max(1.0, y.norm()))
    throw StructureError(
        "pairing with w vanishes: the ray of w has no projection");
  return y / pairing;
}

Eigen::VectorXd psi_inverse(const LightConeFrame& frame,
                            const Eigen::VectorXd& y,
                            const TolerancePolicy& tol) {
  Eigen::VectorXd on_slice = pi_projection(frame, y, tol);
  return frame.c.transpose() * frame.ambient.gram() * (on_slice - frame.v);
}

double conformal_pair_defect(const ConformalPair& pair,
                             const LightConeFrame& frame) {
  double defect = 0.0;
  for (std::size_t i = 0; i < pair.lift.size(); ++i) {
    if (pair.lambda[i] <= 0.0)
      return std::numeric_limits<double>::infinity();
    const Eigen::VectorXd& lift = pair.lift[i];
    defect = std::max(defect, std::abs(frame.ambient.norm2(lift)));
    defect = std::max(defect, std::abs(frame.ambient.inner(lift, frame.w) -
                                       1.0 / pair.lambda[i]));
    defect = std::max(
        defect,
        (psi(frame, pair.f[i]) / pair.lambda[i] - lift).cwiseAbs().maxCoeff());
  }
  return defect;
}

ConformalPair conformal_to_isometric(const std::vector<Eigen::VectorXd>& f,
                                     const std::vector<double>& lambda,
                                     const LightConeFrame& frame,
                                     const TolerancePolicy& tol) {
  tol.validate();
  if (f.size() != lambda.size())
    throw std::invalid_argument("sample counts of f and lambda differ");
  ConformalPair pair;
  pair.f = f;
  pair.lambda = lambda;
  pair.lift.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!(lambda[i] > 0.0))
      throw StructureError("conformal factor must be positive");
    pair.lift.push_back(psi(frame, f[i]) / lambda[i]);
  }
  return pair;
}

ConformalPair isometric_to_conformal(const std::vector<Eigen::VectorXd>& lift,
                                     const LightConeFrame& frame,
                                     const TolerancePolicy& tol) {
  tol.validate();
  require_frame(frame);
  ConformalPair pair;
  pair.lift = lift;
  pair.f.reserve(lift.size());
  pair.lambda.reserve(lift.size());
  for (const Eigen::VectorXd& y : lift) {
    require_ambient(frame, y);
    double scale = std::max(1.0, y.squaredNorm());
    if (std::abs(frame.ambient.norm2(y)) > tol.defect_tol * scale)
      throw StructureError("lift is not light-like");
    double pairing = frame.ambient.inner(y, frame.w);
    if (pairing <= tol.defect_tol * std::max(1.0, y.norm()))
      throw StructureError(
          "pairing with w must be positive to define the conformal factor");
    pair.lambda.push_back(1.0 / pairing);
    pair.f.push_back(psi_inverse(frame, y, tol));
  }
  return pair;
}

}  // namespace kcone
