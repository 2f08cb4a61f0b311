#include "kcone/surfaces.hpp"

#include <cmath>
#include <stdexcept>

namespace kcone {

namespace {

constexpr double kPoleMargin = 0.1;

}  // namespace

SurfaceChart sphere_chart(double c) {
  if (!(c > 0.0))
    throw std::invalid_argument("a sphere chart needs positive curvature");
  double r = 1.0 / std::sqrt(c);
  double half_pi = std::asin(1.0);
  ChartRectangle domain{-2.0 * half_pi, 2.0 * half_pi, -half_pi + kPoleMargin,
                        half_pi - kPoleMargin};
  return SurfaceChart{SurfaceKind::sphere, c, r, QuadSpace::euclidean(3),
                      domain};
}

SurfaceChart hyperbolic_chart(double c) {
  if (!(c < 0.0))
    throw std::invalid_argument("a hyperbolic chart needs negative curvature");
  double r = 1.0 / std::sqrt(-c);
  ChartRectangle domain{-1.5, 1.5, -1.5, 1.5};
  return SurfaceChart{SurfaceKind::hyperbolic, c, r, QuadSpace::lorentzian(3),
                      domain};
}

ChartJet chart_jet(const SurfaceChart& chart, double u, double v) {
  if (!chart.domain.contains(u, v))
    throw std::invalid_argument("parameter point is outside the chart domain");
  double r = chart.radius;
  ChartJet jet;
  if (chart.kind == SurfaceKind::sphere) {
    double cu = std::cos(u), su = std::sin(u);
    double cv = std::cos(v), sv = std::sin(v);
    jet.value = r * Eigen::Vector3d(cv * cu, cv * su, sv);
    jet.du = r * Eigen::Vector3d(-cv * su, cv * cu, 0.0);
    jet.dv = r * Eigen::Vector3d(-sv * cu, -sv * su, cv);
    jet.duu = r * Eigen::Vector3d(-cv * cu, -cv * su, 0.0);
    jet.duv = r * Eigen::Vector3d(sv * su, -sv * cu, 0.0);
    jet.dvv = -jet.value;
  } else {
    double cu = std::cosh(u), su = std::sinh(u);
    double cv = std::cosh(v), sv = std::sinh(v);
    jet.value = r * Eigen::Vector3d(cu * cv, su * cv, sv);
    jet.du = r * Eigen::Vector3d(su * cv, cu * cv, 0.0);
    jet.dv = r * Eigen::Vector3d(cu * sv, su * sv, cv);
    jet.duu = jet.value - r * Eigen::Vector3d(0.0, 0.0, sv);
    jet.duv = r * Eigen::Vector3d(su * sv, cu * sv, 0.0);
    jet.dvv = jet.value;
  }
  return jet;
}

double gauss_curvature(const SurfaceChart& chart, double u, double v,
                       const TolerancePolicy& tol) {
  ChartJet jet = chart_jet(chart, u, v);
  Eigen::MatrixXd tangent(3, 2);
  tangent << jet.du, jet.dv;
  Subspace tangent_span = span_of(chart.target, tangent, tol.rank_tol);

  auto normal_part = [&](const Eigen::Vector3d& vec) -> Eigen::VectorXd {
    return vec - project(tangent_span, vec, tol.rank_tol);
  };
  Eigen::VectorXd auu = normal_part(jet.duu);
  Eigen::VectorXd auv = normal_part(jet.duv);
  Eigen::VectorXd avv = normal_part(jet.dvv);

  double e = chart.target.inner(jet.du, jet.du);
  double f = chart.target.inner(jet.du, jet.dv);
  double g = chart.target.inner(jet.dv, jet.dv);
  double numerator =
      chart.target.inner(auu, avv) - chart.target.inner(auv, auv);
  return numerator / (e * g - f * f);
}

}  // namespace kcone
