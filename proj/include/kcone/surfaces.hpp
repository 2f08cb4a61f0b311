#pragma once

#include <Eigen/Dense>

#include "kcone/quad_space.hpp"
#include "kcone/tolerance.hpp"

namespace kcone {

enum class SurfaceKind { sphere, hyperbolic };

// Analytic 2-jet of a chart at one parameter point.
struct ChartJet {
  Eigen::Vector3d value;
  Eigen::Vector3d du;
  Eigen::Vector3d dv;
  Eigen::Vector3d duu;
  Eigen::Vector3d duv;
  Eigen::Vector3d dvv;
};

// Parameter rectangle a chart is sampled over; kept away from coordinate
// singularities.
struct ChartRectangle {
  double u_min;
  double u_max;
  double v_min;
  double v_max;

  bool contains(double u, double v) const {
    return u >= u_min && u <= u_max && v >= v_min && v <= v_max;
  }
};

// Constant-curvature surface given by an explicit chart with analytic
// derivatives: a round sphere of radius r in Euclidean 3-space (c > 0) or a
// hyperboloid sheet of radius r in Lorentzian 3-space (c < 0); r = 1/sqrt|c|.
struct SurfaceChart {
  SurfaceKind kind;
  double curvature;
  double radius;
  QuadSpace target;
  ChartRectangle domain;
};

// Sphere g(u, v) = r (cos v cos u, cos v sin u, sin v); poles are kept out
// of the domain by a fixed margin. Throws on c <= 0.
SurfaceChart sphere_chart(double c);

// Hyperboloid sheet g(u, v) = r (cosh u cosh v, sinh u cosh v, sinh v) with
// <g, g> = -r^2 and positive first coordinate. Throws on c >= 0.
SurfaceChart hyperbolic_chart(double c);

// 2-jet at (u, v); throws when the point is outside the chart rectangle.
ChartJet chart_jet(const SurfaceChart& chart, double u, double v);

// Gauss curvature computed from the jet alone: second derivatives are
// projected to the chart normal and fed through the Gauss equation.
double gauss_curvature(const SurfaceChart& chart, double u, double v,
                       const TolerancePolicy& tol);

}  // namespace kcone
