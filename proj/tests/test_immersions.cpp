#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "kcone/immersions.hpp"
#include "kcone/quad_space.hpp"
#include "kcone/surfaces.hpp"

using namespace kcone;

namespace {

Eigen::VectorXd random_vector(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd x(dim);
  for (int i = 0; i < dim; ++i) x(i) = gauss(rng);
  return x;
}

// Uniform draw inside every chart rectangle of the reference product.
Eigen::VectorXd random_params(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> box(-1.2, 1.2);
  Eigen::VectorXd x(dim);
  for (int i = 0; i < dim; ++i) x(i) = box(rng);
  return x;
}

ProductImmersion reference_product() {
  std::vector<SurfaceChart> factors{hyperbolic_chart(-1.0), sphere_chart(3.0),
                                    sphere_chart(3.0), sphere_chart(3.0)};
  return make_product(factors);
}

Eigen::VectorXd reference_params() {
  Eigen::VectorXd params(8);
  params << 0.3, -0.4, 0.2, 0.5, -0.7, 0.1, 0.4, -0.2;
  return params;
}

// Product-of-surfaces curvature: each factor contributes its own constant.
double curvature_oracle(const std::vector<double>& curvatures,
                        const Eigen::VectorXd& s) {
  double numerator = 0.0;
  for (std::size_t j = 0; j < curvatures.size(); ++j) {
    double block = s.segment(2 * static_cast<int>(j), 2).squaredNorm();
    numerator += curvatures[j] * block * block;
  }
  double norm2 = s.squaredNorm();
  return numerator / (norm2 * norm2);
}

}  // namespace

TEST_CASE("charts meet their defining quadrics") {
  SurfaceChart sphere = sphere_chart(3.0);
  CHECK(sphere.radius == doctest::Approx(0.5773502691896258).epsilon(1e-15));
  for (double u : {-3.0, -1.0, 0.0, 1.5, 3.0})
    for (double v : {-1.4, -0.5, 0.0, 0.7, 1.4}) {
      ChartJet jet = chart_jet(sphere, u, v);
      CHECK(std::abs(jet.value.squaredNorm() - sphere.radius * sphere.radius) <=
            1e-13);
    }

  SurfaceChart hyperbolic = hyperbolic_chart(-1.0);
  CHECK(hyperbolic.radius == 1.0);
  CHECK(chart_jet(hyperbolic, 0.0, 0.0).value == Eigen::Vector3d(1.0, 0.0, 0.0));
  for (double u : {-1.4, -0.6, 0.0, 0.8, 1.4})
    for (double v : {-1.4, -0.3, 0.0, 0.5, 1.4}) {
      ChartJet jet = chart_jet(hyperbolic, u, v);
      double norm2 = hyperbolic.target.norm2(jet.value);
      CHECK(std::abs(norm2 + 1.0) <= 1e-12);
      CHECK(jet.value(0) > 0.0);
    }
}

TEST_CASE("chart jets differentiate the chart maps") {
  const double h = 1e-4;
  for (const SurfaceChart& chart : {sphere_chart(2.0), hyperbolic_chart(-0.5)}) {
    for (double u : {-0.8, 0.2, 1.1})
      for (double v : {-0.9, 0.4}) {
        ChartJet jet = chart_jet(chart, u, v);
        Eigen::Vector3d du_fd =
            (chart_jet(chart, u + h, v).value - chart_jet(chart, u - h, v).value) /
            (2.0 * h);
        Eigen::Vector3d dv_fd =
            (chart_jet(chart, u, v + h).value - chart_jet(chart, u, v - h).value) /
            (2.0 * h);
        CHECK((jet.du - du_fd).cwiseAbs().maxCoeff() <= 1e-5);
        CHECK((jet.dv - dv_fd).cwiseAbs().maxCoeff() <= 1e-5);

        Eigen::Vector3d duu_fd =
            (chart_jet(chart, u + h, v).value - 2.0 * jet.value +
             chart_jet(chart, u - h, v).value) /
            (h * h);
        Eigen::Vector3d dvv_fd =
            (chart_jet(chart, u, v + h).value - 2.0 * jet.value +
             chart_jet(chart, u, v - h).value) /
            (h * h);
        Eigen::Vector3d duv_fd =
            (chart_jet(chart, u + h, v + h).value -
             chart_jet(chart, u + h, v - h).value -
             chart_jet(chart, u - h, v + h).value +
             chart_jet(chart, u - h, v - h).value) /
            (4.0 * h * h);
        CHECK((jet.duu - duu_fd).cwiseAbs().maxCoeff() <= 1e-5);
        CHECK((jet.dvv - dvv_fd).cwiseAbs().maxCoeff() <= 1e-5);
        CHECK((jet.duv - duv_fd).cwiseAbs().maxCoeff() <= 1e-5);
      }
  }
}

TEST_CASE("gauss curvature from the jet equals the chart constant") {
  TolerancePolicy tol;
  for (const SurfaceChart& chart :
       {sphere_chart(3.0), sphere_chart(0.5), hyperbolic_chart(-1.0),
        hyperbolic_chart(-2.5)}) {
    for (double u : {-1.2, -0.4, 0.0, 0.6, 1.2})
      for (double v : {-1.1, -0.5, 0.1, 0.5, 1.1})
        CHECK(std::abs(gauss_curvature(chart, u, v, tol) - chart.curvature) <=
              1e-8);
  }
}

TEST_CASE("charts reject a curvature of the wrong sign") {
  CHECK_THROWS_AS(sphere_chart(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(sphere_chart(0.0), std::invalid_argument);
  CHECK_THROWS_AS(hyperbolic_chart(1.0), std::invalid_argument);
  CHECK_THROWS_AS(hyperbolic_chart(0.0), std::invalid_argument);
  SurfaceChart sphere = sphere_chart(1.0);
  CHECK_THROWS_AS(chart_jet(sphere, 0.0, 1.56), std::invalid_argument);
}

TEST_CASE("the product immersion is null exactly at the radius identity") {
  ProductImmersion null_product = reference_product();
  CHECK(std::abs(radius_identity(null_product)) <= 1e-15);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd params = random_params(8, rng);
    Eigen::VectorXd value = immersion_value(null_product, params);
    CHECK(value.size() == 12);
    CHECK(std::abs(null_product.ambient.norm2(value)) <= 1e-12);
  }

  std::vector<SurfaceChart> skewed{hyperbolic_chart(-1.0), sphere_chart(3.0),
                                   sphere_chart(3.0), sphere_chart(4.0)};
  ProductImmersion off = make_product(skewed);
  double identity = radius_identity(off);
  CHECK(identity == doctest::Approx(-1.0 / 12.0).epsilon(1e-12));
  Eigen::VectorXd params = random_params(8, rng);
  CHECK(std::abs(off.ambient.norm2(immersion_value(off, params)) - identity) <=
        1e-12);
}

TEST_CASE("the factor pattern of a product is validated") {
  CHECK_THROWS_AS(make_product({sphere_chart(1.0), sphere_chart(1.0)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_product({hyperbolic_chart(-1.0), hyperbolic_chart(-1.0)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_product({}), std::invalid_argument);
  ProductImmersion lone = make_product({hyperbolic_chart(-4.0)});
  CHECK(lone.ambient.dim() == 3);
  CHECK(radius_identity(lone) == doctest::Approx(-0.25).epsilon(1e-14));
}

TEST_CASE("finite differences confirm the analytic product jets") {
  ProductImmersion imm = reference_product();
  Eigen::VectorXd params = reference_params();
  ImmersionJet jet = immersion_jet(imm, params);
  CHECK((jet.value - immersion_value(imm, params)).norm() == 0.0);

  const double h = 1e-4;
  const int dim = 8;
  for (int a = 0; a < dim; ++a) {
    Eigen::VectorXd ea = Eigen::VectorXd::Unit(dim, a);
    Eigen::VectorXd first_fd = (immersion_value(imm, params + h * ea) -
                                immersion_value(imm, params - h * ea)) /
                               (2.0 * h);
    CHECK((jet.first.col(a) - first_fd).cwiseAbs().maxCoeff() <= 1e-5);
    for (int b = 0; b < dim; ++b) {
      Eigen::VectorXd eb = Eigen::VectorXd::Unit(dim, b);
      Eigen::VectorXd second_fd =
          (immersion_value(imm, params + h * (ea + eb)) -
           immersion_value(imm, params + h * (ea - eb)) -
           immersion_value(imm, params - h * (ea - eb)) +
           immersion_value(imm, params - h * (ea + eb))) /
          (4.0 * h * h);
      CHECK((jet.second[a][b] - second_fd).cwiseAbs().maxCoeff() <= 1e-5);
    }
  }
}

TEST_CASE("point data assembles an adapted orthonormal frame") {
  TolerancePolicy tol;
  ProductImmersion imm = reference_product();
  PointData data = second_fundamental_form(imm, reference_params(), tol);

  CHECK(data.metric.rows() == 8);
  CHECK((data.metric - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() <=
        1e-12);

  Eigen::MatrixXd joint(12, 12);
  joint << data.tangent_basis, data.normal_frame;
  CHECK(numerical_rank(joint, tol.rank_tol) == 12);

  Eigen::MatrixXd normal_gram =
      data.normal_frame.transpose() * imm.ambient.gram() * data.normal_frame;
  Eigen::MatrixXd expected_gram = Eigen::MatrixXd::Identity(4, 4);
  expected_gram(0, 0) = -1.0;
  CHECK((normal_gram - expected_gram).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((data.normal_space.gram() - expected_gram).cwiseAbs().maxCoeff() <=
        1e-12);

  CHECK(data.alpha.symmetry_defect() <= 1e-14);
  CHECK(data.j_action.square_defect() <= 1e-14);
  CHECK(data.j_action.isometry_defect(data.metric) <= 1e-12);
  CHECK((data.position - immersion_value(imm, reference_params())).norm() ==
        0.0);
}

TEST_CASE("alpha matches the umbilical factor formulas") {
  TolerancePolicy tol;
  ProductImmersion imm = reference_product();
  PointData data = second_fundamental_form(imm, reference_params(), tol);

  // Block structure: the only nonzero entries of the k-th normal component
  // sit on factor k's own diagonal block, as the identity over the factor
  // radius (positive for the hyperbolic factor, negative for spheres).
  for (int k = 0; k < 4; ++k) {
    double coefficient = (k == 0 ? 1.0 : -1.0) / imm.factors[k].radius;
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(8, 8);
    expected.block<2, 2>(2 * k, 2 * k) =
        coefficient * Eigen::Matrix2d::Identity();
    CHECK((data.alpha.comps()[k] - expected).cwiseAbs().maxCoeff() <= 1e-12);
  }

  // The position in normal coordinates is (r_1, ..., r_n), and pairing alpha
  // with it returns minus the metric.
  Eigen::VectorXd position_coords(4);
  for (int k = 0; k < 4; ++k) position_coords(k) = imm.factors[k].radius;
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      Eigen::VectorXd value = data.alpha.value(Eigen::VectorXd::Unit(8, a),
                                               Eigen::VectorXd::Unit(8, b));
      double paired = data.normal_space.inner(value, position_coords);
      CHECK(std::abs(paired + data.metric(a, b)) <= 1e-12);
    }
}

TEST_CASE("sectional curvature reproduces the product oracle") {
  TolerancePolicy tol;
  ProductImmersion imm = reference_product();
  PointData data = second_fundamental_form(imm, reference_params(), tol);
  std::vector<double> curvatures{-1.0, 3.0, 3.0, 3.0};

  CHECK(std::abs(sectional_curvature_J(data, Eigen::VectorXd::Unit(8, 0)) -
                 (-1.0)) <= 1e-8);
  for (int j = 1; j < 4; ++j)
    CHECK(std::abs(sectional_curvature_J(data, Eigen::VectorXd::Unit(8, 2 * j)) -
                   3.0) <= 1e-8);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd s = random_vector(8, rng);
    CHECK(std::abs(sectional_curvature_J(data, s) -
                   curvature_oracle(curvatures, s)) <= 1e-6);
  }

  CHECK_THROWS_AS(sectional_curvature_J(data, Eigen::VectorXd::Zero(8)),
                  std::invalid_argument);
}

TEST_CASE("the gauss equation recovers the intrinsic product curvature") {
  TolerancePolicy tol;
  ProductImmersion imm = reference_product();
  PointData data = second_fundamental_form(imm, reference_params(), tol);
  std::vector<double> curvatures{-1.0, 3.0, 3.0, 3.0};

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd x = random_vector(8, rng);
    Eigen::VectorXd y = random_vector(8, rng);
    Eigen::VectorXd z = random_vector(8, rng);
    Eigen::VectorXd t = random_vector(8, rng);
    double from_alpha =
        data.normal_space.inner(data.alpha.value(x, t), data.alpha.value(y, z)) -
        data.normal_space.inner(data.alpha.value(x, z), data.alpha.value(y, t));
    double intrinsic = 0.0;
    for (int j = 0; j < 4; ++j) {
      auto block = [&](const Eigen::VectorXd& vec) {
        return vec.segment(2 * j, 2);
      };
      intrinsic += curvatures[j] * (block(x).dot(block(t)) * block(y).dot(block(z)) -
                                    block(x).dot(block(z)) * block(y).dot(block(t)));
    }
    CHECK(std::abs(from_alpha - intrinsic) <= 1e-6);
  }
}

TEST_CASE("shape operators commute and have rank two") {
  TolerancePolicy tol;
  ProductImmersion imm = reference_product();

  std::vector<PointData> grid;
  std::mt19937_64 rng(17);
  grid.push_back(second_fundamental_form(imm, reference_params(), tol));
  for (int trial = 0; trial < 3; ++trial)
    grid.push_back(
        second_fundamental_form(imm, random_params(8, rng), tol));

  CHECK(normal_curvature_defect(grid) <= 1e-8);

  const PointData& data = grid.front();
  for (int k = 0; k < 4; ++k) {
    Eigen::VectorXd xi = Eigen::VectorXd::Unit(4, k);
    CHECK(shape_operator_rank(data, xi, tol.rank_tol) == 2);
  }

  // Flatness of the normal bundle does not depend on the chosen normals.
  Eigen::VectorXd mixed = random_vector(4, rng);
  Eigen::MatrixXd a_mixed = shape_operator(data, mixed);
  for (int k = 0; k < 4; ++k) {
    Eigen::MatrixXd a_k = shape_operator(data, Eigen::VectorXd::Unit(4, k));
    CHECK((a_mixed * a_k - a_k * a_mixed).cwiseAbs().maxCoeff() <= 1e-8);
  }
}
