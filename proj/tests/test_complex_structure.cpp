#include "doctest.h"

#include <Eigen/Dense>
#include <random>

#include "kcone/complex_structure.hpp"
#include "kcone/quad_space.hpp"

using namespace kcone;

namespace {

Eigen::MatrixXd random_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = gauss(rng);
  return m;
}

Eigen::MatrixXd random_orthogonal(int dim, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_matrix(dim, dim, rng));
  return qr.householderQ();
}

}  // namespace

TEST_CASE("standard structure rotates coordinate pairs") {
  ComplexStructure j1 = ComplexStructure::standard(1);
  Eigen::MatrixXd expected(2, 2);
  expected << 0.0, -1.0, 1.0, 0.0;
  CHECK((j1.matrix() - expected).cwiseAbs().maxCoeff() == 0.0);

  ComplexStructure j3 = ComplexStructure::standard(3);
  CHECK(j3.dim() == 6);
  CHECK(j3.square_defect() == 0.0);
  CHECK(j3.isometry_defect(Eigen::MatrixXd::Identity(6, 6)) == 0.0);
  CHECK((j3.apply(Eigen::VectorXd::Unit(6, 2)) - Eigen::VectorXd::Unit(6, 3))
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK((j3.apply(Eigen::VectorXd::Unit(6, 3)) + Eigen::VectorXd::Unit(6, 2))
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("construction rejects matrices that do not square to minus identity") {
  CHECK_THROWS_AS(ComplexStructure(Eigen::MatrixXd::Identity(4, 4)),
                  std::invalid_argument);
  Eigen::MatrixXd odd = Eigen::MatrixXd::Zero(3, 3);
  CHECK_THROWS_AS(ComplexStructure{odd}, std::invalid_argument);
}

TEST_CASE("conjugated structures stay complex and isometric") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 8; ++trial) {
    Eigen::MatrixXd q = random_orthogonal(6, rng);
    ComplexStructure j(q * ComplexStructure::standard(3).matrix() * q.transpose());
    CHECK(j.square_defect() < 1e-12);
    CHECK(j.isometry_defect(Eigen::MatrixXd::Identity(6, 6)) < 1e-12);
  }
}

TEST_CASE("maximal complex subspace of an invariant subspace is itself") {
  ComplexStructure j = ComplexStructure::standard(2);
  QuadSpace e4 = QuadSpace::euclidean(4);
  Eigen::MatrixXd pair(4, 2);
  pair << 1, 0, 0, 1, 0, 0, 0, 0;  // span{e0, e1} = one J-pair
  Subspace sub(e4, pair);
  CHECK(is_complex_subspace(j, sub, 1e-8));
  Subspace maximal = maximal_complex_subspace(j, sub, 1e-8);
  CHECK(maximal.dim() == 2);
  CHECK(maximal.contains(pair.col(0), 1e-10));
}

TEST_CASE("a real line carries no complex subspace") {
  ComplexStructure j = ComplexStructure::standard(2);
  QuadSpace e4 = QuadSpace::euclidean(4);
  Subspace line(e4, Eigen::MatrixXd(Eigen::VectorXd::Unit(4, 0)));
  CHECK_FALSE(is_complex_subspace(j, line, 1e-8));
  CHECK(maximal_complex_subspace(j, line, 1e-8).dim() == 0);
}

TEST_CASE("three coordinate axes contain exactly one J-pair") {
  ComplexStructure j = ComplexStructure::standard(2);
  QuadSpace e4 = QuadSpace::euclidean(4);
  Eigen::MatrixXd basis(4, 3);
  basis.setZero();
  basis(0, 0) = basis(1, 1) = basis(2, 2) = 1.0;  // span{e0, e1, e2}
  Subspace sub(e4, basis);
  CHECK_FALSE(is_complex_subspace(j, sub, 1e-8));
  Subspace maximal = maximal_complex_subspace(j, sub, 1e-8);
  CHECK(maximal.dim() == 2);
  CHECK(maximal.contains(Eigen::VectorXd::Unit(4, 0), 1e-10));
  CHECK(maximal.contains(Eigen::VectorXd::Unit(4, 1), 1e-10));
}

TEST_CASE("odd-dimensional subspaces are never complex") {
  std::mt19937_64 rng(17);
  ComplexStructure j = ComplexStructure::standard(3);
  QuadSpace e6 = QuadSpace::euclidean(6);
  for (int k = 1; k <= 5; k += 2) {
    Subspace sub = span_of(e6, random_matrix(6, k, rng), 1e-8);
    CHECK_FALSE(is_complex_subspace(j, sub, 1e-8));
  }
}

TEST_CASE("maximal complex subspace properties on random data") {
  std::mt19937_64 rng(23);
  QuadSpace e6 = QuadSpace::euclidean(6);
  for (int trial = 0; trial < 24; ++trial) {
    Eigen::MatrixXd q = random_orthogonal(6, rng);
    ComplexStructure j(q * ComplexStructure::standard(3).matrix() * q.transpose());
    int k = 1 + static_cast<int>(rng() % 5);
    Subspace sub = span_of(e6, random_matrix(6, k, rng), 1e-8);
    Subspace maximal = maximal_complex_subspace(j, sub, 1e-8);
    CHECK(maximal.dim() % 2 == 0);
    CHECK(maximal.dim() >= 2 * sub.dim() - 6);
    CHECK(maximal.dim() <= sub.dim());
    if (maximal.dim() > 0) CHECK(is_complex_subspace(j, maximal, 1e-8));
    // rotating structure and subspace together preserves invariance
    if (is_complex_subspace(j, sub, 1e-8)) {
      Eigen::MatrixXd r = random_orthogonal(6, rng);
      ComplexStructure jr(r * j.matrix() * r.transpose());
      Subspace rotated(e6, r * sub.basis());
      CHECK(is_complex_subspace(jr, rotated, 1e-8));
    }
  }
}

TEST_CASE("paired space doubles a base with a sign flip on the second slot") {
  QuadSpace l3 = QuadSpace::lorentzian(3);
  PairedSpace w = PairedSpace::from_base(l3);
  CHECK(w.base_dim() == 3);
  CHECK(w.total.dim() == 6);
  CHECK(w.total.signature() == std::pair<int, int>{3, 3});

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    Eigen::VectorXd xi = random_matrix(3, 1, rng).col(0);
    Eigen::VectorXd eta = random_matrix(3, 1, rng).col(0);
    double base_inner = l3.inner(xi, eta);
    CHECK(w.pairing(w.pair(xi, Eigen::VectorXd::Zero(3)),
                    w.pair(eta, Eigen::VectorXd::Zero(3))) ==
          doctest::Approx(base_inner));
    CHECK(w.pairing(w.pair(Eigen::VectorXd::Zero(3), xi),
                    w.pair(Eigen::VectorXd::Zero(3), eta)) ==
          doctest::Approx(-base_inner));
    // mixed slots never pair
    CHECK(w.pairing(w.pair(xi, Eigen::VectorXd::Zero(3)),
                    w.pair(Eigen::VectorXd::Zero(3), eta)) ==
          doctest::Approx(0.0));
    Eigen::VectorXd joined = w.pair(xi, eta);
    CHECK((w.first(joined) - xi).cwiseAbs().maxCoeff() == 0.0);
    CHECK((w.second(joined) - eta).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("paired space of a euclidean base has split signature too") {
  PairedSpace w = PairedSpace::from_base(QuadSpace::euclidean(2));
  CHECK(w.total.signature() == std::pair<int, int>{2, 2});
}
