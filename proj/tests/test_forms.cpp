#include "doctest.h"

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "kcone/complex_structure.hpp"
#include "kcone/forms.hpp"
#include "kcone/quad_space.hpp"

using namespace kcone;

namespace {

Eigen::MatrixXd random_symmetric(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = gauss(rng);
  return 0.5 * (m + m.transpose());
}

VectorValuedForm random_symmetric_form(int domain_dim, int target_dim,
                                       std::mt19937_64& rng) {
  std::vector<Eigen::MatrixXd> comps;
  for (int k = 0; k < target_dim; ++k)
    comps.push_back(random_symmetric(domain_dim, rng));
  return VectorValuedForm(comps);
}

// alpha(x, y) = -(x, y) w0 with w0 = e0 + e1 light-like in L^4; the values of
// the pair form land on the light-like line, so every pair product vanishes.
struct FlatTestbed {
  int n;
  QuadSpace domain;
  QuadSpace base = QuadSpace::lorentzian(4);
  ComplexStructure J;
  Eigen::VectorXd w0;
  Eigen::VectorXd F0;  // (e1 - e0) / 2, <w0, F0> = 1
  VectorValuedForm alpha;
  PairedForm beta;
  PairedForm gamma;

  explicit FlatTestbed(int n_)
      : n(n_),
        domain(QuadSpace::euclidean(2 * n_)),
        J(ComplexStructure::standard(n_)),
        w0(Eigen::VectorXd::Zero(4)),
        F0(Eigen::VectorXd::Zero(4)),
        alpha(VectorValuedForm::zero(2 * n_, 4)),
        beta(build_beta(alpha, J)),
        gamma(build_gamma(alpha, J)) {
    w0(0) = 1.0;
    w0(1) = 1.0;
    F0(0) = -0.5;
    F0(1) = 0.5;
    alpha = VectorValuedForm::rank_one(-Eigen::MatrixXd::Identity(2 * n, 2 * n), w0);
    beta = build_beta(alpha, J);
    gamma = build_gamma(alpha, J);
  }
};

// alpha(x, y) = (x, y) v0 + c rho(x, y) z with v0 = e0 + e1, z = e2 orthogonal
// to v0 and to w = (e0 - e1) / 2, and rho(x, y) = x0 y0 - x1 y1, which changes
// sign under J on both slots. The pair form only sees the v0 part.
struct SyntheticSplit {
  int n;
  double c;
  QuadSpace domain;
  QuadSpace base = QuadSpace::lorentzian(4);
  ComplexStructure J;
  Eigen::VectorXd v0;
  Eigen::VectorXd w;  // <v0, w> = -1
  Eigen::VectorXd z;
  VectorValuedForm alpha;
  PairedForm beta;
  PairedForm gamma;

  SyntheticSplit(int n_, double c_)
      : n(n_),
        c(c_),
        domain(QuadSpace::euclidean(2 * n_)),
        J(ComplexStructure::standard(n_)),
        v0(Eigen::VectorXd::Zero(4)),
        w(Eigen::VectorXd::Zero(4)),
        z(Eigen::VectorXd::Unit(4, 2)),
        alpha(VectorValuedForm::zero(2 * n_, 4)),
        beta(build_beta(alpha, J)),
        gamma(build_gamma(alpha, J)) {
    v0(0) = 1.0;
    v0(1) = 1.0;
    w(0) = 0.5;
    w(1) = -0.5;
    const int d = 2 * n;
    Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(d, d);
    rho(0, 0) = 1.0;
    rho(1, 1) = -1.0;
    alpha = VectorValuedForm::rank_one(Eigen::MatrixXd::Identity(d, d), v0) +
            VectorValuedForm::rank_one(rho, z).scaled(c);
    beta = build_beta(alpha, J);
    gamma = build_gamma(alpha, J);
  }
};

// Block form on two complex lines: alpha(x, y) = (x1, y1) u1 + (x2, y2) u2,
// where block j is the coordinate pair (2j, 2j+1).
struct TwoBlock {
  QuadSpace domain = QuadSpace::euclidean(4);
  QuadSpace base = QuadSpace::lorentzian(4);
  ComplexStructure J = ComplexStructure::standard(2);
  VectorValuedForm alpha = VectorValuedForm::zero(4, 4);
  PairedForm beta = build_beta(alpha, J);

  TwoBlock(int u1_coord, int u2_coord) {
    Eigen::MatrixXd p1 = Eigen::MatrixXd::Zero(4, 4);
    p1(0, 0) = p1(1, 1) = 1.0;
    Eigen::MatrixXd p2 = Eigen::MatrixXd::Zero(4, 4);
    p2(2, 2) = p2(3, 3) = 1.0;
    alpha = VectorValuedForm::rank_one(p1, Eigen::VectorXd::Unit(4, u1_coord)) +
            VectorValuedForm::rank_one(p2, Eigen::VectorXd::Unit(4, u2_coord));
    beta = build_beta(alpha, J);
  }
};

bool same_subspace(const Subspace& a, const Subspace& b, double tol) {
  if (a.dim() != b.dim()) return false;
  for (int j = 0; j < b.dim(); ++j)
    if (!a.contains(b.basis().col(j), tol)) return false;
  return true;
}

}  // namespace

TEST_CASE("pair form of the light-like testbed matches its closed form") {
  FlatTestbed tb(3);
  const int d = 6;
  Eigen::MatrixXd Jm = tb.J.matrix();
  for (int k = 0; k < 4; ++k) {
    Eigen::MatrixXd b1_expected =
        -2.0 * tb.w0(k) * Eigen::MatrixXd::Identity(d, d);
    Eigen::MatrixXd b2_expected = -2.0 * tb.w0(k) * Jm;
    CHECK((tb.beta.first().comps()[k] - b1_expected).cwiseAbs().maxCoeff() ==
          doctest::Approx(0.0));
    CHECK((tb.beta.second().comps()[k] - b2_expected).cwiseAbs().maxCoeff() ==
          doctest::Approx(0.0));
  }

  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd x(d), y(d);
  for (int i = 0; i < d; ++i) {
    x(i) = gauss(rng);
    y(i) = gauss(rng);
  }
  Eigen::VectorXd val = tb.beta.value(x, y);
  Eigen::VectorXd expected(8);
  expected << -2.0 * x.dot(y) * tb.w0, -2.0 * x.dot(Jm * y) * tb.w0;
  CHECK((val - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("pair form exchange identities are exact for random coefficients") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    VectorValuedForm alpha = random_symmetric_form(6, 3, rng);
    ComplexStructure J = ComplexStructure::standard(3);
    PairedForm beta = build_beta(alpha, J);
    CHECK(beta_symmetry_defect(beta, J) < 1e-12 * std::max(1.0, beta.max_abs()));
  }
}

TEST_CASE("image span doubles the first component span") {
  std::mt19937_64 rng(13);
  QuadSpace base = QuadSpace::lorentzian(3);
  for (int trial = 0; trial < 4; ++trial) {
    VectorValuedForm alpha = random_symmetric_form(4, 3, rng);
    ComplexStructure J = ComplexStructure::standard(2);
    PairedForm beta = build_beta(alpha, J);

    Subspace image = image_span(beta, base);
    Subspace u0 = first_component_span(beta, base);
    Subspace u0_second = second_component_span(beta, base);
    CHECK(image.dim() == 2 * u0.dim());
    CHECK(same_subspace(u0, u0_second, 1e-8));
    for (int j = 0; j < u0.dim(); ++j) {
      Eigen::VectorXd top(6), bottom(6);
      top << u0.basis().col(j), Eigen::VectorXd::Zero(3);
      bottom << Eigen::VectorXd::Zero(3), u0.basis().col(j);
      CHECK(image.contains(top, 1e-8));
      CHECK(image.contains(bottom, 1e-8));
    }
  }
}

TEST_CASE("flatness defect vanishes on the testbed and flags curvature") {
  FlatTestbed tb(3);
  CHECK(flatness_defect(tb.beta, tb.base) < 1e-12);

  // Identity part plus a rank-one spacelike part: values are not light-like,
  // so the exchange products see the round curvature and cannot cancel.
  QuadSpace base = QuadSpace::lorentzian(4);
  ComplexStructure J = ComplexStructure::standard(2);
  Eigen::MatrixXd a1 = Eigen::MatrixXd::Identity(4, 4);
  Eigen::MatrixXd a2 = Eigen::MatrixXd::Zero(4, 4);
  a2(0, 0) = 1.0;
  VectorValuedForm alpha =
      VectorValuedForm::rank_one(a1, Eigen::VectorXd::Unit(4, 2)) +
      VectorValuedForm::rank_one(a2, Eigen::VectorXd::Unit(4, 3));
  CHECK(flatness_defect(build_beta(alpha, J), base) > 0.1);
}

TEST_CASE("product condition holds on the testbed and flags bad couplings") {
  FlatTestbed tb(2);
  CHECK(product_condition_defect(tb.beta, tb.gamma, tb.base) < 1e-12);

  // Rank-one perturbation valued along F0, which pairs nontrivially with w0.
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(4, 4);
  rho(0, 2) = rho(2, 0) = 1.0;
  VectorValuedForm perturbed =
      tb.alpha + VectorValuedForm::rank_one(rho, tb.F0).scaled(0.05);
  PairedForm beta_p = build_beta(perturbed, tb.J);
  PairedForm gamma_p = build_gamma(perturbed, tb.J);
  CHECK(product_condition_defect(beta_p, gamma_p, tb.base) > 0.01);
}

TEST_CASE("image and kernel of the testbed forms") {
  FlatTestbed tb(3);
  Subspace u0 = first_component_span(tb.beta, tb.base);
  CHECK(u0.dim() == 1);
  CHECK(u0.contains(tb.w0, 1e-10));
  CHECK(image_span(tb.beta, tb.base).dim() == 2);

  // The shape identity forces a trivial kernel: pairing a kernel direction
  // against itself would give -2(x, x) != 0.
  CHECK(kernel(tb.beta, tb.domain).dim() == 0);

  TwoBlock blocks(2, 3);
  Subspace k = kernel(blocks.beta, blocks.domain);
  CHECK(k.dim() == 0);

  // A form vanishing on the first block has that block as kernel.
  Eigen::MatrixXd p2 = Eigen::MatrixXd::Zero(4, 4);
  p2(2, 2) = p2(3, 3) = 1.0;
  VectorValuedForm alpha2 =
      VectorValuedForm::rank_one(p2, Eigen::VectorXd::Unit(4, 2));
  PairedForm beta2 = build_beta(alpha2, blocks.J);
  Subspace k2 = kernel(beta2, blocks.domain);
  CHECK(k2.dim() == 2);
  CHECK(k2.contains(Eigen::VectorXd::Unit(4, 0), 1e-10));
  CHECK(k2.contains(Eigen::VectorXd::Unit(4, 1), 1e-10));
}

TEST_CASE("regular elements realize the maximal operator rank") {
  FlatTestbed tb(3);
  std::mt19937_64 rng(17);
  RegularElement reg = find_regular_element(tb.beta, rng);
  CHECK(reg.rank == 2);
  CHECK(numerical_rank(tb.beta.operator_at(reg.x), 1e-8) == 2);

  TwoBlock blocks(2, 3);
  std::mt19937_64 rng2(19);
  RegularElement reg2 = find_regular_element(blocks.beta, rng2);
  CHECK(reg2.rank == 4);
}

TEST_CASE("kernel values of a regular element stay inside the isotropic meet") {
  FlatTestbed tb(3);
  CHECK(moore_inclusion_defect(tb.beta, Eigen::VectorXd::Unit(6, 0), tb.base) <
        1e-10);

  SyntheticSplit sp(3, 0.7);
  CHECK(moore_inclusion_defect(sp.beta, Eigen::VectorXd::Unit(6, 0), sp.base) <
        1e-10);

  // Random light-like rank-one forms are flat; the inclusion is a theorem.
  std::mt19937_64 rng(23);
  std::normal_distribution<double> gauss(0.0, 1.0);
  QuadSpace base = QuadSpace::lorentzian(4);
  ComplexStructure J = ComplexStructure::standard(3);
  for (int trial = 0; trial < 3; ++trial) {
    Eigen::VectorXd dir(3);
    for (int i = 0; i < 3; ++i) dir(i) = gauss(rng);
    dir.normalize();
    Eigen::VectorXd ell(4);
    ell << 1.0, dir;
    VectorValuedForm alpha =
        VectorValuedForm::rank_one(random_symmetric(6, rng), ell);
    PairedForm beta = build_beta(alpha, J);
    CHECK(flatness_defect(beta, base) < 1e-10);
    RegularElement reg = find_regular_element(beta, rng);
    CHECK(moore_inclusion_defect(beta, reg.x, base) < 1e-8);
  }
}

TEST_CASE("moore inclusion rejects non-regular elements") {
  // A first-block direction annihilates a form supported on the second block.
  Eigen::MatrixXd p2 = Eigen::MatrixXd::Zero(4, 4);
  p2(2, 2) = p2(3, 3) = 1.0;
  ComplexStructure J = ComplexStructure::standard(2);
  VectorValuedForm alpha =
      VectorValuedForm::rank_one(p2, Eigen::VectorXd::Unit(4, 2));
  PairedForm beta = build_beta(alpha, J);
  QuadSpace base = QuadSpace::lorentzian(4);
  CHECK_THROWS_AS(moore_inclusion_defect(beta, Eigen::VectorXd::Unit(4, 0), base),
                  std::invalid_argument);
}

TEST_CASE("kernel dimension bound against a claimed surjective signature") {
  FlatTestbed tb(3);
  KernelBoundCheck claim1 = check_surjective_kernel_bound(tb.beta, 1, tb.domain);
  CHECK(claim1.dim_kernel == 0);
  CHECK(claim1.lower_bound == 4);
  CHECK_FALSE(claim1.holds);  // the image span is degenerate, not a (1,1) space

  KernelBoundCheck claim3 = check_surjective_kernel_bound(tb.beta, 3, tb.domain);
  CHECK(claim3.lower_bound == 0);
  CHECK(claim3.holds);
}

TEST_CASE("degenerate split of the light-like testbed") {
  FlatTestbed tb(3);
  DegenerateSplit split = degenerate_decomposition(tb.beta, tb.alpha, tb.F0,
                                                   tb.J, tb.domain, tb.base);
  CHECK(split.s == 1);
  CHECK((split.v + tb.w0).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(inner(tb.base, split.v, tb.F0) == doctest::Approx(-1.0));
  CHECK(split.L.dim() == 2);
  Eigen::MatrixXd lg = split.L.restricted_gram();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lg);
  CHECK(es.eigenvalues()(0) < -1e-8);
  CHECK(es.eigenvalues()(1) > 1e-8);

  CHECK(split.beta1.max_abs() < 1e-12);
  CHECK(split.kernel1.dim() == 6);  // bound 2n - 2s + 2 attained with equality
  CHECK(split.U1.dim() == 0);
  CHECK(split.U2.dim() == 2);
  CHECK(split.radical_orthogonality_defect < 1e-12);
  CHECK(split.beta_shape_defect < 1e-12);
  CHECK(split.reconstruction_residual < 1e-12);
  CHECK(split.beta1_flatness_defect < 1e-12);

  CHECK(same_subspace(split.kernel1, kernel(split.beta1, tb.domain), 1e-8));
}

TEST_CASE("degenerate split recovers a synthetic radical direction") {
  SyntheticSplit sp(3, 0.7);
  CHECK(flatness_defect(sp.beta, sp.base) < 1e-12);
  DegenerateSplit split = degenerate_decomposition(sp.beta, sp.alpha, sp.w, sp.J,
                                                   sp.domain, sp.base);
  CHECK((split.v - sp.v0).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(split.beta1.max_abs() < 1e-12);
  CHECK(split.kernel1.dim() == 6);
  CHECK(split.U1.dim() == 0);
  CHECK(same_subspace(split.kernel1, kernel(split.beta1, sp.domain), 1e-8));

  // Pair products of values against (w, 0) reproduce -2(x, y).
  std::mt19937_64 rng(29);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd x(6);
  for (int i = 0; i < 6; ++i) x(i) = gauss(rng);
  Eigen::VectorXd val = sp.beta.value(x, x);
  double pairing = inner(sp.base, val.head(4), sp.w);
  CHECK(pairing == doctest::Approx(-2.0 * x.dot(x)));
  CHECK(pairing < 0.0);
}

TEST_CASE("degenerate split rejects malformed inputs") {
  // Zero form: the radical has the wrong shape.
  ComplexStructure J = ComplexStructure::standard(3);
  QuadSpace domain = QuadSpace::euclidean(6);
  QuadSpace base = QuadSpace::lorentzian(4);
  VectorValuedForm zero = VectorValuedForm::zero(6, 4);
  PairedForm beta0 = build_beta(zero, J);
  Eigen::VectorXd w = Eigen::VectorXd::Unit(4, 1);
  CHECK_THROWS_AS(
      degenerate_decomposition(beta0, zero, w, J, domain, base),
      StructureError);

  // Nondegenerate image span: no radical to split along.
  TwoBlock blocks(2, 3);
  CHECK_THROWS_AS(degenerate_decomposition(blocks.beta, blocks.alpha, w,
                                           blocks.J, blocks.domain, blocks.base),
                  StructureError);

  // w light-like but orthogonal to the radical direction: normalization fails
  // before the shape identity is ever consulted.
  SyntheticSplit sp(3, 0.7);
  CHECK_THROWS_WITH_AS(
      degenerate_decomposition(sp.beta, sp.alpha, sp.v0, sp.J, sp.domain,
                               sp.base),
      doctest::Contains("normal"), StructureError);

  // Scaled values break the shape identity while the radical shape survives.
  VectorValuedForm doubled = sp.alpha.scaled(2.0);
  PairedForm beta_doubled = build_beta(doubled, sp.J);
  CHECK_THROWS_WITH_AS(
      degenerate_decomposition(beta_doubled, doubled, sp.w, sp.J, sp.domain,
                               sp.base),
      doctest::Contains("shape"), StructureError);
}

TEST_CASE("umbilical structure of the synthetic split") {
  SyntheticSplit sp(3, 0.7);
  CHECK(product_condition_defect(sp.beta, sp.gamma, sp.base) < 1e-12);
  DegenerateSplit split = degenerate_decomposition(sp.beta, sp.alpha, sp.w, sp.J,
                                                   sp.domain, sp.base);
  std::mt19937_64 rng(31);
  UmbilicalReport report = umbilical_subspace(split, sp.alpha, sp.beta, sp.gamma,
                                              sp.J, sp.domain, sp.base, rng);
  CHECK(report.P.dim() == 6);
  CHECK(report.m == 3);  // equality in m >= n - s + 1
  CHECK(report.v_component_defect < 1e-10);
  CHECK(report.tangential_split_defect < 1e-10);
  CHECK(report.kernel_pairing_defect < 1e-10);
  CHECK(report.pluriharmonic_defect < 1e-10);
  CHECK(report.inequality_residual < 1e-10);
  // The J-odd part of alpha pushes the quartic expression strictly below zero
  // somewhere on P while never letting it cross above zero.
  CHECK(report.max_inequality_value < 1e-12);
  CHECK(report.min_inequality_value < -0.01);

  // Without that part the expression degenerates to zero.
  SyntheticSplit flat_case(3, 0.0);
  DegenerateSplit split0 = degenerate_decomposition(
      flat_case.beta, flat_case.alpha, flat_case.w, flat_case.J,
      flat_case.domain, flat_case.base);
  std::mt19937_64 rng2(37);
  UmbilicalReport report0 = umbilical_subspace(
      split0, flat_case.alpha, flat_case.beta, flat_case.gamma, flat_case.J,
      flat_case.domain, flat_case.base, rng2);
  CHECK(std::abs(report0.max_inequality_value) < 1e-12);
  CHECK(std::abs(report0.min_inequality_value) < 1e-12);
  CHECK(report0.inequality_residual < 1e-12);
}

TEST_CASE("umbilical structure rejects out-of-range splits") {
  // n = 1 leaves no room: s = 1 > n - 1 = 0.
  SyntheticSplit sp1(1, 0.0);
  DegenerateSplit split1 = degenerate_decomposition(
      sp1.beta, sp1.alpha, sp1.w, sp1.J, sp1.domain, sp1.base);
  std::mt19937_64 rng(41);
  CHECK_THROWS_AS(umbilical_subspace(split1, sp1.alpha, sp1.beta, sp1.gamma,
                                     sp1.J, sp1.domain, sp1.base, rng),
                  StructureError);

  // A doctored kernel that is not J-invariant is refused.
  SyntheticSplit sp(3, 0.7);
  DegenerateSplit split = degenerate_decomposition(sp.beta, sp.alpha, sp.w, sp.J,
                                                   sp.domain, sp.base);
  split.kernel1 = Subspace(sp.domain, Eigen::MatrixXd::Identity(6, 6).leftCols(1));
  CHECK_THROWS_AS(umbilical_subspace(split, sp.alpha, sp.beta, sp.gamma, sp.J,
                                     sp.domain, sp.base, rng),
                  StructureError);
}

TEST_CASE("diagonalizing basis report on block forms") {
  TwoBlock blocks(2, 3);
  std::vector<Eigen::VectorXd> X = {Eigen::VectorXd::Unit(4, 0),
                                    Eigen::VectorXd::Unit(4, 2)};
  DiagBasisReport report = verify_diag_basis(blocks.beta, X, blocks.J,
                                             blocks.domain, blocks.base);
  CHECK(report.offdiagonal_defect < 1e-12);
  CHECK(report.orthonormality_defect < 1e-10);
  CHECK(report.span_defect < 1e-10);
  CHECK(report.s == 2);
  REQUIRE(report.diagonal_norms.size() == 2);
  CHECK(report.diagonal_norms[0] == doctest::Approx(1.0));
  CHECK(report.diagonal_norms[1] == doctest::Approx(1.0));

  // A time-like value direction flips the sign of its diagonal pair norm.
  TwoBlock mixed(0, 3);
  DiagBasisReport report_mixed = verify_diag_basis(mixed.beta, X, mixed.J,
                                                   mixed.domain, mixed.base);
  CHECK(report_mixed.diagonal_norms[0] == doctest::Approx(-1.0));
  CHECK(report_mixed.diagonal_norms[1] == doctest::Approx(1.0));
  CHECK(report_mixed.orthonormality_defect < 1e-10);
}

TEST_CASE("diagonalizing basis report in the one-block case") {
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2, 2);
  VectorValuedForm alpha =
      VectorValuedForm::rank_one(id, Eigen::VectorXd::Unit(3, 1));
  ComplexStructure J = ComplexStructure::standard(1);
  PairedForm beta = build_beta(alpha, J);
  std::vector<Eigen::VectorXd> X = {Eigen::VectorXd::Unit(2, 0)};
  DiagBasisReport report = verify_diag_basis(beta, X, J, QuadSpace::euclidean(2),
                                             QuadSpace::lorentzian(3));
  CHECK(report.offdiagonal_defect == doctest::Approx(0.0));
  CHECK(report.orthonormality_defect < 1e-10);
  CHECK(report.s == 1);
}

TEST_CASE("diagonalizing basis flags block-mixing bases") {
  TwoBlock blocks(2, 3);
  const double r = std::sqrt(0.5);
  Eigen::VectorXd x1(4), x2(4);
  x1 << r, 0.0, r, 0.0;
  x2 << r, 0.0, -r, 0.0;
  DiagBasisReport report = verify_diag_basis(blocks.beta, {x1, x2}, blocks.J,
                                             blocks.domain, blocks.base);
  CHECK(report.offdiagonal_defect > 0.01);
}

TEST_CASE("diagonalizing basis rejects bad inputs") {
  TwoBlock blocks(2, 3);
  // Not orthogonal.
  const double r = std::sqrt(0.5);
  Eigen::VectorXd skew(4);
  skew << r, 0.0, r, 0.0;
  CHECK_THROWS_AS(verify_diag_basis(blocks.beta,
                                    {Eigen::VectorXd::Unit(4, 0), skew},
                                    blocks.J, blocks.domain, blocks.base),
                  std::invalid_argument);

  // Light-like values make the diagonal pair norms vanish.
  FlatTestbed tb(2);
  std::vector<Eigen::VectorXd> X = {Eigen::VectorXd::Unit(4, 0),
                                    Eigen::VectorXd::Unit(4, 2)};
  CHECK_THROWS_AS(verify_diag_basis(tb.beta, X, tb.J, tb.domain, tb.base),
                  std::invalid_argument);
}

TEST_CASE("shape identity defect distinguishes the paired vector") {
  FlatTestbed tb(3);
  CHECK(shape_identity_defect(tb.alpha, tb.F0, tb.domain, tb.base) < 1e-14);
  // Against w0 the pairing vanishes identically, leaving |(x, y)| itself.
  CHECK(shape_identity_defect(tb.alpha, tb.w0, tb.domain, tb.base) ==
        doctest::Approx(1.0));
}
