#include "kcone/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>

#include "kcone/errors.hpp"
#include "kcone/surfaces.hpp"

namespace kcone {

namespace {

// Contract thresholds for the lift-dependent and finite-difference checks.
constexpr double kLiftNullTol = 1e-12;
constexpr double kConformalityTol = 1e-6;
constexpr double kOracleTol = 1e-6;
constexpr double kOrthonormalityTol = 1e-6;

Eigen::MatrixXd random_symmetric(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd a(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) a(r, c) = gauss(rng);
  return 0.5 * (a + a.transpose());
}

Eigen::VectorXd random_direction(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd x(dim);
  for (int i = 0; i < dim; ++i) x(i) = gauss(rng);
  return x;
}

// Pullback of the flat metric through f = psi^{-1} of the lift by central
// differences, against lambda^2 times the analytic product metric.
double conformality_defect_at(const ProductImmersion& imm,
                              const LightConeFrame& frame,
                              const Eigen::VectorXd& params, double lambda,
                              const TolerancePolicy& tol) {
  int dim = static_cast<int>(params.size());
  double h = tol.fd_step;
  Eigen::MatrixXd df(frame.map_dim(), dim);
  for (int i = 0; i < dim; ++i) {
    Eigen::VectorXd up = params;
    Eigen::VectorXd down = params;
    up(i) += h;
    down(i) -= h;
    Eigen::VectorXd f_up = psi_inverse(frame, immersion_value(imm, up), tol);
    Eigen::VectorXd f_down =
        psi_inverse(frame, immersion_value(imm, down), tol);
    df.col(i) = (f_up - f_down) / (2.0 * h);
  }
  ImmersionJet jet = immersion_jet(imm, params);
  Eigen::MatrixXd product_metric =
      jet.first.transpose() * imm.ambient.gram() * jet.first;
  Eigen::MatrixXd pulled = df.transpose() * df;
  return (pulled - lambda * lambda * product_metric).cwiseAbs().maxCoeff();
}

double factor_quartic_sum(const Eigen::VectorXd& s, int factors) {
  double sum = 0.0;
  for (int j = 0; j < factors; ++j) {
    double q = s.segment(2 * j, 2).squaredNorm();
    sum += q * q;
  }
  return sum;
}

}  // namespace

void ExampleConfig::validate() const {
  if (n < 4) throw std::invalid_argument("the example needs n >= 4 factors");
  if (!(c < 0.0))
    throw std::invalid_argument("the leading curvature c must be negative");
  if (static_cast<int>(c_list.size()) != n - 1)
    throw std::invalid_argument(
        "the example needs n - 1 spherical curvatures");
  double sum = 0.0;
  for (double cj : c_list) {
    if (!(cj > 0.0))
      throw std::invalid_argument(
          "every spherical curvature must be positive");
    sum += 1.0 / cj;
  }
  if (std::abs(sum + 1.0 / c) > 1e-12)
    throw std::invalid_argument(
        "the curvatures must satisfy 1/c_2 + ... + 1/c_n = -1/c");
}

ExampleConfig default_example_config(int n) {
  ExampleConfig config;
  config.n = n;
  config.c = -1.0;
  config.c_list.assign(std::max(n - 1, 0), static_cast<double>(n - 1));
  return config;
}

std::vector<Eigen::VectorXd> example_grid(const ProductImmersion& imm) {
  int n = imm.factor_count();
  std::vector<Eigen::VectorXd> grid;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Eigen::VectorXd params(2 * n);
      for (int j = 0; j < n; ++j) {
        double offset = 0.03 * static_cast<double>(j % 8);
        double lo = -0.6 + offset;
        double hi = 0.7 + offset;
        params(2 * j) = lo + 0.5 * static_cast<double>(a) * (hi - lo);
        params(2 * j + 1) = lo + 0.5 * static_cast<double>(b) * (hi - lo);
      }
      grid.push_back(params);
    }
  return grid;
}

ExampleBundle build_example(const ExampleConfig& config,
                            const TolerancePolicy& tol) {
  config.validate();
  std::vector<SurfaceChart> charts;
  charts.push_back(hyperbolic_chart(config.c));
  for (double cj : config.c_list) charts.push_back(sphere_chart(cj));
  ProductImmersion imm = make_product(charts);
  LightConeFrame frame = flip_frame(make_frame(3 * config.n - 2));
  std::vector<Eigen::VectorXd> grid = example_grid(imm);
  std::vector<Eigen::VectorXd> lifts;
  lifts.reserve(grid.size());
  for (const Eigen::VectorXd& params : grid)
    lifts.push_back(immersion_value(imm, params));
  ConformalPair pair = isometric_to_conformal(lifts, frame, tol);
  for (size_t k = 0; k < grid.size(); ++k)
    if (conformality_defect_at(imm, frame, grid[k], pair.lambda[k], tol) >
        kConformalityTol)
      throw StructureError(
          "the projected map is not conformal to the product metric");
  return ExampleBundle{std::move(imm), std::move(frame), std::move(grid),
                       std::move(pair)};
}

std::vector<PointData> build_flat_testbed(int n, int p) {
  if (n < 1) throw std::invalid_argument("the flat slice needs n >= 1");
  if (p < 1)
    throw std::invalid_argument("the flat slice needs codimension p >= 1");
  int map_dim = 2 * n + p;
  LightConeFrame frame = make_frame(map_dim);
  const Eigen::MatrixXd& gram = frame.ambient.gram();

  std::vector<PointData> family;
  for (int t = 0; t < 5; ++t) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(map_dim);
    for (int i = 0; i < 2 * n; ++i)
      x(i) = 0.125 * static_cast<double>((3 * i + 2 * t + 1) % 9 - 4);

    Eigen::VectorXd position = psi(frame, x);
    Eigen::MatrixXd jacobian = psi_jacobian(frame, x);
    Eigen::MatrixXd tangent = jacobian.leftCols(2 * n);
    Eigen::MatrixXd normal_frame(frame.ambient.dim(), p + 2);
    normal_frame.leftCols(p) = jacobian.rightCols(p);
    normal_frame.col(p) = position;
    normal_frame.col(p + 1) = frame.w;

    Eigen::MatrixXd metric = tangent.transpose() * gram * tangent;
    Eigen::MatrixXd normal_gram =
        normal_frame.transpose() * gram * normal_frame;
    Eigen::FullPivLU<Eigen::MatrixXd> solver(normal_gram);

    std::vector<Eigen::MatrixXd> comps(
        p + 2, Eigen::MatrixXd::Zero(2 * n, 2 * n));
    for (int a = 0; a < 2 * n; ++a) {
      Eigen::VectorXd second = -frame.w;
      Eigen::VectorXd coeffs =
          solver.solve(normal_frame.transpose() * (gram * second));
      for (int k = 0; k < p + 2; ++k) comps[k](a, a) = coeffs(k);
    }

    family.push_back(PointData{x.head(2 * n), position, tangent, metric,
                               normal_frame, frame.ambient,
                               QuadSpace(normal_gram),
                               VectorValuedForm(std::move(comps)),
                               ComplexStructure::standard(n)});
  }
  return family;
}

VerificationReport run_theorem1_pipeline(const PointData& data,
                                         int p_effective, std::uint64_t seed,
                                         const TolerancePolicy& tol) {
  int domain_dim = data.alpha.domain_dim();
  if (domain_dim % 2 != 0)
    throw std::invalid_argument("the tangent space must be even-dimensional");
  int n = domain_dim / 2;
  if (p_effective < 1 || p_effective > n - 3)
    throw std::invalid_argument(
        "the codimension must satisfy 1 <= p <= n - 3");
  if (data.normal_space.dim() != p_effective + 2)
    throw std::invalid_argument(
        "the data's normal space must have dimension p + 2");

  QuadSpace domain(data.metric, tol.rank_tol);
  const QuadSpace& base = data.normal_space;
  const ComplexStructure& J = data.j_action;
  Eigen::VectorXd w_abs = normal_coordinates(data, data.position);

  VerificationReport report;
  report.scenario = "theorem1-pipeline";
  report.seed = seed;
  report.tolerances = tol;
  report.set_config("n", static_cast<std::int64_t>(n));
  report.set_config("p", static_cast<std::int64_t>(p_effective));

  report.add("shape-identity", "<alpha(X,Y), F> = -(X,Y)",
             shape_identity_defect(data.alpha, w_abs, domain, base),
             tol.defect_tol);

  PairedForm beta = build_beta(data.alpha, J);
  PairedForm gamma = build_gamma(data.alpha, J);
  report.add("pair-symmetries",
             "beta(X,JY) = (eta, -xi) and beta(Y,X) = (xi, -eta)",
             beta_symmetry_defect(beta, J), tol.defect_tol);
  report.add("pair-flatness",
             "<<beta(X,Y), beta(Z,T)>> = <<beta(X,T), beta(Z,Y)>>",
             flatness_defect(beta, base), tol.defect_tol);
  report.add("product-identity",
             "<<beta(X,Y), gamma(Z,T)>> = <<beta(X,T), gamma(Z,Y)>>",
             product_condition_defect(beta, gamma, base), tol.defect_tol);
  Subspace ker = kernel(beta, domain, tol);
  report.add("pair-kernel-trivial", "N(beta) = 0",
             static_cast<double>(ker.dim()), 0.0);

  Subspace image = image_span(beta, base, tol);
  bool degenerate = image.dim() > 0 && is_degenerate(image, tol.rank_tol);
  report.set_config("branch",
                    std::string(degenerate ? "degenerate" : "nondegenerate"));
  if (!degenerate) {
    KernelBoundCheck bound =
        check_surjective_kernel_bound(beta, p_effective + 2, domain, tol);
    report.add("kernel-dimension-bound", "dim N(beta) >= 2n - 2(p + 2) > 0",
               static_cast<double>(bound.lower_bound - bound.dim_kernel), 0.0);
    return report;
  }

  DegenerateSplit split =
      degenerate_decomposition(beta, data.alpha, w_abs, J, domain, base, tol);
  report.set_config("s", static_cast<std::int64_t>(split.s));
  report.set_config("split_kernel_dim",
                    static_cast<std::int64_t>(split.kernel1.dim()));
  report.add("split-residual", "beta(X,Y) = beta1(X,Y) + 2((X,Y) v, (X,JY) v)",
             split.reconstruction_residual, tol.defect_tol);
  report.add("split-shape-pairing", "<<beta(X,Y), (w,0)>> = -2 (X,Y)",
             split.beta_shape_defect, tol.defect_tol);
  report.add("split-radical-orthogonality",
             "<<beta(X,Y), (v,0)>> = 0 = <<beta(X,Y), (0,v)>>",
             split.radical_orthogonality_defect, tol.defect_tol);
  report.add("reduced-flatness", "beta1 is flat", split.beta1_flatness_defect,
             tol.defect_tol);
  int kernel_bound = 2 * n - 2 * split.s + 2;
  report.add("reduced-kernel-bound", "dim N(beta1) >= 2n - 2s + 2",
             std::max(0.0, static_cast<double>(kernel_bound -
                                               split.kernel1.dim())),
             0.0);

  std::mt19937_64 rng(seed);
  UmbilicalReport umbilical = umbilical_subspace(
      split, data.alpha, beta, gamma, J, domain, base, rng, 200, tol);
  report.set_config("m", static_cast<std::int64_t>(umbilical.m));
  report.set_config("m_lower_bound",
                    static_cast<std::int64_t>(n - p_effective));
  report.add("umbilical-dimension-bound", "m >= n - p",
             std::max(0.0, static_cast<double>(n - p_effective - umbilical.m)),
             0.0);
  report.add("umbilical-normal-component", "<alpha(X, S), v> = 0",
             umbilical.v_component_defect, tol.defect_tol);
  report.add("umbilical-tangential-split",
             "alpha(X,S) = alpha_{L-perp}(X,S) + (X,S) v",
             umbilical.tangential_split_defect, tol.defect_tol);
  report.add("umbilical-kernel-pairing", "alpha(X, S) has no U1 component",
             umbilical.kernel_pairing_defect, tol.defect_tol);
  report.add("pluriharmonic-residual",
             "alpha(S,T) + alpha(JS,JT) has no U2 component",
             umbilical.pluriharmonic_defect, tol.defect_tol);
  report.add("umbilical-inequality",
             "<alpha(S,S), alpha(JS,JS)> - |alpha(S,JS)|^2 <= 0",
             std::max(0.0, umbilical.max_inequality_value), tol.defect_tol);
  report.add("umbilical-inequality-residual",
             "quartic value equals -|a2(S,S)|^2 - |a2(S,JS)|^2",
             umbilical.inequality_residual, tol.defect_tol);

  double max_curvature = 0.0;
  for (int sample = 0; sample < 200; ++sample) {
    Eigen::VectorXd s =
        umbilical.P.basis() * random_direction(umbilical.P.dim(), rng);
    if (s.norm() < 1e-12) continue;
    max_curvature = std::max(max_curvature, sectional_curvature_J(data, s));
  }
  report.add("curvature-nonpositive", "K(S,JS) <= 0 on P", max_curvature,
             tol.defect_tol);
  return report;
}

VerificationReport theorem3_checks_on(const ProductImmersion& imm,
                                      const std::vector<Eigen::VectorXd>& grid,
                                      std::uint64_t seed,
                                      const TolerancePolicy& tol) {
  int n = imm.factor_count();
  if (grid.empty()) throw std::invalid_argument("the grid must be nonempty");
  LightConeFrame frame = flip_frame(make_frame(3 * n - 2));
  std::mt19937_64 rng(seed);

  VerificationReport report;
  report.scenario = "verify-example";
  report.seed = seed;
  report.tolerances = tol;
  report.set_config("n", static_cast<std::int64_t>(n));
  report.set_config("p", static_cast<std::int64_t>(n - 2));
  report.set_config("c", imm.factors[0].curvature);
  std::vector<double> c_list;
  for (int j = 1; j < n; ++j) c_list.push_back(imm.factors[j].curvature);
  report.set_config("c_list", c_list);
  double min_sphere_curvature =
      *std::min_element(c_list.begin(), c_list.end());

  double lift_null = 0.0;
  double lambda_defect = 0.0;
  double conformality = 0.0;
  double sector_defect = 0.0;
  double oracle_defect = 0.0;
  double image_dim_defect = 0.0;
  double degenerate_count = 0.0;
  double diag_offdiagonal = 0.0;
  double diag_orthonormality = 0.0;
  double frame_orthonormal = 0.0;
  double rank_defect = 0.0;
  double block_defect = 0.0;
  std::vector<PointData> points;

  for (const Eigen::VectorXd& params : grid) {
    Eigen::VectorXd lift = immersion_value(imm, params);
    lift_null = std::max(lift_null, std::abs(imm.ambient.norm2(lift)));
    double pairing = frame.ambient.inner(lift, frame.w);
    if (!(pairing > 1e-15)) {
      lambda_defect = std::max(lambda_defect, 1.0 + std::abs(pairing));
      continue;
    }
    double lambda = 1.0 / pairing;
    conformality = std::max(
        conformality, conformality_defect_at(imm, frame, params, lambda, tol));

    PointData data = second_fundamental_form(imm, params, tol);
    QuadSpace domain(data.metric, tol.rank_tol);
    PairedForm beta = build_beta(data.alpha, data.j_action);

    Subspace image = image_span(beta, data.normal_space, tol);
    image_dim_defect =
        std::max(image_dim_defect, std::abs(image.dim() - 2.0 * n));
    if (image.dim() > 0 && is_degenerate(image, tol.rank_tol))
      degenerate_count += 1.0;

    std::vector<Eigen::VectorXd> factor_basis;
    for (int j = 0; j < n; ++j)
      factor_basis.push_back(Eigen::VectorXd::Unit(2 * n, 2 * j));
    DiagBasisReport diag = verify_diag_basis(beta, factor_basis,
                                             data.j_action, domain,
                                             data.normal_space, tol);
    diag_offdiagonal = std::max(diag_offdiagonal, diag.offdiagonal_defect);
    diag_orthonormality =
        std::max({diag_orthonormality, diag.orthonormality_defect,
                  diag.span_defect});

    PairedSpace paired = PairedSpace::from_base(data.normal_space);
    std::vector<Eigen::VectorXd> frame_vectors;
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd value =
          beta.value(factor_basis[j], factor_basis[j]);
      double pair_norm = paired.pairing(value, value);
      if (std::abs(pair_norm) < tol.defect_tol) {
        frame_orthonormal = std::max(frame_orthonormal, 1.0);
        continue;
      }
      Eigen::VectorXd rescaled = value / std::sqrt(std::abs(pair_norm));
      frame_orthonormal =
          std::max(frame_orthonormal,
                   rescaled.tail(data.normal_space.dim()).cwiseAbs().maxCoeff());
      Eigen::VectorXd xi = rescaled.head(data.normal_space.dim());
      frame_vectors.push_back(xi);
      int rank = shape_operator_rank(data, xi, tol.rank_tol);
      rank_defect = std::max(rank_defect, std::abs(rank - 2.0));
    }
    for (size_t a = 0; a < frame_vectors.size(); ++a)
      for (size_t b = 0; b <= a; ++b) {
        double inner =
            data.normal_space.inner(frame_vectors[a], frame_vectors[b]);
        double expected = a == b ? 1.0 : 0.0;
        frame_orthonormal =
            std::max(frame_orthonormal, std::abs(std::abs(inner) - expected));
      }

    for (int k = 0; k < data.alpha.target_dim(); ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j)
            block_defect = std::max(
                block_defect, data.alpha.comps()[k]
                                  .block(2 * i, 2 * j, 2, 2)
                                  .cwiseAbs()
                                  .maxCoeff());

    for (int sample = 0; sample < 200; ++sample) {
      Eigen::VectorXd sector = Eigen::VectorXd::Zero(2 * n);
      sector.tail(2 * n - 2) = random_direction(2 * n - 2, rng);
      Eigen::VectorXd full = random_direction(2 * n, rng);
      if (sector.norm() < 1e-12 || full.norm() < 1e-12) continue;
      double sector_quartic = factor_quartic_sum(sector, n);
      double required = min_sphere_curvature * sector_quartic /
                        std::pow(sector.squaredNorm(), 2);
      sector_defect =
          std::max(sector_defect,
                   required - sectional_curvature_J(data, sector));
      double oracle = 0.0;
      double full_norm2 = full.squaredNorm();
      for (int j = 0; j < n; ++j) {
        double q = full.segment(2 * j, 2).squaredNorm();
        oracle += imm.factors[j].curvature * q * q;
      }
      oracle /= full_norm2 * full_norm2;
      oracle_defect = std::max(
          oracle_defect, std::abs(sectional_curvature_J(data, full) - oracle));
    }

    points.push_back(std::move(data));
  }

  report.add("lift-null", "<F, F> = 0", lift_null, kLiftNullTol);
  report.add("conformal-factor-positive", "lambda = 1 / <F, w> > 0",
             lambda_defect, 0.0);
  report.add("conformality", "f* <,> = lambda^2 <,>_M", conformality,
             kConformalityTol);
  report.add("sphere-sector-curvature",
             "K(S,JS) >= min c_j |S_j|^4 / |S|^4 > 0 on the sphere sector",
             std::max(0.0, sector_defect), tol.defect_tol);
  report.add("curvature-product-oracle",
             "K(S,JS) = sum_j c_j |S_j|^4 / |S|^4", oracle_defect, kOracleTol);
  report.add("pair-image-dimension", "dim S(beta) = 2n", image_dim_defect,
             0.0);
  report.add("pair-image-nondegenerate",
             "the pair metric restricted to S(beta) is nondegenerate",
             degenerate_count, 0.0);
  report.add("diag-basis-offdiagonal", "beta(X_i, X_j) = 0 for i != j",
             diag_offdiagonal, tol.defect_tol);
  report.add("diag-basis-orthonormality",
             "rescaled diagonal values are a pair-orthonormal basis of S(beta)",
             diag_orthonormality, kOrthonormalityTol);
  report.add("frame-vectors-orthonormal",
             "(xi_j, 0) = beta(X_j, X_j) with <xi_i, xi_j> = +-delta_ij",
             frame_orthonormal, tol.defect_tol);
  report.add("normal-bundle-flat",
             "[A_xi, A_eta] = 0 for all normal directions",
             normal_curvature_defect(points), tol.defect_tol);
  report.add("shape-operator-rank", "rank A_{xi_j} = 2", rank_defect, 0.0);
  report.add("second-form-block", "alpha(X_i, Y_j) = 0 across distinct factors",
             block_defect, tol.defect_tol);
  report.add("radius-identity", "-r_1^2 + sum_j r_j^2 = 0",
             std::abs(radius_identity(imm)), tol.defect_tol);
  return report;
}

VerificationReport run_theorem3_checks(const ExampleConfig& config,
                                       std::uint64_t seed,
                                       const TolerancePolicy& tol) {
  ExampleBundle bundle = build_example(config, tol);
  return theorem3_checks_on(bundle.immersion, bundle.grid, seed, tol);
}

VectorValuedForm random_shape_identity_alpha(int n, int p, std::mt19937_64& rng) {
  if (n < 1) throw std::invalid_argument("the domain needs n >= 1");
  if (p < 0) throw std::invalid_argument("the target needs p >= 0");
  int dim = 2 * n;
  std::vector<Eigen::MatrixXd> comps;
  comps.reserve(p + 2);
  Eigen::MatrixXd head = random_symmetric(dim, rng);
  // A dyadic diagonal keeps the pinned pairing exact in floating point.
  for (int i = 0; i < dim; ++i)
    head(i, i) = std::nearbyint(head(i, i) * 32.0) / 32.0;
  comps.push_back(head);
  comps.push_back(head - Eigen::MatrixXd::Identity(dim, dim));
  for (int k = 0; k < p; ++k) comps.push_back(random_symmetric(dim, rng));
  return VectorValuedForm(std::move(comps));
}

RankOneBoundForm random_rank_one_bound_form(int n, int p,
                                            std::mt19937_64& rng) {
  if (n < 1) throw std::invalid_argument("the domain needs n >= 1");
  if (p < 0) throw std::invalid_argument("the target needs p >= 0");
  QuadSpace base = QuadSpace::lorentzian(p + 2);
  Eigen::MatrixXd q = random_isometry(base, rng);
  Eigen::VectorXd w0 = q.col(0) + q.col(1);
  Eigen::VectorXd w_dual = 0.5 * (q.col(1) - q.col(0));
  VectorValuedForm alpha = VectorValuedForm::rank_one(
      -Eigen::MatrixXd::Identity(2 * n, 2 * n), w0);
  return RankOneBoundForm{std::move(alpha), std::move(w0), std::move(w_dual)};
}

}  // namespace kcone
