#include "kcone/immersions.hpp"

#include <cmath>
#include <stdexcept>

namespace kcone {

namespace {

void require_params(const ProductImmersion& imm, const Eigen::VectorXd& params) {
  if (params.size() != imm.param_dim())
    throw std::invalid_argument(
        "parameter count does not match the product factors");
}

}  // namespace

ProductImmersion make_product(const std::vector<SurfaceChart>& factors) {
  if (factors.empty())
    throw std::invalid_argument("a product immersion needs factors");
  if (factors.front().kind != SurfaceKind::hyperbolic)
    throw std::invalid_argument("the leading factor must be hyperbolic");
  for (std::size_t j = 1; j < factors.size(); ++j)
    if (factors[j].kind != SurfaceKind::sphere)
      throw std::invalid_argument("every trailing factor must be a sphere");
  int n = static_cast<int>(factors.size());
  return ProductImmersion{factors, QuadSpace::lorentzian(3 * n)};
}

double radius_identity(const ProductImmersion& imm) {
  double total = 0.0;
  for (int j = 0; j < imm.factor_count(); ++j) {
    double square = imm.factors[j].radius * imm.factors[j].radius;
    total += (j == 0) ? -square : square;
  }
  return total;
}

Eigen::VectorXd immersion_value(const ProductImmersion& imm,
                                const Eigen::VectorXd& params) {
  require_params(imm, params);
  Eigen::VectorXd value(imm.ambient.dim());
  for (int j = 0; j < imm.factor_count(); ++j) {
    ChartJet jet = chart_jet(imm.factors[j], params(2 * j), params(2 * j + 1));
    value.segment<3>(3 * j) = jet.value;
  }
  return value;
}

ImmersionJet immersion_jet(const ProductImmersion& imm,
                           const Eigen::VectorXd& params) {
  require_params(imm, params);
  int dim = imm.ambient.dim();
  int d = imm.param_dim();
  ImmersionJet jet;
  jet.value = Eigen::VectorXd::Zero(dim);
  jet.first = Eigen::MatrixXd::Zero(dim, d);
  jet.second.assign(d, std::vector<Eigen::VectorXd>(
                           d, Eigen::VectorXd::Zero(dim)));
  for (int j = 0; j < imm.factor_count(); ++j) {
    ChartJet local = chart_jet(imm.factors[j], params(2 * j), params(2 * j + 1));
    int row = 3 * j;
    int u = 2 * j;
    int v = 2 * j + 1;
    jet.value.segment<3>(row) = local.value;
    jet.first.col(u).segment<3>(row) = local.du;
    jet.first.col(v).segment<3>(row) = local.dv;
    jet.second[u][u].segment<3>(row) = local.duu;
    jet.second[u][v].segment<3>(row) = local.duv;
    jet.second[v][u].segment<3>(row) = local.duv;
    jet.second[v][v].segment<3>(row) = local.dvv;
  }
  return jet;
}

PointData second_fundamental_form(const ProductImmersion& imm,
                                  const Eigen::VectorXd& params,
                                  const TolerancePolicy& tol) {
  tol.validate();
  require_params(imm, params);
  int n = imm.factor_count();
  int dim = imm.ambient.dim();
  int d = imm.param_dim();
  const Eigen::MatrixXd& gram = imm.ambient.gram();

  ImmersionJet jet = immersion_jet(imm, params);

  // Per-factor Gram-Schmidt of the coordinate tangents; change records the
  // frame vectors in coordinate components, one triangular block per factor.
  Eigen::MatrixXd tangent = Eigen::MatrixXd::Zero(dim, d);
  Eigen::MatrixXd change = Eigen::MatrixXd::Zero(d, d);
  for (int j = 0; j < n; ++j) {
    int u = 2 * j;
    int v = 2 * j + 1;
    Eigen::VectorXd du = jet.first.col(u);
    Eigen::VectorXd dv = jet.first.col(v);
    double du_norm = std::sqrt(imm.ambient.norm2(du));
    Eigen::VectorXd t1 = du / du_norm;
    double skew = imm.ambient.inner(dv, t1);
    Eigen::VectorXd residual = dv - skew * t1;
    double residual_norm = std::sqrt(imm.ambient.norm2(residual));
    Eigen::VectorXd t2 = residual / residual_norm;
    tangent.col(u) = t1;
    tangent.col(v) = t2;
    change(u, u) = 1.0 / du_norm;
    change(u, v) = -skew / (du_norm * residual_norm);
    change(v, v) = 1.0 / residual_norm;
  }

  Eigen::MatrixXd normal_frame = Eigen::MatrixXd::Zero(dim, n);
  for (int j = 0; j < n; ++j)
    normal_frame.col(j).segment<3>(3 * j) =
        jet.value.segment<3>(3 * j) / imm.factors[j].radius;

  Eigen::MatrixXd normal_gram =
      normal_frame.transpose() * gram * normal_frame;
  normal_gram = 0.5 * (normal_gram + normal_gram.transpose());
  if (numerical_rank(normal_gram, tol.rank_tol) != n)
    throw StructureError("the normal frame gram matrix is degenerate");
  Eigen::FullPivLU<Eigen::MatrixXd> normal_solver(normal_gram);

  // Normal coefficients of the coordinate second derivatives; tangential
  // parts drop out because tangents and normals are mutually orthogonal.
  std::vector<Eigen::MatrixXd> comps(n, Eigen::MatrixXd::Zero(d, d));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const Eigen::VectorXd& second = jet.second[a][b];
      if (second.isZero(0.0)) continue;
      Eigen::VectorXd coeff =
          normal_solver.solve(normal_frame.transpose() * gram * second);
      for (int k = 0; k < n; ++k) comps[k](a, b) = coeff(k);
    }
  for (int k = 0; k < n; ++k)
    comps[k] = change.transpose() * comps[k] * change;

  Eigen::MatrixXd metric = tangent.transpose() * gram * tangent;
  metric = 0.5 * (metric + metric.transpose());

  return PointData{params,
                   jet.value,
                   tangent,
                   metric,
                   normal_frame,
                   imm.ambient,
                   QuadSpace(normal_gram, tol.rank_tol),
                   VectorValuedForm(comps),
                   ComplexStructure::standard(n)};
}

Eigen::VectorXd normal_coordinates(const PointData& data,
                                   const Eigen::VectorXd& y) {
  if (y.size() != data.normal_frame.rows())
    throw std::invalid_argument("normal coordinates need an ambient vector");
  Eigen::VectorXd paired =
      data.normal_frame.transpose() * (data.ambient.gram() * y);
  return Eigen::FullPivLU<Eigen::MatrixXd>(data.normal_space.gram())
      .solve(paired);
}

double sectional_curvature_J(const PointData& data,
                             const Eigen::VectorXd& s) {
  if (s.size() != data.metric.rows())
    throw std::invalid_argument("direction dimension does not match the frame");
  if (s.cwiseAbs().maxCoeff() == 0.0)
    throw std::invalid_argument("sectional curvature needs a nonzero direction");
  Eigen::VectorXd js = data.j_action.apply(s);
  Eigen::VectorXd ss = data.alpha.value(s, s);
  Eigen::VectorXd jsjs = data.alpha.value(js, js);
  Eigen::VectorXd sjs = data.alpha.value(s, js);
  double numerator = data.normal_space.inner(ss, jsjs) -
                     data.normal_space.inner(sjs, sjs);
  double norm2 = s.dot(data.metric * s);
  return numerator / (norm2 * norm2);
}

Eigen::MatrixXd shape_operator(const PointData& data,
                               const Eigen::VectorXd& xi) {
  if (xi.size() != data.normal_space.dim())
    throw std::invalid_argument("normal coordinates have the wrong dimension");
  Eigen::VectorXd weights = data.normal_space.gram() * xi;
  int d = static_cast<int>(data.metric.rows());
  Eigen::MatrixXd bilinear = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k < data.alpha.target_dim(); ++k)
    bilinear += weights(k) * data.alpha.comps()[k];
  return Eigen::FullPivLU<Eigen::MatrixXd>(data.metric).solve(bilinear);
}

int shape_operator_rank(const PointData& data, const Eigen::VectorXd& xi,
                        double rank_tol) {
  return numerical_rank(shape_operator(data, xi), rank_tol);
}

double normal_curvature_defect(const std::vector<PointData>& grid) {
  double defect = 0.0;
  for (const PointData& data : grid) {
    int n = data.normal_space.dim();
    std::vector<Eigen::MatrixXd> operators;
    operators.reserve(n);
    for (int k = 0; k < n; ++k)
      operators.push_back(shape_operator(data, Eigen::VectorXd::Unit(n, k)));
    for (int k = 0; k < n; ++k)
      for (int l = k + 1; l < n; ++l) {
        Eigen::MatrixXd commutator =
            operators[k] * operators[l] - operators[l] * operators[k];
        defect = std::max(defect, commutator.cwiseAbs().maxCoeff());
      }
  }
  return defect;
}

}  // namespace kcone
