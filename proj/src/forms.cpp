#include "kcone/forms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace kcone {

namespace {

Eigen::MatrixXd pair_gram(const QuadSpace& base) {
  const int q = base.dim();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * q, 2 * q);
  g.topLeftCorner(q, q) = base.gram();
  g.bottomRightCorner(q, q) = -base.gram();
  return g;
}

std::vector<std::vector<Eigen::VectorXd>> basis_values(const PairedForm& form) {
  const int d = form.domain_dim();
  std::vector<std::vector<Eigen::VectorXd>> vals(d);
  for (int i = 0; i < d; ++i) {
    vals[i].reserve(d);
    Eigen::MatrixXd op = form.operator_at(Eigen::VectorXd::Unit(d, i));
    for (int j = 0; j < d; ++j) vals[i].push_back(op.col(j));
  }
  return vals;
}

double least_squares_distance(const Eigen::MatrixXd& basis,
                              const Eigen::VectorXd& x) {
  const double scale = std::max(1.0, x.norm());
  if (basis.cols() == 0) return x.norm() / scale;
  Eigen::VectorXd sol = basis.colPivHouseholderQr().solve(x);
  return (x - basis * sol).norm() / scale;
}

}  // namespace

VectorValuedForm::VectorValuedForm(std::vector<Eigen::MatrixXd> comps)
    : comps_(std::move(comps)) {
  if (comps_.empty())
    throw std::invalid_argument("a vector-valued form needs target coordinates");
  domain_dim_ = static_cast<int>(comps_[0].rows());
  for (const auto& m : comps_)
    if (m.rows() != domain_dim_ || m.cols() != domain_dim_)
      throw std::invalid_argument("coefficient matrices must be square and equal");
}

VectorValuedForm VectorValuedForm::zero(int domain_dim, int target_dim) {
  std::vector<Eigen::MatrixXd> comps(
      target_dim, Eigen::MatrixXd::Zero(domain_dim, domain_dim));
  return VectorValuedForm(std::move(comps));
}

VectorValuedForm VectorValuedForm::rank_one(const Eigen::MatrixXd& coeff,
                                            const Eigen::VectorXd& target_vec) {
  std::vector<Eigen::MatrixXd> comps;
  comps.reserve(target_vec.size());
  for (Eigen::Index k = 0; k < target_vec.size(); ++k)
    comps.push_back(target_vec(k) * coeff);
  return VectorValuedForm(std::move(comps));
}

Eigen::VectorXd VectorValuedForm::value(const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& y) const {
  Eigen::VectorXd out(target_dim());
  for (int k = 0; k < target_dim(); ++k) out(k) = x.dot(comps_[k] * y);
  return out;
}

Eigen::MatrixXd VectorValuedForm::operator_at(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd out(target_dim(), domain_dim_);
  for (int k = 0; k < target_dim(); ++k)
    out.row(k) = (comps_[k].transpose() * x).transpose();
  return out;
}

VectorValuedForm VectorValuedForm::operator+(const VectorValuedForm& other) const {
  if (other.domain_dim() != domain_dim_ || other.target_dim() != target_dim())
    throw std::invalid_argument("form dimensions do not match");
  std::vector<Eigen::MatrixXd> comps;
  comps.reserve(comps_.size());
  for (int k = 0; k < target_dim(); ++k)
    comps.push_back(comps_[k] + other.comps_[k]);
  return VectorValuedForm(std::move(comps));
}

VectorValuedForm VectorValuedForm::scaled(double c) const {
  std::vector<Eigen::MatrixXd> comps;
  comps.reserve(comps_.size());
  for (const auto& m : comps_) comps.push_back(c * m);
  return VectorValuedForm(std::move(comps));
}

VectorValuedForm VectorValuedForm::target_mapped(const Eigen::MatrixXd& map) const {
  if (map.cols() != target_dim())
    throw std::invalid_argument("target map does not match the target dimension");
  std::vector<Eigen::MatrixXd> comps(
      map.rows(), Eigen::MatrixXd::Zero(domain_dim_, domain_dim_));
  for (Eigen::Index k = 0; k < map.rows(); ++k)
    for (int m = 0; m < target_dim(); ++m)
      if (map(k, m) != 0.0) comps[k] += map(k, m) * comps_[m];
  return VectorValuedForm(std::move(comps));
}

double VectorValuedForm::symmetry_defect() const {
  double defect = 0.0;
  for (const auto& m : comps_)
    defect = std::max(defect, (m - m.transpose()).cwiseAbs().maxCoeff());
  return defect;
}

double VectorValuedForm::max_abs() const {
  double top = 0.0;
  for (const auto& m : comps_) top = std::max(top, m.cwiseAbs().maxCoeff());
  return top;
}

PairedForm::PairedForm(VectorValuedForm first, VectorValuedForm second)
    : first_(std::move(first)), second_(std::move(second)) {
  if (first_.domain_dim() != second_.domain_dim() ||
      first_.target_dim() != second_.target_dim())
    throw std::invalid_argument("paired components must share dimensions");
}

Eigen::VectorXd PairedForm::value(const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& y) const {
  Eigen::VectorXd out(2 * base_dim());
  out << first_.value(x, y), second_.value(x, y);
  return out;
}

Eigen::MatrixXd PairedForm::operator_at(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd out(2 * base_dim(), domain_dim());
  out << first_.operator_at(x), second_.operator_at(x);
  return out;
}

Eigen::MatrixXd PairedForm::value_matrix() const {
  const int d = domain_dim();
  Eigen::MatrixXd out(2 * base_dim(), d * d);
  for (int i = 0; i < d; ++i) {
    Eigen::MatrixXd op = operator_at(Eigen::VectorXd::Unit(d, i));
    out.middleCols(i * d, d) = op;
  }
  return out;
}

double PairedForm::max_abs() const {
  return std::max(first_.max_abs(), second_.max_abs());
}

PairedForm PairedForm::target_mapped(const Eigen::MatrixXd& map) const {
  return PairedForm(first_.target_mapped(map), second_.target_mapped(map));
}

PairedForm build_beta(const VectorValuedForm& alpha, const ComplexStructure& J) {
  if (J.dim() != alpha.domain_dim())
    throw std::invalid_argument("complex structure does not fit the domain");
  const Eigen::MatrixXd& Jm = J.matrix();
  std::vector<Eigen::MatrixXd> first, second;
  first.reserve(alpha.target_dim());
  second.reserve(alpha.target_dim());
  for (const auto& a : alpha.comps()) {
    first.push_back(a + Jm.transpose() * a * Jm);
    second.push_back(a * Jm - Jm.transpose() * a);
  }
  return PairedForm(VectorValuedForm(std::move(first)),
                    VectorValuedForm(std::move(second)));
}

PairedForm build_gamma(const VectorValuedForm& alpha, const ComplexStructure& J) {
  if (J.dim() != alpha.domain_dim())
    throw std::invalid_argument("complex structure does not fit the domain");
  const Eigen::MatrixXd& Jm = J.matrix();
  std::vector<Eigen::MatrixXd> first, second;
  first.reserve(alpha.target_dim());
  second.reserve(alpha.target_dim());
  for (const auto& a : alpha.comps()) {
    first.push_back(a);
    second.push_back(a * Jm);
  }
  return PairedForm(VectorValuedForm(std::move(first)),
                    VectorValuedForm(std::move(second)));
}

double beta_symmetry_defect(const PairedForm& beta, const ComplexStructure& J) {
  const Eigen::MatrixXd& Jm = J.matrix();
  double defect = 0.0;
  for (int k = 0; k < beta.base_dim(); ++k) {
    const Eigen::MatrixXd& b1 = beta.first().comps()[k];
    const Eigen::MatrixXd& b2 = beta.second().comps()[k];
    defect = std::max(defect, (b1 - b1.transpose()).cwiseAbs().maxCoeff());
    defect = std::max(defect, (b2 + b2.transpose()).cwiseAbs().maxCoeff());
    defect = std::max(defect, (b1 * Jm - b2).cwiseAbs().maxCoeff());
    defect = std::max(defect, (b2 * Jm + b1).cwiseAbs().maxCoeff());
  }
  return defect;
}

double flatness_defect(const PairedForm& form, const QuadSpace& base) {
  if (form.base_dim() != base.dim())
    throw std::invalid_argument("form values do not live in the given base");
  const int d = form.domain_dim();
  auto vals = basis_values(form);
  Eigen::MatrixXd g2 = pair_gram(base);
  std::vector<std::vector<Eigen::VectorXd>> gvals(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gvals[i].push_back(g2 * vals[i][j]);
  double defect = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double lhs = vals[i][j].dot(gvals[k][l]);
          double rhs = vals[i][l].dot(gvals[k][j]);
          defect = std::max(defect, std::abs(lhs - rhs));
        }
  return defect;
}

double product_condition_defect(const PairedForm& beta, const PairedForm& gamma,
                                const QuadSpace& base) {
  if (beta.domain_dim() != gamma.domain_dim() ||
      beta.base_dim() != gamma.base_dim() || beta.base_dim() != base.dim())
    throw std::invalid_argument("paired forms do not share a common space");
  const int d = beta.domain_dim();
  auto bvals = basis_values(beta);
  auto gvals_raw = basis_values(gamma);
  Eigen::MatrixXd g2 = pair_gram(base);
  std::vector<std::vector<Eigen::VectorXd>> gvals(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gvals[i].push_back(g2 * gvals_raw[i][j]);
  double defect = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double lhs = bvals[i][j].dot(gvals[k][l]);
          double rhs = bvals[i][l].dot(gvals[k][j]);
          defect = std::max(defect, std::abs(lhs - rhs));
        }
  return defect;
}

Subspace image_span(const PairedForm& form, const QuadSpace& base,
                    const TolerancePolicy& tol) {
  PairedSpace paired = PairedSpace::from_base(base);
  return span_of(paired.total, form.value_matrix(), tol.rank_tol);
}

Subspace first_component_span(const PairedForm& form, const QuadSpace& base,
                              const TolerancePolicy& tol) {
  return span_of(base, form.value_matrix().topRows(form.base_dim()),
                 tol.rank_tol);
}

Subspace second_component_span(const PairedForm& form, const QuadSpace& base,
                               const TolerancePolicy& tol) {
  return span_of(base, form.value_matrix().bottomRows(form.base_dim()),
                 tol.rank_tol);
}

Subspace kernel(const PairedForm& form, const QuadSpace& domain,
                const TolerancePolicy& tol) {
  if (domain.dim() != form.domain_dim())
    throw std::invalid_argument("domain space does not match the form");
  const int d = form.domain_dim();
  const int q = form.base_dim();
  // A form whose entries all sit below defect_tol counts as zero; a relative
  // rank cutoff on pure noise would otherwise invent structure.
  if (form.max_abs() <= tol.defect_tol)
    return Subspace(domain, Eigen::MatrixXd::Identity(d, d), tol.rank_tol);
  Eigen::MatrixXd stacked(2 * q * d, d);
  for (int k = 0; k < q; ++k) {
    stacked.middleRows(k * d, d) = form.first().comps()[k];
    stacked.middleRows((q + k) * d, d) = form.second().comps()[k];
  }
  return Subspace(domain, null_space(stacked, tol.rank_tol), tol.rank_tol);
}

RegularElement find_regular_element(const PairedForm& form, std::mt19937_64& rng,
                                    int samples, const TolerancePolicy& tol) {
  const int d = form.domain_dim();
  std::normal_distribution<double> gauss(0.0, 1.0);
  RegularElement best{Eigen::VectorXd::Zero(d), -1};
  for (int trial = 0; trial < samples; ++trial) {
    Eigen::VectorXd x(d);
    for (int i = 0; i < d; ++i) x(i) = gauss(rng);
    if (x.norm() == 0.0) continue;
    x.normalize();
    int rank = numerical_rank(form.operator_at(x), tol.rank_tol);
    if (rank > best.rank) best = RegularElement{x, rank};
  }
  return best;
}

double moore_inclusion_defect(const PairedForm& form, const Eigen::VectorXd& x,
                              const QuadSpace& base, const TolerancePolicy& tol) {
  if (x.size() != form.domain_dim())
    throw std::invalid_argument("element does not live in the domain");
  std::mt19937_64 probe_rng(0x5EED5EEDull);
  int max_rank = find_regular_element(form, probe_rng, 64, tol).rank;
  Eigen::MatrixXd bx = form.operator_at(x);
  if (numerical_rank(bx, tol.rank_tol) < max_rank)
    throw std::invalid_argument("element is not regular for the form");

  PairedSpace paired = PairedSpace::from_base(base);
  Subspace range(paired.total, column_space(bx, tol.rank_tol), tol.rank_tol);
  Subspace perp = orthogonal_complement(range, tol.rank_tol);
  Subspace meet = subspace_intersection(range, perp, tol.rank_tol);

  Eigen::MatrixXd ker = null_space(bx, tol.rank_tol);
  const int d = form.domain_dim();
  double defect = 0.0;
  for (int i = 0; i < d; ++i) {
    Eigen::MatrixXd op = form.operator_at(Eigen::VectorXd::Unit(d, i));
    for (Eigen::Index m = 0; m < ker.cols(); ++m)
      defect = std::max(defect,
                        least_squares_distance(meet.basis(), op * ker.col(m)));
  }
  return defect;
}

FormAnalysis analyze_form(const PairedForm& form, const QuadSpace& base,
                          const QuadSpace& domain, std::mt19937_64& rng,
                          const TolerancePolicy& tol) {
  Subspace image = image_span(form, base, tol);
  int s = first_component_span(form, base, tol).dim();
  Subspace ker = kernel(form, domain, tol);
  RegularElement regular = find_regular_element(form, rng, 64, tol);
  bool degenerate = image.dim() > 0 && is_degenerate(image, tol.rank_tol);
  double flatness = flatness_defect(form, base);
  return FormAnalysis{std::move(image), s,          std::move(ker),
                      std::move(regular), degenerate, flatness};
}

KernelBoundCheck check_surjective_kernel_bound(const PairedForm& form, int p_eff,
                                               const QuadSpace& domain,
                                               const TolerancePolicy& tol) {
  if (p_eff < 0) throw std::invalid_argument("signature size must be nonnegative");
  int dim_kernel = kernel(form, domain, tol).dim();
  int lower_bound = form.domain_dim() - 2 * p_eff;
  return KernelBoundCheck{dim_kernel, lower_bound, dim_kernel >= lower_bound};
}

double shape_identity_defect(const VectorValuedForm& alpha,
                             const Eigen::VectorXd& w, const QuadSpace& domain,
                             const QuadSpace& base) {
  if (w.size() != base.dim() || alpha.target_dim() != base.dim() ||
      alpha.domain_dim() != domain.dim())
    throw std::invalid_argument("shape identity spaces do not match");
  Eigen::VectorXd gw = base.gram() * w;
  Eigen::MatrixXd paired = Eigen::MatrixXd::Zero(domain.dim(), domain.dim());
  for (int k = 0; k < alpha.target_dim(); ++k)
    paired += gw(k) * alpha.comps()[k];
  return (paired + domain.gram()).cwiseAbs().maxCoeff();
}

DegenerateSplit degenerate_decomposition(const PairedForm& beta,
                                         const VectorValuedForm& alpha,
                                         const Eigen::VectorXd& w,
                                         const ComplexStructure& J,
                                         const QuadSpace& domain,
                                         const QuadSpace& base,
                                         const TolerancePolicy& tol) {
  const int q = base.dim();
  const int d = beta.domain_dim();
  const int n = d / 2;
  const double scale = std::max(1.0, beta.max_abs());

  Subspace image = image_span(beta, base, tol);
  Subspace rad = radical(image, tol.rank_tol);
  Eigen::MatrixXd top = rad.basis().topRows(q);
  Eigen::MatrixXd bottom = rad.basis().bottomRows(q);
  Eigen::MatrixXd joined(q, 2 * rad.dim());
  joined << top, bottom;
  if (rad.dim() != 2 || numerical_rank(top, tol.rank_tol) != 1 ||
      numerical_rank(bottom, tol.rank_tol) != 1 ||
      numerical_rank(joined, tol.rank_tol) != 1)
    throw StructureError(
        "radical of the image span is not a doubled light-like line");

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(joined, Eigen::ComputeThinU);
  Eigen::VectorXd direction = svd.matrixU().col(0);
  double pairing = base.inner(direction, w);
  if (std::abs(pairing) <= tol.defect_tol * std::max(1.0, w.norm()))
    throw StructureError("radical direction cannot be normalized against w");
  Eigen::VectorXd v = -direction / pairing;

  double shape_defect = shape_identity_defect(alpha, w, domain, base);
  if (shape_defect > tol.defect_tol * std::max(1.0, alpha.max_abs()))
    throw StructureError("shape identity violated: <alpha(x,y), w> != -(x,y)");

  Eigen::MatrixXd l_basis(q, 2);
  l_basis << v, w;
  Subspace L(base, l_basis, tol.rank_tol);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L.restricted_gram());
  if (!(es.eigenvalues()(0) < 0.0 && es.eigenvalues()(1) > 0.0))
    throw StructureError("span{v, w} does not carry a (1,1) restricted metric");

  Eigen::MatrixXd proj_perp =
      Eigen::MatrixXd::Identity(q, q) - projector(L, tol.rank_tol);
  PairedForm beta1 = beta.target_mapped(proj_perp);
  // Defect-level truncation: a split form living entirely below tolerance is
  // the zero form, and rank decisions downstream must see it that way.
  if (beta1.max_abs() <= tol.defect_tol * scale)
    beta1 = PairedForm(VectorValuedForm::zero(d, q), VectorValuedForm::zero(d, q));

  const int s = image.dim() / 2;
  if (image.dim() % 2 != 0)
    throw StructureError("image span dimension is not even");

  Subspace kernel1 = kernel(beta1, domain, tol);
  Subspace u1 = first_component_span(beta1, base, tol);
  if (u1.dim() != s - 1)
    throw StructureError("split image does not drop by one doubled line");
  Subspace u2 =
      orthogonal_complement(subspace_sum(L, u1, tol.rank_tol), tol.rank_tol);

  auto vals = basis_values(beta);
  double radical_defect = 0.0;
  double shape_pair_defect = 0.0;
  Eigen::VectorXd gv = base.gram() * v;
  Eigen::VectorXd gw = base.gram() * w;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Eigen::VectorXd& val = vals[i][j];
      radical_defect = std::max(radical_defect, std::abs(val.head(q).dot(gv)));
      radical_defect = std::max(radical_defect, std::abs(val.tail(q).dot(gv)));
      shape_pair_defect = std::max(
          shape_pair_defect,
          std::abs(val.head(q).dot(gw) + 2.0 * domain.gram()(i, j)));
    }

  double reconstruction = 0.0;
  const Eigen::MatrixXd& gd = domain.gram();
  Eigen::MatrixXd gdj = gd * J.matrix();
  for (int k = 0; k < q; ++k) {
    Eigen::MatrixXd r1 =
        beta.first().comps()[k] - beta1.first().comps()[k] - 2.0 * v(k) * gd;
    Eigen::MatrixXd r2 =
        beta.second().comps()[k] - beta1.second().comps()[k] - 2.0 * v(k) * gdj;
    reconstruction = std::max(reconstruction, r1.cwiseAbs().maxCoeff());
    reconstruction = std::max(reconstruction, r2.cwiseAbs().maxCoeff());
  }
  if (reconstruction > tol.defect_tol * scale)
    throw StructureError("split reconstruction residual is too large");

  double beta1_flat = flatness_defect(beta1, base);
  if (beta1_flat > 10.0 * tol.defect_tol * std::max(1.0, scale * scale))
    throw StructureError("split form lost flatness");

  if (s <= n && kernel1.dim() < d - 2 * s + 2)
    throw StructureError("split kernel is smaller than the dimension bound");

  return DegenerateSplit{std::move(v),
                         std::move(L),
                         std::move(beta1),
                         std::move(kernel1),
                         std::move(u1),
                         std::move(u2),
                         s,
                         radical_defect,
                         shape_pair_defect,
                         reconstruction,
                         beta1_flat};
}

UmbilicalReport umbilical_subspace(const DegenerateSplit& split,
                                   const VectorValuedForm& alpha,
                                   const PairedForm& beta, const PairedForm& gamma,
                                   const ComplexStructure& J,
                                   const QuadSpace& domain, const QuadSpace& base,
                                   std::mt19937_64& rng, int samples,
                                   const TolerancePolicy& tol) {
  const int d = domain.dim();
  const int n = d / 2;
  const int q = base.dim();
  const double amax = std::max(1.0, alpha.max_abs());

  double product_defect = product_condition_defect(beta, gamma, base);
  if (product_defect >
      tol.defect_tol * std::max(1.0, beta.max_abs() * gamma.max_abs()))
    throw StructureError("product condition violated between the pair forms");
  if (split.s > n - 1)
    throw StructureError("split rank leaves no room for an umbilical subspace");

  const Subspace& P = split.kernel1;
  if (!is_complex_subspace(J, P, tol.rank_tol))
    throw StructureError("kernel of the split form is not J-invariant");
  const int m = P.dim() / 2;
  if (m < n - split.s + 1)
    throw StructureError("umbilical subspace is smaller than the bound");

  Eigen::MatrixXd proj_perp =
      Eigen::MatrixXd::Identity(q, q) - projector(split.L, tol.rank_tol);
  Eigen::MatrixXd proj_u1 = projector(split.U1, tol.rank_tol);
  Eigen::MatrixXd proj_u2 = projector(split.U2, tol.rank_tol);

  double v_defect = 0.0;
  double tangential_defect = 0.0;
  double pairing_defect = 0.0;
  Eigen::VectorXd gv = base.gram() * split.v;
  for (int i = 0; i < d; ++i) {
    Eigen::VectorXd ei = Eigen::VectorXd::Unit(d, i);
    for (int j = 0; j < P.dim(); ++j) {
      Eigen::VectorXd pj = P.basis().col(j);
      Eigen::VectorXd a = alpha.value(ei, pj);
      v_defect = std::max(v_defect, std::abs(a.dot(gv)));
      double pairing = domain.inner(ei, pj);
      Eigen::VectorXd residual = a - proj_perp * a - pairing * split.v;
      tangential_defect =
          std::max(tangential_defect, residual.cwiseAbs().maxCoeff());
      pairing_defect =
          std::max(pairing_defect, (proj_u1 * a).cwiseAbs().maxCoeff());
    }
  }

  double pluri_defect = 0.0;
  for (int i = 0; i < P.dim(); ++i) {
    Eigen::VectorXd pi = P.basis().col(i);
    Eigen::VectorXd jpi = J.apply(pi);
    for (int j = 0; j < P.dim(); ++j) {
      Eigen::VectorXd pj = P.basis().col(j);
      Eigen::VectorXd sum = alpha.value(pi, pj) + alpha.value(jpi, J.apply(pj));
      pluri_defect =
          std::max(pluri_defect, (proj_u2 * sum).cwiseAbs().maxCoeff());
    }
  }

  const double t = tol.defect_tol * amax;
  if (v_defect > t)
    throw StructureError("alpha values have a component along v on the kernel");
  if (tangential_defect > t)
    throw StructureError("alpha does not split as tangential part plus (x,y) v");
  if (pairing_defect > t)
    throw StructureError("alpha pairs the kernel with the reduced image span");
  if (pluri_defect > t)
    throw StructureError("alpha is not pluriharmonic transversally on the kernel");

  std::normal_distribution<double> gauss(0.0, 1.0);
  double residual = 0.0;
  double max_value = -std::numeric_limits<double>::infinity();
  double min_value = std::numeric_limits<double>::infinity();
  auto probe = [&](const Eigen::VectorXd& s_vec) {
    Eigen::VectorXd js = J.apply(s_vec);
    Eigen::VectorXd a_ss = alpha.value(s_vec, s_vec);
    Eigen::VectorXd a_jj = alpha.value(js, js);
    Eigen::VectorXd a_sj = alpha.value(s_vec, js);
    double lhs = base.inner(a_ss, a_jj) - base.norm2(a_sj);
    Eigen::VectorXd a2_ss = proj_u2 * a_ss;
    Eigen::VectorXd a2_sj = proj_u2 * a_sj;
    double rhs = -base.norm2(a2_ss) - base.norm2(a2_sj);
    residual = std::max(residual, std::abs(lhs - rhs));
    max_value = std::max(max_value, lhs);
    min_value = std::min(min_value, lhs);
  };
  for (int j = 0; j < P.dim(); ++j) probe(P.basis().col(j).normalized());
  for (int trial = 0; trial < samples; ++trial) {
    Eigen::VectorXd coeffs(P.dim());
    for (int j = 0; j < P.dim(); ++j) coeffs(j) = gauss(rng);
    Eigen::VectorXd s_vec = P.basis() * coeffs;
    if (s_vec.norm() == 0.0) continue;
    probe(s_vec.normalized());
  }
  if (residual > tol.defect_tol * std::max(1.0, amax * amax))
    throw StructureError("quartic identity fails on the umbilical subspace");

  return UmbilicalReport{P,
                         m,
                         v_defect,
                         tangential_defect,
                         pairing_defect,
                         pluri_defect,
                         residual,
                         max_value,
                         min_value};
}

DiagBasisReport verify_diag_basis(const PairedForm& beta,
                                  const std::vector<Eigen::VectorXd>& X,
                                  const ComplexStructure& J,
                                  const QuadSpace& domain, const QuadSpace& base,
                                  const TolerancePolicy& tol) {
  const int d = domain.dim();
  const int n = d / 2;
  if (static_cast<int>(X.size()) != n)
    throw std::invalid_argument("need one basis vector per complex direction");
  for (const auto& x : X)
    if (x.size() != d)
      throw std::invalid_argument("basis vectors do not live in the domain");

  std::vector<Eigen::VectorXd> full;
  full.reserve(2 * n);
  for (const auto& x : X) {
    full.push_back(x);
    full.push_back(J.apply(x));
  }
  Eigen::MatrixXd y(d, 2 * n);
  for (int j = 0; j < 2 * n; ++j) y.col(j) = full[j];
  Eigen::MatrixXd gram = y.transpose() * domain.gram() * y;
  double diag_scale = std::max(1.0, gram.diagonal().cwiseAbs().maxCoeff());
  Eigen::MatrixXd offdiag = gram - Eigen::MatrixXd(gram.diagonal().asDiagonal());
  if (offdiag.cwiseAbs().maxCoeff() > tol.defect_tol * diag_scale)
    throw std::invalid_argument("basis vectors are not pairwise orthogonal");

  double offdiagonal_defect = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          Eigen::VectorXd val = beta.value(full[2 * i + a], full[2 * j + b]);
          offdiagonal_defect =
              std::max(offdiagonal_defect, val.cwiseAbs().maxCoeff());
        }
    }

  Eigen::MatrixXd g2 = pair_gram(base);
  const int q = base.dim();
  Eigen::MatrixXd rescaled(2 * q, 2 * n);
  std::vector<double> diagonal_norms(n, 0.0);
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd b_diag = beta.value(X[j], X[j]);
    double norm2 = b_diag.dot(g2 * b_diag);
    double b_scale = std::max(1.0, b_diag.squaredNorm());
    if (std::abs(norm2) <= tol.defect_tol * b_scale)
      throw std::invalid_argument("a diagonal pair norm vanishes; cannot rescale");
    double factor2 = 1.0 / std::sqrt(std::abs(norm2));
    rescaled.col(2 * j) = factor2 * b_diag;
    rescaled.col(2 * j + 1) = factor2 * beta.value(X[j], J.apply(X[j]));
    diagonal_norms[j] =
        rescaled.col(2 * j).dot(g2 * rescaled.col(2 * j));
  }

  double orthonormality_defect = 0.0;
  Eigen::MatrixXd inner_matrix = rescaled.transpose() * g2 * rescaled;
  for (int a = 0; a < 2 * n; ++a)
    for (int b = 0; b < 2 * n; ++b) {
      if (a == b)
        orthonormality_defect = std::max(
            orthonormality_defect, std::abs(std::abs(inner_matrix(a, b)) - 1.0));
      else
        orthonormality_defect =
            std::max(orthonormality_defect, std::abs(inner_matrix(a, b)));
    }

  Subspace image = image_span(beta, base, tol);
  double span_defect = 0.0;
  for (int j = 0; j < image.dim(); ++j)
    span_defect = std::max(
        span_defect, least_squares_distance(rescaled, image.basis().col(j)));

  return DiagBasisReport{offdiagonal_defect, std::move(diagonal_norms),
                         orthonormality_defect, span_defect, image.dim() / 2};
}

}  // namespace kcone
