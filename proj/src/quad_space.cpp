#include "kcone/quad_space.hpp"

#include <cmath>
#include <string>

namespace kcone {

void TolerancePolicy::validate() const {
  if (!(rank_tol > 0.0) || !(defect_tol > 0.0) || !(fd_step > 0.0))
    throw std::invalid_argument("tolerances must be positive");
}

int numerical_rank(const Eigen::MatrixXd& m, double rank_tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  double top = sv.size() > 0 ? sv(0) : 0.0;
  if (top <= 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rank_tol * top) ++rank;
  return rank;
}

Eigen::MatrixXd column_space(const Eigen::MatrixXd& m, double rank_tol) {
  if (m.rows() == 0 || m.cols() == 0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  double top = sv.size() > 0 ? sv(0) : 0.0;
  if (top <= 0.0) return Eigen::MatrixXd(m.rows(), 0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rank_tol * top) ++rank;
  return svd.matrixU().leftCols(rank);
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double rank_tol) {
  if (m.cols() == 0) return Eigen::MatrixXd(0, 0);
  if (m.rows() == 0) return Eigen::MatrixXd::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double top = sv.size() > 0 ? sv(0) : 0.0;
  int rank = 0;
  if (top > 0.0)
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > rank_tol * top) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

Eigen::MatrixXd null_space_below(const Eigen::MatrixXd& m, double cutoff) {
  if (m.cols() == 0) return Eigen::MatrixXd(0, 0);
  if (m.rows() == 0) return Eigen::MatrixXd::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

QuadSpace::QuadSpace(Eigen::MatrixXd gram, double rank_tol) : gram_(std::move(gram)) {
  if (gram_.rows() == 0 || gram_.rows() != gram_.cols())
    throw std::invalid_argument("gram matrix must be square and nonempty");
  double scale = std::max(1.0, gram_.cwiseAbs().maxCoeff());
  if ((gram_ - gram_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("gram matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram_, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = es.eigenvalues();
  double top = ev.cwiseAbs().maxCoeff();
  int pos = 0, neg = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (top > 0.0 && std::abs(ev(i)) <= rank_tol * top)
      throw std::invalid_argument("gram matrix is degenerate");
    (ev(i) > 0.0 ? pos : neg)++;
  }
  if (top <= 0.0) throw std::invalid_argument("gram matrix is degenerate");
  signature_ = {pos, neg};
}

QuadSpace QuadSpace::euclidean(int dim) {
  return QuadSpace(Eigen::MatrixXd::Identity(dim, dim));
}

QuadSpace QuadSpace::lorentzian(int dim) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(dim, dim);
  g(0, 0) = -1.0;
  return QuadSpace(g);
}

double QuadSpace::inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  if (x.size() != dim() || y.size() != dim())
    throw std::invalid_argument("vector dimension does not match the space");
  return x.dot(gram_ * y);
}

Subspace::Subspace(QuadSpace ambient, Eigen::MatrixXd basis, double rank_tol)
    : ambient_(std::move(ambient)), basis_(std::move(basis)) {
  if (basis_.rows() != ambient_.dim())
    throw std::invalid_argument("basis rows must match the ambient dimension");
  if (basis_.cols() > 0 && numerical_rank(basis_, rank_tol) != basis_.cols())
    throw std::invalid_argument("basis columns must be linearly independent");
}

Eigen::MatrixXd Subspace::restricted_gram() const {
  return basis_.transpose() * ambient_.gram() * basis_;
}

bool Subspace::contains(const Eigen::VectorXd& x, double tol) const {
  if (x.size() != ambient_dim()) return false;
  if (dim() == 0) return x.cwiseAbs().maxCoeff() <= tol;
  Eigen::VectorXd coeff = basis_.colPivHouseholderQr().solve(x);
  double residual = (x - basis_ * coeff).norm();
  return residual <= tol * std::max(1.0, x.norm());
}

Subspace span_of(const QuadSpace& ambient, const Eigen::MatrixXd& generators,
                 double rank_tol) {
  return Subspace(ambient, column_space(generators, rank_tol), rank_tol);
}

double inner(const QuadSpace& space, const Eigen::VectorXd& x,
             const Eigen::VectorXd& y) {
  return space.inner(x, y);
}

bool is_lightlike(const QuadSpace& space, const Eigen::VectorXd& v, double tol) {
  double scale = v.squaredNorm();
  if (scale <= 0.0) return false;
  return std::abs(space.norm2(v)) <= tol * std::max(1.0, scale);
}

Subspace radical(const Subspace& sub, double rank_tol) {
  if (sub.dim() == 0) return sub;
  Eigen::MatrixXd gram = sub.restricted_gram();
  // The gram of a (nearly) totally null subspace is pure rounding noise, so a
  // cutoff relative to its own largest singular value would see full rank.
  // Measure smallness against the subspace scale instead.
  double scale = std::max(1.0, gram.cwiseAbs().maxCoeff());
  Eigen::MatrixXd kernel = null_space_below(gram, rank_tol * scale);
  return span_of(sub.ambient(), sub.basis() * kernel, rank_tol);
}

bool is_degenerate(const Subspace& sub, double rank_tol) {
  return radical(sub, rank_tol).dim() > 0;
}

Subspace orthogonal_complement(const Subspace& sub, double rank_tol) {
  Eigen::MatrixXd constraints = sub.basis().transpose() * sub.ambient().gram();
  return Subspace(sub.ambient(), null_space(constraints, rank_tol), rank_tol);
}

Eigen::MatrixXd projector(const Subspace& sub, double rank_tol) {
  int n = sub.ambient_dim();
  if (sub.dim() == 0) return Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd restricted = sub.restricted_gram();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(restricted, Eigen::EigenvaluesOnly);
  double top = es.eigenvalues().cwiseAbs().maxCoeff();
  double bottom = es.eigenvalues().cwiseAbs().minCoeff();
  if (top <= 0.0 || bottom <= rank_tol * top)
    throw DegenerateSubspaceError(
        "restricted form is degenerate; metric projection is undefined");
  // The restricted gram may be indefinite, so use a general LU solve.
  return sub.basis() * restricted.fullPivLu().solve(
             sub.basis().transpose() * sub.ambient().gram());
}

Eigen::VectorXd project(const Subspace& sub, const Eigen::VectorXd& x,
                        double rank_tol) {
  return projector(sub, rank_tol) * x;
}

namespace {
void require_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim() ||
      (a.ambient().gram() - b.ambient().gram()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("subspaces live in different ambient spaces");
}
}  // namespace

Subspace subspace_sum(const Subspace& a, const Subspace& b, double rank_tol) {
  require_same_ambient(a, b);
  Eigen::MatrixXd joined(a.ambient_dim(), a.dim() + b.dim());
  joined << a.basis(), b.basis();
  return span_of(a.ambient(), joined, rank_tol);
}

Subspace subspace_intersection(const Subspace& a, const Subspace& b,
                               double rank_tol) {
  require_same_ambient(a, b);
  if (a.dim() == 0 || b.dim() == 0)
    return Subspace(a.ambient(), Eigen::MatrixXd(a.ambient_dim(), 0));
  Eigen::MatrixXd joined(a.ambient_dim(), a.dim() + b.dim());
  joined << a.basis(), -b.basis();
  Eigen::MatrixXd coeffs = null_space(joined, rank_tol);
  return span_of(a.ambient(), a.basis() * coeffs.topRows(a.dim()), rank_tol);
}

Eigen::MatrixXd random_isometry(const QuadSpace& space, std::mt19937_64& rng) {
  const int d = space.dim();
  const Eigen::MatrixXd& g = space.gram();
  Eigen::MatrixXd offdiag = g - Eigen::MatrixXd(g.diagonal().asDiagonal());
  if (offdiag.cwiseAbs().maxCoeff() > 1e-12 ||
      (g.diagonal().cwiseAbs().array() - 1.0).abs().maxCoeff() > 1e-12)
    throw std::invalid_argument("random_isometry needs a diag(+-1) gram matrix");
  std::uniform_real_distribution<double> angle(-0.5, 0.5);
  Eigen::MatrixXd iso = Eigen::MatrixXd::Identity(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const double t = angle(rng);
      Eigen::MatrixXd plane = Eigen::MatrixXd::Identity(d, d);
      if (g(i, i) * g(j, j) > 0.0) {
        plane(i, i) = std::cos(t);
        plane(j, j) = std::cos(t);
        plane(i, j) = -std::sin(t);
        plane(j, i) = std::sin(t);
      } else {
        plane(i, i) = std::cosh(t);
        plane(j, j) = std::cosh(t);
        plane(i, j) = std::sinh(t);
        plane(j, i) = std::sinh(t);
      }
      iso = plane * iso;
    }
  }
  return iso;
}

}  // namespace kcone
