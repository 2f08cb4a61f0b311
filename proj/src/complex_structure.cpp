#include "kcone/complex_structure.hpp"

#include <cmath>

namespace kcone {

ComplexStructure::ComplexStructure(Eigen::MatrixXd m, double tol)
    : matrix_(std::move(m)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() % 2 != 0 ||
      matrix_.rows() == 0)
    throw std::invalid_argument("complex structure needs an even square matrix");
  if (square_defect() > tol)
    throw std::invalid_argument("matrix does not square to minus identity");
}

ComplexStructure ComplexStructure::standard(int half_dim) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * half_dim, 2 * half_dim);
  for (int k = 0; k < half_dim; ++k) {
    m(2 * k, 2 * k + 1) = -1.0;
    m(2 * k + 1, 2 * k) = 1.0;
  }
  return ComplexStructure(std::move(m));
}

double ComplexStructure::square_defect() const {
  int n = dim();
  return (matrix_ * matrix_ + Eigen::MatrixXd::Identity(n, n))
      .cwiseAbs()
      .maxCoeff();
}

double ComplexStructure::isometry_defect(const Eigen::MatrixXd& gram) const {
  return (matrix_.transpose() * gram * matrix_ - gram).cwiseAbs().maxCoeff();
}

bool is_complex_subspace(const ComplexStructure& j, const Subspace& sub,
                         double rank_tol) {
  if (sub.dim() == 0) return true;
  if (sub.dim() % 2 != 0) return false;
  Eigen::MatrixXd joined(sub.ambient_dim(), 2 * sub.dim());
  joined << sub.basis(), j.matrix() * sub.basis();
  return numerical_rank(joined, rank_tol) == sub.dim();
}

Subspace maximal_complex_subspace(const ComplexStructure& j, const Subspace& sub,
                                  double rank_tol) {
  Subspace image(sub.ambient(), column_space(j.matrix() * sub.basis(), rank_tol));
  return subspace_intersection(sub, image, rank_tol);
}

PairedSpace PairedSpace::from_base(const QuadSpace& base) {
  int p = base.dim();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * p, 2 * p);
  g.topLeftCorner(p, p) = base.gram();
  g.bottomRightCorner(p, p) = -base.gram();
  return PairedSpace{base, QuadSpace(std::move(g))};
}

Eigen::VectorXd PairedSpace::pair(const Eigen::VectorXd& first,
                                  const Eigen::VectorXd& second) const {
  Eigen::VectorXd w(2 * base_dim());
  w << first, second;
  return w;
}

Eigen::VectorXd PairedSpace::first(const Eigen::VectorXd& w) const {
  return w.head(base_dim());
}

Eigen::VectorXd PairedSpace::second(const Eigen::VectorXd& w) const {
  return w.tail(base_dim());
}

double PairedSpace::pairing(const Eigen::VectorXd& a,
                            const Eigen::VectorXd& b) const {
  return total.inner(a, b);
}

}  // namespace kcone
