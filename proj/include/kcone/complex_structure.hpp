#pragma once

#include <Eigen/Dense>

#include "kcone/quad_space.hpp"

namespace kcone {

/// An orthogonal complex structure on R^{2n}: a matrix J with J^2 = -I that
/// is an isometry of whichever metric the caller pairs it with.
class ComplexStructure {
 public:
  explicit ComplexStructure(Eigen::MatrixXd m, double tol = 1e-10);

  /// Block-diagonal 2x2 rotations [[0,-1],[1,0]] on coordinate pairs
  /// (e0,e1), (e2,e3), ...; the returned structure acts on R^{2*half_dim}.
  static ComplexStructure standard(int half_dim);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const { return matrix_ * x; }

  double square_defect() const;
  double isometry_defect(const Eigen::MatrixXd& gram) const;

 private:
  Eigen::MatrixXd matrix_;
};

/// True when J maps the subspace into itself (rank test on [basis, J basis]).
bool is_complex_subspace(const ComplexStructure& j, const Subspace& sub,
                         double rank_tol);

/// The maximal J-invariant subspace of sub, namely sub cap J(sub).
Subspace maximal_complex_subspace(const ComplexStructure& j, const Subspace& sub,
                                  double rank_tol);

/// The doubled space W = base + base with pairing <(xi,xi'),(eta,eta')> =
/// <xi,eta> - <xi',eta'>; gram diag(g, -g). Coordinates stack the first slot
/// on top of the second.
struct PairedSpace {
  QuadSpace base;
  QuadSpace total;

  static PairedSpace from_base(const QuadSpace& base);

  int base_dim() const { return base.dim(); }
  int total_dim() const { return total.dim(); }

  Eigen::VectorXd pair(const Eigen::VectorXd& first,
                       const Eigen::VectorXd& second) const;
  Eigen::VectorXd first(const Eigen::VectorXd& w) const;
  Eigen::VectorXd second(const Eigen::VectorXd& w) const;
  double pairing(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;
};

}  // namespace kcone
