#pragma once

#include <Eigen/Dense>
#include <random>
#include <stdexcept>
#include <utility>

#include "kcone/tolerance.hpp"

namespace kcone {

/// Thrown when an operation needs a nondegenerate restricted metric and the
/// subspace at hand does not have one (projection is undefined there).
struct DegenerateSubspaceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Rank of a matrix, decided on singular values relative to the largest one.
int numerical_rank(const Eigen::MatrixXd& m, double rank_tol);

/// Euclidean-orthonormal basis of the column span.
Eigen::MatrixXd column_space(const Eigen::MatrixXd& m, double rank_tol);

/// Euclidean-orthonormal basis of the kernel {x : m x = 0}.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double rank_tol);

/// Kernel basis with an absolute singular-value cutoff, for matrices whose
/// entries may be pure rounding noise and carry no scale of their own.
Eigen::MatrixXd null_space_below(const Eigen::MatrixXd& m, double cutoff);

/// A finite-dimensional real vector space carrying a nondegenerate symmetric
/// bilinear form, stored as its gram matrix in the standard basis.
class QuadSpace {
 public:
  explicit QuadSpace(Eigen::MatrixXd gram, double rank_tol = 1e-8);

  static QuadSpace euclidean(int dim);
  /// Gram diag(-1, 1, ..., 1); the first coordinate is the timelike one.
  static QuadSpace lorentzian(int dim);

  int dim() const { return static_cast<int>(gram_.rows()); }
  const Eigen::MatrixXd& gram() const { return gram_; }

  /// Counts of (positive, negative) eigenvalues of the gram matrix.
  std::pair<int, int> signature() const { return signature_; }

  double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  double norm2(const Eigen::VectorXd& x) const { return inner(x, x); }

 private:
  Eigen::MatrixXd gram_;
  std::pair<int, int> signature_;
};

/// A subspace of a QuadSpace, held as a full-column-rank basis matrix.
/// The restricted form may be degenerate; QuadSpace itself may not.
class Subspace {
 public:
  Subspace(QuadSpace ambient, Eigen::MatrixXd basis, double rank_tol = 1e-8);

  const QuadSpace& ambient() const { return ambient_; }
  const Eigen::MatrixXd& basis() const { return basis_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  int ambient_dim() const { return ambient_.dim(); }

  /// basis^T G basis; dim x dim, symmetric.
  Eigen::MatrixXd restricted_gram() const;

  /// Membership up to tol, measured by the Euclidean least-squares residual
  /// relative to max(1, |x|).
  bool contains(const Eigen::VectorXd& x, double tol) const;

 private:
  QuadSpace ambient_;
  Eigen::MatrixXd basis_;
};

/// Subspace spanned by possibly dependent generators; compresses via SVD.
Subspace span_of(const QuadSpace& ambient, const Eigen::MatrixXd& generators,
                 double rank_tol);

double inner(const QuadSpace& space, const Eigen::VectorXd& x,
             const Eigen::VectorXd& y);

/// True when v is nonzero and <v,v> vanishes within tol (relative to |v|^2).
bool is_lightlike(const QuadSpace& space, const Eigen::VectorXd& v, double tol);

/// sub cap sub^perp: the kernel of the restricted form.
Subspace radical(const Subspace& sub, double rank_tol);

bool is_degenerate(const Subspace& sub, double rank_tol);

/// {y : <y, s> = 0 for all s in sub}; dimension ambient.dim() - sub.dim().
Subspace orthogonal_complement(const Subspace& sub, double rank_tol);

/// Matrix of the metric-orthogonal projection onto sub. Throws
/// DegenerateSubspaceError when the restricted form is degenerate.
Eigen::MatrixXd projector(const Subspace& sub, double rank_tol);

Eigen::VectorXd project(const Subspace& sub, const Eigen::VectorXd& x,
                        double rank_tol);

Subspace subspace_sum(const Subspace& a, const Subspace& b, double rank_tol);

Subspace subspace_intersection(const Subspace& a, const Subspace& b,
                               double rank_tol);

/// Random isometry of a space whose gram matrix is diag(+-1), composed from
/// plane rotations (equal diagonal signs) and boosts (opposite signs).
Eigen::MatrixXd random_isometry(const QuadSpace& space, std::mt19937_64& rng);

}  // namespace kcone
