#pragma once

#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "kcone/complex_structure.hpp"
#include "kcone/errors.hpp"
#include "kcone/quad_space.hpp"
#include "kcone/tolerance.hpp"

namespace kcone {

// Bilinear form on a real vector space with values in a target vector space,
// stored as one coefficient matrix per target coordinate:
// value(x, y)[k] = x^T comps[k] y.
class VectorValuedForm {
 public:
  VectorValuedForm(std::vector<Eigen::MatrixXd> comps);

  static VectorValuedForm zero(int domain_dim, int target_dim);
  // coeff(i, j) * target_vec
  static VectorValuedForm rank_one(const Eigen::MatrixXd& coeff,
                                   const Eigen::VectorXd& target_vec);

  int domain_dim() const { return domain_dim_; }
  int target_dim() const { return static_cast<int>(comps_.size()); }
  const std::vector<Eigen::MatrixXd>& comps() const { return comps_; }

  Eigen::VectorXd value(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  // Matrix of the map y -> value(x, y), target_dim x domain_dim.
  Eigen::MatrixXd operator_at(const Eigen::VectorXd& x) const;

  VectorValuedForm operator+(const VectorValuedForm& other) const;
  VectorValuedForm scaled(double c) const;
  // Applies a linear map to the values: comps'[k] = sum_m map(k, m) comps[m].
  VectorValuedForm target_mapped(const Eigen::MatrixXd& map) const;

  double symmetry_defect() const;
  double max_abs() const;

 private:
  std::vector<Eigen::MatrixXd> comps_;
  int domain_dim_;
};

// Pair of forms with values in the doubled space W = target + target carrying
// the pair metric diag(g, -g). value(x, y) stacks first over second.
class PairedForm {
 public:
  PairedForm(VectorValuedForm first, VectorValuedForm second);

  int domain_dim() const { return first_.domain_dim(); }
  int base_dim() const { return first_.target_dim(); }
  const VectorValuedForm& first() const { return first_; }
  const VectorValuedForm& second() const { return second_; }

  Eigen::VectorXd value(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  // Matrix of y -> value(x, y), (2 * base_dim) x domain_dim.
  Eigen::MatrixXd operator_at(const Eigen::VectorXd& x) const;
  // All values on basis pairs as columns, (2 * base_dim) x domain_dim^2.
  Eigen::MatrixXd value_matrix() const;

  double max_abs() const;
  PairedForm target_mapped(const Eigen::MatrixXd& map) const;

 private:
  VectorValuedForm first_;
  VectorValuedForm second_;
};

// Symmetrized pair form of alpha:
//   (alpha(x,y) + alpha(Jx,Jy), alpha(x,Jy) - alpha(Jx,y)).
PairedForm build_beta(const VectorValuedForm& alpha, const ComplexStructure& J);

// Mixed pair form of alpha: (alpha(x,y), alpha(x,Jy)).
PairedForm build_gamma(const VectorValuedForm& alpha, const ComplexStructure& J);

// Residual of the exchange identities the symmetrized pair form satisfies:
// first comp symmetric, second antisymmetric, first*J = second, second*J = -first.
double beta_symmetry_defect(const PairedForm& beta, const ComplexStructure& J);

// max over basis quadruples of
// |<<f(x,y), f(z,t)>> - <<f(x,t), f(z,y)>>| in the pair metric.
double flatness_defect(const PairedForm& form, const QuadSpace& base);

// max over basis quadruples of
// |<<beta(x,y), gamma(z,t)>> - <<beta(x,t), gamma(z,y)>>|.
double product_condition_defect(const PairedForm& beta, const PairedForm& gamma,
                                const QuadSpace& base);

// Span of all values inside the doubled space (ambient gram diag(g, -g)).
Subspace image_span(const PairedForm& form, const QuadSpace& base,
                    const TolerancePolicy& tol = {});

// Span of the first components of all values inside the base space.
Subspace first_component_span(const PairedForm& form, const QuadSpace& base,
                              const TolerancePolicy& tol = {});
Subspace second_component_span(const PairedForm& form, const QuadSpace& base,
                               const TolerancePolicy& tol = {});

// Directions y with form(x, y) = 0 for every x. A form whose entries all sit
// below defect_tol counts as zero and has the whole domain as kernel.
Subspace kernel(const PairedForm& form, const QuadSpace& domain,
                const TolerancePolicy& tol = {});

struct RegularElement {
  Eigen::VectorXd x;
  int rank;
};

// Seeded sampling of unit directions; keeps the one whose operator has the
// largest numerical rank.
RegularElement find_regular_element(const PairedForm& form, std::mt19937_64& rng,
                                    int samples = 64,
                                    const TolerancePolicy& tol = {});

// Relative distance of the values on V x ker(B_x) from B_x(V) meet B_x(V)-perp.
// Throws std::invalid_argument when x is not a regular element.
double moore_inclusion_defect(const PairedForm& form, const Eigen::VectorXd& x,
                              const QuadSpace& base,
                              const TolerancePolicy& tol = {});

// Structural summary of a paired form: image span inside the doubled space,
// kernel, a sampled regular element, and degeneracy of the restricted pairing.
struct FormAnalysis {
  Subspace image;   // span of values; dim is 2 s when the exchange symmetries hold
  int s;            // dim of the first-component span
  Subspace kernel;  // directions annihilating the form in the right slot
  RegularElement regular;
  bool degenerate;  // pairing restricted to the image is degenerate
  double flatness_defect;
};

FormAnalysis analyze_form(const PairedForm& form, const QuadSpace& base,
                          const QuadSpace& domain, std::mt19937_64& rng,
                          const TolerancePolicy& tol = {});

struct KernelBoundCheck {
  int dim_kernel;
  int lower_bound;  // domain_dim - 2 * p_eff
  bool holds;
};

// Kernel dimension bound for a flat form spanning a nondegenerate doubled
// space of signature (p_eff, p_eff).
KernelBoundCheck check_surjective_kernel_bound(const PairedForm& form, int p_eff,
                                               const QuadSpace& domain,
                                               const TolerancePolicy& tol = {});

struct DegenerateSplit {
  Eigen::VectorXd v;    // light-like radical direction, <v, w> = -1
  Subspace L;           // span{v, w}, signature (1, 1)
  PairedForm beta1;     // values projected onto the orthogonal complement of L
  Subspace kernel1;     // kernel of beta1 in the domain
  Subspace U1;          // first components of beta1 values
  Subspace U2;          // complement of U1 inside L-perp
  int s;                // half the image dimension of the input form

  double radical_orthogonality_defect;  // pairing of values against (v,0), (0,v)
  double beta_shape_defect;   // <<beta(x,y), (w,0)>> + 2 (x,y)
  double reconstruction_residual;  // beta - beta1 - 2((x,y)v, (x,Jy)v)
  double beta1_flatness_defect;
};

// Splits a flat pair form with degenerate image span along its radical
// direction. Preconditions: the radical of the image span is a doubled line
// span{v} + span{v}; <v, w> != 0; alpha satisfies the shape identity
// <alpha(x,y), w> = -(x,y) within defect_tol.
DegenerateSplit degenerate_decomposition(const PairedForm& beta,
                                         const VectorValuedForm& alpha,
                                         const Eigen::VectorXd& w,
                                         const ComplexStructure& J,
                                         const QuadSpace& domain,
                                         const QuadSpace& base,
                                         const TolerancePolicy& tol = {});

struct UmbilicalReport {
  Subspace P;  // kernel of beta1, invariant under J
  int m;       // complex dimension of P, m >= n - s + 1

  double v_component_defect;       // <alpha(x, s), v> over x in V, s in P
  double tangential_split_defect;  // alpha - proj_{L-perp} alpha - (,)v on V x P
  double kernel_pairing_defect;    // U1 component of alpha(x, s)
  double pluriharmonic_defect;     // U2 comp of alpha(s,t) + alpha(Js,Jt) on P
  double inequality_residual;      // quartic identity consistency over samples
  double max_inequality_value;     // largest sampled quartic value, <= 0
  double min_inequality_value;     // most negative sampled quartic value
};

// Checks the umbilical structure of alpha on P = ker(beta1).
// Preconditions: product_condition_defect(beta, gamma) within defect_tol and
// s <= n - 1. Throws StructureError when P is not J-invariant.
// The quartic expression is <alpha(s,s), alpha(Js,Js)> - |alpha(s,Js)|^2,
// compared against -|a2(s,s)|^2 - |a2(s,Js)|^2 for the U2 component a2.
// Probes are the basis directions of P followed by random unit samples.
UmbilicalReport umbilical_subspace(const DegenerateSplit& split,
                                   const VectorValuedForm& alpha,
                                   const PairedForm& beta, const PairedForm& gamma,
                                   const ComplexStructure& J,
                                   const QuadSpace& domain, const QuadSpace& base,
                                   std::mt19937_64& rng, int samples = 32,
                                   const TolerancePolicy& tol = {});

struct DiagBasisReport {
  double offdiagonal_defect;    // max |beta(y_i, y_j)| across distinct pairs
  std::vector<double> diagonal_norms;  // pair norms of beta(X_j, X_j) after rescale
  double orthonormality_defect;  // |<<b_a, b_b>>| off diagonal, ||<<b_a,b_a>>|-1|
  double span_defect;            // residual of image span against the 2n vectors
  int s;
};

// Checks that a J-adapted orthogonal basis {X_1, ..., X_n} diagonalizes the
// pair form: off-diagonal values vanish and the rescaled diagonal values
// {beta(X_j, X_j), beta(X_j, J X_j)} form a pair-orthonormal basis of the
// image span. Valid in ambient signatures with at least four space-like
// normal directions; this function does not verify that hypothesis.
// Throws std::invalid_argument when the basis is not orthogonal or a diagonal
// pair norm vanishes.
DiagBasisReport verify_diag_basis(const PairedForm& beta,
                                  const std::vector<Eigen::VectorXd>& X,
                                  const ComplexStructure& J,
                                  const QuadSpace& domain, const QuadSpace& base,
                                  const TolerancePolicy& tol = {});

// max over basis pairs of |<alpha(x, y), w> + (x, y)|.
double shape_identity_defect(const VectorValuedForm& alpha, const Eigen::VectorXd& w,
                             const QuadSpace& domain, const QuadSpace& base);

}  // namespace kcone
