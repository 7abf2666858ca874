#pragma once

#include <vector>

#include "schro2d/kronvec.hpp"
#include "schro2d/orthopoly.hpp"
#include "schro2d/types.hpp"

namespace schro2d {

/// Boundary-vanishing Legendre combinations
///   phi_k(x) = c_k (L_k(x) - L_{k+2}(x)),   c_k = 1/sqrt(4k+6),
/// for k = 0..N-2. The scaling makes the stiffness matrix
/// int phi'_k phi'_j the identity; the mass matrix is pentadiagonal with
/// nonzeros only on the main diagonal and offsets +-2.
struct BasisSet {
  explicit BasisSet(int degree);

  int degree;             // N; basis spans polynomials of degree <= N
  std::vector<double> c;  // c_k, strictly decreasing

  int dim() const { return degree - 1; }
  double eval(int k, double x) const;
  double eval_deriv(int k, double x) const;

  /// Sample matrix P with P(k, p) = phi_k(points[p]).
  RMat sample(const std::vector<double>& points) const;
  /// Same for phi'_k.
  RMat sample_deriv(const std::vector<double>& points) const;
};

/// Pentadiagonal basis mass matrix, stored as two bands. Indices of equal
/// parity decouple, so solves reduce to two symmetric tridiagonal LDL^T
/// factorizations computed once at construction.
class MassMatrix final : public MatrixOp {
 public:
  explicit MassMatrix(int degree);

  int dim() const { return dim_; }
  double diag(int k) const { return diag_[k]; }
  /// Entry (k, k+2); defined for k < dim-2.
  double off2(int k) const { return off2_[k]; }

  Index size() const override { return dim_; }
  CMat apply_left(const CMat& x) const override;   // B * X
  CMat apply_right(const CMat& x) const override;  // X * B
  CMat solve_left(const CMat& x) const;            // B^{-1} * X
  CMat solve_right(const CMat& x) const;           // X * B^{-1}

  RMat dense() const;

 private:
  struct TridiagLDLT {
    std::vector<double> d;  // pivots, all > 0 for a positive definite block
    std::vector<double> l;  // subdiagonal multipliers
    void factor(const std::vector<double>& a, const std::vector<double>& e);
    void solve(Cplx* x, int stride, int n) const;
  };

  int dim_ = 0;
  std::vector<double> diag_, off2_;
  TridiagLDLT even_, odd_;
};

/// Solves B X B = R for X (both factors the same mass matrix).
CMat mass_solve(const MassMatrix& m, const CMat& rhs);

/// Coefficient <-> quadrature-grid transforms for one basis/rule pair.
/// Requires rule.order >= degree + 2 so that products of two basis functions
/// are integrated exactly; rejected otherwise.
class SpectralTransform {
 public:
  SpectralTransform(const BasisSet& basis, QuadratureRule rule);

  const QuadratureRule& rule() const { return rule_; }
  int degree() const { return degree_; }
  Index dim() const { return p_.rows(); }

  /// Samples sum_{kj} alpha_kj phi_k(x_p) phi_j(y_q) on the rule's tensor
  /// grid; result is (Q+1)-by-(Q+1) with row index p along x.
  CMat synthesize(const CMat& alpha) const;

  /// Quadrature inner products (g, phi_l phi_m) of a sampled field.
  CMat analyze(const CMat& samples) const;

 private:
  int degree_;
  QuadratureRule rule_;
  CMat p_;   // phi_k at nodes, complex copy for mixed products
  CMat pw_;  // p_ * diag(weights)
};

/// Evaluates sum_{kj} alpha_kj phi_k(gridx[p]) phi_j(gridy[q]) on an
/// arbitrary tensor grid.
CMat synthesize(const BasisSet& basis, const CMat& alpha, const std::vector<double>& gridx,
                const std::vector<double>& gridy);

}  // namespace schro2d
