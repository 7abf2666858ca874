#pragma once

#include <functional>
#include <memory>

#include "schro2d/basis.hpp"
#include "schro2d/irk.hpp"
#include "schro2d/problem.hpp"
#include "schro2d/types.hpp"

namespace schro2d {

struct SystemConfig {
  /// Quadrature order used for integrals carrying psi or the forcing is
  /// degree + quad_margin. Products of two basis functions alone only need
  /// a margin of 2; the extra headroom bounds aliasing from non-polynomial
  /// factors.
  int quad_margin = 8;
};

/// Applies the potential operator matrix-free: synthesize the coefficients
/// on the quadrature grid, multiply by the psi samples pointwise, analyze
/// back. psi_samples must live on the transform's grid.
CVec potential_apply(const SpectralTransform& transform, const CMat& psi_samples,
                     const CVec& alpha);

/// Densely assembled potential operator, entry ((l,m),(k,j)) =
/// quadrature of psi phi_k phi_j phi_l phi_m, with row-major pair
/// flattening. Oracle and small-problem fallback; rejected for degree > 16.
CMat potential_matrix_dense(const std::function<double(double, double)>& psi, int degree,
                            const QuadratureRule& rule);

/// vec of the forcing inner products (f(.,.,t), phi_l phi_m).
CVec forcing_vector(const LiftedProblem& lifted, const SpectralTransform& transform, double t);

/// Initial coefficients: solve B U B = (phi_hat, phi_k phi_j) with two
/// banded solves rather than a Kronecker-sized system.
CVec initial_coeffs(const LiftedProblem& lifted, const MassMatrix& mass,
                    const SpectralTransform& transform);

/// The semidiscrete evolution of the homogenized problem,
///   -i (B (x) B) vec(alpha)' + [gamma (B (x) I + I (x) B) - W] vec(alpha)
///     - vec(F(t)) = 0,
/// with every operator applied matrix-free. W is never materialized here.
class SemidiscreteSystem final : public LinearOdeSystem {
 public:
  SemidiscreteSystem(std::shared_ptr<const LiftedProblem> lifted, int degree,
                     SystemConfig cfg = {});

  Index dim() const override { return n_ * n_; }
  CVec apply_m1(const CVec& v) const override;
  CVec apply_m2(const CVec& v) const override;
  CVec solve_m1(const CVec& v) const override;
  CVec forcing(double t) const override;
  CVec initial_state() const override { return alpha0_; }

  StagePrecondFn stage_preconditioner(GmresConfig::Precond kind, const ButcherTableau& tab,
                                      double h) const override;

  const CVec& initial_coefficients() const { return alpha0_; }
  const BasisSet& basis() const { return basis_; }
  const MassMatrix& mass() const { return mass_; }
  const SpectralTransform& transform() const { return transform_; }
  const LiftedProblem& problem() const { return *lifted_; }
  double gamma() const { return lifted_->gamma(); }

 private:
  std::shared_ptr<const LiftedProblem> lifted_;
  BasisSet basis_;
  MassMatrix mass_;
  SpectralTransform transform_;
  CMat psi_samples_;
  Index n_ = 0;
  CVec alpha0_;
  // Eigendecomposition of the 1D mass matrix; diagonalizes every Kronecker
  // block of the stage operator for the stage_exact preconditioner.
  CMat mass_eigvec_;
  RVec mass_eigval_;
};

std::shared_ptr<SemidiscreteSystem> build_system(const SchrodingerProblem& problem, int degree,
                                                 SystemConfig cfg = {});

}  // namespace schro2d
