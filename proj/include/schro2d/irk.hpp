#pragma once

#include <functional>
#include <stdexcept>

#include "schro2d/gmres.hpp"
#include "schro2d/types.hpp"

namespace schro2d {

struct ButcherTableau {
  int s = 0;
  Eigen::MatrixXd A;  // s x s stage coefficients
  Eigen::VectorXd b;  // quadrature weights, sum 1
  Eigen::VectorXd c;  // abscissae, c_l = sum_j a_lj
};

/// The 3-stage Gauss collocation tableau (order 6, A-stable, conserves
/// quadratic invariants of linear systems).
ButcherTableau gauss3_tableau();

/// Linear implicit ODE system -i M1 y' + M2 y - f(t) = 0 presented through
/// its operator actions; M1 must admit an exact solve.
class LinearOdeSystem {
 public:
  virtual ~LinearOdeSystem() = default;
  virtual Index dim() const = 0;
  virtual CVec apply_m1(const CVec& v) const = 0;
  virtual CVec apply_m2(const CVec& v) const = 0;
  virtual CVec solve_m1(const CVec& v) const = 0;
  virtual CVec forcing(double t) const = 0;
  virtual CVec initial_state() const = 0;

  /// In-place left preconditioner for the coupled stage operator
  /// -i I_s (x) M1 + h A (x) M2, acting on the s-by-m stage block.
  /// The base class provides `none` (empty function) and `stage_mass`
  /// (i * M1^{-1} per stage row); `stage_exact` is available only on
  /// systems that expose the structure needed to invert the coupled
  /// operator, and is rejected here.
  using StagePrecondFn = std::function<void(CMat&)>;
  virtual StagePrecondFn stage_preconditioner(GmresConfig::Precond kind,
                                              const ButcherTableau& tab, double h) const;
};

/// Diagonal M1/M2 system, mainly for surrogate order studies such as
/// y' = i y (m1 = 1, m2 = -1, f = 0).
class DiagonalOdeSystem final : public LinearOdeSystem {
 public:
  DiagonalOdeSystem(CVec m1_diag, CVec m2_diag, CVec y0,
                    std::function<CVec(double)> forcing = {});
  Index dim() const override { return m1_.size(); }
  CVec apply_m1(const CVec& v) const override { return m1_.cwiseProduct(v); }
  CVec apply_m2(const CVec& v) const override { return m2_.cwiseProduct(v); }
  CVec solve_m1(const CVec& v) const override { return v.cwiseQuotient(m1_); }
  CVec forcing(double t) const override;
  CVec initial_state() const override { return y0_; }

 private:
  CVec m1_, m2_, y0_;
  std::function<CVec(double)> f_;
};

struct StepperState {
  double t = 0.0;
  CVec y;
  long step_count = 0;
};

struct IrkOptions {
  GmresConfig gmres;
  /// How y_{n+1} is formed from the solved stages. Both routes are
  /// algebraically equivalent; `mass_solve` applies M1^{-1} to the weighted
  /// stage residuals, `stage_combination` uses y_n + b^T A^{-1} (K - 1 y_n).
  enum class Update { mass_solve, stage_combination };
  Update update = Update::mass_solve;
};

/// Thrown when the stage-system solve does not converge.
class StageSolveError : public std::runtime_error {
 public:
  StageSolveError(const std::string& what, SolveReport rep, long step_index)
      : std::runtime_error(what), report(std::move(rep)), step_index(step_index) {}
  SolveReport report;
  long step_index = -1;
};

/// Solves the coupled stage system
///   (-i I_s (x) M1 + h A (x) M2) vec(K) = -i 1_s (x) (M1 y) + h (A (x) I) vec(F)
/// matrix-free and returns the s-by-m stage block K. `warm`, when non-null
/// and correctly sized, seeds the iteration; `precond` overrides the
/// preconditioner built from cfg.
CMat solve_stages(const LinearOdeSystem& sys, const ButcherTableau& tab, double t, const CVec& y,
                  double h, const GmresConfig& cfg, const CMat* warm = nullptr,
                  SolveReport* report = nullptr,
                  const LinearOdeSystem::StagePrecondFn* precond = nullptr);

/// One implicit Runge-Kutta step of size h > 0.
StepperState irk_step(const LinearOdeSystem& sys, const StepperState& state, double h,
                      const ButcherTableau& tab, const IrkOptions& opts = {});

using StepObserver = std::function<void(long step, double t, const CVec& y)>;

/// Integrates from t0 to T with fixed step h. (T - t0)/h must be an integer
/// within 1e-9, otherwise the call is rejected. The observer, when set, is
/// invoked once with the initial state (step 0) and after every step; GMRES
/// is warm-started from the previous step's stage block.
StepperState integrate(const LinearOdeSystem& sys, double t0, double T, double h,
                       const ButcherTableau& tab, const IrkOptions& opts = {},
                       const StepObserver& observer = {}, const CVec* y0 = nullptr,
                       long* total_gmres_iterations = nullptr);

}  // namespace schro2d
