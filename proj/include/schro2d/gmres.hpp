#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "schro2d/types.hpp"

namespace schro2d {

struct GmresConfig {
  double tol = 1e-12;  // relative residual target (preconditioned when a
                       // preconditioner is supplied)
  int restart = 50;
  int max_outer = 200;

  enum class Precond {
    none,
    stage_mass,  // inverse of the -i I_s (x) M1 block, applied exactly
    stage_exact  // inverse of the full stage operator with the potential
                 // term dropped; exact when psi == 0
  };
  Precond preconditioner = Precond::stage_mass;
};

struct SolveReport {
  long iterations = 0;                    // total inner iterations
  double final_relative_residual = 0.0;   // preconditioned, measured at exit
  double true_relative_residual = 0.0;    // unpreconditioned, measured at exit
  bool converged = false;
  std::vector<double> residual_history;   // one entry per inner iteration
};

using LinOp = std::function<void(const CVec&, CVec&)>;

/// Restarted GMRES over the complex field. Arnoldi uses modified
/// Gram-Schmidt with one unconditional reorthogonalization pass, so two runs
/// with identical inputs produce bit-identical iterates. Non-convergence is
/// reported through the SolveReport, never silently; NaN/Inf appearing in
/// the Arnoldi process is a hard error.
std::pair<CVec, SolveReport> gmres_solve(const LinOp& apply, const CVec& rhs,
                                         const GmresConfig& cfg, const CVec* x0 = nullptr,
                                         const LinOp* precond = nullptr);

}  // namespace schro2d
