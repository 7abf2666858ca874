#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "schro2d/assembly.hpp"
#include "schro2d/irk.hpp"
#include "schro2d/problem.hpp"

namespace schro2d {

/// GMRES settings used for production solves: stage_exact cuts iteration
/// counts by two to three orders of magnitude at moderate N compared with
/// the plain mass-block preconditioner (measured ~720 vs ~7 iterations per
/// step at N = 12), and is the exact stage inverse when psi == 0.
GmresConfig solver_gmres_defaults();

struct RunConfig {
  std::string problem = "test1";  // "test1" or "test2"
  double k0 = 1.0;                // test2 wavenumber; echoed in outputs
  int N = 18;
  double h = 0.05;
  int quad_margin = 8;
  GmresConfig gmres = solver_gmres_defaults();
  std::optional<double> t0_override;
  std::optional<double> T_override;
};

/// Nodal error measures of one field against the exact solution at time t,
/// real and imaginary parts reported separately. l2 is the
/// quadrature-weighted norm on the solve's own Lobatto grid mapped to the
/// physical domain.
struct ErrorReport {
  double t = 0.0;
  double max_re = 0.0, max_im = 0.0;
  double avg_re = 0.0, avg_im = 0.0;
  double l2_re = 0.0, l2_im = 0.0;
};

SchrodingerProblem make_problem(const std::string& name, double k0);

/// sqrt( sum (a-b)^2 w_k w_m jacobian ) over the rule's tensor grid;
/// jacobian is ((d-c)/2)^2 for a domain (c,d)^2, 1 on the reference square.
double discrete_l2_error(const RMat& numeric, const RMat& exact, const QuadratureRule& rule,
                         double jacobian);

/// u(x,y,t) on a physical tensor grid: the basis expansion evaluated at the
/// mapped points plus the boundary lifting. Equals the boundary data on edge
/// points regardless of the coefficients.
CMat reconstruct_solution(const CVec& alpha, const LiftedProblem& lifted, const BasisSet& basis,
                          const std::vector<double>& physx, const std::vector<double>& physy,
                          double t);

ErrorReport compute_error_report(const CMat& numeric, const CMat& exact,
                                 const QuadratureRule& rule, double jacobian, double t);

struct SolveOutput {
  RunConfig cfg;
  double t0 = 0.0, T = 0.0;
  std::vector<double> grid;           // physical Lobatto nodes, N+1 of them
  QuadratureRule error_rule;          // reference rule behind `grid`
  CVec final_alpha;
  double final_t = 0.0;
  std::vector<ErrorReport> reports;   // at the requested sample times
  std::optional<ErrorReport> final_report;
  RMat final_abs_err_re, final_abs_err_im;  // |error| fields on the grid at T
  long gmres_iterations = 0;
};

/// Full solve of one configuration. Sample times must lie on the step grid;
/// error reports require the problem to carry an exact solution.
SolveOutput run_solve(const RunConfig& cfg, const std::vector<double>& sample_times = {});

std::vector<ErrorReport> error_table(const RunConfig& cfg, const std::vector<double>& sample_times);

struct ConvergenceRow {
  int N = 0;
  double l2_re = 0.0, l2_im = 0.0;
};
/// One full solve per N (ascending), errors at the final time.
std::vector<ConvergenceRow> convergence_sweep(const RunConfig& cfg, const std::vector<int>& Ns);

struct TimeOrderRow {
  double h = 0.0;
  double l2_re = 0.0, l2_im = 0.0;
};
struct TimeOrderResult {
  std::vector<TimeOrderRow> rows;
  double slope = 0.0;  // least-squares slope of log(error) vs log(h)
};
TimeOrderResult time_order_sweep(const RunConfig& cfg, const std::vector<double>& hs);

/// Order study on the scalar surrogate y' = i y over [0, 1]; rows carry the
/// absolute real/imaginary errors at T = 1.
TimeOrderResult time_order_surrogate(const std::vector<double>& hs, double gmres_tol = 1e-14);

/// Scientific notation with 6 significant digits; the format used in every
/// CSV this library writes.
std::string format_sci(double v);

double fit_loglog_slope(const std::vector<double>& hs, const std::vector<double>& errs);

void write_error_table_csv(std::ostream& os, const std::vector<ErrorReport>& reports);
void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows);
void write_time_order_csv(std::ostream& os, const TimeOrderResult& result);
void write_error_surface_csv(std::ostream& os, const std::vector<double>& gridx,
                             const std::vector<double>& gridy, const RMat& abs_re,
                             const RMat& abs_im);

}  // namespace schro2d
