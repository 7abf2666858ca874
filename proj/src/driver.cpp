#include "schro2d/driver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace schro2d {

GmresConfig solver_gmres_defaults() {
  GmresConfig cfg;
  cfg.preconditioner = GmresConfig::Precond::stage_exact;
  return cfg;
}

SchrodingerProblem make_problem(const std::string& name, double k0) {
  if (name == "test1") return test_problem_1();
  if (name == "test2") return test_problem_2(k0);
  throw std::invalid_argument("unknown problem '" + name + "' (expected test1 or test2)");
}

double discrete_l2_error(const RMat& numeric, const RMat& exact, const QuadratureRule& rule,
                         double jacobian) {
  const int npts = rule.num_points();
  if (numeric.rows() != npts || numeric.cols() != npts || exact.rows() != npts ||
      exact.cols() != npts)
    throw std::invalid_argument("discrete_l2_error: fields do not match the rule grid");
  double sum = 0.0;
  for (int k = 0; k < npts; ++k)
    for (int m = 0; m < npts; ++m) {
      const double diff = numeric(k, m) - exact(k, m);
      sum += diff * diff * rule.weights[k] * rule.weights[m];
    }
  return std::sqrt(sum * jacobian);
}

CMat reconstruct_solution(const CVec& alpha, const LiftedProblem& lifted, const BasisSet& basis,
                          const std::vector<double>& physx, const std::vector<double>& physy,
                          double t) {
  const Index n = basis.dim();
  if (alpha.size() != n * n)
    throw std::invalid_argument("reconstruct_solution: coefficient vector has wrong length");
  std::vector<double> refx(physx.size()), refy(physy.size());
  for (size_t i = 0; i < physx.size(); ++i) refx[i] = lifted.to_reference(physx[i]);
  for (size_t i = 0; i < physy.size(); ++i) refy[i] = lifted.to_reference(physy[i]);
  CMat field = synthesize(basis, unvec_rowmajor(alpha, n, n), refx, refy);
  for (Index p = 0; p < field.rows(); ++p)
    for (Index q = 0; q < field.cols(); ++q)
      field(p, q) += lifted.lift(refx[p], refy[q], t).value;
  return field;
}

ErrorReport compute_error_report(const CMat& numeric, const CMat& exact,
                                 const QuadratureRule& rule, double jacobian, double t) {
  const int npts = rule.num_points();
  if (numeric.rows() != npts || numeric.cols() != npts || exact.rows() != npts ||
      exact.cols() != npts)
    throw std::invalid_argument("compute_error_report: fields do not match the rule grid");
  ErrorReport r;
  r.t = t;
  double sum_re = 0.0, sum_im = 0.0;
  for (int k = 0; k < npts; ++k)
    for (int m = 0; m < npts; ++m) {
      const Cplx diff = numeric(k, m) - exact(k, m);
      const double dre = std::abs(diff.real()), dim = std::abs(diff.imag());
      r.max_re = std::max(r.max_re, dre);
      r.max_im = std::max(r.max_im, dim);
      sum_re += dre;
      sum_im += dim;
    }
  const double count = static_cast<double>(npts) * npts;
  r.avg_re = sum_re / count;
  r.avg_im = sum_im / count;
  r.l2_re = discrete_l2_error(numeric.real(), exact.real(), rule, jacobian);
  r.l2_im = discrete_l2_error(numeric.imag(), exact.imag(), rule, jacobian);
  return r;
}

namespace {

RMat sample_exact_part(const ExactSolution& exact, const std::vector<double>& gx,
                       const std::vector<double>& gy, double t, bool real_part) {
  RMat out(static_cast<Index>(gx.size()), static_cast<Index>(gy.size()));
  for (size_t p = 0; p < gx.size(); ++p)
    for (size_t q = 0; q < gy.size(); ++q) {
      const Cplx v = exact.value(gx[p], gy[q], t);
      out(static_cast<Index>(p), static_cast<Index>(q)) = real_part ? v.real() : v.imag();
    }
  return out;
}

CMat sample_exact(const ExactSolution& exact, const std::vector<double>& gx,
                  const std::vector<double>& gy, double t) {
  CMat out(static_cast<Index>(gx.size()), static_cast<Index>(gy.size()));
  for (size_t p = 0; p < gx.size(); ++p)
    for (size_t q = 0; q < gy.size(); ++q)
      out(static_cast<Index>(p), static_cast<Index>(q)) = exact.value(gx[p], gy[q], t);
  return out;
}

}  // namespace

SolveOutput run_solve(const RunConfig& cfg, const std::vector<double>& sample_times) {
  SchrodingerProblem problem = make_problem(cfg.problem, cfg.k0);
  if (cfg.t0_override) problem.t0 = *cfg.t0_override;
  if (cfg.T_override) problem.T = *cfg.T_override;

  auto lifted = std::make_shared<const LiftedProblem>(problem);
  SystemConfig syscfg;
  syscfg.quad_margin = cfg.quad_margin;
  SemidiscreteSystem system(lifted, cfg.N, syscfg);

  SolveOutput out;
  out.cfg = cfg;
  out.t0 = problem.t0;
  out.T = problem.T;
  out.error_rule = lgl_rule(cfg.N);
  out.grid.resize(out.error_rule.nodes.size());
  for (size_t i = 0; i < out.grid.size(); ++i)
    out.grid[i] = lifted->to_physical(out.error_rule.nodes[i]);
  const double half = 0.5 * (problem.d - problem.c);
  const double jacobian = half * half;

  if (!sample_times.empty() && !problem.exact)
    throw std::invalid_argument("run_solve: error sampling requires an exact solution");

  const double ratio = (problem.T - problem.t0) / cfg.h;
  const long n_steps = std::lround(ratio);
  if (n_steps < 1 || std::abs(ratio - static_cast<double>(n_steps)) > 1e-9)
    throw std::invalid_argument("run_solve: (T - t0)/h must be an integer within 1e-9");

  // Sample times must land on step boundaries.
  std::vector<std::pair<long, double>> samples;
  for (double ts : sample_times) {
    const long idx = std::lround((ts - problem.t0) / cfg.h);
    if (idx < 0 || idx > n_steps || std::abs(problem.t0 + idx * cfg.h - ts) > 1e-9)
      throw std::invalid_argument("run_solve: sample time " + std::to_string(ts) +
                                  " is not on the step grid");
    samples.emplace_back(idx, ts);
  }

  auto report_at = [&](const CVec& alpha, double t) {
    const CMat numeric = reconstruct_solution(alpha, *lifted, system.basis(), out.grid, out.grid, t);
    const CMat exact = sample_exact(*problem.exact, out.grid, out.grid, t);
    return compute_error_report(numeric, exact, out.error_rule, jacobian, t);
  };

  StepObserver observer;
  if (!samples.empty()) {
    observer = [&](long step, double /*t*/, const CVec& y) {
      for (const auto& [idx, ts] : samples)
        if (idx == step) out.reports.push_back(report_at(y, ts));
    };
  }

  IrkOptions opts;
  opts.gmres = cfg.gmres;
  const ButcherTableau tab = gauss3_tableau();
  const StepperState final_state = integrate(system, problem.t0, problem.T, cfg.h, tab, opts,
                                             observer, nullptr, &out.gmres_iterations);

  out.final_alpha = final_state.y;
  out.final_t = problem.t0 + n_steps * cfg.h;

  if (problem.exact) {
    const CMat numeric = reconstruct_solution(out.final_alpha, *lifted, system.basis(), out.grid,
                                              out.grid, out.final_t);
    const CMat exact = sample_exact(*problem.exact, out.grid, out.grid, out.final_t);
    out.final_report = compute_error_report(numeric, exact, out.error_rule, jacobian, out.final_t);
    out.final_abs_err_re = (numeric - exact).real().cwiseAbs();
    out.final_abs_err_im = (numeric - exact).imag().cwiseAbs();
  }
  return out;
}

std::vector<ErrorReport> error_table(const RunConfig& cfg,
                                     const std::vector<double>& sample_times) {
  return run_solve(cfg, sample_times).reports;
}

std::vector<ConvergenceRow> convergence_sweep(const RunConfig& cfg, const std::vector<int>& Ns) {
  if (!std::is_sorted(Ns.begin(), Ns.end()))
    throw std::invalid_argument("convergence_sweep: Ns must be ascending");
  std::vector<ConvergenceRow> rows;
  rows.reserve(Ns.size());
  for (int n : Ns) {
    RunConfig c = cfg;
    c.N = n;
    const SolveOutput out = run_solve(c);
    if (!out.final_report)
      throw std::invalid_argument("convergence_sweep: problem has no exact solution");
    rows.push_back({n, out.final_report->l2_re, out.final_report->l2_im});
  }
  return rows;
}

TimeOrderResult time_order_sweep(const RunConfig& cfg, const std::vector<double>& hs) {
  TimeOrderResult result;
  std::vector<double> errs;
  for (double h : hs) {
    RunConfig c = cfg;
    c.h = h;
    const SolveOutput out = run_solve(c);
    if (!out.final_report)
      throw std::invalid_argument("time_order_sweep: problem has no exact solution");
    result.rows.push_back({h, out.final_report->l2_re, out.final_report->l2_im});
    errs.push_back(std::hypot(out.final_report->l2_re, out.final_report->l2_im));
  }
  if (hs.size() >= 2) result.slope = fit_loglog_slope(hs, errs);
  return result;
}

TimeOrderResult time_order_surrogate(const std::vector<double>& hs, double gmres_tol) {
  CVec one = CVec::Ones(1);
  const DiagonalOdeSystem sys(one, -one, one);  // y' = i y, y(0) = 1
  const ButcherTableau tab = gauss3_tableau();
  IrkOptions opts;
  opts.gmres.tol = gmres_tol;

  TimeOrderResult result;
  std::vector<double> errs;
  for (double h : hs) {
    const StepperState fin = integrate(sys, 0.0, 1.0, h, tab, opts);
    const Cplx diff = fin.y[0] - std::exp(imag_unit * 1.0);
    result.rows.push_back({h, std::abs(diff.real()), std::abs(diff.imag())});
    errs.push_back(std::abs(diff));
  }
  if (hs.size() >= 2) result.slope = fit_loglog_slope(hs, errs);
  return result;
}

std::string format_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.5e", v);
  return buf;
}

double fit_loglog_slope(const std::vector<double>& hs, const std::vector<double>& errs) {
  if (hs.size() != errs.size() || hs.size() < 2)
    throw std::invalid_argument("fit_loglog_slope: need at least two samples");
  const double n = static_cast<double>(hs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < hs.size(); ++i) {
    const double x = std::log(hs[i]);
    const double y = std::log(std::max(errs[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void write_error_table_csv(std::ostream& os, const std::vector<ErrorReport>& reports) {
  os << "t,max_re,max_im,avg_re,avg_im,l2_re,l2_im\n";
  for (const auto& r : reports)
    os << format_sci(r.t) << ',' << format_sci(r.max_re) << ',' << format_sci(r.max_im) << ','
       << format_sci(r.avg_re) << ',' << format_sci(r.avg_im) << ',' << format_sci(r.l2_re) << ','
       << format_sci(r.l2_im) << '\n';
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
  os << "N,l2_re,l2_im\n";
  for (const auto& r : rows)
    os << r.N << ',' << format_sci(r.l2_re) << ',' << format_sci(r.l2_im) << '\n';
}

void write_time_order_csv(std::ostream& os, const TimeOrderResult& result) {
  os << "h,l2_re,l2_im,slope\n";
  for (const auto& r : result.rows)
    os << format_sci(r.h) << ',' << format_sci(r.l2_re) << ',' << format_sci(r.l2_im) << ','
       << format_sci(result.slope) << '\n';
}

void write_error_surface_csv(std::ostream& os, const std::vector<double>& gridx,
                             const std::vector<double>& gridy, const RMat& abs_re,
                             const RMat& abs_im) {
  if (abs_re.rows() != static_cast<Index>(gridx.size()) ||
      abs_re.cols() != static_cast<Index>(gridy.size()) || abs_im.rows() != abs_re.rows() ||
      abs_im.cols() != abs_re.cols())
    throw std::invalid_argument("write_error_surface_csv: field/grid size mismatch");
  os << "x,y,abs_err_re,abs_err_im\n";
  for (size_t p = 0; p < gridx.size(); ++p)
    for (size_t q = 0; q < gridy.size(); ++q)
      os << format_sci(gridx[p]) << ',' << format_sci(gridy[q]) << ','
         << format_sci(abs_re(static_cast<Index>(p), static_cast<Index>(q))) << ','
         << format_sci(abs_im(static_cast<Index>(p), static_cast<Index>(q))) << '\n';
}

}  // namespace schro2d
