#include "schro2d/irk.hpp"

#include <cmath>
#include <string>

#include "schro2d/kronvec.hpp"

namespace schro2d {

ButcherTableau gauss3_tableau() {
  const double r15 = std::sqrt(15.0);
  ButcherTableau tab;
  tab.s = 3;
  tab.A.resize(3, 3);
  tab.A << 5.0 / 36.0, 2.0 / 9.0 - r15 / 15.0, 5.0 / 36.0 - r15 / 30.0,  //
      5.0 / 36.0 + r15 / 24.0, 2.0 / 9.0, 5.0 / 36.0 - r15 / 24.0,       //
      5.0 / 36.0 + r15 / 30.0, 2.0 / 9.0 + r15 / 15.0, 5.0 / 36.0;
  tab.b.resize(3);
  tab.b << 5.0 / 18.0, 4.0 / 9.0, 5.0 / 18.0;
  tab.c.resize(3);
  tab.c << 0.5 - r15 / 10.0, 0.5, 0.5 + r15 / 10.0;
  return tab;
}

LinearOdeSystem::StagePrecondFn LinearOdeSystem::stage_preconditioner(
    GmresConfig::Precond kind, const ButcherTableau&, double) const {
  switch (kind) {
    case GmresConfig::Precond::none:
      return {};
    case GmresConfig::Precond::stage_mass:
      // (-i I_s (x) M1)^{-1} = i I_s (x) M1^{-1}, one mass solve per row.
      return [this](CMat& block) {
        for (Index l = 0; l < block.rows(); ++l) {
          const CVec row = block.row(l).transpose();
          block.row(l) = (imag_unit * solve_m1(row)).transpose();
        }
      };
    case GmresConfig::Precond::stage_exact:
      throw std::invalid_argument(
          "stage_exact preconditioner is not available for this system type");
  }
  throw std::invalid_argument("unknown preconditioner kind");
}

DiagonalOdeSystem::DiagonalOdeSystem(CVec m1_diag, CVec m2_diag, CVec y0,
                                     std::function<CVec(double)> forcing)
    : m1_(std::move(m1_diag)), m2_(std::move(m2_diag)), y0_(std::move(y0)), f_(std::move(forcing)) {
  if (m1_.size() != m2_.size() || m1_.size() != y0_.size())
    throw std::invalid_argument("DiagonalOdeSystem: dimension mismatch");
  if ((m1_.array() == Cplx(0.0)).any())
    throw std::invalid_argument("DiagonalOdeSystem: M1 diagonal must be invertible");
}

CVec DiagonalOdeSystem::forcing(double t) const {
  if (f_) return f_(t);
  return CVec::Zero(dim());
}

namespace {

CMat stage_forcing(const LinearOdeSystem& sys, const ButcherTableau& tab, double t, double h) {
  CMat f(tab.s, sys.dim());
  for (int l = 0; l < tab.s; ++l) f.row(l) = sys.forcing(t + tab.c[l] * h).transpose();
  return f;
}

}  // namespace

CMat solve_stages(const LinearOdeSystem& sys, const ButcherTableau& tab, double t, const CVec& y,
                  double h, const GmresConfig& cfg, const CMat* warm, SolveReport* report,
                  const LinearOdeSystem::StagePrecondFn* precond) {
  if (!(h > 0.0)) throw std::invalid_argument("solve_stages: h must be positive");
  const Index m = sys.dim();
  const int s = tab.s;
  const CMat ac = tab.A.cast<Cplx>();

  const CMat f = stage_forcing(sys, tab, t, h);
  const CVec m1y_scaled = imag_unit * sys.apply_m1(y);
  CMat rhs_block = h * (ac * f);  // row l: -i M1 y + h sum_j a_lj f_j
  for (int l = 0; l < s; ++l) rhs_block.row(l) -= m1y_scaled.transpose();

  const LinOp op = [&](const CVec& in, CVec& out) {
    const CMat v = unvec_rowmajor(in, s, m);
    CMat z(s, m);
    for (int j = 0; j < s; ++j) {
      const CVec row = v.row(j).transpose();
      z.row(j) = sys.apply_m2(row).transpose();
    }
    CMat o = h * (ac * z);
    for (int l = 0; l < s; ++l) {
      const CVec row = v.row(l).transpose();
      o.row(l) -= (imag_unit * sys.apply_m1(row)).transpose();
    }
    out = vec_rowmajor(o);
  };

  LinearOdeSystem::StagePrecondFn pfn;
  if (!precond) {
    pfn = sys.stage_preconditioner(cfg.preconditioner, tab, h);
    precond = &pfn;
  }
  LinOp pop;
  const LinOp* pop_ptr = nullptr;
  if (*precond) {
    pop = [&sys, s, m, precond](const CVec& in, CVec& out) {
      CMat block = unvec_rowmajor(in, s, m);
      (*precond)(block);
      out = vec_rowmajor(block);
    };
    pop_ptr = &pop;
  }

  CVec x0;
  const CVec* x0_ptr = nullptr;
  if (warm && warm->rows() == s && warm->cols() == m) {
    x0 = vec_rowmajor(*warm);
    x0_ptr = &x0;
  } else {
    // Stages of a smooth trajectory stay near y; seed with copies of it.
    CMat seed(s, m);
    for (int l = 0; l < s; ++l) seed.row(l) = y.transpose();
    x0 = vec_rowmajor(seed);
    x0_ptr = &x0;
  }

  auto [sol, rep] = gmres_solve(op, vec_rowmajor(rhs_block), cfg, x0_ptr, pop_ptr);
  if (report) *report = rep;
  if (!rep.converged)
    throw StageSolveError("irk stage solve did not converge (relative residual " +
                              std::to_string(rep.final_relative_residual) + ")",
                          rep, -1);
  return unvec_rowmajor(sol, s, m);
}

namespace {

StepperState step_impl(const LinearOdeSystem& sys, const StepperState& state, double h,
                       const ButcherTableau& tab, const IrkOptions& opts, const CMat* warm,
                       CMat* stages_out, long* iterations_out,
                       const LinearOdeSystem::StagePrecondFn* precond) {
  const Index m = sys.dim();
  const int s = tab.s;

  SolveReport rep;
  CMat k;
  try {
    k = solve_stages(sys, tab, state.t, state.y, h, opts.gmres, warm, &rep, precond);
  } catch (StageSolveError& err) {
    err.step_index = state.step_count;
    throw;
  }
  if (iterations_out) *iterations_out += rep.iterations;

  StepperState next;
  next.t = state.t + h;
  next.step_count = state.step_count + 1;

  if (opts.update == IrkOptions::Update::mass_solve) {
    // M1 (y_{n+1} - y_n) = i h sum_l b_l (f_l - M2 k_l), solved exactly.
    CVec accum = CVec::Zero(m);
    for (int l = 0; l < s; ++l) {
      const CVec kl = k.row(l).transpose();
      const CVec fl = sys.forcing(state.t + tab.c[l] * h);
      accum += tab.b[l] * (fl - sys.apply_m2(kl));
    }
    next.y = state.y + sys.solve_m1(CVec(imag_unit * h * accum));
  } else {
    // y_{n+1} = y_n + b^T A^{-1} (K - 1_s y_n^T).
    const Eigen::VectorXd d = tab.A.transpose().partialPivLu().solve(tab.b);
    next.y = state.y;
    for (int l = 0; l < s; ++l) {
      const CVec kl = k.row(l).transpose();
      next.y += d[l] * (kl - state.y);
    }
  }

  if (stages_out) *stages_out = std::move(k);
  return next;
}

}  // namespace

StepperState irk_step(const LinearOdeSystem& sys, const StepperState& state, double h,
                      const ButcherTableau& tab, const IrkOptions& opts) {
  return step_impl(sys, state, h, tab, opts, nullptr, nullptr, nullptr, nullptr);
}

StepperState integrate(const LinearOdeSystem& sys, double t0, double T, double h,
                       const ButcherTableau& tab, const IrkOptions& opts,
                       const StepObserver& observer, const CVec* y0,
                       long* total_gmres_iterations) {
  if (T < t0) throw std::invalid_argument("integrate: T must be >= t0");
  StepperState state;
  state.t = t0;
  state.y = y0 ? *y0 : sys.initial_state();
  if (state.y.size() != sys.dim()) throw std::invalid_argument("integrate: bad initial state size");

  long n_steps = 0;
  if (T > t0) {
    if (!(h > 0.0)) throw std::invalid_argument("integrate: h must be positive");
    const double ratio = (T - t0) / h;
    n_steps = std::lround(ratio);
    if (n_steps < 1 || std::abs(ratio - static_cast<double>(n_steps)) > 1e-9)
      throw std::invalid_argument("integrate: (T - t0)/h must be an integer within 1e-9");
  }

  if (observer) observer(0, state.t, state.y);

  const LinearOdeSystem::StagePrecondFn precond =
      sys.stage_preconditioner(opts.gmres.preconditioner, tab, h);
  CMat stages;
  const CMat* warm = nullptr;
  for (long n = 0; n < n_steps; ++n) {
    state.t = t0 + n * h;  // keep step times free of accumulation error
    state = step_impl(sys, state, h, tab, opts, warm, &stages, total_gmres_iterations, &precond);
    warm = &stages;
    if (observer) observer(n + 1, state.t, state.y);
  }
  return state;
}

}  // namespace schro2d
