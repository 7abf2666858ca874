#include "schro2d/gmres.hpp"

#include <cmath>
#include <stdexcept>

namespace schro2d {

namespace {

void check_finite(const CVec& v) {
  if (!v.allFinite()) throw std::runtime_error("gmres_solve: NaN/Inf encountered in Arnoldi");
}

}  // namespace

std::pair<CVec, SolveReport> gmres_solve(const LinOp& apply, const CVec& rhs,
                                         const GmresConfig& cfg, const CVec* x0,
                                         const LinOp* precond) {
  if (!(cfg.tol > 0.0) || cfg.restart < 1 || cfg.max_outer < 1)
    throw std::invalid_argument("gmres_solve: invalid configuration");
  const Index n = rhs.size();

  if (x0 && x0->size() != n)
    throw std::invalid_argument("gmres_solve: initial guess has wrong dimension");

  SolveReport rep;
  CVec x = x0 ? *x0 : CVec::Zero(n);

  auto precondition = [&](const CVec& v, CVec& out) {
    if (precond)
      (*precond)(v, out);
    else
      out = v;
  };

  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0.0) {
    rep.converged = true;
    return {CVec::Zero(n), rep};
  }

  CVec pb(n);
  precondition(rhs, pb);
  check_finite(pb);
  const double beta0 = pb.norm();
  if (beta0 == 0.0) throw std::runtime_error("gmres_solve: preconditioned rhs vanished");

  const int m = cfg.restart;
  std::vector<CVec> v(m + 1);
  CMat hess = CMat::Zero(m + 1, m);
  std::vector<Cplx> cs(m);
  std::vector<double> sn(m);
  CVec g(m + 1);
  CVec w(n), tmp(n);

  auto residual_vector = [&](CVec& out) {
    apply(x, tmp);
    tmp = rhs - tmp;
    precondition(tmp, out);
  };

  bool done = false;
  for (int outer = 0; outer < cfg.max_outer && !done; ++outer) {
    CVec r(n);
    residual_vector(r);
    const double beta = r.norm();
    if (beta / beta0 <= cfg.tol) break;

    v[0] = r / beta;
    g.setZero();
    g[0] = beta;

    int cols = 0;
    for (int j = 0; j < m; ++j) {
      apply(v[j], tmp);
      precondition(tmp, w);
      check_finite(w);

      for (int i = 0; i <= j; ++i) {
        const Cplx hij = v[i].dot(w);
        hess(i, j) = hij;
        w -= hij * v[i];
      }
      for (int i = 0; i <= j; ++i) {
        const Cplx corr = v[i].dot(w);
        hess(i, j) += corr;
        w -= corr * v[i];
      }
      const double hnext = w.norm();
      hess(j + 1, j) = hnext;
      check_finite(w);

      const bool breakdown = hnext == 0.0;
      if (!breakdown) v[j + 1] = w / hnext;

      // Fold previous rotations into the new column, then eliminate the
      // subdiagonal entry with one more.
      for (int i = 0; i < j; ++i) {
        const Cplx h1 = hess(i, j), h2 = hess(i + 1, j);
        hess(i, j) = cs[i] * h1 + sn[i] * h2;
        hess(i + 1, j) = -sn[i] * h1 + std::conj(cs[i]) * h2;
      }
      const Cplx a = hess(j, j);
      const double b = hnext;
      const double d = std::sqrt(std::norm(a) + b * b);
      if (d == 0.0) throw std::runtime_error("gmres_solve: singular Hessenberg column");
      cs[j] = std::conj(a) / d;
      sn[j] = b / d;
      hess(j, j) = d;
      hess(j + 1, j) = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];

      ++rep.iterations;
      const double res = std::abs(g[j + 1]);
      rep.residual_history.push_back(res / beta0);
      cols = j + 1;
      if (res / beta0 <= cfg.tol || breakdown) {
        done = res / beta0 <= cfg.tol;
        break;
      }
    }

    // Back-substitute the triangular least-squares system and update x.
    CVec y(cols);
    for (int i = cols - 1; i >= 0; --i) {
      Cplx s = g[i];
      for (int k = i + 1; k < cols; ++k) s -= hess(i, k) * y[k];
      y[i] = s / hess(i, i);
    }
    for (int i = 0; i < cols; ++i) x += y[i] * v[i];
  }

  CVec r(n);
  residual_vector(r);
  rep.final_relative_residual = r.norm() / beta0;
  apply(x, tmp);
  rep.true_relative_residual = (rhs - tmp).norm() / rhs_norm;
  rep.converged = rep.final_relative_residual <= cfg.tol;
  return {std::move(x), rep};
}

}  // namespace schro2d
