#include "schro2d/basis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace schro2d {

BasisSet::BasisSet(int degree_in) : degree(degree_in) {
  if (degree < 2) throw std::invalid_argument("BasisSet: degree must be >= 2");
  c.resize(dim());
  for (int k = 0; k < dim(); ++k) c[k] = 1.0 / std::sqrt(4.0 * k + 6.0);
}

double BasisSet::eval(int k, double x) const {
  if (k < 0 || k >= dim()) throw std::out_of_range("BasisSet::eval: index out of range");
  return c[k] * (legendre_eval(k, x) - legendre_eval(k + 2, x));
}

double BasisSet::eval_deriv(int k, double x) const {
  if (k < 0 || k >= dim()) throw std::out_of_range("BasisSet::eval_deriv: index out of range");
  return c[k] * (legendre_deriv(k, x) - legendre_deriv(k + 2, x));
}

RMat BasisSet::sample(const std::vector<double>& points) const {
  RMat p(dim(), static_cast<Index>(points.size()));
  for (Index q = 0; q < p.cols(); ++q)
    for (int k = 0; k < dim(); ++k) p(k, q) = eval(k, points[q]);
  return p;
}

RMat BasisSet::sample_deriv(const std::vector<double>& points) const {
  RMat p(dim(), static_cast<Index>(points.size()));
  for (Index q = 0; q < p.cols(); ++q)
    for (int k = 0; k < dim(); ++k) p(k, q) = eval_deriv(k, points[q]);
  return p;
}

void MassMatrix::TridiagLDLT::factor(const std::vector<double>& a, const std::vector<double>& e) {
  const int n = static_cast<int>(a.size());
  d.assign(n, 0.0);
  l.assign(n > 0 ? n - 1 : 0, 0.0);
  for (int i = 0; i < n; ++i) {
    double di = a[i];
    if (i > 0) di -= l[i - 1] * l[i - 1] * d[i - 1];
    if (!(di > 0.0))
      throw std::runtime_error("MassMatrix: tridiagonal factorization broke down (matrix not positive definite)");
    d[i] = di;
    if (i + 1 < n) l[i] = e[i] / di;
  }
}

void MassMatrix::TridiagLDLT::solve(Cplx* x, int stride, int n) const {
  for (int i = 1; i < n; ++i) x[i * stride] -= l[i - 1] * x[(i - 1) * stride];
  for (int i = 0; i < n; ++i) x[i * stride] /= d[i];
  for (int i = n - 2; i >= 0; --i) x[i * stride] -= l[i] * x[(i + 1) * stride];
}

MassMatrix::MassMatrix(int degree) {
  BasisSet basis(degree);
  dim_ = basis.dim();
  diag_.resize(dim_);
  off2_.resize(dim_ > 2 ? dim_ - 2 : 0);
  for (int k = 0; k < dim_; ++k) {
    const double ck = basis.c[k];
    diag_[k] = ck * ck * (2.0 / (2 * k + 1) + 2.0 / (2 * k + 5));
  }
  for (int k = 0; k + 2 < dim_; ++k) off2_[k] = -basis.c[k] * basis.c[k + 2] * 2.0 / (2 * k + 5);

  // Parity-split tridiagonal blocks: entry (k, k+2) couples equal parities.
  std::vector<double> ae, ee, ao, eo;
  for (int k = 0; k < dim_; k += 2) {
    ae.push_back(diag_[k]);
    if (k + 2 < dim_) ee.push_back(off2_[k]);
  }
  for (int k = 1; k < dim_; k += 2) {
    ao.push_back(diag_[k]);
    if (k + 2 < dim_) eo.push_back(off2_[k]);
  }
  even_.factor(ae, ee);
  if (!ao.empty()) odd_.factor(ao, eo);
}

CMat MassMatrix::apply_left(const CMat& x) const {
  if (x.rows() != dim_) throw std::invalid_argument("MassMatrix::apply_left: row mismatch");
  CMat out(x.rows(), x.cols());
  for (int k = 0; k < dim_; ++k) {
    out.row(k) = diag_[k] * x.row(k);
    if (k >= 2) out.row(k) += off2_[k - 2] * x.row(k - 2);
    if (k + 2 < dim_) out.row(k) += off2_[k] * x.row(k + 2);
  }
  return out;
}

CMat MassMatrix::apply_right(const CMat& x) const {
  if (x.cols() != dim_) throw std::invalid_argument("MassMatrix::apply_right: column mismatch");
  CMat out(x.rows(), x.cols());
  for (int k = 0; k < dim_; ++k) {
    out.col(k) = diag_[k] * x.col(k);
    if (k >= 2) out.col(k) += off2_[k - 2] * x.col(k - 2);
    if (k + 2 < dim_) out.col(k) += off2_[k] * x.col(k + 2);
  }
  return out;
}

CMat MassMatrix::solve_left(const CMat& x) const {
  if (x.rows() != dim_) throw std::invalid_argument("MassMatrix::solve_left: row mismatch");
  CMat out = x;
  const int ne = (dim_ + 1) / 2;
  const int no = dim_ / 2;
  std::vector<Cplx> work(ne);
  for (Index j = 0; j < out.cols(); ++j) {
    for (int i = 0; i < ne; ++i) work[i] = out(2 * i, j);
    even_.solve(work.data(), 1, ne);
    for (int i = 0; i < ne; ++i) out(2 * i, j) = work[i];
    if (no > 0) {
      for (int i = 0; i < no; ++i) work[i] = out(2 * i + 1, j);
      odd_.solve(work.data(), 1, no);
      for (int i = 0; i < no; ++i) out(2 * i + 1, j) = work[i];
    }
  }
  return out;
}

CMat MassMatrix::solve_right(const CMat& x) const {
  if (x.cols() != dim_) throw std::invalid_argument("MassMatrix::solve_right: column mismatch");
  CMat out = x;
  const int ne = (dim_ + 1) / 2;
  const int no = dim_ / 2;
  std::vector<Cplx> work(ne);
  for (Index i = 0; i < out.rows(); ++i) {
    for (int k = 0; k < ne; ++k) work[k] = out(i, 2 * k);
    even_.solve(work.data(), 1, ne);
    for (int k = 0; k < ne; ++k) out(i, 2 * k) = work[k];
    if (no > 0) {
      for (int k = 0; k < no; ++k) work[k] = out(i, 2 * k + 1);
      odd_.solve(work.data(), 1, no);
      for (int k = 0; k < no; ++k) out(i, 2 * k + 1) = work[k];
    }
  }
  return out;
}

RMat MassMatrix::dense() const {
  RMat b = RMat::Zero(dim_, dim_);
  for (int k = 0; k < dim_; ++k) b(k, k) = diag_[k];
  for (int k = 0; k + 2 < dim_; ++k) b(k, k + 2) = b(k + 2, k) = off2_[k];
  return b;
}

CMat mass_solve(const MassMatrix& m, const CMat& rhs) {
  if (rhs.rows() != m.dim() || rhs.cols() != m.dim())
    throw std::invalid_argument("mass_solve: rhs must be dim x dim");
  return m.solve_right(m.solve_left(rhs));
}

SpectralTransform::SpectralTransform(const BasisSet& basis, QuadratureRule rule)
    : degree_(basis.degree), rule_(std::move(rule)) {
  if (rule_.order < degree_ + 2)
    throw std::invalid_argument("SpectralTransform: rule order " + std::to_string(rule_.order) +
                                " too coarse for degree " + std::to_string(degree_) +
                                " (need >= degree + 2)");
  const RMat p = basis.sample(rule_.nodes);
  p_ = p.cast<Cplx>();
  RMat pw = p;
  for (Index q = 0; q < pw.cols(); ++q) pw.col(q) *= rule_.weights[q];
  pw_ = pw.cast<Cplx>();
}

CMat SpectralTransform::synthesize(const CMat& alpha) const {
  if (alpha.rows() != dim() || alpha.cols() != dim())
    throw std::invalid_argument("SpectralTransform::synthesize: coefficient matrix has wrong size");
  return p_.transpose() * alpha * p_;
}

CMat SpectralTransform::analyze(const CMat& samples) const {
  const int npts = rule_.num_points();
  if (samples.rows() != npts || samples.cols() != npts)
    throw std::invalid_argument("SpectralTransform::analyze: sample grid does not match rule");
  return pw_ * samples * pw_.transpose();
}

CMat synthesize(const BasisSet& basis, const CMat& alpha, const std::vector<double>& gridx,
                const std::vector<double>& gridy) {
  if (alpha.rows() != basis.dim() || alpha.cols() != basis.dim())
    throw std::invalid_argument("synthesize: coefficient matrix has wrong size");
  const CMat px = basis.sample(gridx).cast<Cplx>();
  const CMat py = basis.sample(gridy).cast<Cplx>();
  return px.transpose() * alpha * py;
}

}  // namespace schro2d
