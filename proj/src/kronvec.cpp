#include "schro2d/kronvec.hpp"

#include <stdexcept>

namespace schro2d {

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CVec vec_rowmajor(const CMat& a) {
  CVec v(a.size());
  Index idx = 0;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) v[idx++] = a(i, j);
  return v;
}

CMat unvec_rowmajor(const CVec& v, Index rows, Index cols) {
  if (v.size() != rows * cols)
    throw std::invalid_argument("unvec_rowmajor: length does not equal rows*cols");
  CMat a(rows, cols);
  Index idx = 0;
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) a(i, j) = v[idx++];
  return a;
}

CVec kron_apply(const CMat& a, const CMat& c, const CVec& x) {
  if (a.rows() != a.cols() || c.rows() != c.cols())
    throw std::invalid_argument("kron_apply: factors must be square");
  if (x.size() != a.rows() * c.rows())
    throw std::invalid_argument("kron_apply: vector length does not match factors");
  const CMat xm = unvec_rowmajor(x, a.rows(), c.rows());
  return vec_rowmajor(a * xm * c);
}

CVec kron_apply(const MatrixOp& a, const MatrixOp& c, const CVec& x) {
  if (x.size() != a.size() * c.size())
    throw std::invalid_argument("kron_apply: vector length does not match operators");
  const CMat xm = unvec_rowmajor(x, a.size(), c.size());
  return vec_rowmajor(a.apply_left(c.apply_right(xm)));
}

DenseOp::DenseOp(CMat m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("DenseOp: matrix must be square");
}

}  // namespace schro2d
