#pragma once

#include "schro2d/types.hpp"

namespace schro2d {

// vec() here stacks the ROWS of a matrix into one column vector. Under this
// convention vec(A B C) = (A (x) C^T) vec(B), and for column vectors a, b
// vec(a b^T) = a (x) b. Everything Kronecker-shaped in this library relies
// on these two identities.

/// Dense Kronecker product A (x) B: block (i,j) equals a_ij * B.
CMat kron(const CMat& a, const CMat& b);

/// Row-major flattening (a11, ..., a1n, a21, ..., amn).
CVec vec_rowmajor(const CMat& a);

/// Inverse of vec_rowmajor; throws if v.size() != rows*cols.
CMat unvec_rowmajor(const CVec& v, Index rows, Index cols);

/// Applies A (x) C^T to vec(X) without forming the Kronecker product:
/// returns vec(A * unvec(x) * C). Cost O(m^2 p + m p^2) for A m-by-m,
/// C p-by-p.
CVec kron_apply(const CMat& a, const CMat& c, const CVec& x);

/// A square operator that can multiply a matrix from either side. Structured
/// factors (banded mass matrix, identity) implement this so Kronecker
/// operators can be applied without dense materialization.
class MatrixOp {
 public:
  virtual ~MatrixOp() = default;
  virtual Index size() const = 0;
  virtual CMat apply_left(const CMat& x) const = 0;   // Op * X
  virtual CMat apply_right(const CMat& x) const = 0;  // X * Op
};

/// kron_apply for structured operands: vec(A * unvec(x) * C).
CVec kron_apply(const MatrixOp& a, const MatrixOp& c, const CVec& x);

class DenseOp final : public MatrixOp {
 public:
  explicit DenseOp(CMat m);
  Index size() const override { return m_.rows(); }
  CMat apply_left(const CMat& x) const override { return m_ * x; }
  CMat apply_right(const CMat& x) const override { return x * m_; }

 private:
  CMat m_;
};

class IdentityOp final : public MatrixOp {
 public:
  explicit IdentityOp(Index n) : n_(n) {}
  Index size() const override { return n_; }
  CMat apply_left(const CMat& x) const override { return x; }
  CMat apply_right(const CMat& x) const override { return x; }

 private:
  Index n_;
};

}  // namespace schro2d
