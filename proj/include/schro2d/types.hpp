#pragma once

#include <complex>

#include <Eigen/Dense>

namespace schro2d {

using Cplx = std::complex<double>;

// Matrices are stored row-major so that flattening a matrix yields its rows
// concatenated; every Kronecker identity in this library assumes that layout.
using CMat = Eigen::Matrix<Cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr Cplx imag_unit{0.0, 1.0};

}  // namespace schro2d
