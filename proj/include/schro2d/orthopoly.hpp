#pragma once

#include <vector>

#include "schro2d/types.hpp"

namespace schro2d {

/// Legendre polynomial L_n(x) via the three-term recurrence.
double legendre_eval(int n, double x);

/// Derivative L'_n(x) via the recurrence L'_{k+1} = L'_{k-1} + (2k+1) L_k.
double legendre_deriv(int n, double x);

/// Legendre-Gauss-Lobatto rule on [-1,1]. A rule of order Q has Q+1 points,
/// includes both endpoints, and integrates polynomials of degree <= 2Q-1
/// exactly.
struct QuadratureRule {
  int order = 0;
  std::vector<double> nodes;    // strictly ascending, nodes.front() == -1
  std::vector<double> weights;  // positive, sum == 2

  int num_points() const { return order + 1; }
};

/// Builds the LGL rule of order Q >= 1. Interior nodes are the roots of
/// L'_Q, found by Newton iteration from Chebyshev initial guesses
/// (tolerance 1e-14, at most 100 sweeps); throws std::runtime_error if the
/// iteration fails to converge.
QuadratureRule lgl_rule(int order);

/// Tensor-product quadrature of a sampled field:
/// sum_{k,m} f(x_k, x_m) w_k w_m. `samples(k, m)` must hold the value at
/// (nodes[k], nodes[m]).
Cplx integrate_2d(const CMat& samples, const QuadratureRule& rule);

}  // namespace schro2d
