#include "schro2d/orthopoly.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace schro2d {

double legendre_eval(int n, double x) {
  if (n < 0) throw std::invalid_argument("legendre_eval: negative degree");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2 * k + 1) * x * cur - k * prev) / (k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

double legendre_deriv(int n, double x) {
  if (n < 0) throw std::invalid_argument("legendre_deriv: negative degree");
  if (n == 0) return 0.0;
  // L'_{k+1} = L'_{k-1} + (2k+1) L_k, valid on the closed interval.
  double lp_prev = 0.0;  // L'_0
  double lp_cur = 1.0;   // L'_1
  double l_prev = 1.0;   // L_0
  double l_cur = x;      // L_1
  for (int k = 1; k < n; ++k) {
    const double lp_next = lp_prev + (2 * k + 1) * l_cur;
    const double l_next = ((2 * k + 1) * x * l_cur - k * l_prev) / (k + 1);
    lp_prev = lp_cur;
    lp_cur = lp_next;
    l_prev = l_cur;
    l_cur = l_next;
  }
  return lp_cur;
}

QuadratureRule lgl_rule(int order) {
  if (order < 1) throw std::invalid_argument("lgl_rule: order must be >= 1");
  const int q = order;
  const int npts = q + 1;

  std::vector<double> x(npts);
  for (int k = 0; k < npts; ++k) x[k] = -std::cos(M_PI * k / q);

  // Newton iteration for the roots of (1-x^2) L'_Q(x); in terms of
  // (L_Q, L_{Q-1}) the update is dx = (x L_Q - L_{Q-1}) / ((Q+1) L_Q),
  // which leaves the endpoints fixed.
  constexpr double tol = 1e-14;
  constexpr int max_sweeps = 100;
  bool converged = false;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    double max_update = 0.0;
    for (int k = 1; k < q; ++k) {
      const double lq = legendre_eval(q, x[k]);
      const double lqm1 = legendre_eval(q - 1, x[k]);
      const double dx = (x[k] * lq - lqm1) / ((q + 1) * lq);
      x[k] -= dx;
      max_update = std::max(max_update, std::abs(dx));
    }
    converged = max_update <= tol;
  }
  if (!converged)
    throw std::runtime_error("lgl_rule: Newton iteration for interior nodes did not reach 1e-14");

  x.front() = -1.0;
  x.back() = 1.0;
  // Enforce the antisymmetry of the node set exactly.
  for (int k = 0; k < npts / 2; ++k) {
    const double s = 0.5 * (x[k] - x[npts - 1 - k]);
    x[k] = s;
    x[npts - 1 - k] = -s;
  }
  if (npts % 2 == 1) x[npts / 2] = 0.0;

  std::vector<double> w(npts);
  for (int k = 0; k < npts; ++k) {
    const double lq = legendre_eval(q, x[k]);
    w[k] = 2.0 / (q * (q + 1) * lq * lq);
  }
  for (int k = 0; k < npts / 2; ++k) {
    const double s = 0.5 * (w[k] + w[npts - 1 - k]);
    w[k] = s;
    w[npts - 1 - k] = s;
  }

  QuadratureRule rule;
  rule.order = q;
  rule.nodes = std::move(x);
  rule.weights = std::move(w);
  return rule;
}

Cplx integrate_2d(const CMat& samples, const QuadratureRule& rule) {
  const int npts = rule.num_points();
  if (samples.rows() != npts || samples.cols() != npts)
    throw std::invalid_argument("integrate_2d: sample grid does not match rule (" +
                                std::to_string(samples.rows()) + "x" +
                                std::to_string(samples.cols()) + " vs " +
                                std::to_string(npts) + ")");
  Cplx total = 0.0;
  for (int k = 0; k < npts; ++k) {
    Cplx row = 0.0;
    for (int m = 0; m < npts; ++m) row += samples(k, m) * rule.weights[m];
    total += rule.weights[k] * row;
  }
  return total;
}

}  // namespace schro2d
