#pragma once

#include <functional>
#include <optional>
#include <string>

#include "schro2d/types.hpp"

namespace schro2d {

/// Dirichlet data on one edge of the square, parametrized by the tangential
/// physical coordinate s. Analytic time and second tangential derivatives
/// are required; the forcing that homogenization produces consumes both at
/// every quadrature point and stage time, so finite differences are not an
/// option on this path.
struct BoundaryData {
  std::function<Cplx(double, double)> value;  // (s, t)
  std::function<Cplx(double, double)> dt;     // d value / dt
  std::function<Cplx(double, double)> dss;    // d^2 value / ds^2
};

struct ExactSolution {
  std::function<Cplx(double, double, double)> value;  // (x, y, t)
  std::function<Cplx(double, double, double)> dt;
};

/// -i u_t = Laplace(u) + psi(x,y) u on (c,d)^2 with Dirichlet boundary data
/// and initial state phi. Edges are labeled by position: bottom y=c, top
/// y=d, left x=c, right x=d. psi is real-valued by construction; the
/// conservation structure of the equation depends on it.
struct SchrodingerProblem {
  std::string name = "custom";
  double c = -1.0, d = 1.0;
  double t0 = 0.0, T = 1.0;
  std::function<double(double, double)> psi;
  std::function<Cplx(double, double)> phi;
  BoundaryData bottom, top, left, right;
  std::optional<ExactSolution> exact;
};

/// Checks that phi matches the boundary data at t0 along each edge and that
/// adjacent edges agree at the corners for sampled times in [t0, T]. Throws
/// std::invalid_argument beyond 1e-8; without compatibility the homogenized
/// unknown would not vanish on the boundary.
void validate_problem(const SchrodingerProblem& p);

/// Potential psi = 3 - 2 tanh^2 x - 2 tanh^2 y on (0,1)^2 with exact
/// solution i e^{it} sech(x) sech(y).
SchrodingerProblem test_problem_1();

/// Free particle (psi = 0) on (-2.5, 2.5)^2: a drifting Gaussian packet with
/// wavenumber parameter k0.
SchrodingerProblem test_problem_2(double k0);

struct LiftRecord {
  Cplx value;      // u1 + u2 at the point
  Cplx dt;         // time derivative of the lifting
  Cplx laplacian;  // reference-coordinate Laplacian of the lifting
};

/// The problem mapped to the reference square (-1,1)^2 and homogenized: a
/// bilinear-in-space blend of the boundary data (first across y between
/// bottom and top, then across x between the corrected left/right traces)
/// is subtracted so the remaining unknown vanishes on the boundary. The
/// subtracted part reappears as the forcing
///   f(x,y,t) = i (u1+u2)_t + gamma Lap(u1+u2) + psi (u1+u2).
class LiftedProblem {
 public:
  explicit LiftedProblem(SchrodingerProblem p);

  const SchrodingerProblem& physical() const { return p_; }
  double gamma() const { return gamma_; }
  double t0() const { return p_.t0; }
  double T() const { return p_.T; }

  double to_physical(double ref) const { return p_.c + 0.5 * (ref + 1.0) * (p_.d - p_.c); }
  double to_reference(double phys) const { return 2.0 * (phys - p_.c) / (p_.d - p_.c) - 1.0; }

  double psi(double xt, double yt) const { return p_.psi(to_physical(xt), to_physical(yt)); }
  Cplx phi_tilde(double xt, double yt) const { return p_.phi(to_physical(xt), to_physical(yt)); }

  /// Homogenized initial state; vanishes on all four edges.
  Cplx phi_hat(double xt, double yt) const;

  LiftRecord lift(double xt, double yt, double t) const;
  Cplx forcing(double xt, double yt, double t) const;

 private:
  SchrodingerProblem p_;
  double gamma_ = 1.0;
  double jac2_ = 1.0;  // ((d-c)/2)^2, the dss chain-rule factor
};

/// PDE residual -i u_t - Lap(u) - psi u at one point, with derivatives taken
/// by central finite differences of width fd_step. Verification utility.
Cplx residual(const SchrodingerProblem& p, const std::function<Cplx(double, double, double)>& u,
              double x, double y, double t, double fd_step = 1e-4);

}  // namespace schro2d
