#include "schro2d/problem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace schro2d {

namespace {

constexpr double kCompatTol = 1e-8;

void require_close(Cplx a, Cplx b, const std::string& what) {
  if (std::abs(a - b) > kCompatTol)
    throw std::invalid_argument("SchrodingerProblem: " + what + " mismatch of " +
                                std::to_string(std::abs(a - b)) + " exceeds 1e-8");
}

}  // namespace

void validate_problem(const SchrodingerProblem& p) {
  if (!(p.d > p.c)) throw std::invalid_argument("SchrodingerProblem: requires d > c");
  if (!(p.T > p.t0)) throw std::invalid_argument("SchrodingerProblem: requires T > t0");
  if (!p.psi || !p.phi) throw std::invalid_argument("SchrodingerProblem: psi and phi must be set");
  for (const BoundaryData* g : {&p.bottom, &p.top, &p.left, &p.right})
    if (!g->value || !g->dt || !g->dss)
      throw std::invalid_argument("SchrodingerProblem: boundary data needs value, dt and dss");

  // Initial data must take the prescribed boundary values at t0.
  const int ns = 21;
  for (int i = 0; i < ns; ++i) {
    const double s = p.c + (p.d - p.c) * i / (ns - 1);
    require_close(p.phi(s, p.c), p.bottom.value(s, p.t0), "phi vs bottom edge at t0");
    require_close(p.phi(s, p.d), p.top.value(s, p.t0), "phi vs top edge at t0");
    require_close(p.phi(p.c, s), p.left.value(s, p.t0), "phi vs left edge at t0");
    require_close(p.phi(p.d, s), p.right.value(s, p.t0), "phi vs right edge at t0");
  }
  // Adjacent edges must agree at the shared corners while integrating.
  const int nt = 11;
  for (int i = 0; i < nt; ++i) {
    const double t = p.t0 + (p.T - p.t0) * i / (nt - 1);
    require_close(p.bottom.value(p.c, t), p.left.value(p.c, t), "bottom-left corner");
    require_close(p.bottom.value(p.d, t), p.right.value(p.c, t), "bottom-right corner");
    require_close(p.top.value(p.c, t), p.left.value(p.d, t), "top-left corner");
    require_close(p.top.value(p.d, t), p.right.value(p.d, t), "top-right corner");
  }
}

LiftedProblem::LiftedProblem(SchrodingerProblem p) : p_(std::move(p)) {
  validate_problem(p_);
  const double half = 0.5 * (p_.d - p_.c);
  gamma_ = 1.0 / (half * half);
  jac2_ = half * half;
}

LiftRecord LiftedProblem::lift(double xt, double yt, double t) const {
  const double x = to_physical(xt);
  const double y = to_physical(yt);

  // u1: blend across y between bottom and top traces at this x.
  const Cplx b = p_.bottom.value(x, t), tp = p_.top.value(x, t);
  const Cplx u1 = 0.5 * ((tp - b) * yt + (tp + b));
  // u1 restricted to the left/right edges, needed to correct those traces.
  const Cplx bl = p_.bottom.value(p_.c, t), tl = p_.top.value(p_.c, t);
  const Cplx br = p_.bottom.value(p_.d, t), tr = p_.top.value(p_.d, t);
  const Cplx u1_left = 0.5 * ((tl - bl) * yt + (tl + bl));
  const Cplx u1_right = 0.5 * ((tr - br) * yt + (tr + br));
  const Cplx g3h = p_.left.value(y, t) - u1_left;
  const Cplx g4h = p_.right.value(y, t) - u1_right;
  // u2: blend across x between the corrected left/right traces.
  const Cplx u2 = 0.5 * ((g4h - g3h) * xt + (g4h + g3h));

  const Cplx b_t = p_.bottom.dt(x, t), tp_t = p_.top.dt(x, t);
  const Cplx bl_t = p_.bottom.dt(p_.c, t), tl_t = p_.top.dt(p_.c, t);
  const Cplx br_t = p_.bottom.dt(p_.d, t), tr_t = p_.top.dt(p_.d, t);
  const Cplx u1_t = 0.5 * ((tp_t - b_t) * yt + (tp_t + b_t));
  const Cplx g3h_t = p_.left.dt(y, t) - 0.5 * ((tl_t - bl_t) * yt + (tl_t + bl_t));
  const Cplx g4h_t = p_.right.dt(y, t) - 0.5 * ((tr_t - br_t) * yt + (tr_t + br_t));
  const Cplx u2_t = 0.5 * ((g4h_t - g3h_t) * xt + (g4h_t + g3h_t));

  // u1 is linear in y and u2 linear in x, so each contributes only its
  // second tangential derivative. u1 on the vertical edges is linear in y,
  // so the left/right corrections keep the plain dss of those edges. The
  // jac2 factor converts physical dss to reference coordinates.
  const Cplx b_ss = p_.bottom.dss(x, t), tp_ss = p_.top.dss(x, t);
  const Cplx lap1 = 0.5 * ((tp_ss - b_ss) * yt + (tp_ss + b_ss)) * jac2_;
  const Cplx l_ss = p_.left.dss(y, t), r_ss = p_.right.dss(y, t);
  const Cplx lap2 = 0.5 * ((r_ss - l_ss) * xt + (r_ss + l_ss)) * jac2_;

  return LiftRecord{u1 + u2, u1_t + u2_t, lap1 + lap2};
}

Cplx LiftedProblem::phi_hat(double xt, double yt) const {
  return phi_tilde(xt, yt) - lift(xt, yt, p_.t0).value;
}

Cplx LiftedProblem::forcing(double xt, double yt, double t) const {
  const LiftRecord l = lift(xt, yt, t);
  return imag_unit * l.dt + gamma_ * l.laplacian + psi(xt, yt) * l.value;
}

Cplx residual(const SchrodingerProblem& p, const std::function<Cplx(double, double, double)>& u,
              double x, double y, double t, double fd_step) {
  const double s = fd_step;
  const Cplx u0 = u(x, y, t);
  const Cplx ut = (u(x, y, t + s) - u(x, y, t - s)) / (2.0 * s);
  const Cplx uxx = (u(x + s, y, t) - 2.0 * u0 + u(x - s, y, t)) / (s * s);
  const Cplx uyy = (u(x, y + s, t) - 2.0 * u0 + u(x, y - s, t)) / (s * s);
  return -imag_unit * ut - (uxx + uyy) - p.psi(x, y) * u0;
}

SchrodingerProblem test_problem_1() {
  SchrodingerProblem p;
  p.name = "test1";
  p.c = 0.0;
  p.d = 1.0;
  p.t0 = 0.0;
  p.T = 1.0;
  p.psi = [](double x, double y) {
    const double tx = std::tanh(x), ty = std::tanh(y);
    return 3.0 - 2.0 * tx * tx - 2.0 * ty * ty;
  };

  auto value = [](double x, double y, double t) -> Cplx {
    return imag_unit * std::exp(imag_unit * t) / (std::cosh(x) * std::cosh(y));
  };
  p.phi = [value](double x, double y) { return value(x, y, 0.0); };
  p.exact = ExactSolution{
      value,
      [value](double x, double y, double t) { return imag_unit * value(x, y, t); },
  };

  // Each edge trace is A(t) sech(s) scaled by the opposite-coordinate sech;
  // (sech s)'' = sech s (2 tanh^2 s - 1).
  auto edge = [](double fixed_sech) {
    auto val = [fixed_sech](double s, double t) -> Cplx {
      return imag_unit * std::exp(imag_unit * t) * fixed_sech / std::cosh(s);
    };
    BoundaryData g;
    g.value = val;
    g.dt = [val](double s, double t) { return imag_unit * val(s, t); };
    g.dss = [val](double s, double t) {
      const double th = std::tanh(s);
      return val(s, t) * (2.0 * th * th - 1.0);
    };
    return g;
  };
  p.bottom = edge(1.0 / std::cosh(0.0));
  p.top = edge(1.0 / std::cosh(1.0));
  p.left = edge(1.0 / std::cosh(0.0));
  p.right = edge(1.0 / std::cosh(1.0));
  return p;
}

SchrodingerProblem test_problem_2(double k0) {
  if (!std::isfinite(k0)) throw std::invalid_argument("test_problem_2: k0 must be finite");
  SchrodingerProblem p;
  p.name = "test2";
  p.c = -2.5;
  p.d = 2.5;
  p.t0 = 0.0;
  p.T = 1.0;
  p.psi = [](double, double) { return 0.0; };

  // u = (i/D) exp(-i S / D) with D = i - 4t, S = x^2 + y^2 + i k0 x + i k0^2 t.
  auto value = [k0](double x, double y, double t) -> Cplx {
    const Cplx dd = imag_unit - 4.0 * t;
    const Cplx ss = x * x + y * y + imag_unit * k0 * x + imag_unit * k0 * k0 * t;
    return imag_unit / dd * std::exp(-imag_unit * ss / dd);
  };
  auto dvalue_dt = [k0, value](double x, double y, double t) -> Cplx {
    const Cplx dd = imag_unit - 4.0 * t;
    const Cplx ss = x * x + y * y + imag_unit * k0 * x + imag_unit * k0 * k0 * t;
    return value(x, y, t) *
           (4.0 / dd - imag_unit * (imag_unit * k0 * k0 * dd + 4.0 * ss) / (dd * dd));
  };
  auto d2_dx2 = [k0, value](double x, double y, double t) -> Cplx {
    const Cplx dd = imag_unit - 4.0 * t;
    const Cplx w = -imag_unit / dd * (2.0 * x + imag_unit * k0);
    return value(x, y, t) * (w * w - 2.0 * imag_unit / dd);
  };
  auto d2_dy2 = [k0, value](double x, double y, double t) -> Cplx {
    const Cplx dd = imag_unit - 4.0 * t;
    const Cplx w = -imag_unit / dd * (2.0 * y);
    return value(x, y, t) * (w * w - 2.0 * imag_unit / dd);
  };

  p.phi = [value](double x, double y) { return value(x, y, 0.0); };
  p.exact = ExactSolution{value, dvalue_dt};

  auto horizontal_edge = [&](double ye) {  // trace along x at fixed y
    BoundaryData g;
    g.value = [value, ye](double s, double t) { return value(s, ye, t); };
    g.dt = [dvalue_dt, ye](double s, double t) { return dvalue_dt(s, ye, t); };
    g.dss = [d2_dx2, ye](double s, double t) { return d2_dx2(s, ye, t); };
    return g;
  };
  auto vertical_edge = [&](double xe) {  // trace along y at fixed x
    BoundaryData g;
    g.value = [value, xe](double s, double t) { return value(xe, s, t); };
    g.dt = [dvalue_dt, xe](double s, double t) { return dvalue_dt(xe, s, t); };
    g.dss = [d2_dy2, xe](double s, double t) { return d2_dy2(xe, s, t); };
    return g;
  };
  p.bottom = horizontal_edge(p.c);
  p.top = horizontal_edge(p.d);
  p.left = vertical_edge(p.c);
  p.right = vertical_edge(p.d);
  return p;
}

}  // namespace schro2d
