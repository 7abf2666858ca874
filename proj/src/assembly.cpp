#include "schro2d/assembly.hpp"

#include <stdexcept>
#include <vector>

namespace schro2d {

CVec potential_apply(const SpectralTransform& transform, const CMat& psi_samples,
                     const CVec& alpha) {
  const Index n = transform.dim();
  if (alpha.size() != n * n)
    throw std::invalid_argument("potential_apply: coefficient vector has wrong length");
  if (psi_samples.rows() != transform.rule().num_points() ||
      psi_samples.cols() != transform.rule().num_points())
    throw std::invalid_argument("potential_apply: psi samples do not match the rule grid");
  CMat field = transform.synthesize(unvec_rowmajor(alpha, n, n));
  field.array() *= psi_samples.array();
  return vec_rowmajor(transform.analyze(field));
}

CMat potential_matrix_dense(const std::function<double(double, double)>& psi, int degree,
                            const QuadratureRule& rule) {
  if (degree > 16)
    throw std::invalid_argument("potential_matrix_dense: degree > 16 would materialize O(N^4) entries");
  const BasisSet basis(degree);
  const int n = basis.dim();
  const int npts = rule.num_points();
  const RMat p = basis.sample(rule.nodes);

  // u(q, (l,k)) = w_q phi_l(x_q) phi_k(x_q); the 4-index tensor is then a
  // single product u^T psi u with the (l,k)/(m,j) pairs re-interleaved.
  RMat u(npts, n * n);
  for (int q = 0; q < npts; ++q)
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k) u(q, l * n + k) = rule.weights[q] * p(l, q) * p(k, q);
  RMat psi_grid(npts, npts);
  for (int qx = 0; qx < npts; ++qx)
    for (int qy = 0; qy < npts; ++qy) psi_grid(qx, qy) = psi(rule.nodes[qx], rule.nodes[qy]);
  const RMat mixed = u.transpose() * psi_grid * u;  // indices ((l,k),(m,j))

  CMat w(n * n, n * n);
  for (int l = 0; l < n; ++l)
    for (int m = 0; m < n; ++m)
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) w(l * n + m, k * n + j) = mixed(l * n + k, m * n + j);
  return w;
}

CVec forcing_vector(const LiftedProblem& lifted, const SpectralTransform& transform, double t) {
  const auto& rule = transform.rule();
  const int npts = rule.num_points();
  CMat samples(npts, npts);
  for (int p = 0; p < npts; ++p)
    for (int q = 0; q < npts; ++q) samples(p, q) = lifted.forcing(rule.nodes[p], rule.nodes[q], t);
  return vec_rowmajor(transform.analyze(samples));
}

CVec initial_coeffs(const LiftedProblem& lifted, const MassMatrix& mass,
                    const SpectralTransform& transform) {
  const auto& rule = transform.rule();
  const int npts = rule.num_points();
  CMat samples(npts, npts);
  for (int p = 0; p < npts; ++p)
    for (int q = 0; q < npts; ++q) samples(p, q) = lifted.phi_hat(rule.nodes[p], rule.nodes[q]);
  return vec_rowmajor(mass_solve(mass, transform.analyze(samples)));
}

SemidiscreteSystem::SemidiscreteSystem(std::shared_ptr<const LiftedProblem> lifted, int degree,
                                       SystemConfig cfg)
    : lifted_(std::move(lifted)),
      basis_(degree),
      mass_(degree),
      transform_(basis_, lgl_rule(degree + cfg.quad_margin)),
      n_(basis_.dim()) {
  if (!lifted_) throw std::invalid_argument("SemidiscreteSystem: null problem");
  if (degree < 4) throw std::invalid_argument("SemidiscreteSystem: degree must be >= 4");
  if (cfg.quad_margin < 2)
    throw std::invalid_argument("SemidiscreteSystem: quad_margin must be >= 2");

  const auto& rule = transform_.rule();
  const int npts = rule.num_points();
  psi_samples_.resize(npts, npts);
  for (int p = 0; p < npts; ++p)
    for (int q = 0; q < npts; ++q)
      psi_samples_(p, q) = lifted_->psi(rule.nodes[p], rule.nodes[q]);

  alpha0_ = schro2d::initial_coeffs(*lifted_, mass_, transform_);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      Eigen::MatrixXd(mass_.dense()));
  if (es.info() != Eigen::Success)
    throw std::runtime_error("SemidiscreteSystem: mass matrix eigendecomposition failed");
  mass_eigvec_ = es.eigenvectors().cast<Cplx>();
  mass_eigval_ = es.eigenvalues();
}

CVec SemidiscreteSystem::apply_m1(const CVec& v) const {
  const CMat a = unvec_rowmajor(v, n_, n_);
  return vec_rowmajor(mass_.apply_left(mass_.apply_right(a)));
}

CVec SemidiscreteSystem::apply_m2(const CVec& v) const {
  const CMat a = unvec_rowmajor(v, n_, n_);
  CMat out = gamma() * (mass_.apply_left(a) + mass_.apply_right(a));
  CMat field = transform_.synthesize(a);
  field.array() *= psi_samples_.array();
  out -= transform_.analyze(field);
  return vec_rowmajor(out);
}

CVec SemidiscreteSystem::solve_m1(const CVec& v) const {
  return vec_rowmajor(mass_solve(mass_, unvec_rowmajor(v, n_, n_)));
}

CVec SemidiscreteSystem::forcing(double t) const {
  return forcing_vector(*lifted_, transform_, t);
}

LinearOdeSystem::StagePrecondFn SemidiscreteSystem::stage_preconditioner(
    GmresConfig::Precond kind, const ButcherTableau& tab, double h) const {
  if (kind != GmresConfig::Precond::stage_exact)
    return LinearOdeSystem::stage_preconditioner(kind, tab, h);

  // In the mass eigenbasis Q D Q^T the potential-free stage operator splits
  // into one s-by-s block per spatial mode pair (i, j):
  //   -i d_i d_j I_s + h gamma (d_i + d_j) A.
  // Invert each block once; applications are two 1D basis changes per stage
  // row plus m tiny matvecs.
  const int s = tab.s;
  const CMat ac = tab.A.cast<Cplx>();
  std::vector<Eigen::MatrixXcd> inv(static_cast<size_t>(n_) * n_);
  for (Index i = 0; i < n_; ++i)
    for (Index j = 0; j < n_; ++j) {
      Eigen::MatrixXcd block =
          h * gamma() * (mass_eigval_[i] + mass_eigval_[j]) * ac;
      block.diagonal().array() -= imag_unit * mass_eigval_[i] * mass_eigval_[j];
      inv[i * n_ + j] = block.inverse();
    }

  const CMat q = mass_eigvec_;
  const Index n = n_;
  return [s, n, q, inv = std::move(inv)](CMat& blockmat) {
    std::vector<CMat> hat(s);
    for (int l = 0; l < s; ++l) {
      const CMat g = unvec_rowmajor(blockmat.row(l).transpose(), n, n);
      hat[l] = q.transpose() * g * q;
    }
    Eigen::VectorXcd z(s);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        for (int l = 0; l < s; ++l) z[l] = hat[l](i, j);
        z = inv[i * n + j] * z;
        for (int l = 0; l < s; ++l) hat[l](i, j) = z[l];
      }
    for (int l = 0; l < s; ++l) {
      const CMat g = q * hat[l] * q.transpose();
      blockmat.row(l) = vec_rowmajor(g).transpose();
    }
  };
}

std::shared_ptr<SemidiscreteSystem> build_system(const SchrodingerProblem& problem, int degree,
                                                 SystemConfig cfg) {
  auto lifted = std::make_shared<const LiftedProblem>(problem);
  return std::make_shared<SemidiscreteSystem>(std::move(lifted), degree, cfg);
}

}  // namespace schro2d
