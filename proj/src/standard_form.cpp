#include "modtheory/standard_form.hpp"

#include <cmath>

namespace modtheory {

namespace {

constexpr double kTiny = 1e-12;

void require_nonzero(const Vec& v, const char* what) {
  if (v.norm() < kTiny) throw DegenerateInput(std::string(what) + ": vector norm below 1e-12");
  if (!v.allFinite()) throw DomainError(std::string(what) + ": non-finite entries");
}

// L with L·conj(d_i) = img_i on the domain and L·conj(c) = 0 on the
// complement columns; least squares picks the unique solution when the
// columns span C^N.
AntilinearMap<double> close_on_spanning_set(const Mat& domain, const Mat& image, const Mat& complement) {
  const Eigen::Index dim = domain.rows();
  Mat d(dim, domain.cols() + complement.cols());
  d << domain, complement;
  Mat s = Mat::Zero(dim, d.cols());
  s.leftCols(image.cols()) = image;
  // L conj(D) = S  ⇔  D† Lᵀ = Sᵀ
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(d.adjoint());
  Mat lt = cod.solve(s.transpose());
  return {lt.transpose()};
}

Mat unit(Eigen::Index n, Eigen::Index k, Eigen::Index l) {
  Mat e = Mat::Zero(n, n);
  e(k, l) = 1;
  return e;
}

}  // namespace

Mat StandardForm::rho_power(double r) const {
  return mat_fn(rho_spectrum, [r](double l) { return std::pow(l, r); }, r < 0);
}

Mat StandardForm::delta_power(cplx z) const {
  // Δ = ρ ⊗ (ρ^{-1})ᵀ, so Δ^z = ρ^z ⊗ (ρ^{-z})ᵀ on the support.
  auto pz = [z](double l) { return std::exp(z * std::log(l)); };
  auto pmz = [z](double l) { return std::exp(-z * std::log(l)); };
  const Mat a = mat_fn(rho_spectrum, pz, true);
  const Mat b = mat_fn(rho_spectrum, pmz, true);
  return kron(a, Mat(b.transpose()));
}

StandardForm make_standard_form(const Mat& rho, bool require_full_rank) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) throw NotDensity("density matrix must be square and nonempty");
  if (!rho.allFinite()) throw NotDensity("density matrix has non-finite entries");
  if (hermitian_defect(rho) > 1e-10 * std::max(1.0, rho.norm())) throw NotDensity("density matrix not Hermitian");
  if (std::abs(rho.trace() - cplx(1.0)) > 1e-10) throw NotDensity("density matrix trace differs from 1");

  StandardForm sf;
  sf.n = rho.rows();
  sf.rho_omega = (rho + rho.adjoint()) / 2.0;
  sf.rho_spectrum = herm_eig(sf.rho_omega);
  const double lmin = sf.rho_spectrum.eigenvalues(0);
  if (lmin < -1e-12) throw NotDensity("density matrix has a negative eigenvalue");
  if (require_full_rank && lmin <= 1e-10) throw NotFaithful("density matrix is not full rank");

  sf.omega_vec = vec(sf.rho_power(0.5));
  const Mat rho_inv = sf.rho_power(-1.0);
  sf.delta = kron(sf.rho_omega, Mat(rho_inv.transpose()));
  sf.j_conj = {swap_matrix<double>(sf.n)};
  return sf;
}

StandardFormDefects check_invariants(const StandardForm& sf) {
  StandardFormDefects d{};
  d.omega_norm = std::abs(sf.omega_vec.norm() - 1.0);
  d.j_fixes_omega = (sf.j_conj(sf.omega_vec) - sf.omega_vec).norm();
  d.delta_fixes_omega = (sf.delta * sf.omega_vec - sf.omega_vec).norm();
  // JΔJ as a linear map: L conj(Δ) conj(L)
  const Mat& l = sf.j_conj.linear_part;
  const Mat jdj = l * sf.delta.conjugate() * l.conjugate();
  d.j_delta_j = (jdj - sf.delta_power(-1.0)).norm() / std::max(1.0, op_norm(sf.delta));
  return d;
}

double tomita_defect(const StandardForm& sf, const Mat& a) {
  const Vec a_omega = left_op(a) * sf.omega_vec;
  const Vec lhs = sf.j_conj(sf.delta_power(0.5) * a_omega);
  const Vec rhs = left_op(Mat(a.adjoint())) * sf.omega_vec;
  return (lhs - rhs).norm();
}

Mat algebra_state(const Vec& v) {
  const Mat x = unvec(v);
  return x * x.adjoint();
}

Mat commutant_state(const Vec& v) {
  const Mat x = unvec(v);
  return (x.adjoint() * x).transpose();
}

Mat algebra_support(const Vec& v) { return support_projection(algebra_state(v)); }

Mat commutant_support(const Vec& v) {
  const Mat x = unvec(v);
  return support_projection(Mat(x.adjoint() * x));
}

RelativeModular relative_modular(const Vec& phi, const Vec& psi, Side side) {
  require_nonzero(phi, "relative_modular(phi)");
  require_nonzero(psi, "relative_modular(psi)");
  if (phi.size() != psi.size()) throw DomainError("relative_modular: dimension mismatch");

  const Mat xphi = unvec(phi), xpsi = unvec(psi);
  const Eigen::Index n = xphi.rows(), dim = n * n;
  const Mat id = Mat::Identity(n, n);
  const Mat pl_phi = algebra_support(phi), pl_psi = algebra_support(psi);
  const Mat q_phi = commutant_support(phi), q_psi = commutant_support(psi);

  Mat domain(dim, dim), image(dim, dim);
  Mat complement;
  Eigen::Index col = 0;
  if (side == Side::algebra) {
    // S(E_kl Ψ) = s^𝔐(Ψ) E_lk Φ, and S vanishes on (1 − s^{𝔐′}(Ψ))ℋ.
    for (Eigen::Index k = 0; k < n; ++k)
      for (Eigen::Index l = 0; l < n; ++l, ++col) {
        domain.col(col) = vec(Mat(unit(n, k, l) * xpsi));
        image.col(col) = vec(Mat(pl_psi * unit(n, l, k) * xphi));
      }
    complement = Mat::Identity(dim, dim) - kron(id, Mat(q_psi.transpose()));
  } else {
    // S′(Ψ·E_lk) = Φ·E_kl·Q(Ψ), and S′ vanishes on (1 − s^𝔐(Ψ))ℋ.
    for (Eigen::Index k = 0; k < n; ++k)
      for (Eigen::Index l = 0; l < n; ++l, ++col) {
        domain.col(col) = vec(Mat(xpsi * unit(n, l, k)));
        image.col(col) = vec(Mat(xphi * unit(n, k, l) * q_psi));
      }
    complement = Mat::Identity(dim, dim) - kron(pl_psi, id);
  }

  RelativeModular rm;
  rm.s_closure = close_on_spanning_set(domain, image, complement);
  const Mat& l = rm.s_closure.linear_part;
  // S†S̄ for antilinear S with linear part L is Lᵀ·conj(L).
  rm.delta = l.transpose() * l.conjugate();
  rm.delta = (rm.delta + rm.delta.adjoint()) / 2.0;
  rm.spectrum = herm_eig(rm.delta);
  rm.j_rel = rm.s_closure.after(rm.power(-0.5));

  if (side == Side::algebra) {
    rm.support_left = kron(pl_phi, id);
    rm.support_right = kron(id, Mat(q_psi.transpose()));
  } else {
    rm.support_left = kron(id, Mat(q_phi.transpose()));
    rm.support_right = kron(pl_psi, id);
  }

  const Mat oracle = relative_modular_formula(phi, psi, side);
  rm.oracle_defect = (rm.delta - oracle).norm() / std::max(1.0, op_norm(oracle));
  const auto full = [n](const Mat& p) { return (p - Mat::Identity(n, n)).norm() < 1e-9; };
  rm.both_faithful = full(pl_phi) && full(pl_psi) && full(q_phi) && full(q_psi);
  return rm;
}

Mat relative_modular_formula(const Vec& phi, const Vec& psi, Side side) {
  const Mat xphi = unvec(phi), xpsi = unvec(psi);
  if (side == Side::algebra) {
    const Mat rho_phi = xphi * xphi.adjoint();
    const Mat sigma_psi_inv = mat_pow(Mat(xpsi.adjoint() * xpsi), -1.0);
    return kron(rho_phi, Mat(sigma_psi_inv.transpose()));
  }
  const Mat rho_psi_inv = mat_pow(Mat(xpsi * xpsi.adjoint()), -1.0);
  const Mat sigma_phi = xphi.adjoint() * xphi;
  return kron(rho_psi_inv, Mat(sigma_phi.transpose()));
}

std::pair<Vec, Mat> cone_representative(const Vec& v) {
  const Mat x = unvec(v);
  const Spectrum<double> sp = herm_eig(Mat(x * x.adjoint()));
  const Mat root = mat_fn(sp, [](double l) { return std::sqrt(l); });
  const Mat root_pinv = mat_fn(sp, [](double l) { return 1.0 / std::sqrt(l); }, true);
  const Mat w = root_pinv * x;  // x = root · w, w a partial isometry
  return {vec(root), Mat(w.transpose())};
}

RepresentativeChange representative_change(const Vec& phi, const Vec& psi) {
  require_nonzero(phi, "representative_change(phi)");
  require_nonzero(psi, "representative_change(psi)");
  RepresentativeChange rc;
  std::tie(rc.phi_plus, rc.u_prime) = cone_representative(phi);
  std::tie(rc.psi_plus, rc.v_prime) = cone_representative(psi);
  return rc;
}

Mat modular_flow(const StandardForm& sf, const Mat& a, cplx t) {
  if (t == cplx(0.0)) return a;
  const auto& sp = sf.rho_spectrum;
  const Eigen::Index n = sf.n;
  Mat b = sp.eigenvectors.adjoint() * a * sp.eigenvectors;
  const cplx it = cplx(0, 1) * t;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k)
      b(j, k) *= std::exp(it * (std::log(sp.eigenvalues(j)) - std::log(sp.eigenvalues(k))));
  return sp.eigenvectors * b * sp.eigenvectors.adjoint();
}

PolarVector polar_vector(const Vec& psi) {
  require_nonzero(psi, "polar_vector");
  const Mat x = unvec(psi);
  const Spectrum<double> sp = herm_eig(Mat(x.adjoint() * x));
  const Mat p = mat_fn(sp, [](double l) { return std::sqrt(l); });
  const Mat p_pinv = mat_fn(sp, [](double l) { return 1.0 / std::sqrt(l); }, true);
  return {Mat(x * p_pinv), vec(p)};
}

ConeTest cone_membership(const Vec& xi) {
  const Mat x = unvec(xi);
  const Mat h = (x + x.adjoint()) / 2.0;
  const Spectrum<double> sp = herm_eig(h);
  // nearest PSD matrix in Frobenius norm: clip the Hermitian part
  const Mat proj =
      sp.eigenvectors * sp.eigenvalues.cwiseMax(0.0).cast<cplx>().asDiagonal() * sp.eigenvectors.adjoint();
  const double dist = (x - proj).norm();
  const double scale = std::max(1.0, x.norm());
  return {dist <= 1e-12 * scale, dist};
}

}  // namespace modtheory
