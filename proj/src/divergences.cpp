#include "modtheory/divergences.hpp"

#include <cmath>
#include <limits>

#include "modtheory/random.hpp"

namespace modtheory {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kKernelWeight = 1e-14;

void require_normalized(const Vec& v, const char* what) {
  if (std::abs(v.norm() - 1.0) > 1e-10) throw NotNormalized(std::string(what) + ": input vector is not normalized");
}

// ‖((1 − P)⊗1) v‖² for an algebra projection P
double mass_outside(const Mat& p, const Vec& v) {
  const Mat x = unvec(v);
  return (x - p * x).squaredNorm();
}

Vec eigen_weights(const Spectrum<double>& sp, const Vec& v) {
  return (sp.eigenvectors.adjoint() * v).cwiseAbs2().cast<cplx>();
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::araki_spectral: return "araki-spectral";
    case Method::matrix_oracle: return "matrix-oracle";
    case Method::quasi_entropy: return "quasi-entropy";
    case Method::lp_variational: return "lp-variational";
    case Method::lp_closed_form: return "lp-closed-form";
  }
  return "unknown";
}

DivergenceValue DivergenceValue::finite(double v, Method m, std::optional<double> a) {
  if (!std::isfinite(v)) throw DomainError("DivergenceValue::finite given a non-finite number");
  DivergenceValue d;
  d.value = v;
  d.method = m;
  d.alpha = a;
  return d;
}

DivergenceValue DivergenceValue::infinity(Method m, std::optional<double> a) {
  DivergenceValue d;
  d.infinite = true;
  d.method = m;
  d.alpha = a;
  return d;
}

double DivergenceValue::reported() const {
  if (infinite) return kInf;
  return (value < 0 && value >= -1e-10) ? 0.0 : value;
}

bool leq(const DivergenceValue& a, const DivergenceValue& b, double tol) {
  if (b.infinite) return true;
  if (a.infinite) return false;
  return a.value <= b.value + tol;
}

DivergenceValue araki_relative_entropy(const Vec& omega, const Vec& psi) {
  const Vec omega_plus = cone_representative(omega).first;
  const Vec psi_plus = cone_representative(psi).first;
  const double norm2 = psi.squaredNorm();
  if (mass_outside(algebra_support(omega), psi) > kKernelWeight * norm2)
    return DivergenceValue::infinity(Method::araki_spectral);

  const RelativeModular rm = relative_modular(omega_plus, psi_plus);
  const auto& lam = rm.spectrum.eigenvalues;
  const Vec w = eigen_weights(rm.spectrum, psi_plus);
  const double thr = kernel_threshold(lam);
  double s = 0;
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    const double wk = w(k).real();
    if (lam(k) <= thr) {
      if (wk > kKernelWeight * norm2)
        throw NumericalKernel("relative entropy: logarithm needed on a kernel eigenvalue with weight " +
                              std::to_string(wk));
      continue;
    }
    s -= std::log(lam(k)) * wk;
  }
  return DivergenceValue::finite(s, Method::araki_spectral);
}

DivergenceValue relative_entropy_matrix(const Mat& rho_psi, const Mat& rho_omega) {
  const Mat p_omega = support_projection(rho_omega);
  if ((rho_psi - p_omega * rho_psi).norm() > 1e-10 * std::max(1.0, rho_psi.norm()))
    return DivergenceValue::infinity(Method::matrix_oracle);
  const auto log_fn = [](double l) { return std::log(l); };
  const Mat l_psi = mat_fn(rho_psi, log_fn, true);
  const Mat l_omega = mat_fn(rho_omega, log_fn, true);
  return DivergenceValue::finite((rho_psi * (l_psi - l_omega)).trace().real(), Method::matrix_oracle);
}

DivergenceValue relative_entropy(const StandardForm& sf, const Vec& psi) {
  require_normalized(psi, "relative_entropy");
  DivergenceValue d = araki_relative_entropy(sf.omega_vec, psi);
  const DivergenceValue oracle = relative_entropy_matrix(algebra_state(psi), sf.rho_omega);
  if (d.infinite != oracle.infinite)
    d.oracle_gap = kInf;
  else if (!d.infinite)
    d.oracle_gap = std::abs(d.value - oracle.value);
  return d;
}

DivergenceValue petz_renyi_matrix(const Mat& rho_psi, const Mat& rho_omega, double alpha) {
  if (!(alpha > 0) || alpha == 1.0) throw AlphaOutOfRange("petz_renyi: alpha must lie in (0,1) ∪ (1,∞)");
  if (alpha > 1) {
    const Mat p_omega = support_projection(rho_omega);
    if ((rho_psi - p_omega * rho_psi).norm() > 1e-10 * std::max(1.0, rho_psi.norm()))
      return DivergenceValue::infinity(Method::matrix_oracle, alpha);
  }
  const Mat a = mat_pow(rho_psi, alpha);
  const Mat b = mat_fn(rho_omega, [alpha](double l) { return std::pow(l, 1.0 - alpha); }, true);
  const double tr = (a * b).trace().real();
  if (!(tr > 0)) return DivergenceValue::infinity(Method::matrix_oracle, alpha);
  return DivergenceValue::finite(std::log(tr) / (alpha - 1.0), Method::matrix_oracle, alpha);
}

DivergenceValue petz_renyi(const StandardForm& sf, const Vec& psi, double alpha) {
  if (!(alpha > 0) || alpha == 1.0) throw AlphaOutOfRange("petz_renyi: alpha must lie in (0,1) ∪ (1,∞)");
  require_normalized(psi, "petz_renyi");
  DivergenceValue d;
  if (alpha < 1) {
    const Vec psi_plus = cone_representative(psi).first;
    const RelativeModular rm = relative_modular(sf.omega_vec, psi_plus);
    const auto& lam = rm.spectrum.eigenvalues;
    const Vec w = eigen_weights(rm.spectrum, psi_plus);
    const double thr = kernel_threshold(lam);
    double moment = 0;
    for (Eigen::Index k = 0; k < lam.size(); ++k)
      if (lam(k) > thr) moment += std::pow(lam(k), 1.0 - alpha) * w(k).real();
    if (!(moment > 0))
      d = DivergenceValue::infinity(Method::araki_spectral, alpha);
    else
      d = DivergenceValue::finite(std::log(moment) / (alpha - 1.0), Method::araki_spectral, alpha);
  } else {
    const DivergenceValue q = quasi_entropy(psi, sf.omega_vec, QuasiEntropySpec::power(alpha - 1.0));
    const double arg = q.infinite ? kInf : 1.0 + (alpha - 1.0) * q.value;
    if (q.infinite || !(arg > 0))
      d = DivergenceValue::infinity(Method::quasi_entropy, alpha);
    else
      d = DivergenceValue::finite(std::log(arg) / (alpha - 1.0), Method::quasi_entropy, alpha);
  }
  const DivergenceValue oracle = petz_renyi_matrix(algebra_state(psi), sf.rho_omega, alpha);
  if (d.infinite != oracle.infinite)
    d.oracle_gap = kInf;
  else if (!d.infinite)
    d.oracle_gap = std::abs(d.value - oracle.value);
  return d;
}

QuasiEntropySpec QuasiEntropySpec::power(double a) {
  if (!std::isfinite(a) || a < -1) throw ConvexityViolated("f_a is convex only for a ≥ −1");
  QuasiEntropySpec s;
  s.kind = Kind::power_family;
  s.a = a;
  s.recession = (a < 0) ? -1.0 / a : kInf;
  return s;
}

QuasiEntropySpec QuasiEntropySpec::custom(std::function<double(double)> f, std::optional<double> recession) {
  if (!f) throw DomainError("custom quasi-entropy function is empty");
  // Midpoint convexity on a mixed linear/geometric grid.
  std::vector<double> grid{0.0};
  for (int k = -12; k <= 12; ++k) grid.push_back(std::pow(2.0, 0.5 * k));
  for (int k = 1; k <= 40; ++k) grid.push_back(0.25 * k);
  std::sort(grid.begin(), grid.end());
  for (size_t i = 0; i < grid.size(); ++i)
    for (size_t j = i + 1; j < grid.size(); ++j) {
      const double x = grid[i], y = grid[j];
      const double fx = f(x), fy = f(y), fm = f(0.5 * (x + y));
      if (!std::isfinite(fx) || !std::isfinite(fy) || !std::isfinite(fm)) continue;
      const double scale = 1.0 + std::abs(fx) + std::abs(fy);
      if (fm > 0.5 * (fx + fy) + 1e-10 * scale)
        throw ConvexityViolated("custom quasi-entropy function fails midpoint convexity at (" + std::to_string(x) +
                                ", " + std::to_string(y) + ")");
    }
  QuasiEntropySpec s;
  s.kind = Kind::custom;
  s.custom_fn = std::move(f);
  s.recession = recession;
  return s;
}

double QuasiEntropySpec::operator()(double lambda) const {
  if (kind == Kind::custom) return custom_fn(lambda);
  const double l = std::max(lambda, 0.0);
  if (a == 0) return l > 0 ? l * std::log(l) : 0.0;
  return (std::pow(l, a + 1.0) - l) / a;
}

double QuasiEntropySpec::recession_slope() const { return recession.value_or(kInf); }

QuasiEntropySpec QuasiEntropySpec::dual() const {
  const QuasiEntropySpec base = *this;
  const double f_at_zero = base(0.0);
  const double slope = base.recession_slope();
  auto fhat = [base, slope](double l) { return l > 0 ? l * base(1.0 / l) : slope; };
  return custom(fhat, f_at_zero);
}

DivergenceValue quasi_entropy(const Vec& phi, const Vec& psi, const QuasiEntropySpec& spec) {
  const RelativeModular rm = relative_modular(phi, psi);
  const auto& lam = rm.spectrum.eigenvalues;
  const Vec w = eigen_weights(rm.spectrum, psi);
  const double thr = kernel_threshold(lam);
  double q = 0;
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    const double wk = w(k).real();
    if (wk == 0) continue;
    const double fk = spec(lam(k) <= thr ? 0.0 : lam(k));
    if (!std::isfinite(fk)) {
      if (wk <= kKernelWeight * psi.squaredNorm()) continue;
      return DivergenceValue::infinity(Method::quasi_entropy);
    }
    q += fk * wk;
  }
  const double singular = mass_outside(algebra_support(psi), phi);
  if (singular > kKernelWeight * phi.squaredNorm()) {
    const double slope = spec.recession_slope();
    if (!std::isfinite(slope)) return DivergenceValue::infinity(Method::quasi_entropy);
    q += slope * singular;
  }
  return DivergenceValue::finite(q, Method::quasi_entropy);
}

// ---------------------------------------------------------------------------
// L^p norms on the commutant side.
//
// With ξ ↔ X (‖X‖_F = 1), σ = X†X and Δ′_{ξ,Ω}: Y ↦ ρ^{-1} Y σ, the objective
// ‖Δ′^{1/2−1/p} Ψ‖² equals Tr(G σ^s) with G = X_Ψ† ρ^{−s} X_Ψ, s = 1 − 2/p.

namespace {

struct LpObjective {
  Mat g;
  double s;

  // returns F and, if requested, the Euclidean gradient 2 X K
  double eval(const Mat& x, Mat* grad) const {
    const Mat sigma = x.adjoint() * x;
    Eigen::SelfAdjointEigenSolver<Mat> es((sigma + sigma.adjoint()) / 2.0);
    if (es.info() != Eigen::Success) throw ConvergenceFailure("lp objective: eigensolver failed");
    const RVec mu = es.eigenvalues().cwiseMax(0.0);
    const Mat& u = es.eigenvectors();
    const Mat gh = u.adjoint() * g * u;
    const Eigen::Index n = mu.size();
    RVec mus(n);
    for (Eigen::Index i = 0; i < n; ++i) mus(i) = std::pow(mu(i), s);
    double f = 0;
    for (Eigen::Index i = 0; i < n; ++i) f += mus(i) * gh(i, i).real();
    if (grad) {
      const double floor = 1e-14 * std::max(mu.maxCoeff(), 1e-300);
      Mat k(n, n);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
          const double a = std::max(mu(i), floor), b = std::max(mu(j), floor);
          double gamma;
          if (std::abs(a - b) <= 1e-10 * std::max(a, b))
            gamma = s * std::pow(0.5 * (a + b), s - 1.0);
          else
            gamma = (std::pow(a, s) - std::pow(b, s)) / (a - b);
          k(i, j) = gamma * gh(i, j);
        }
      *grad = 2.0 * x * (u * k * u.adjoint());
    }
    return f;
  }
};

double real_dot(const Mat& a, const Mat& b) { return (a.conjugate().cwiseProduct(b)).sum().real(); }

struct AscentResult {
  double f;
  Mat x;
  bool converged;
  int iterations;
};

AscentResult sphere_ascent(const LpObjective& obj, Mat x, double tol, int max_iter) {
  x /= x.norm();
  Mat ge;
  double f = obj.eval(x, &ge);
  Mat g = ge - real_dot(x, ge) * x;
  Mat x_prev, g_prev;
  double eta = 0;
  int flat = 0;  // consecutive steps that left F unchanged
  for (int it = 0; it < max_iter; ++it) {
    const double scale = std::max(1.0, std::abs(f));
    const double gn = g.norm();
    if (gn < tol * scale) return {f, x, true, it};
    if (it == 0) {
      eta = 0.1 / std::max(gn, 1e-300);
    } else {
      const Mat sx = x - x_prev;
      const double curv = real_dot(sx, g_prev - g);
      eta = curv > 0 ? sx.squaredNorm() / curv : 2.0 * eta;
    }
    bool accepted = false;
    Mat x_new, ge_new;
    double f_new = f;
    for (int bt = 0; bt < 60; ++bt) {
      x_new = x + eta * g;
      x_new /= x_new.norm();
      f_new = obj.eval(x_new, &ge_new);
      if (f_new >= f + 1e-4 * eta * gn * gn) {
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    // no representable ascent left: accept when the gradient is at the
    // roundoff floor of F
    if (!accepted) return {f, x, gn < 1e-7 * scale, it};
    flat = (f_new - f <= 8 * std::numeric_limits<double>::epsilon() * scale) ? flat + 1 : 0;
    if (flat >= 5) return {f_new, x_new, gn < 1e-7 * scale, it + 1};
    x_prev = x;
    g_prev = g;
    x = x_new;
    f = f_new;
    g = ge_new - real_dot(x, ge_new) * x;
  }
  return {f, x, false, max_iter};
}

bool presented_as(const StandardForm& sf, const Vec& psi, const Mat& m) {
  const Vec b_omega = right_op(m) * sf.omega_vec;
  return (b_omega - psi).norm() <= 1e-10 * std::max(1.0, psi.norm());
}

}  // namespace

LpNormResult lp_norm(const StandardForm& sf, const Vec& psi, double p, LpMode mode, const LpOptions& opts) {
  if (!(p >= 2)) throw DomainError("lp_norm: p must be ≥ 2");
  LpNormResult r;
  r.p = p;
  r.method = mode;
  if (psi.norm() == 0) return r;
  if (p == 2) {
    r.value = psi.norm();
    return r;
  }
  if (mode == LpMode::closed_form) {
    const bool is_four = (p == 4), is_inf = std::isinf(p);
    if (!is_four && !is_inf) throw ClosedFormUnavailable("lp_norm: closed form exists only for p ∈ {2, 4, ∞}");
    if (!opts.b_prime || !presented_as(sf, psi, *opts.b_prime))
      throw ClosedFormUnavailable("lp_norm: closed form needs Ψ presented as b′Ω");
    const Mat& m = *opts.b_prime;
    if (is_inf) {
      r.value = op_norm(m);
    } else {
      const Mat b = right_op(m);
      const Vec v = sf.delta_power(-0.25) * (b.adjoint() * (b * sf.omega_vec));
      r.value = std::sqrt(v.norm());
    }
    return r;
  }

  const double s = std::isinf(p) ? 1.0 : 1.0 - 2.0 / p;
  const Mat xpsi = unvec(psi);
  LpObjective obj{xpsi.adjoint() * sf.rho_power(-s) * xpsi, s};

  Rng rng(opts.seed);
  std::vector<Mat> starts;
  if (p == 4 && opts.b_prime) {
    const Mat mt = opts.b_prime->transpose();
    starts.push_back(mt.adjoint() * sf.rho_power(0.5) * mt);  // b′Jb′JΩ
  }
  for (int k = 0; k < opts.restarts; ++k) starts.push_back(random_gaussian(sf.n, sf.n, rng));

  AscentResult best{-1, Mat(), false, 0};
  int total_iter = 0;
  for (const Mat& x0 : starts) {
    if (x0.norm() == 0) continue;
    AscentResult a = sphere_ascent(obj, x0, opts.grad_tol, opts.max_iter);
    total_iter += a.iterations;
    if (a.f > best.f) best = a;
  }
  r.value = std::sqrt(std::max(best.f, 0.0));
  r.converged = best.converged;
  r.iterations = total_iter;
  const Mat sigma = best.x.adjoint() * best.x;
  Vec xi = vec(mat_pow(Mat((sigma + sigma.adjoint()) / 2.0), 0.5));
  r.maximizer_xi = xi / xi.norm();
  return r;
}

double lp_norm_schatten(const StandardForm& sf, const Vec& psi, double p) {
  const double s = std::isinf(p) ? 1.0 : 1.0 - 2.0 / p;
  const Mat x = unvec(psi);
  const Mat g = x.adjoint() * sf.rho_power(-s) * x;
  const RVec ev = herm_eig(Mat((g + g.adjoint()) / 2.0)).eigenvalues.cwiseMax(0.0);
  if (std::isinf(p)) return std::sqrt(ev.maxCoeff());
  const double q = p / 2.0;
  double acc = 0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) acc += std::pow(ev(k), q);
  return std::sqrt(std::pow(acc, 1.0 / q));
}

double sandwiched_renyi_matrix(const Mat& rho_psi, const Mat& rho_omega, double alpha) {
  if (!(alpha > 1)) throw AlphaOutOfRange("sandwiched Rényi oracle expects alpha > 1");
  const Mat p_omega = support_projection(rho_omega);
  if ((rho_psi - p_omega * rho_psi).norm() > 1e-10 * std::max(1.0, rho_psi.norm()))
    return std::numeric_limits<double>::infinity();
  const Mat w = mat_pow(rho_omega, (1.0 - alpha) / (2.0 * alpha));
  const Mat inner = w * rho_psi * w;
  const double tr = mat_pow(Mat((inner + inner.adjoint()) / 2.0), alpha).trace().real();
  return std::log(tr) / (alpha - 1.0);
}

DivergenceValue araki_masuda(const StandardForm& sf, const Vec& psi, double alpha, LpMode mode,
                             const LpOptions& opts) {
  if (!(alpha > 1) || std::isinf(alpha)) throw AlphaOutOfRange("araki_masuda: alpha must be a finite value > 1");
  require_normalized(psi, "araki_masuda");
  const LpNormResult n = lp_norm(sf, psi, 2.0 * alpha, mode, opts);
  const Method m = mode == LpMode::closed_form ? Method::lp_closed_form : Method::lp_variational;
  if (n.infinite) return DivergenceValue::infinity(m, alpha);
  DivergenceValue d = DivergenceValue::finite(2.0 * alpha * std::log(n.value) / (alpha - 1.0), m, alpha);
  const double oracle = sandwiched_renyi_matrix(algebra_state(psi), sf.rho_omega, alpha);
  d.oracle_gap = std::abs(d.value - oracle);
  return d;
}

double richardson3(double v_h, double v_h2, double v_h4) { return (8.0 * v_h4 - 6.0 * v_h2 + v_h) / 3.0; }

}  // namespace modtheory
