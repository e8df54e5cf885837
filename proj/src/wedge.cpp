#include "modtheory/wedge.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "modtheory/quadrature.hpp"

namespace modtheory {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
constexpr double kCalibrationTol = 1e-6;

cplx factorized(const WedgeFunction& wf, double p1, int sp, int sm) {
  const double w = omega_p(wf.m, p1);
  return 0.5 * wf.gplus.fourier(sp * 0.5 * (p1 - w)) * wf.gminus.fourier(sm * 0.5 * (p1 + w));
}

const ShellConvention& convention_of(const WedgeFunction& wf) {
  if (!wf.convention) throw ConventionMismatch("wedge function used before calibration");
  return *wf.convention;
}

// light-cone momenta seen by g₊ and g₋ at p¹
std::array<double, 2> lightcone_momenta(const WedgeFunction& wf, double p1) {
  const ShellConvention& c = convention_of(wf);
  const double w = omega_p(wf.m, p1);
  return {c.sign_plus * 0.5 * (p1 - w), c.sign_minus * 0.5 * (p1 + w)};
}

// sqrt(n/π)∫e^{−n(s−center)²}·½Ĝ₊(σk₊e^{−2πs})Ĝ₋(σk₋e^{2πs})ds; σ = −1 is the
// reflected function x ↦ f(−x)
Estimate boosted_smear(const WedgeFunction& wf, double n, double p1, cplx center, double reflect,
                       const QuadratureBudget& budget) {
  const auto k = lightcone_momenta(wf, p1);
  auto h = [&](double s) {
    const double e = std::exp(2.0 * kPi * s);
    return 0.5 * wf.gplus.fourier(reflect * k[0] / e) * wf.gminus.fourier(reflect * k[1] * e);
  };
  return gaussian_smear(n, center, h, budget);
}

AdaptiveResult integrate_momenta(const std::function<Eigen::VectorXcd(double)>& f, double scale, double tol) {
  const double pc = 50.0 * scale;
  const std::vector<double> cuts{-pc, -16 * scale, -4 * scale, -scale, 0.0, scale, 4 * scale, 16 * scale, pc};
  AdaptiveResult out;
  const double share = 0.8 * tol / static_cast<double>(cuts.size() + 1);
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const AdaptiveResult r = integrate_adaptive(f, cuts[i], cuts[i + 1], share);
    out.value = out.value.size() ? Eigen::VectorXcd(out.value + r.value) : r.value;
    out.error += r.error;
    out.panels += r.panels;
  }
  for (double sign : {1.0, -1.0}) {
    auto tail = [&](double u) -> Eigen::VectorXcd { return f(sign * pc / u) * (pc / (u * u)); };
    const AdaptiveResult r = integrate_adaptive(tail, 0.0, 1.0, share);
    out.value += r.value;
    out.error += r.error;
    out.panels += r.panels;
  }
  return out;
}

}  // namespace

double WedgeFunction::position(double x0, double x1) const {
  const double up = x0 + x1, um = x1 - x0;
  if (up < 0 || um < 0) return 0.0;
  return gplus.position(up) * gminus.position(um);
}

double omega_p(double m, double p1) { return std::sqrt(p1 * p1 + m * m); }

WedgeFunction make_wedge_function(RayTestFunction gplus, RayTestFunction gminus, double m) {
  if (!(m > 0) || !std::isfinite(m)) throw DomainError("wedge function: mass must be positive");
  if (!gplus.position || !gminus.position) throw ConfigError("wedge function: factors need position-space values");
  WedgeFunction wf;
  wf.gplus = std::move(gplus);
  wf.gminus = std::move(gminus);
  wf.m = m;
  wf.convention = std::make_shared<const ShellConvention>(calibrate_shell(wf));
  return wf;
}

WedgeFunction make_wedge_function(const std::string& family, double alpha_plus, double alpha_minus, double m) {
  return make_wedge_function(make_ray_function(family, alpha_plus), make_ray_function(family, alpha_minus), m);
}

WedgeFunction scaled(const WedgeFunction& wf, double c) {
  WedgeFunction out = wf;
  auto f = wf.gplus.fourier;
  auto g = wf.gplus.position;
  out.gplus.fourier = [f, c](cplx k) { return c * f(k); };
  if (g) out.gplus.position = [g, c](double u) { return c * g(u); };
  out.gplus.family = RayFamily::custom;
  return out;
}

std::array<cplx, 2> boost(const BoostParams& b, cplx x0, cplx x1) {
  const cplx ch = std::cosh(2.0 * kPi * b.t), sh = std::sinh(2.0 * kPi * b.t);
  return {ch * x0 + sh * x1, ch * x1 + sh * x0};
}

bool in_right_wedge(double x0, double x1) { return x1 >= std::abs(x0); }

cplx h_function(double x0, double x1, cplx z, double p1, double m) {
  const double w = omega_p(m, p1);
  return std::cosh(2.0 * kPi * z) * (w * x0 - p1 * x1) + std::sinh(2.0 * kPi * z) * (w * x1 - p1 * x0);
}

ImHSignCheck im_h_sign_check(double m) {
  ImHSignCheck c;
  const std::array<std::array<double, 2>, 5> points{{{0.0, 1.0}, {0.5, 1.0}, {-0.9, 1.0}, {2.0, 3.0}, {-0.2, 0.25}}};
  for (const auto& x : points)
    for (double re : {-1.0, 0.0, 1.0})
      for (double im : {-0.4, 0.2})
        for (double p1 : {-2.0, 0.0, 1.0, 3.0}) {
          const double v = h_function(x[0], x[1], cplx(re, im), p1, m).imag();
          ++c.samples;
          if ((v > 0) != (im > 0) || v == 0) ++c.violations;
          c.min_abs_im = std::min(c.min_abs_im, std::abs(v));
        }
  return c;
}

cplx shell_fourier_2d(const WedgeFunction& wf, double p1, double tol) {
  const double w = omega_p(wf.m, p1);
  const double decay = std::min(wf.gplus.alpha, wf.gminus.alpha);
  const double x_max = 30.0 / decay;
  auto outer = [&](double x1) -> Eigen::VectorXcd {
    Eigen::VectorXcd v(1);
    if (x1 == 0) {
      v(0) = 0;
      return v;
    }
    auto inner = [&](double x0) -> Eigen::VectorXcd {
      Eigen::VectorXcd u(1);
      u(0) = wf.position(x0, x1) * std::exp(kI * (-w * x0 + p1 * x1));
      return u;
    };
    v(0) = integrate_adaptive(inner, -x1, x1, 0.1 * tol / x_max).value(0);
    return v;
  };
  return integrate_adaptive(outer, 0.0, x_max, tol).value(0);
}

ShellConvention calibrate_shell(const WedgeFunction& wf) {
  ShellConvention best;
  best.max_defect = INFINITY;
  std::array<cplx, 3> oracle;
  for (int i = 0; i < 3; ++i) oracle[i] = shell_fourier_2d(wf, best.momenta[i]);
  for (int sp : {1, -1})
    for (int sm : {1, -1}) {
      double worst = 0;
      for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(factorized(wf, best.momenta[i], sp, sm) - oracle[i]));
      if (worst < best.max_defect) {
        best.max_defect = worst;
        best.sign_plus = sp;
        best.sign_minus = sm;
      }
    }
  if (best.max_defect > kCalibrationTol)
    throw ConventionMismatch("shell_fourier: no light-cone convention matches the 2D quadrature oracle");
  return best;
}

cplx shell_fourier(const WedgeFunction& wf, double p1) {
  const ShellConvention& c = convention_of(wf);
  return factorized(wf, p1, c.sign_plus, c.sign_minus);
}

SwapOrientation swap_orientation(double m) {
  // direct side integrates e^{ip·Λ_{−s}x} = e^{−iH(x,−s,p)}; probe s = i/4
  SwapOrientation o;
  o.im_h_probe = h_function(0.3, 1.0, cplx(0.0, -0.25), 0.5, m).imag();
  // |e^{−iH}| = e^{Im H}: bounded upward iff Im H < 0, then the shifted
  // Gaussian sits at −i/2
  o.center_im = o.im_h_probe < 0 ? -0.5 : 0.5;
  return o;
}

Estimate wedge_smeared_shell_fourier(const WedgeFunction& wf, double n, double p1, WedgeSide side,
                                     const QuadratureBudget& budget, double center_override) {
  if (!(n > 0)) throw DomainError("wedge_smeared_shell_fourier: n must be positive");
  if (side == WedgeSide::direct) return boosted_smear(wf, n, p1, 0.0, 1.0, budget);
  const double c = std::isnan(center_override) ? swap_orientation(wf.m).center_im : center_override;
  return boosted_smear(wf, n, p1, cplx(0.0, c), -1.0, budget);
}

WeylExponent weyl_rescaling_exponent(const WedgeFunction& wf, double n, const QuadratureBudget& budget) {
  const double c = swap_orientation(wf.m).center_im;
  auto integrand = [&](double p1) -> Eigen::VectorXcd {
    const double w = omega_p(wf.m, p1);
    const Estimate f = boosted_smear(wf, n, p1, 0.0, 1.0, budget);
    const Estimate g_pos = boosted_smear(wf, n, p1, cplx(0.0, c), -1.0, budget);
    // 𝓕g(−ω, −p¹): negating both momenta undoes the reflection
    const Estimate g_neg = boosted_smear(wf, n, p1, cplx(0.0, c), 1.0, budget);
    Eigen::VectorXcd v(3);
    v(0) = (g_neg.value * g_pos.value - std::norm(f.value)) / (4.0 * kPi * w);
    v(1) = std::norm(f.value) / (4.0 * kPi * w);
    v(2) = (std::abs(g_neg.value) * g_pos.error + g_neg.error * std::abs(g_pos.value) +
            2.0 * std::abs(f.value) * f.error) /
           (4.0 * kPi * w);
    return v;
  };
  const AdaptiveResult r = integrate_momenta(integrand, std::max(1.0, wf.m), 1e-10);
  WeylExponent e;
  e.value = r.value(0).real();
  e.imag = r.value(0).imag();
  e.norm_fn = r.value(1).real();
  e.error = r.error + std::abs(r.value(2));
  return e;
}

VerificationReport wedge_swap_check(const WedgeFunction& wf, const std::vector<double>& n_grid,
                                    const std::vector<double>& p_grid, const QuadratureBudget& budget, double tol) {
  VerificationReport rep;
  rep.suite = "swap-check-wedge";
  rep.version = artifact_version();
  const ShellConvention& conv = convention_of(wf);
  rep.cases.push_back(identity_case("shell_factorization_matches_2d_oracle",
                                    {{"sign_plus", conv.sign_plus}, {"sign_minus", conv.sign_minus}, {"m", wf.m}},
                                    conv.max_defect, 0.0, kCalibrationTol));
  const SwapOrientation orient = swap_orientation(wf.m);
  for (double n : n_grid) {
    if (n * 0.25 > budget.cancellation_guard)
      throw CancellationGuard("wedge_swap_check: the swapped side exceeds the cancellation guard");
    double worst = 0, literal = 0, err = 0;
    for (double p1 : p_grid) {
      const Estimate d = wedge_smeared_shell_fourier(wf, n, p1, WedgeSide::direct, budget);
      const Estimate s = wedge_smeared_shell_fourier(wf, n, p1, WedgeSide::swapped, budget);
      const Estimate lit = wedge_smeared_shell_fourier(wf, n, p1, WedgeSide::swapped, budget, 0.5);
      worst = std::max(worst, std::abs(d.value - s.value));
      literal = std::max(literal, std::abs(d.value - lit.value));
      err = std::max(err, d.error + s.error);
    }
    std::ostringstream name;
    name << "mass_shell_agreement_n_" << n;
    rep.cases.push_back(identity_case(
        name.str(), {{"n", n}, {"m", wf.m}, {"center_im", orient.center_im}, {"error_estimate", err}}, worst, 0.0,
        tol));
    std::ostringstream lname;
    lname << "centre_plus_half_i_discrepancy_n_" << n;
    rep.cases.push_back(info_case(lname.str(), {{"n", n}, {"center_im", 0.5}}, literal, 0.0));
  }
  return rep;
}

}  // namespace modtheory
