#include "modtheory/lightray.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>

#include "modtheory/quadrature.hpp"

namespace modtheory {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
constexpr double kEps = 2.220446049250313e-16;

void require_alpha(double alpha) {
  if (!(alpha > 0) || !std::isfinite(alpha)) throw DomainError("ray test function: α must be positive and finite");
}

void require_n(double n) {
  if (!(n > 0) || !std::isfinite(n)) throw DomainError("smearing width n must be positive and finite");
}

// sqrt(n/π)∫_{Im s = c} e^{−n(s−t)²} h(s) ds, nodes centred at Re t, doubled
// until two successive orders agree
template <class H>
Estimate gauss_hermite_line(double n, cplx t, double c, const H& h, const QuadratureBudget& b) {
  const double rn = std::sqrt(n);
  const double shift = c - t.imag();
  const double amp = n * shift * shift;
  auto sum = [&](int nodes, double& magnitude) {
    const QuadratureRule& r = gauss_hermite(nodes);
    cplx acc = 0;
    magnitude = 0;
    for (int k = 0; k < nodes; ++k) {
      if (r.weights[k] == 0) continue;
      const double x = r.nodes[k];
      const cplx s{t.real() + x / rn, c};
      const cplx term = r.weights[k] * std::exp(cplx(amp, -2.0 * x * rn * shift)) * h(s);
      acc += term;
      magnitude += std::abs(term);
    }
    magnitude /= std::sqrt(kPi);
    return acc / std::sqrt(kPi);
  };
  double mag = 0;
  cplx coarse = sum(b.hermite_nodes, mag);
  for (int nodes = b.hermite_nodes; 2 * nodes <= b.max_hermite_nodes; nodes *= 2) {
    const cplx fine = sum(2 * nodes, mag);
    const double err = std::abs(fine - coarse);
    if (!std::isfinite(err)) break;
    if (err <= b.s_abs_tol + b.s_rel_tol * std::abs(fine) + 100.0 * kEps * mag) return {fine, err, 2 * nodes};
    coarse = fine;
  }
  throw QuadratureBudgetExceeded("Gauss–Hermite node doubling did not settle within the node budget");
}

// nearest line to Im t staying at distance ≥ 1/4 from the pole lines ℓ + ℤ
double clear_line(double tau, double q) {
  if (q == 0) return tau;
  const double ell = q > 0 ? 0.25 : -0.25;
  const double r = (tau - ell) - std::floor(tau - ell);
  if (r >= 0.25 && r <= 0.75) return tau;
  double lo, hi;
  if (r < 0.25) {
    lo = tau - r - 0.25;
    hi = tau + 0.25 - r;
  } else {
    lo = tau - (r - 0.75);
    hi = tau + (1.25 - r);
  }
  const double dlo = tau - lo, dhi = hi - tau;
  if (std::abs(dlo - dhi) < 1e-15) return std::abs(lo) < std::abs(hi) ? lo : hi;
  return dlo < dhi ? lo : hi;
}

}  // namespace

RayTestFunction make_ray_function(const std::string& family, double alpha) {
  require_alpha(alpha);
  if (family != "exp-monomial") throw ConfigError("unknown ray test-function family: " + family);
  RayTestFunction f;
  f.family = RayFamily::exp_monomial;
  f.name = family;
  f.alpha = alpha;
  f.fourier = [alpha](cplx p) { return 1.0 / ((alpha - kI * p) * (alpha - kI * p)); };
  f.position = [alpha](double u) { return u >= 0 ? u * std::exp(-alpha * u) : 0.0; };
  return f;
}

RayTestFunction custom_ray_function(std::string name, double alpha, std::function<cplx(cplx)> fourier,
                                    std::function<double(double)> position) {
  require_alpha(alpha);
  if (!fourier) throw ConfigError("custom ray function needs a Fourier transform");
  RayTestFunction f;
  f.family = RayFamily::custom;
  f.name = std::move(name);
  f.alpha = alpha;
  f.fourier = std::move(fourier);
  f.position = std::move(position);
  return f;
}

std::vector<std::string> ray_families() { return {"exp-monomial"}; }

Estimate gaussian_smear(double n, cplx center, const std::function<cplx(double)>& h, const QuadratureBudget& budget) {
  require_n(n);
  if (n * center.imag() * center.imag() > budget.cancellation_guard)
    throw CancellationGuard("gaussian_smear: n·(Im center)² exceeds the cancellation guard");
  return gauss_hermite_line(n, center, 0.0, [&h](cplx s) { return h(s.real()); }, budget);
}

Estimate smeared_integral(const SmearedRayFunction& srf, double q, const QuadratureBudget& budget, Contour contour) {
  require_n(srf.n);
  if (!std::isfinite(q)) throw DomainError("smeared_integral: momentum must be finite");
  if (std::abs(srf.t.imag()) > 0.75 + 1e-15) throw DomainError("smeared_integral: |Im t| must not exceed 3/4");
  const double n = srf.n;
  const cplx t = srf.t;
  const double tau = t.imag();

  if (contour == Contour::real_line || !srf.base.has_pole_structure()) {
    if (contour == Contour::deformed) throw DomainError("smeared_integral: contour shift needs the exp-monomial family");
    if (n * tau * tau > budget.cancellation_guard)
      throw CancellationGuard("smeared_integral: n·(Im t)² exceeds the cancellation guard");
    const auto& fourier = srf.base.fourier;
    auto h = [&](cplx s) {
      const double x = s.real();
      const double e = std::exp(-2.0 * kPi * x);
      return e * fourier(cplx(q * e, 0.0));
    };
    return gauss_hermite_line(n, t, 0.0, h, budget);
  }

  const double alpha = srf.base.alpha;
  const double c = clear_line(tau, q);
  if (n * (c - tau) * (c - tau) > budget.cancellation_guard)
    throw CancellationGuard("smeared_integral: shifted line still exceeds the cancellation guard");
  // e^{−2πs}(α − iqe^{−2πs})^{−2} = (αe^{πs} − iqe^{−πs})^{−2}
  auto h = [&](cplx s) {
    const cplx d = alpha * std::exp(kPi * s) - kI * q * std::exp(-kPi * s);
    return 1.0 / (d * d);
  };
  Estimate est = gauss_hermite_line(n, t, c, h, budget);
  if (q == 0 || c == 0) return est;

  // double poles between Im s = 0 and Im s = c
  const double ell = q > 0 ? 0.25 : -0.25;
  const double sigma = std::log(std::abs(q) / alpha) / (2.0 * kPi);
  const double lo = std::min(0.0, c), hi = std::max(0.0, c);
  const double sign = c > 0 ? 1.0 : -1.0;
  for (int k = -3; k <= 3; ++k) {
    const double im = ell + k;
    if (!(im > lo && im < hi)) continue;
    const cplx s0{sigma, im};
    const cplx e0 = std::sqrt(n / kPi) * std::exp(-n * (s0 - t) * (s0 - t));
    const cplx de = -2.0 * n * (s0 - t) * e0;
    const cplx dd = 2.0 * kPi * alpha * std::exp(kPi * s0);
    est.value += sign * 2.0 * kPi * kI * de / (dd * dd);
  }
  return est;
}

Estimate smeared_fourier(const SmearedRayFunction& srf, double p, const QuadratureBudget& budget, Contour contour) {
  if (!(p >= 0)) throw DomainError("smeared_fourier: p must be ≥ 0");
  return smeared_integral(srf, p, budget, contour);
}

Estimate expansion_fourier(const SmearedRayFunction& srf, double p, const QuadratureBudget& budget) {
  require_n(srf.n);
  if (srf.n < budget.expansion_min_n) throw ExpansionOutOfRange("expansion_fourier: n below the expansion range");
  if (std::abs(srf.t) > 1.0 + 1e-15) throw ExpansionOutOfRange("expansion_fourier: |t| must not exceed 1");
  if (srf.base.family != RayFamily::exp_monomial)
    throw ExpansionOutOfRange("expansion_fourier: expansion is only known for the exp-monomial family");
  const double a = srf.base.alpha, n = srf.n;
  const cplx d = a - kI * p;
  const cplx lead = 1.0 / (d * d);
  const cplx second = (kPi * kPi / n) * (a * a - p * p + 4.0 * kI * a * p) / (d * d);
  Estimate e;
  e.value = lead * (1.0 + 2.0 * srf.t / std::sqrt(kPi * n) + second);
  e.error = budget.expansion_constant * std::pow(n, -1.5) / std::norm(d);
  return e;
}

SpectralFunction memoize(SpectralFunction f) {
  auto cache = std::make_shared<std::map<double, Estimate>>();
  return [f = std::move(f), cache](double p) {
    auto it = cache->find(p);
    if (it != cache->end()) return it->second;
    const Estimate e = f(p);
    cache->emplace(p, e);
    return e;
  };
}

SpectralFunction exact_spectrum(std::function<cplx(double)> f) {
  return [f = std::move(f)](double p) { return Estimate{f(p), 0.0, 0}; };
}

SpectralFunction smeared_spectrum(const SmearedRayFunction& srf, FourierMethod method, const QuadratureBudget& budget) {
  switch (method) {
    case FourierMethod::real_line:
      return memoize([srf, budget](double p) { return smeared_fourier(srf, p, budget, Contour::real_line); });
    case FourierMethod::deformed:
      return memoize([srf, budget](double p) { return smeared_fourier(srf, p, budget, Contour::deformed); });
    case FourierMethod::expansion:
      return [srf, budget](double p) { return expansion_fourier(srf, p, budget); };
  }
  throw DomainError("smeared_spectrum: unknown method");
}

InnerProduct one_particle_inner(const SpectralFunction& F, const SpectralFunction& G, double p_scale,
                                const QuadratureBudget& budget) {
  if (!(p_scale > 0)) throw DomainError("one_particle_inner: momentum scale must be positive");
  const double pc = budget.p_cutoff_factor * p_scale;
  auto integrand = [&](double p) {
    const Estimate f = F(p), g = G(p);
    Eigen::VectorXcd v(2);
    v(0) = p * std::conj(f.value) * g.value;
    v(1) = p * (std::abs(f.value) * g.error + f.error * std::abs(g.value) + f.error * g.error);
    return v;
  };
  // integral scale tolerance; the 1/4π comes at the end
  const double tol = 4.0 * kPi * budget.p_tol;

  std::vector<double> cuts{0.0};
  for (double x = p_scale / 64.0; x < pc; x *= 2.0) cuts.push_back(x);
  cuts.push_back(pc);
  const double share = 0.9 * tol / static_cast<double>(cuts.size() - 1);

  InnerProduct out;
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(2);
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const AdaptiveResult r = integrate_adaptive(integrand, cuts[i], cuts[i + 1], share, budget.p_nodes);
    acc += r.value;
    out.quadrature_error += r.error;
    out.panels += r.panels;
  }
  // p = pc/u maps [pc, ∞) onto (0, 1]
  auto tail = [&](double u) -> Eigen::VectorXcd { return integrand(pc / u) * (pc / (u * u)); };
  const AdaptiveResult rt = integrate_adaptive(tail, 0.0, 1.0, 0.1 * tol, budget.p_nodes);
  if (rt.error > 0.1 * tol) throw TailBoundTooLarge("one_particle_inner: tail error estimate exceeds 0.1× tolerance");
  acc += rt.value;
  out.quadrature_error += rt.error;
  out.panels += rt.panels;

  double af = 0, ag = 0;
  for (double p : {pc, 2 * pc, 4 * pc}) {
    af = std::max(af, p * p * std::abs(F(p).value));
    ag = std::max(ag, p * p * std::abs(G(p).value));
  }
  out.tail_bound = af * ag / (8.0 * kPi * pc * pc);
  out.tail_value = std::abs(rt.value(0)) / (4.0 * kPi);

  out.value = acc(0) / (4.0 * kPi);
  out.propagated_error = std::abs(acc(1)) / (4.0 * kPi);
  out.quadrature_error /= 4.0 * kPi;
  return out;
}

JfnNorm jfn_norm_sq(const RayTestFunction& base, double n, const QuadratureBudget& budget) {
  if (!(n >= 1)) throw DomainError("jfn_norm_sq: n must be ≥ 1");
  const SpectralFunction f = smeared_spectrum({base, n, 0.0}, FourierMethod::real_line, budget);
  const InnerProduct ip = one_particle_inner(f, f, base.alpha, budget);
  const double a2 = base.alpha * base.alpha;
  JfnNorm r;
  r.value = ip.value.real();
  r.error = ip.error() + std::abs(ip.value.imag());
  r.expansion = 1.0 / (8.0 * kPi * a2) - kPi / (4.0 * n * a2);
  r.envelope = 150.0 / (n * n * a2);
  return r;
}

std::string to_string(WickMethod m) { return m == WickMethod::direct ? "direct" : "expansion"; }

WickResult wick_bound(const RayTestFunction& base, double n, WickMethod method, const QuadratureBudget& budget) {
  if (method == WickMethod::direct && n > 64)
    throw CancellationGuard("wick_bound: the direct method is limited to n ≤ 64");
  if (method == WickMethod::expansion && n < budget.expansion_min_n)
    throw ExpansionOutOfRange("wick_bound: the expansion method needs n in its validity range");
  WickResult w;
  w.method = method;
  w.n = n;
  w.jfn = jfn_norm_sq(base, n, budget);
  w.c4 = 1.0 / (w.jfn.value * w.jfn.value);

  const FourierMethod fm = method == WickMethod::direct
                               ? (base.has_pole_structure() ? FourierMethod::deformed : FourierMethod::real_line)
                               : FourierMethod::expansion;
  const SpectralFunction fa = smeared_spectrum({base, n, cplx(0, -0.75)}, fm, budget);
  const SpectralFunction fb = smeared_spectrum({base, n, cplx(0, -0.25)}, fm, budget);
  const SpectralFunction fc = smeared_spectrum({base, n, cplx(0, 0.25)}, fm, budget);
  const double sc = base.alpha;
  w.inner = {one_particle_inner(fa, fb, sc, budget), one_particle_inner(fb, fa, sc, budget),
             one_particle_inner(fa, fc, sc, budget), one_particle_inner(fc, fa, sc, budget),
             one_particle_inner(fa, fa, sc, budget), one_particle_inner(fc, fc, sc, budget)};

  const double rel_c4 = 2.0 * w.jfn.error / w.jfn.value;
  w.norm_sq = 0;
  w.norm_sq_error = 0;
  for (int k = 0; k < 3; ++k) {
    const InnerProduct& x = w.inner[2 * k];
    const InnerProduct& y = w.inner[2 * k + 1];
    const cplx prod = x.value * y.value;
    w.terms[k] = w.c4 * prod;
    const double dx = x.error(), dy = y.error();
    w.term_errors[k] =
        w.c4 * (std::abs(x.value) * dy + dx * std::abs(y.value) + dx * dy) + rel_c4 * std::abs(w.terms[k]);
    w.norm_sq += w.terms[k].real();
    w.norm_sq_error += w.term_errors[k];
  }
  w.bound = std::log(w.norm_sq);
  w.bound_error = w.norm_sq_error / w.norm_sq;
  return w;
}

VerificationReport ray_swap_check(const RayTestFunction& base, double n, const std::vector<double>& p_grid,
                                  const QuadratureBudget& budget, double tol) {
  if (n * 0.25 > budget.cancellation_guard)
    throw CancellationGuard("ray_swap_check: the swapping side exceeds the cancellation guard");
  if (tol < 0) tol = n <= 16 ? 1e-8 : 1e-5;
  VerificationReport rep;
  rep.suite = "swap-check-ray";
  rep.version = artifact_version();
  const SmearedRayFunction direct{base, n, 0.0};
  const SmearedRayFunction shifted{base, n, cplx(0, 0.5)};
  // −sqrt(n/π)∫e^{−n(s−i/2)²}∫f(−e^{2πs}u)e^{ipu}du ds: the inner integral is
  // e^{−2πs}𝓕f(−pe^{−2πs}), i.e. minus the smeared integral at −p
  auto partner = [&](double p) { return smeared_integral(shifted, -p, budget, Contour::real_line); };
  // off the positive frequencies the two sides are different functions
  auto negative_row = [&](double p) {
    const cplx l = smeared_integral(direct, p, budget).value;
    const cplx r = -partner(p).value;
    std::ostringstream name;
    name << "negative_frequency_discrepancy_at_p_" << p;
    rep.cases.push_back(info_case(name.str(), {{"p", p}, {"n", n}, {"alpha", base.alpha}}, std::abs(l - r), 0.0));
  };
  bool saw_negative = false;
  for (double p : p_grid) {
    if (!std::isfinite(p)) throw DomainError("ray_swap_check: grid momenta must be finite");
    if (p < 0) {
      negative_row(p);
      saw_negative = true;
      continue;
    }
    const Estimate lhs = smeared_fourier(direct, p, budget, Contour::real_line);
    const Estimate rhs = partner(p);
    const cplx r = -rhs.value;
    std::ostringstream name;
    name << "swap_partner_matches_at_p_" << p;
    rep.cases.push_back(identity_case(name.str(),
                                      {{"p", p},
                                       {"n", n},
                                       {"alpha", base.alpha},
                                       {"lhs_re", lhs.value.real()},
                                       {"lhs_im", lhs.value.imag()},
                                       {"rhs_re", r.real()},
                                       {"rhs_im", r.imag()},
                                       {"error_estimate", lhs.error + rhs.error}},
                                      std::abs(lhs.value - r), 0.0, tol));
  }
  if (!saw_negative) negative_row(-1.0);
  return rep;
}

}  // namespace modtheory
