#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "modtheory/core.hpp"
#include "modtheory/report.hpp"

namespace modtheory {

// Chiral current on the light ray. Test functions live on u ≥ 0; the
// Fourier convention is (𝓕f)(p) = ∫ f(u) e^{ipu} du.

enum class RayFamily { exp_monomial, custom };

struct RayTestFunction {
  RayFamily family = RayFamily::exp_monomial;
  std::string name = "exp-monomial";
  double alpha = 1.0;
  std::function<cplx(cplx)> fourier;      // 𝓕f, complex argument allowed where analytic
  std::function<double(double)> position;  // f(u) for u ≥ 0, zero for u < 0
  // the smeared integrand has only the double poles of (α − ik)^{−2}
  bool has_pole_structure() const { return family == RayFamily::exp_monomial; }
};

// registry: "exp-monomial" → u e^{−αu}, 𝓕f(p) = (α − ip)^{−2}
RayTestFunction make_ray_function(const std::string& family, double alpha = 1.0);
RayTestFunction custom_ray_function(std::string name, double alpha, std::function<cplx(cplx)> fourier,
                                    std::function<double(double)> position);
std::vector<std::string> ray_families();

struct SmearedRayFunction {
  RayTestFunction base;
  double n = 1;  // smearing width
  cplx t = 0;    // modular-flow parameter, |Im t| ≤ 3/4
};

struct QuadratureBudget {
  int hermite_nodes = 128;  // starting Gauss–Hermite order, doubled for the error estimate
  int max_hermite_nodes = 8192;
  double s_abs_tol = 1e-13;
  double s_rel_tol = 1e-12;
  double p_cutoff_factor = 50;  // p_cutoff = factor·α
  int p_nodes = 16;             // Gauss–Legendre order per panel (compared against 2×)
  double p_tol = 1e-12;         // absolute target on an inner product
  double cancellation_guard = 40;  // max n·(Im shift)² for complex-Gaussian quadrature
  double expansion_constant = 1e3;
  double expansion_min_n = 100;
};

struct Estimate {
  cplx value = 0;
  double error = 0;  // node-doubling difference, or analytic envelope
  int nodes = 0;
};

// sqrt(n/π)∫_ℝ e^{−n(s−center)²} h(s) ds by Gauss–Hermite centred at Re center,
// node count doubled until it settles; guarded by n·(Im center)²
Estimate gaussian_smear(double n, cplx center, const std::function<cplx(double)>& h, const QuadratureBudget& budget);

enum class Contour {
  real_line,  // Gauss–Hermite on Im s = 0
  deformed,   // line closest to Im t clear of the poles, plus exact residues (exp-monomial only)
};

// sqrt(n/π)∫ e^{−n(s−t)²−2πs}(𝓕f)(q e^{−2πs}) ds for any real q
Estimate smeared_integral(const SmearedRayFunction& srf, double q, const QuadratureBudget& budget,
                          Contour contour = Contour::real_line);
// same, restricted to q = p ≥ 0: the Fourier transform of α_t f_n
Estimate smeared_fourier(const SmearedRayFunction& srf, double p, const QuadratureBudget& budget,
                         Contour contour = Contour::real_line);
// large-n expansion; error is K·n^{−3/2}|α−ip|^{−2}
Estimate expansion_fourier(const SmearedRayFunction& srf, double p, const QuadratureBudget& budget = {});

using SpectralFunction = std::function<Estimate(double)>;
// cache keyed on the exact p value; quadrature revisits the same nodes often
SpectralFunction memoize(SpectralFunction f);
SpectralFunction exact_spectrum(std::function<cplx(double)> f);

enum class FourierMethod { real_line, deformed, expansion };
SpectralFunction smeared_spectrum(const SmearedRayFunction& srf, FourierMethod method, const QuadratureBudget& budget);

struct InnerProduct {
  cplx value = 0;
  double quadrature_error = 0;  // panel differences, finite part plus mapped tail
  double propagated_error = 0;  // (1/4π)∫p(|F|δG + δF|G| + δFδG)
  double tail_value = 0;        // |mapped tail contribution|
  double tail_bound = 0;        // p^{−2} envelope bound on the tail, informational
  int panels = 0;
  double error() const { return quadrature_error + propagated_error; }
};

// (1/4π)∫₀^∞ p conj(F(p)) G(p) dp; p_scale sets the cutoff p_cutoff_factor·p_scale
InnerProduct one_particle_inner(const SpectralFunction& F, const SpectralFunction& G, double p_scale,
                                const QuadratureBudget& budget);

struct JfnNorm {
  double value = 0;
  double error = 0;
  double expansion = 0;  // 1/(8πα²) − π/(4nα²)
  double envelope = 0;   // 150/(n²α²)
  double residual() const { return value - expansion; }
  bool within_envelope() const { return std::abs(residual()) <= envelope; }
};
JfnNorm jfn_norm_sq(const RayTestFunction& base, double n, const QuadratureBudget& budget = {});

enum class WickMethod { expansion, direct };
std::string to_string(WickMethod m);

struct WickResult {
  WickMethod method = WickMethod::direct;
  double n = 0;
  JfnNorm jfn;
  double c4 = 0;  // c_n⁴ = jfn⁻²
  // pairings; a, b, c stand for flow parameters −3i/4, −i/4, i/4
  std::array<InnerProduct, 6> inner;  // (a,b) (b,a) (a,c) (c,a) (a,a) (c,c)
  std::array<cplx, 3> terms{};        // c_n⁴ × pairwise products
  std::array<double, 3> term_errors{};
  double norm_sq = 0;
  double norm_sq_error = 0;
  double bound = 0;  // ln(norm_sq)
  double bound_error = 0;
};
WickResult wick_bound(const RayTestFunction& base, double n, WickMethod method, const QuadratureBudget& budget = {});

// 𝓕f_n(p) against its swapping partner on a p-grid, both sides by real-line
// quadrature. tol < 0 picks 1e−8 for n ≤ 16 and 1e−5 above. Negative grid
// momenta become info rows (the identity only holds for p ≥ 0); without any,
// one row at p = −1 is added.
VerificationReport ray_swap_check(const RayTestFunction& base, double n, const std::vector<double>& p_grid,
                                  const QuadratureBudget& budget = {}, double tol = -1);

}  // namespace modtheory
