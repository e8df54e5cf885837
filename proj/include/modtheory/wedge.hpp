#pragma once

#include <array>
#include <memory>
#include <string>

#include "modtheory/lightray.hpp"
#include "modtheory/report.hpp"

namespace modtheory {

// Free scalar field in 1+1 dimensions, right wedge x¹ ≥ |x⁰|. Light-cone
// coordinates u₊ = x⁰ + x¹, u₋ = x¹ − x⁰; test functions factorize as
// f(x) = g₊(u₊)·g₋(u₋). Momentum-space convention: p·x = −ωx⁰ + p¹x¹ and
// (𝓕f)(ω, p¹) = ∫ f(x) e^{ip·x} d²x.

// Which light-cone momentum each factor sees, fixed against a 2D oracle:
// k₊ = sign_plus·(p¹ − ω)/2, k₋ = sign_minus·(p¹ + ω)/2.
struct ShellConvention {
  int sign_plus = 1;
  int sign_minus = 1;
  double max_defect = 0;  // worst |factorized − 2D| at the calibration momenta
  std::array<double, 3> momenta{-1.3, 0.0, 0.7};
};

struct WedgeFunction {
  RayTestFunction gplus, gminus;
  double m = 1;
  std::shared_ptr<const ShellConvention> convention;  // set by calibrate_shell
  double position(double x0, double x1) const;
};

// factors from the ray registry; calibrates before returning
WedgeFunction make_wedge_function(const std::string& family, double alpha_plus, double alpha_minus, double m);
WedgeFunction make_wedge_function(RayTestFunction gplus, RayTestFunction gminus, double m);
// scales g₊ by c (used for the quadratic-form check)
WedgeFunction scaled(const WedgeFunction& wf, double c);

double omega_p(double m, double p1);

struct BoostParams {
  cplx t = 0;  // rapidity in units of 2π
};
// Λ_t x = (cosh(2πt)x⁰ + sinh(2πt)x¹, cosh(2πt)x¹ + sinh(2πt)x⁰)
std::array<cplx, 2> boost(const BoostParams& b, cplx x0, cplx x1);
bool in_right_wedge(double x0, double x1);

// H(x, z, p) = cosh(2πz)(ωx⁰ − p¹x¹) + sinh(2πz)(ωx¹ − p¹x⁰), so that
// e^{ip·Λ_z x} = e^{−iH}
cplx h_function(double x0, double x1, cplx z, double p1, double m);

// sign(Im H) = sign(Im z) on sampled wedge points, Re z ∈ {−1,0,1},
// Im z ∈ {−0.4, 0.2}, on-shell momenta p¹ ∈ {−2,0,1,3}
struct ImHSignCheck {
  int samples = 0;
  int violations = 0;
  double min_abs_im = INFINITY;  // smallest |Im H| seen
};
ImHSignCheck im_h_sign_check(double m);

// direct 2D quadrature of (𝓕f)(ω_p, p¹) over the wedge; the calibration oracle
cplx shell_fourier_2d(const WedgeFunction& wf, double p1, double tol = 1e-10);
ShellConvention calibrate_shell(const WedgeFunction& wf);

cplx shell_fourier(const WedgeFunction& wf, double p1);

enum class WedgeSide { direct, swapped };

struct SwapOrientation {
  double center_im = -0.5;  // Gaussian centre of the swapped side, ±1/2
  double im_h_probe = 0;    // Im H at s = +i/4 on a probe point
};
// reads the analytic strip off the sign of Im H
SwapOrientation swap_orientation(double m);

// direct: sqrt(n/π)∫e^{−ns²}·½Ĝ₊(k₊e^{−2πs})Ĝ₋(k₋e^{2πs})ds
// swapped: sqrt(n/π)∫e^{−n(s−c)²}·½Ĝ₊(−k₊e^{−2πs})Ĝ₋(−k₋e^{2πs})ds, c from swap_orientation
// center_override replaces c (the +i/2 centre is reported this way)
Estimate wedge_smeared_shell_fourier(const WedgeFunction& wf, double n, double p1, WedgeSide side,
                                     const QuadratureBudget& budget = {}, double center_override = NAN);

struct WeylExponent {
  double value = 0;  // Re[ω₂(g,g) − ‖f_n‖²], g the swapped partner
  double imag = 0;   // Im part of the same difference
  double norm_fn = 0;  // ‖f_n‖²
  double error = 0;
};
WeylExponent weyl_rescaling_exponent(const WedgeFunction& wf, double n, const QuadratureBudget& budget = {});

VerificationReport wedge_swap_check(const WedgeFunction& wf, const std::vector<double>& n_grid,
                                    const std::vector<double>& p_grid, const QuadratureBudget& budget = {},
                                    double tol = 1e-6);

}  // namespace modtheory
