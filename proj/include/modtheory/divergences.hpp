#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "modtheory/standard_form.hpp"

namespace modtheory {

enum class Method { araki_spectral, matrix_oracle, quasi_entropy, lp_variational, lp_closed_form };
std::string to_string(Method m);

// Finite value or the +∞ marker, tagged with the formula that produced it.
struct DivergenceValue {
  bool infinite = false;
  double value = 0;
  Method method = Method::araki_spectral;
  std::optional<double> alpha;
  // |value − independent oracle| when one was evaluated alongside
  std::optional<double> oracle_gap;

  static DivergenceValue finite(double v, Method m, std::optional<double> a = {});
  static DivergenceValue infinity(Method m, std::optional<double> a = {});
  bool is_finite() const { return !infinite; }
  // numerical negatives down to −1e-10 are reported as 0
  double reported() const;
};

// a ≤ b in the extended reals, with slack tol on finite comparisons
bool leq(const DivergenceValue& a, const DivergenceValue& b, double tol = 0);

// Araki formula −(Ψ, ln Δ_{Ω,Ψ} Ψ) on cone representatives. Neither vector
// needs to be normalized.
DivergenceValue araki_relative_entropy(const Vec& omega, const Vec& psi);
DivergenceValue relative_entropy(const StandardForm& sf, const Vec& psi);
// Tr ρ_ψ(ln ρ_ψ − ln ρ_ω), +∞ when supp ρ_ψ ⊄ supp ρ_ω
DivergenceValue relative_entropy_matrix(const Mat& rho_psi, const Mat& rho_omega);

DivergenceValue petz_renyi(const StandardForm& sf, const Vec& psi, double alpha);
// (α−1)^{-1} ln Tr ρ_ψ^α ρ_ω^{1−α}
DivergenceValue petz_renyi_matrix(const Mat& rho_psi, const Mat& rho_omega, double alpha);

struct QuasiEntropySpec {
  enum class Kind { power_family, custom } kind = Kind::power_family;
  double a = 0;
  std::function<double(double)> custom_fn;
  // lim f(λ)/λ for λ → ∞; +∞ when not supplied for custom functions
  std::optional<double> recession;

  // f_a(λ) = λ(λ^a − 1)/a, with λ ln λ at a = 0; requires a ≥ −1
  static QuasiEntropySpec power(double a);
  // custom f, checked for midpoint convexity on a sample grid
  static QuasiEntropySpec custom(std::function<double(double)> f, std::optional<double> recession = {});
  double operator()(double lambda) const;
  // f̂(λ) = λ f(1/λ)
  QuasiEntropySpec dual() const;
  double recession_slope() const;
};

// Q_f(φ|ψ) = Σ f(λ)|⟨v_λ, Ψ⟩|² over the spectrum of Δ_{Φ,Ψ}, plus the
// singular part f′(∞)·‖(1 − s^𝔐(Ψ))Φ‖².
DivergenceValue quasi_entropy(const Vec& phi, const Vec& psi, const QuasiEntropySpec& spec);

enum class LpMode { closed_form, variational };

struct LpOptions {
  int restarts = 8;
  std::uint64_t seed = 0;
  double grad_tol = 1e-9;  // relative to max(1, objective)
  int max_iter = 20000;
  // Ψ = (1⊗m)Ω; enables the p = 4 and p = ∞ closed forms and the p = 4 seed
  std::optional<Mat> b_prime;
};

struct LpNormResult {
  double p = 2;
  double value = 0;
  bool infinite = false;
  std::optional<Vec> maximizer_xi;  // unit cone vector
  LpMode method = LpMode::closed_form;
  bool converged = true;
  int iterations = 0;
};

LpNormResult lp_norm(const StandardForm& sf, const Vec& psi, double p, LpMode mode, const LpOptions& opts = {});
// ‖X_Ψ† ρ^{−(1−2/p)} X_Ψ‖_{p/2}^{1/2}: the supremum in closed form, used as a test oracle
double lp_norm_schatten(const StandardForm& sf, const Vec& psi, double p);

DivergenceValue araki_masuda(const StandardForm& sf, const Vec& psi, double alpha, LpMode mode,
                             const LpOptions& opts = {});
// (α−1)^{-1} ln Tr[(ρ_ω^{(1−α)/2α} ρ_ψ ρ_ω^{(1−α)/2α})^α]
double sandwiched_renyi_matrix(const Mat& rho_psi, const Mat& rho_omega, double alpha);

// Two-level Richardson extrapolation of v(h), v(h/2), v(h/4) to h → 0
// assuming v(h) = v0 + c1 h + c2 h² + ….
double richardson3(double v_h, double v_h2, double v_h4);

}  // namespace modtheory
