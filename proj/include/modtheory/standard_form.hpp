#pragma once

#include "modtheory/core.hpp"

namespace modtheory {

// GNS data of a state on the n×n matrix algebra, realized on C^n ⊗ C^n ≅ n×n
// matrices. Ω = vec(ρ^{1/2}), Δ: X ↦ ρXρ^{-1}, J: X ↦ X†.
struct StandardForm {
  Eigen::Index n = 0;
  Mat rho_omega;
  Vec omega_vec;
  Mat delta;
  AntilinearMap<double> j_conj;
  Spectrum<double> rho_spectrum;

  Eigen::Index hilbert_dim() const { return n * n; }
  // ρ^r in the algebra (pseudo-inverse on the support for r < 0).
  Mat rho_power(double r) const;
  // Δ^z as an operator on C^{n²}, z complex; kernel of Δ mapped to 0.
  Mat delta_power(cplx z) const;
};

StandardForm make_standard_form(const Mat& rho, bool require_full_rank = true);

struct StandardFormDefects {
  double omega_norm;        // |‖Ω‖ − 1|
  double j_fixes_omega;     // ‖JΩ − Ω‖
  double delta_fixes_omega; // ‖ΔΩ − Ω‖
  double j_delta_j;         // ‖JΔJ − Δ^{-1}‖
};
StandardFormDefects check_invariants(const StandardForm& sf);

// ‖JΔ^{1/2}(a⊗1)Ω − (a†⊗1)Ω‖
double tomita_defect(const StandardForm& sf, const Mat& a);

enum class Side { algebra, commutant };

struct RelativeModular {
  Spectrum<double> spectrum;  // of Δ_{Φ,Ψ}
  Mat delta;                  // Δ_{Φ,Ψ} on C^{n²}
  Mat support_left;           // s^𝔐(Φ) (algebra side) as an operator on C^{n²}
  Mat support_right;          // s^{𝔐′}(Ψ) (algebra side) as an operator on C^{n²}
  AntilinearMap<double> s_closure;
  AntilinearMap<double> j_rel;
  // ‖Δ_{Φ,Ψ} − vectorization formula‖; the formula is exact for every pair
  // of nonzero vectors in this model, so this is a pure consistency figure.
  double oracle_defect = 0;
  bool both_faithful = false;

  Mat support() const { return support_left * support_right; }
  Mat power(double r) const { return mat_fn(spectrum, [r](double l) { return std::pow(l, r); }, true); }
};

RelativeModular relative_modular(const Vec& phi, const Vec& psi, Side side = Side::algebra);

// Closed vectorization formula: algebra side Y ↦ ρ_φ Y σ_ψ⁺,
// commutant side Y ↦ ρ_ψ⁺ Y σ_φ, with ρ_x = X X†, σ_x = X† X.
Mat relative_modular_formula(const Vec& phi, const Vec& psi, Side side = Side::algebra);

// Reduced density on the algebra (X X†) and on the commutant ((X†X)ᵀ).
Mat algebra_state(const Vec& v);
Mat commutant_state(const Vec& v);

// Support projections as n×n matrices: s^𝔐 acts by left multiplication,
// s^{𝔐′} by right multiplication with the returned matrix.
Mat algebra_support(const Vec& v);
Mat commutant_support(const Vec& v);

// Commutant elements are stored as m with action X ↦ X mᵀ (operator 1⊗m).
struct RepresentativeChange {
  Mat u_prime, v_prime;
  Vec phi_plus, psi_plus;
};
RepresentativeChange representative_change(const Vec& phi, const Vec& psi);
// Cone representative of the algebra state of v and the commutant partial
// isometry m with v = (1⊗m)·cone.
std::pair<Vec, Mat> cone_representative(const Vec& v);

// σ_t(a) = ρ^{it} a ρ^{−it}, entire in t.
Mat modular_flow(const StandardForm& sf, const Mat& a, cplx t);

struct PolarVector {
  Mat isometry;  // u in the algebra
  Vec cone_part; // |Ψ|
};
PolarVector polar_vector(const Vec& psi);

struct ConeTest {
  bool member;
  double distance;
};
ConeTest cone_membership(const Vec& xi);

}  // namespace modtheory
