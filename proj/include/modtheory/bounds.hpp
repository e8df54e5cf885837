#pragma once

#include <cstdint>
#include <vector>

#include "modtheory/divergences.hpp"
#include "modtheory/report.hpp"

namespace modtheory {

// Commutant elements b′ = 1⊗m are passed as m (action X ↦ X mᵀ).

// m / ‖b′Ω‖, so that b′Ω is a unit vector
Mat normalize_excitation(const StandardForm& sf, const Mat& b_prime);
Vec excitation(const StandardForm& sf, const Mat& b_prime);

struct BoundChain {
  DivergenceValue s_rel;
  double mid_l4 = 0;        // 2 ln ‖Δ^{−1/4}(b′)†b′Ω‖
  double right_opnorm = 0;  // 2 ln ‖b′‖
  double slack_left = 0;    // mid_l4 − s_rel
  double slack_right = 0;   // right_opnorm − mid_l4
  bool holds = false;       // 0 ≤ s_rel ≤ mid_l4 ≤ right_opnorm within −1e−8
};

BoundChain entropy_bound_chain(const StandardForm& sf, const Mat& b_prime);

// J[σ_{i/2}(a)]†J as an operator on C^{n²}, assembled literally
Mat swapping_partner_operator(const StandardForm& sf, const Mat& a);
// the same element as m with operator 1⊗m
Mat swapping_partner(const StandardForm& sf, const Mat& a);

struct SwapDefects {
  double excitation;   // ‖b′Ω − aΩ‖
  double commutation;  // max over matrix units ‖[E_kl⊗1, b′]‖
  double tensor_form;  // ‖operator − 1⊗m‖
};
SwapDefects swapping_partner_defects(const StandardForm& sf, const Mat& a);

struct TwoFlowBound {
  DivergenceValue s_rel;
  double middle = 0;      // 2 ln ‖σ_{i/4}(a)σ_{3i/4}(a)†Ω‖
  double middle_alt = 0;  // 2 ln ‖Δ^{−1/4} a Δ a† Ω‖
  double right = 0;       // 2 ln ‖σ_{i/2}(a)‖
  bool holds = false;
};
TwoFlowBound two_flow_bound(const StandardForm& sf, const Mat& a);

enum class SmearMethod { closed_form, quadrature };

struct SmearedElement {
  Mat base;
  double n = 1;
  Mat smeared;
  bool closed_form_used = true;
  double error_estimate = 0;  // node-doubling difference (quadrature only)
  int nodes = 0;
};
SmearedElement smear(const StandardForm& sf, const Mat& a, double n, SmearMethod method);

struct SmearedBoundRow {
  double n;
  double bound;        // two-flow middle member of the normalized a_n
  double running_min;  // liminf estimate
  double distance;     // ‖a_nΩ − aΩ‖
};
struct SmearedBoundSequence {
  std::vector<SmearedBoundRow> rows;
  bool non_monotone = false;
};
SmearedBoundSequence smeared_bound_sequence(const StandardForm& sf, const Mat& a, const std::vector<double>& n_grid);

struct ControlledResult {
  double c = 0;
  double worst_ratio = 0;
  bool holds = true;
};
ControlledResult controlled_constant(const StandardForm& sf, const Mat& b_prime, int trials, std::uint64_t seed);

// Araki relative entropy of an unnormalized vector against
// ‖v‖²·S(v/‖v‖) + ‖v‖² ln ‖v‖²
struct RescalingCheck {
  double lhs, rhs;
};
RescalingCheck rescaling_identity(const StandardForm& sf, const Vec& v);

// Qubit pair with U = σ_z⊗1 and U′ = 1⊗σ_z on the maximally entangled vector
struct QubitDemo {
  double excitation_gap;    // ‖UΩ − U′Ω‖
  double rho1_gap, sigma1_gap;  // max entry deviation from I/2
  double state_gap_algebra;     // max |ω(UxU†) − ω(x)| over matrix units
  double state_gap_commutant;
  DivergenceValue s_rel;
  BoundChain chain;
};
QubitDemo qubit_facts();
VerificationReport qubit_demo();

}  // namespace modtheory
