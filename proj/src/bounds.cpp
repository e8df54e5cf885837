#include "modtheory/bounds.hpp"

#include <cmath>
#include <numbers>

#include "modtheory/quadrature.hpp"
#include "modtheory/random.hpp"

namespace modtheory {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kChainSlack = 1e-8;

void require_unit(const Vec& v, const char* what) {
  if (std::abs(v.norm() - 1.0) > 1e-10) throw NotNormalized(std::string(what) + ": excitation vector is not normalized");
}

Mat unit(Eigen::Index n, Eigen::Index k, Eigen::Index l) {
  Mat e = Mat::Zero(n, n);
  e(k, l) = 1;
  return e;
}

}  // namespace

Vec excitation(const StandardForm& sf, const Mat& b_prime) { return right_op(b_prime) * sf.omega_vec; }

Mat normalize_excitation(const StandardForm& sf, const Mat& b_prime) {
  const double nrm = excitation(sf, b_prime).norm();
  if (nrm < 1e-12) throw DegenerateInput("normalize_excitation: b′Ω vanishes");
  return b_prime / nrm;
}

BoundChain entropy_bound_chain(const StandardForm& sf, const Mat& b_prime) {
  const Vec psi = excitation(sf, b_prime);
  require_unit(psi, "entropy_bound_chain");
  BoundChain c;
  c.s_rel = relative_entropy(sf, psi);
  LpOptions opts;
  opts.b_prime = b_prime;
  const double l4 = lp_norm(sf, psi, 4.0, LpMode::closed_form, opts).value;
  c.mid_l4 = 4.0 * std::log(l4);  // ‖Ψ‖_4² = ‖Δ^{−1/4}(b′)†b′Ω‖
  c.right_opnorm = 2.0 * std::log(op_norm(b_prime));
  const double s = c.s_rel.infinite ? INFINITY : c.s_rel.value;
  c.slack_left = c.mid_l4 - s;
  c.slack_right = c.right_opnorm - c.mid_l4;
  c.holds = s >= -kChainSlack && c.slack_left >= -kChainSlack && c.slack_right >= -kChainSlack;
  return c;
}

Mat swapping_partner_operator(const StandardForm& sf, const Mat& a) {
  const Mat c = modular_flow(sf, a, 0.5 * kI);
  const Mat& l = sf.j_conj.linear_part;
  // J M J for linear M: ξ ↦ L conj(M L conj ξ) = L conj(M) conj(L) ξ
  return l * left_op(Mat(c.adjoint())).conjugate() * l.conjugate();
}

Mat swapping_partner(const StandardForm& sf, const Mat& a) {
  const Mat op = swapping_partner_operator(sf, a);
  return op.topLeftCorner(sf.n, sf.n);  // 1⊗m has m as its leading block
}

SwapDefects swapping_partner_defects(const StandardForm& sf, const Mat& a) {
  const Mat op = swapping_partner_operator(sf, a);
  const Mat m = op.topLeftCorner(sf.n, sf.n);
  SwapDefects d{};
  d.excitation = (op * sf.omega_vec - left_op(a) * sf.omega_vec).norm();
  d.tensor_form = (op - right_op(m)).norm();
  d.commutation = 0;
  for (Eigen::Index k = 0; k < sf.n; ++k)
    for (Eigen::Index l = 0; l < sf.n; ++l) {
      const Mat e = left_op(unit(sf.n, k, l));
      d.commutation = std::max(d.commutation, (e * op - op * e).norm());
    }
  return d;
}

TwoFlowBound two_flow_bound(const StandardForm& sf, const Mat& a) {
  const Vec a_omega = left_op(a) * sf.omega_vec;
  require_unit(a_omega, "two_flow_bound");
  TwoFlowBound r;
  r.s_rel = relative_entropy(sf, a_omega);
  const Mat q = modular_flow(sf, a, 0.25 * kI);
  const Mat w = modular_flow(sf, a, 0.75 * kI);
  r.middle = 2.0 * std::log((left_op(Mat(q * w.adjoint())) * sf.omega_vec).norm());
  const Vec alt = sf.delta_power(-0.25) * left_op(a) * sf.delta * left_op(Mat(a.adjoint())) * sf.omega_vec;
  r.middle_alt = 2.0 * std::log(alt.norm());
  r.right = 2.0 * std::log(op_norm(modular_flow(sf, a, 0.5 * kI)));
  const double s = r.s_rel.infinite ? INFINITY : r.s_rel.value;
  r.holds = s >= -kChainSlack && r.middle - s >= -kChainSlack && r.right - r.middle >= -kChainSlack;
  return r;
}

SmearedElement smear(const StandardForm& sf, const Mat& a, double n, SmearMethod method) {
  if (!(n > 0)) throw DomainError("smear: width n must be positive");
  SmearedElement e;
  e.base = a;
  e.n = n;
  if (method == SmearMethod::closed_form) {
    const auto& sp = sf.rho_spectrum;
    Mat b = sp.eigenvectors.adjoint() * a * sp.eigenvectors;
    for (Eigen::Index i = 0; i < sf.n; ++i)
      for (Eigen::Index j = 0; j < sf.n; ++j) {
        const double d = std::log(sp.eigenvalues(i)) - std::log(sp.eigenvalues(j));
        b(i, j) *= std::exp(-d * d / (4.0 * n));
      }
    e.smeared = sp.eigenvectors * b * sp.eigenvectors.adjoint();
    e.closed_form_used = true;
    return e;
  }

  // sqrt(n/π)∫e^{−ns²}σ_s(a)ds = π^{−1/2} Σ w_k σ_{x_k/√n}(a)
  auto rule_sum = [&](int nodes) {
    const QuadratureRule& r = gauss_hermite(nodes);
    Mat acc = Mat::Zero(sf.n, sf.n);
    for (int k = 0; k < nodes; ++k) {
      if (r.weights[k] == 0) continue;
      acc += r.weights[k] * modular_flow(sf, a, cplx(r.nodes[k] / std::sqrt(n), 0.0));
    }
    return Mat(acc / std::sqrt(std::numbers::pi));
  };
  const double tol = 1e-12 * std::max(1.0, a.norm());
  int nodes = 64;
  Mat coarse = rule_sum(nodes);
  for (; nodes <= 4096; nodes *= 2) {
    const Mat fine = rule_sum(2 * nodes);
    const double err = (fine - coarse).norm();
    if (err <= tol) {
      e.smeared = fine;
      e.error_estimate = err;
      e.nodes = 2 * nodes;
      e.closed_form_used = false;
      return e;
    }
    coarse = fine;
  }
  throw QuadratureBudgetExceeded("smear: Gauss–Hermite node doubling did not settle by 8192 nodes");
}

SmearedBoundSequence smeared_bound_sequence(const StandardForm& sf, const Mat& a, const std::vector<double>& n_grid) {
  const Vec a_omega = left_op(a) * sf.omega_vec;
  require_unit(a_omega, "smeared_bound_sequence");
  SmearedBoundSequence res;
  double running = INFINITY;
  for (double n : n_grid) {
    const Mat an = smear(sf, a, n, SmearMethod::closed_form).smeared;
    const Vec an_omega = left_op(an) * sf.omega_vec;
    const double dist = (an_omega - a_omega).norm();
    const Mat an_unit = an / an_omega.norm();
    const TwoFlowBound c2 = two_flow_bound(sf, an_unit);
    running = std::min(running, c2.middle);
    res.rows.push_back({n, c2.middle, running, dist});
  }
  bool up = true, down = true;
  for (size_t i = 1; i < res.rows.size(); ++i) {
    if (res.rows[i].bound > res.rows[i - 1].bound + 1e-12) down = false;
    if (res.rows[i].bound < res.rows[i - 1].bound - 1e-12) up = false;
  }
  res.non_monotone = !(up || down);
  return res;
}

ControlledResult controlled_constant(const StandardForm& sf, const Mat& b_prime, int trials, std::uint64_t seed) {
  const Vec psi = excitation(sf, b_prime);
  const double norm2 = psi.squaredNorm();
  if (norm2 < 1e-24) throw DegenerateInput("controlled_constant: b′Ω vanishes");
  ControlledResult r;
  r.c = std::pow(op_norm(b_prime), 2) / norm2;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const Mat c = random_gaussian(sf.n, sf.n, rng);
    const Mat pos = c.adjoint() * c;
    const double excited = psi.dot(left_op(pos) * psi).real() / norm2;
    const double vacuum = (sf.rho_omega * pos).trace().real();
    r.worst_ratio = std::max(r.worst_ratio, excited / vacuum);
    if (excited > r.c * vacuum + 1e-10) r.holds = false;
  }
  return r;
}

RescalingCheck rescaling_identity(const StandardForm& sf, const Vec& v) {
  const double n2 = v.squaredNorm();
  const DivergenceValue whole = araki_relative_entropy(sf.omega_vec, v);
  const DivergenceValue unit_part = araki_relative_entropy(sf.omega_vec, Vec(v / std::sqrt(n2)));
  if (whole.infinite || unit_part.infinite) return {INFINITY, INFINITY};
  return {whole.value, n2 * unit_part.value + n2 * std::log(n2)};
}

QubitDemo qubit_facts() {
  Mat rho = Mat::Identity(2, 2) / 2.0;
  const StandardForm sf = make_standard_form(rho);
  Mat sz = Mat::Zero(2, 2);
  sz(0, 0) = 1;
  sz(1, 1) = -1;
  const Mat u = left_op(sz), u_prime = right_op(sz);
  const Vec& omega = sf.omega_vec;
  QubitDemo d{};
  d.excitation_gap = (u * omega - u_prime * omega).norm();

  const Mat proj = omega * omega.adjoint();
  const Mat half = Mat::Identity(2, 2) / 2.0;
  d.rho1_gap = (trace_out_second(proj, 2, 2) - half).cwiseAbs().maxCoeff();
  d.sigma1_gap = (trace_out_first(proj, 2, 2) - half).cwiseAbs().maxCoeff();

  const Vec excited = u_prime * omega;
  d.state_gap_algebra = d.state_gap_commutant = 0;
  for (Eigen::Index k = 0; k < 2; ++k)
    for (Eigen::Index l = 0; l < 2; ++l) {
      const Mat e = unit(2, k, l);
      const Mat ea = left_op(e), ec = right_op(e);
      d.state_gap_algebra =
          std::max(d.state_gap_algebra, std::abs(excited.dot(ea * excited) - omega.dot(ea * omega)));
      d.state_gap_commutant =
          std::max(d.state_gap_commutant, std::abs(excited.dot(ec * excited) - omega.dot(ec * omega)));
    }
  d.s_rel = relative_entropy(sf, excited);
  d.chain = entropy_bound_chain(sf, sz);
  return d;
}

VerificationReport qubit_demo() {
  const QubitDemo d = qubit_facts();
  VerificationReport r;
  r.suite = "qubit-demo";
  r.version = artifact_version();
  r.cases.push_back(identity_case("unitary_and_commutant_partner_agree",
                                  {{"state_gap_algebra", d.state_gap_algebra},
                                   {"state_gap_commutant", d.state_gap_commutant}},
                                  std::max({d.excitation_gap, d.state_gap_algebra, d.state_gap_commutant}), 0.0,
                                  1e-12));
  r.cases.push_back(identity_case("reduced_densities_are_maximally_mixed",
                                  {{"rho1_gap", d.rho1_gap}, {"sigma1_gap", d.sigma1_gap}},
                                  std::max(d.rho1_gap, d.sigma1_gap), 0.0, 1e-12));
  const double s = d.s_rel.reported();
  r.cases.push_back(identity_case(
      "relative_entropy_and_chain_vanish",
      {{"s_rel", s}, {"mid_l4", d.chain.mid_l4}, {"right_opnorm", d.chain.right_opnorm}},
      std::max({std::abs(s), std::abs(d.chain.mid_l4), std::abs(d.chain.right_opnorm)}), 0.0, 1e-10));
  return r;
}

}  // namespace modtheory
