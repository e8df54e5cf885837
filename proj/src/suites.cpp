#include "modtheory/suites.hpp"

#include <cmath>
#include <sstream>

#include "modtheory/bounds.hpp"
#include "modtheory/lightray.hpp"
#include "modtheory/random.hpp"
#include "modtheory/wedge.hpp"

namespace modtheory {

namespace {

VerificationReport stamped(const std::string& suite, const RunConfig& cfg) {
  VerificationReport r;
  r.suite = suite;
  r.seed = cfg.seed;
  r.version = artifact_version();
  r.timestamp = cfg.timestamp ? *cfg.timestamp : utc_timestamp();
  return r;
}

std::string indexed(const std::string& stem, int trial) { return stem + "_" + std::to_string(trial); }

std::string number(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t{
      {"invariants", 1e-10}, {"oracle", 1e-10},   {"chain", 1e-8},       {"swap", 1e-10},
      {"two_flow", 1e-8},        {"rescaling", 1e-8}, {"sandwich", 1e-7},    {"envelope", 1e-12},
      {"wick_limit", 0.06},  {"bound", 0.05},     {"ray_swap", 1e-8},    {"ray_swap_far", 1e-5},
      {"wedge_swap", 1e-6},
  };
  return t;
}

void RunConfig::validate() const {
  if (trials < 0) throw ConfigError("trials must be ≥ 0");
  for (int d : dims)
    if (d < 2) throw ConfigError("every entry of --dims must be ≥ 2");
  if (dims.empty()) throw ConfigError("--dims must not be empty");
  for (double a : alpha_grid)
    if (!(a > 0)) throw ConfigError("--alpha values must be positive");
  for (double n : n_grid)
    if (!(n > 0)) throw ConfigError("--n values must be positive");
  for (const auto& [k, v] : tolerances) {
    if (!default_tolerances().count(k)) throw ConfigError("unknown tolerance key: " + k);
    if (!(v > 0)) throw ConfigError("tolerance " + k + " must be > 0");
  }
  if (format != "json" && format != "csv") throw ConfigError("--format must be json or csv");
}

double RunConfig::tol(const std::string& key) const {
  auto it = tolerances.find(key);
  return it != tolerances.end() ? it->second : default_tolerances().at(key);
}

VerificationReport cmd_verify_findim(const RunConfig& cfg) {
  cfg.validate();
  VerificationReport rep = stamped("verify-findim", cfg);
  Rng rng(cfg.seed);
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const int d = cfg.dims[trial % cfg.dims.size()];
    const nlohmann::json params{{"trial", trial}, {"dim", d}};
    const StandardForm sf = make_standard_form(random_density(d, rng));

    const StandardFormDefects def = check_invariants(sf);
    rep.cases.push_back(identity_case(
        indexed("standard_form_invariants", trial), params,
        std::max({def.omega_norm, def.j_fixes_omega, def.delta_fixes_omega, def.j_delta_j}), 0.0,
        cfg.tol("invariants")));

    const Mat m = normalize_excitation(sf, random_gaussian(d, d, rng));
    const Vec psi = excitation(sf, m);
    const BoundChain chain = entropy_bound_chain(sf, m);
    rep.cases.push_back(identity_case(indexed("relative_entropy_matches_matrix_formula", trial), params,
                                      chain.s_rel.oracle_gap.value_or(INFINITY), 0.0, cfg.tol("oracle")));
    const double s = chain.s_rel.infinite ? INFINITY : chain.s_rel.value;
    rep.cases.push_back(inequality_case(indexed("relative_entropy_nonnegative", trial), params, 0.0, s,
                                        cfg.tol("chain")));
    rep.cases.push_back(inequality_case(indexed("relative_entropy_below_l4_member", trial), params, s,
                                        chain.mid_l4, cfg.tol("chain")));
    rep.cases.push_back(inequality_case(indexed("l4_member_below_operator_norm", trial), params, chain.mid_l4,
                                        chain.right_opnorm, cfg.tol("chain")));

    // sandwich at α = 2, where the L⁴ closed form applies
    LpOptions opts;
    opts.b_prime = m;
    const DivergenceValue d2 = araki_masuda(sf, psi, 2.0, LpMode::closed_form, opts);
    const DivergenceValue s_low = petz_renyi(sf, psi, 1.5);
    const DivergenceValue s_high = petz_renyi(sf, psi, 2.0);
    rep.cases.push_back(inequality_case(indexed("petz_lower_sandwich_alpha_2", trial), params, s_low.value,
                                        d2.value, cfg.tol("sandwich")));
    rep.cases.push_back(inequality_case(indexed("petz_upper_sandwich_alpha_2", trial), params, d2.value,
                                        s_high.value, cfg.tol("sandwich")));

    Mat a = random_gaussian(d, d, rng);
    const SwapDefects sw = swapping_partner_defects(sf, a);
    rep.cases.push_back(identity_case(indexed("swapping_partner_excites_alike", trial), params,
                                      std::max(sw.excitation, sw.commutation), 0.0, cfg.tol("swap")));

    a /= (left_op(a) * sf.omega_vec).norm();
    const TwoFlowBound c2 = two_flow_bound(sf, a);
    rep.cases.push_back(identity_case(indexed("two_flow_middle_forms_agree", trial), params, c2.middle,
                                      c2.middle_alt, cfg.tol("two_flow")));
    const double s2 = c2.s_rel.infinite ? INFINITY : c2.s_rel.value;
    rep.cases.push_back(
        inequality_case(indexed("two_flow_relative_entropy_below_middle", trial), params, s2, c2.middle, cfg.tol("chain")));
    rep.cases.push_back(
        inequality_case(indexed("two_flow_middle_below_right", trial), params, c2.middle, c2.right, cfg.tol("chain")));

    const double scale = 0.5 + 1.5 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const Vec v = scale * psi;
    const RescalingCheck rc = rescaling_identity(sf, v);
    rep.cases.push_back(identity_case(indexed("rescaling_identity", trial),
                                      {{"trial", trial}, {"dim", d}, {"norm_sq", scale * scale}}, rc.lhs, rc.rhs,
                                      cfg.tol("rescaling")));
  }
  return rep;
}

VerificationReport cmd_qubit_demo(const RunConfig& cfg) {
  cfg.validate();
  VerificationReport rep = qubit_demo();
  rep.seed = cfg.seed;
  rep.timestamp = cfg.timestamp ? *cfg.timestamp : utc_timestamp();
  return rep;
}

VerificationReport cmd_chiral_bound(const RunConfig& cfg) {
  cfg.validate();
  const std::vector<double> grid = cfg.n_grid.empty() ? std::vector<double>{100, 400, 1600, 1e4} : cfg.n_grid;
  VerificationReport rep = stamped("chiral-bound", cfg);
  const double two_ln3 = 2.0 * std::log(3.0);
  for (double alpha : cfg.alpha_grid) {
    const RayTestFunction f = make_ray_function("exp-monomial", alpha);
    const QuadratureBudget budget;
    double running_min = INFINITY;
    double last_norm = NAN, last_bound = NAN;
    for (double n : grid) {
      const nlohmann::json base{{"alpha", alpha}, {"n", n}};
      const JfnNorm j = jfn_norm_sq(f, n, budget);
      if (n >= 100) {
        nlohmann::json p = base;
        p["value"] = j.value;
        p["expansion"] = j.expansion;
        rep.cases.push_back(inequality_case("jfn_expansion_envelope_n_" + number(n) + "_alpha_" + number(alpha), p,
                                            std::abs(j.residual()), j.envelope, cfg.tol("envelope")));
      }
      const WickMethod method = n >= budget.expansion_min_n ? WickMethod::expansion : WickMethod::direct;
      try {
        const WickResult w = wick_bound(f, n, method, budget);
        running_min = std::min(running_min, w.bound);
        nlohmann::json p = base;
        p["method"] = to_string(method);
        p["norm_sq"] = w.norm_sq;
        p["norm_sq_error"] = w.norm_sq_error;
        p["term_1"] = w.terms[0].real();
        p["term_2"] = w.terms[1].real();
        p["term_3"] = w.terms[2].real();
        p["running_min_bound"] = running_min;
        rep.cases.push_back(info_case("wick_row_n_" + number(n) + "_alpha_" + number(alpha), p, w.bound, two_ln3));
        last_norm = w.norm_sq;
        last_bound = w.bound;
      } catch (const CancellationGuard& e) {
        nlohmann::json p = base;
        p["skipped"] = e.what();
        rep.cases.push_back(info_case("wick_row_skipped_n_" + number(n) + "_alpha_" + number(alpha), p, NAN, NAN));
      } catch (const ExpansionOutOfRange& e) {
        nlohmann::json p = base;
        p["skipped"] = e.what();
        rep.cases.push_back(info_case("wick_row_skipped_n_" + number(n) + "_alpha_" + number(alpha), p, NAN, NAN));
      }
    }
    const nlohmann::json p{{"alpha", alpha}, {"n", grid.back()}};
    rep.cases.push_back(
        identity_case("last_row_norm_sq_near_three_alpha_" + number(alpha), p, last_norm, 3.0, cfg.tol("wick_limit")));
    rep.cases.push_back(
        identity_case("last_row_bound_near_two_ln3_alpha_" + number(alpha), p, last_bound, two_ln3, cfg.tol("bound")));
  }
  return rep;
}

VerificationReport cmd_swap_check(const RunConfig& cfg, const std::string& target) {
  cfg.validate();
  const std::vector<double> grid = cfg.n_grid.empty() ? std::vector<double>{1, 4, 16} : cfg.n_grid;
  if (target == "ray") {
    VerificationReport rep = stamped("swap-check-ray", cfg);
    for (double alpha : cfg.alpha_grid) {
      const RayTestFunction f = make_ray_function("exp-monomial", alpha);
      for (double n : grid) {
        const double tol = n <= 16 ? cfg.tol("ray_swap") : cfg.tol("ray_swap_far");
        const VerificationReport part = ray_swap_check(f, n, {0, 0.5, 1, 2, 5}, {}, tol);
        for (Case c : part.cases) {
          c.name += "_n_" + number(n) + "_alpha_" + number(alpha);
          if (c.kind == CaseKind::info) c.params["expected"] = "nonzero";
          rep.cases.push_back(std::move(c));
        }
      }
    }
    return rep;
  }
  if (target == "wedge") {
    VerificationReport rep = stamped("swap-check-wedge", cfg);
    const double m = 1.0;
    for (double alpha : cfg.alpha_grid) {
      const WedgeFunction wf = make_wedge_function("exp-monomial", alpha, alpha, m);
      const VerificationReport part = wedge_swap_check(wf, grid, {-2, 0, 1, 3}, {}, cfg.tol("wedge_swap"));
      for (Case c : part.cases) {
        c.name += "_alpha_" + number(alpha);
        rep.cases.push_back(std::move(c));
      }
      const WeylExponent we = weyl_rescaling_exponent(wf, 4.0);
      rep.cases.push_back(info_case("weyl_rescaling_exponent_n_4_alpha_" + number(alpha),
                                    {{"imag", we.imag}, {"norm_fn_sq", we.norm_fn}, {"error", we.error}}, we.value,
                                    0.0));
    }
    const ImHSignCheck h = im_h_sign_check(m);
    rep.cases.push_back(identity_case("im_h_sign_matches_im_z", {{"samples", h.samples}, {"min_abs_im_h", h.min_abs_im}},
                                      h.violations, 0.0, 0.5));
    return rep;
  }
  throw ConfigError("swap-check target must be ray or wedge");
}

}  // namespace modtheory
