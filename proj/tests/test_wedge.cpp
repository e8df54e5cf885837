#include "doctest.h"

#include <numbers>

#include "modtheory/wedge.hpp"

using namespace modtheory;

namespace {

constexpr double kPi = std::numbers::pi;

const WedgeFunction& standard() {
  static const WedgeFunction wf = make_wedge_function("exp-monomial", 1.0, 1.0, 1.0);
  return wf;
}

}  // namespace

TEST_SUITE("wedge") {

TEST_CASE("boosts preserve light-cone coordinates up to rapidity factors") {
  for (double t : {-0.3, 0.0, 0.17, 0.5}) {
    const double x0 = 0.4, x1 = 1.1;
    const auto y = boost({t}, x0, x1);
    CHECK(std::abs((y[1] + y[0]) - std::exp(2 * kPi * t) * (x1 + x0)) < 1e-12);
    CHECK(std::abs((y[1] - y[0]) - std::exp(-2 * kPi * t) * (x1 - x0)) < 1e-12);
    CHECK(in_right_wedge(y[0].real(), y[1].real()));
  }
  CHECK(in_right_wedge(0.0, 1.0));
  CHECK_FALSE(in_right_wedge(2.0, 1.0));
  CHECK_FALSE(in_right_wedge(0.0, -1.0));
}

TEST_CASE("H reproduces the boosted phase at real rapidity") {
  const double m = 1.0, x0 = 0.3, x1 = 0.9;
  for (double p1 : {-2.0, 0.5, 3.0})
    for (double t : {-0.2, 0.1}) {
      const double w = omega_p(m, p1);
      const auto y = boost({t}, x0, x1);
      const cplx phase = cplx(0, 1) * (-w * y[0] + p1 * y[1]);
      CHECK(std::abs(std::exp(phase) - std::exp(cplx(0, -1) * h_function(x0, x1, t, p1, m))) < 1e-12);
    }
  CHECK(omega_p(2.0, 1.5) == doctest::Approx(2.5));
}

TEST_CASE("Im H has the sign of Im z on the wedge") {
  const ImHSignCheck c = im_h_sign_check(1.0);
  CHECK(c.samples == 5 * 3 * 2 * 4);
  CHECK(c.violations == 0);
  CHECK(c.min_abs_im > 0);
}

TEST_CASE("shell Fourier transform: frozen 2D reference values") {
  const WedgeFunction& wf = standard();
  REQUIRE(wf.convention);
  CHECK(wf.convention->sign_plus == 1);
  CHECK(wf.convention->sign_minus == 1);
  CHECK(wf.convention->max_defect < 1e-8);
  CHECK(std::abs(shell_fourier(wf, 0.0) - cplx(0.32, 0)) < 1e-12);
  CHECK(std::abs(shell_fourier(wf, 0.7) - cplx(0.12729195998463005, 0.2077024988094196)) < 1e-12);
  CHECK(std::abs(shell_fourier_2d(wf, 0.0) - cplx(0.32, 0)) < 1e-8);
}

TEST_CASE("symmetric factors: p¹ → −p¹ conjugates") {
  const WedgeFunction& wf = standard();
  for (double p1 : {0.3, 1.0, 2.5}) CHECK(std::abs(shell_fourier(wf, -p1) - std::conj(shell_fourier(wf, p1))) < 1e-14);
}

TEST_CASE("heavier mass damps the shell transform") {
  double last = INFINITY;
  for (double m : {1.0, 5.0, 20.0, 50.0}) {
    const double v = std::abs(shell_fourier(make_wedge_function("exp-monomial", 1.0, 1.0, m), 0.0));
    CHECK(v < last);
    last = v;
  }
}

TEST_CASE("calibration rejects inconsistent factors") {
  RayTestFunction bad = make_ray_function("exp-monomial", 1.0);
  bad.fourier = [](cplx k) { return 1.0 / ((2.0 - cplx(0, 1) * k) * (2.0 - cplx(0, 1) * k)); };
  CHECK_THROWS_AS(make_wedge_function(bad, make_ray_function("exp-monomial", 1.0), 1.0), ConventionMismatch);
  WedgeFunction uncal = standard();
  uncal.convention.reset();
  CHECK_THROWS_AS(shell_fourier(uncal, 0.0), ConventionMismatch);
}

TEST_CASE("swapped orientation follows the sign of Im H") {
  const SwapOrientation o = swap_orientation(1.0);
  CHECK(o.center_im == -0.5);
  CHECK(o.im_h_probe < 0);
}

TEST_CASE("direct and swapped agree on the mass shell") {
  const WedgeFunction& wf = standard();
  for (double n : {1.0, 16.0})
    for (double p1 : {-2.0, 0.0, 1.0, 3.0}) {
      const Estimate d = wedge_smeared_shell_fourier(wf, n, p1, WedgeSide::direct);
      const Estimate s = wedge_smeared_shell_fourier(wf, n, p1, WedgeSide::swapped);
      CAPTURE(n);
      CAPTURE(p1);
      CHECK(std::abs(d.value - s.value) < 1e-6);
    }
  // delta-sequence limit; the smearing bias is O(1/n) and largest near p¹ = 0
  auto bias = [&](double n, double p1) {
    return std::abs(wedge_smeared_shell_fourier(wf, n, p1, WedgeSide::direct).value - shell_fourier(wf, p1));
  };
  for (double p1 : {-2.0, 1.0, 3.0}) CHECK(bias(1e6, p1) < 1e-5);
  CHECK(bias(1e6, 0.0) / bias(1e7, 0.0) == doctest::Approx(10.0).epsilon(1e-3));
}

TEST_CASE("Weyl rescaling exponent") {
  const WedgeFunction& wf = standard();
  const WeylExponent e = weyl_rescaling_exponent(wf, 4.0);
  CHECK(e.norm_fn > 0);
  // real f: the swapped partner has the same two-point pairing
  CHECK(std::abs(e.value) <= e.error + 1e-12 * e.norm_fn);
  CHECK(std::abs(e.imag) <= e.error + 1e-12 * e.norm_fn);
  // quadratic in the test function
  const WeylExponent e3 = weyl_rescaling_exponent(scaled(wf, 3.0), 4.0);
  CHECK(e3.norm_fn == doctest::Approx(9.0 * e.norm_fn).epsilon(1e-9));
  CHECK(std::abs(e3.value) <= e3.error + 1e-12 * e3.norm_fn);
  const WeylExponent z = weyl_rescaling_exponent(scaled(wf, 0.0), 4.0);
  CHECK(z.value == 0.0);
  CHECK(z.norm_fn == 0.0);
}

TEST_CASE("wedge swap report") {
  const VerificationReport r = wedge_swap_check(standard(), {1.0, 4.0}, {-2, 0, 1, 3});
  CHECK(r.all_pass());
  int info = 0;
  for (const Case& c : r.cases)
    if (c.kind == CaseKind::info) {
      ++info;
      CHECK(c.lhs > 1e-3);  // the +i/2 centre does not reproduce the identity
    }
  CHECK(info == 2);
}

}
