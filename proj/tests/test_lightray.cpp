#include "doctest.h"

#include <numbers>

#include "modtheory/lightray.hpp"

using namespace modtheory;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0, 1);

SmearedRayFunction srf(double n, cplx t, double alpha = 1.0) { return {make_ray_function("exp-monomial", alpha), n, t}; }

void check_close(cplx got, cplx want, double tol) {
  CAPTURE(got);
  CAPTURE(want);
  CHECK(std::abs(got - want) < tol);
}

}  // namespace

TEST_SUITE("lightray") {

TEST_CASE("registry") {
  const RayTestFunction f = make_ray_function("exp-monomial", 2.0);
  CHECK(f.has_pole_structure());
  CHECK(f.position(1.5) == doctest::Approx(1.5 * std::exp(-3.0)));
  CHECK(f.position(-1.0) == 0.0);
  check_close(f.fourier(1.0), 1.0 / ((2.0 - kI) * (2.0 - kI)), 1e-15);
  CHECK_THROWS_AS(make_ray_function("gaussian"), ConfigError);
  CHECK_THROWS_AS(make_ray_function("exp-monomial", -1.0), DomainError);
  CHECK(ray_families() == std::vector<std::string>{"exp-monomial"});
  const RayTestFunction c = custom_ray_function("c", 1.0, [](cplx k) { return k; }, [](double) { return 0.0; });
  CHECK_FALSE(c.has_pole_structure());
}

TEST_CASE("Fourier transform of the position-space function") {
  // ∫₀^∞ u e^{−αu} e^{ipu} du by Gauss–Laguerre-free trapezoid on a long grid
  const RayTestFunction f = make_ray_function("exp-monomial", 1.3);
  for (double p : {0.0, 0.8, 2.5}) {
    cplx acc = 0;
    const double h = 1e-3;
    for (int k = 1; k < 60000; ++k) acc += f.position(k * h) * std::exp(kI * p * (k * h));
    acc *= h;
    check_close(acc, f.fourier(p), 1e-6);
  }
}

TEST_CASE("gaussian smear of simple integrands") {
  const QuadratureBudget b;
  CHECK(std::abs(gaussian_smear(3.0, 0.0, [](double) { return cplx(1.0); }, b).value - 1.0) < 1e-14);
  const Estimate sq = gaussian_smear(5.0, 0.4, [](double s) { return cplx(s * s); }, b);
  CHECK(sq.value.real() == doctest::Approx(0.16 + 0.1).epsilon(1e-13));
  // e^{ks} with a complex centre: e^{kc + k²/(4n)}
  const double n = 7, k = 1.7;
  const cplx c(0.2, 0.3);
  const Estimate ex = gaussian_smear(n, c, [k](double s) { return cplx(std::exp(k * s)); }, b);
  check_close(ex.value, std::exp(k * c + k * k / (4 * n)), 1e-12);
  CHECK_THROWS_AS(gaussian_smear(1000.0, cplx(0, 0.25), [](double) { return cplx(1); }, b), CancellationGuard);
}

TEST_CASE("smeared Fourier transform: frozen reference values") {
  const QuadratureBudget b;
  check_close(smeared_fourier(srf(100, 0.0), 1.0, b).value, cplx(0, 0.42713637370149725), 1e-12);
  check_close(smeared_fourier(srf(16, cplx(0, 0.25)), 1.0, b).value, cplx(0, 0.88938875775009899), 1e-12);
  check_close(smeared_fourier(srf(4, cplx(0, -0.75)), 0.4, b).value, cplx(-0.24053816895007745, 0.59522762414242246),
              1e-12);
  check_close(smeared_fourier(srf(16, 0.3), 2.0, b).value, cplx(0.057555938483152185, 0.098129654813074109), 1e-12);
}

TEST_CASE("deformed contour agrees with the real line") {
  const QuadratureBudget b;
  for (double n : {1.0, 4.0, 16.0})
    for (cplx t : {cplx(0), cplx(0, 0.25), cplx(0, -0.25), cplx(0, -0.75), cplx(0.2, 0.5)})
      for (double q : {-2.0, -0.3, 0.0, 0.7, 3.0}) {
        CAPTURE(n);
        CAPTURE(t);
        CAPTURE(q);
        const Estimate a = smeared_integral(srf(n, t), q, b, Contour::real_line);
        const Estimate d = smeared_integral(srf(n, t), q, b, Contour::deformed);
        CHECK(std::abs(a.value - d.value) < 1e-11 * std::max(1.0, std::abs(a.value)));
      }
}

TEST_CASE("delta-sequence limit and the n = 100 expansion") {
  const QuadratureBudget b;
  const cplx d = cplx(1, -1);
  check_close(smeared_fourier(srf(1e8, 0.0), 1.0, b).value, 1.0 / (d * d), 1e-6);
  const cplx p1 = 1.0 / (d * d) * (1.0 + kPi * kPi / 100.0 * (1.0 - 1.0 + 4.0 * kI) / (d * d));
  check_close(smeared_fourier(srf(100, 0.0), 1.0, b).value, p1, 1e3 / 1e4);
  check_close(expansion_fourier(srf(100, 0.0), 1.0).value, p1, 1e-15);
  CHECK(expansion_fourier(srf(100, 0.0), 1.0).error == doctest::Approx(1e3 * 1e-3 / 2.0));
}

TEST_CASE("expansion range") {
  CHECK_THROWS_AS(expansion_fourier(srf(16, 0.0), 1.0), ExpansionOutOfRange);
  CHECK_THROWS_AS(expansion_fourier(srf(200, cplx(0, 1.5)), 1.0), ExpansionOutOfRange);
  const SmearedRayFunction c{custom_ray_function("c", 1.0, [](cplx) { return cplx(0); }, {}), 200, 0.0};
  CHECK_THROWS_AS(expansion_fourier(c, 1.0), ExpansionOutOfRange);
  CHECK_THROWS_AS(smeared_fourier(srf(4, 0.0), -1.0, {}), DomainError);
}

TEST_CASE("t = i/4, n = 16: direct within the expansion envelope") {
  QuadratureBudget b;
  b.expansion_min_n = 1;
  const Estimate direct = smeared_fourier(srf(16, cplx(0, 0.25)), 1.0, b, Contour::deformed);
  const Estimate exp = expansion_fourier(srf(16, cplx(0, 0.25)), 1.0, b);
  CHECK(std::abs(direct.value - exp.value) <= exp.error + direct.error);
}

TEST_CASE("one-particle inner product") {
  const QuadratureBudget b;
  auto exact = [](double alpha) {
    return exact_spectrum([alpha](double p) { return 1.0 / ((alpha - kI * p) * (alpha - kI * p)); });
  };
  const InnerProduct one = one_particle_inner(exact(1.0), exact(1.0), 1.0, b);
  CHECK(one.value.real() == doctest::Approx(1.0 / (8 * kPi)).epsilon(1e-12));
  CHECK(std::abs(one.value.imag()) < 1e-15);
  CHECK(one.error() < 1e-11);
  const InnerProduct two = one_particle_inner(exact(2.0), exact(2.0), 2.0, b);
  CHECK(two.value.real() == doctest::Approx(one.value.real() / 4).epsilon(1e-12));
  const auto zero = exact_spectrum([](double) { return cplx(0); });
  CHECK(std::abs(one_particle_inner(zero, zero, 1.0, b).value) == 0.0);
  // Hermitian symmetry
  const auto g = exact_spectrum([](double p) { return 1.0 / ((1.5 - kI * p) * (1.0 + p)); });
  const cplx fg = one_particle_inner(exact(1.0), g, 1.0, b).value;
  const cplx gf = one_particle_inner(g, exact(1.0), 1.0, b).value;
  CHECK(std::abs(fg - std::conj(gf)) < 1e-14);
}

TEST_CASE("memoize calls through once per momentum") {
  int calls = 0;
  const SpectralFunction f = memoize([&calls](double p) {
    ++calls;
    return Estimate{cplx(p), 0, 0};
  });
  f(1.0);
  f(1.0);
  f(2.0);
  CHECK(calls == 2);
}

TEST_CASE("current norm") {
  const RayTestFunction f = make_ray_function("exp-monomial", 1.0);
  const JfnNorm j100 = jfn_norm_sq(f, 100);
  CHECK(j100.value == doctest::Approx(0.03365280548986328).epsilon(1e-9));
  CHECK(j100.expansion == doctest::Approx(1 / (8 * kPi) - kPi / 400).epsilon(1e-14));
  CHECK(j100.envelope == doctest::Approx(150.0 / 1e4));
  CHECK(j100.within_envelope());
  // α scaling law
  const double a1 = jfn_norm_sq(f, 400).value;
  const double a2 = jfn_norm_sq(make_ray_function("exp-monomial", 2.0), 400).value;
  CHECK(a2 == doctest::Approx(a1 / 4).epsilon(1e-9));
  // large n approaches 1/(8πα²)
  CHECK(std::abs(jfn_norm_sq(f, 1e4).value - 1 / (8 * kPi)) < 1e-3);
  CHECK_THROWS_AS(jfn_norm_sq(f, 0.5), DomainError);
}

TEST_CASE("four-point Wick sum") {
  const RayTestFunction f = make_ray_function("exp-monomial", 1.0);
  const WickResult w = wick_bound(f, 1e4, WickMethod::expansion);
  CHECK(std::abs(w.norm_sq - 3.0) <= 0.02 * 3.0);
  CHECK(w.bound == doctest::Approx(std::log(w.norm_sq)).epsilon(1e-15));
  CHECK(w.c4 == doctest::Approx(1.0 / (w.jfn.value * w.jfn.value)).epsilon(1e-14));
  CHECK_THROWS_AS(wick_bound(f, 100, WickMethod::direct), CancellationGuard);
  CHECK_THROWS_AS(wick_bound(f, 16, WickMethod::expansion), ExpansionOutOfRange);

  const WickResult d = wick_bound(f, 16, WickMethod::direct);
  CHECK(d.terms[0].real() == doctest::Approx(1.0).epsilon(1e-9));
  for (const cplx& t : d.terms) CHECK(std::abs(t.imag()) < 1e-9 * std::max(1.0, std::abs(t)));
  CHECK(d.norm_sq_error < 1e-6 * d.norm_sq);
}

TEST_CASE("ray swapping identity") {
  const RayTestFunction f = make_ray_function("exp-monomial", 1.0);
  for (double n : {1.0, 16.0}) {
    const VerificationReport r = ray_swap_check(f, n, {0, 0.5, 1, 2, 5});
    CHECK(r.all_pass());
    bool has_info = false;
    for (const Case& c : r.cases)
      if (c.kind == CaseKind::info) {
        has_info = true;
        CHECK(std::abs(c.lhs - c.rhs) > 1e-3);  // negative frequency is not expected to match
      }
    CHECK(has_info);
  }
  const VerificationReport neg = ray_swap_check(f, 4, {0.5, -2.0});
  REQUIRE(neg.cases.size() == 2);
  CHECK(neg.cases[1].kind == CaseKind::info);
  CHECK(neg.cases[1].name == "negative_frequency_discrepancy_at_p_-2");
  CHECK_THROWS_AS(ray_swap_check(f, 4, {NAN}), DomainError);
}

}
