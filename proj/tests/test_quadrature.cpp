#include "doctest.h"

#include <cmath>
#include <numbers>

#include "modtheory/core.hpp"
#include "modtheory/quadrature.hpp"

using namespace modtheory;

TEST_SUITE("quadrature") {

TEST_CASE("Gauss-Hermite weights sum to sqrt(pi) and nodes are symmetric") {
  for (int n : {1, 2, 16, 128, 1024, 8192}) {
    const QuadratureRule& r = gauss_hermite(n);
    REQUIRE(static_cast<int>(r.nodes.size()) == n);
    double sum = 0;
    for (double w : r.weights) sum += w;
    CHECK(std::abs(sum - std::sqrt(std::numbers::pi)) < 1e-13);
    for (int k = 0; k < n; ++k) CHECK(std::abs(r.nodes[k] + r.nodes[n - 1 - k]) < 1e-10 * std::max(1.0, r.nodes[k]));
  }
}

TEST_CASE("Gauss-Hermite moments") {
  // ∫x^{2k}e^{−x²} = Γ(k + 1/2)
  const QuadratureRule& r = gauss_hermite(64);
  for (int k = 0; k < 20; ++k) {
    double s = 0;
    for (size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], 2 * k);
    CHECK(s == doctest::Approx(std::tgamma(k + 0.5)).epsilon(1e-12));
  }
  // cos(x): √π e^{−1/4}
  double c = 0;
  for (size_t i = 0; i < r.nodes.size(); ++i) c += r.weights[i] * std::cos(r.nodes[i]);
  CHECK(c == doctest::Approx(std::sqrt(std::numbers::pi) * std::exp(-0.25)).epsilon(1e-14));
}

TEST_CASE("rules are cached") {
  CHECK(&gauss_hermite(32) == &gauss_hermite(32));
  CHECK(&gauss_legendre(16) == &gauss_legendre(16));
  CHECK_THROWS(gauss_hermite(0));
}

TEST_CASE("Gauss-Legendre is exact to degree 2n-1") {
  const QuadratureRule& r = gauss_legendre(16);
  for (int k = 0; k <= 31; ++k) {
    double s = 0;
    for (size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
    const double exact = (k % 2) ? 0.0 : 2.0 / (k + 1);
    CHECK(std::abs(s - exact) < 1e-14);
  }
}

TEST_CASE("adaptive integration") {
  auto f = [](double x) {
    Eigen::VectorXcd v(2);
    v(0) = std::exp(cplx(0, 3) * x) / (1 + x * x);
    v(1) = 1.0;
    return v;
  };
  // ∫_{-∞}^{∞} e^{3ix}/(1+x²) = π e^{−3}; on [−40, 40] the tail is below 1e−3, so
  // compare against the even-part integral computed on a finer fixed rule instead
  const AdaptiveResult r = integrate_adaptive(f, -40, 40, 1e-12);
  const QuadratureRule& gl = gauss_legendre(64);
  cplx ref = 0;
  const int pieces = 800;
  for (int p = 0; p < pieces; ++p) {
    const double a = -40 + 80.0 * p / pieces, b = a + 80.0 / pieces;
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
      const double x = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i];
      ref += 0.5 * (b - a) * gl.weights[i] * f(x)(0);
    }
  }
  CHECK(std::abs(r.value(0) - ref) < 1e-11);
  CHECK(std::abs(r.value(1) - 80.0) < 1e-12);
  CHECK(r.error < 1e-12);
  CHECK(r.panels > 1);

  auto spike = [](double x) {
    Eigen::VectorXcd v(1);
    v(0) = 1.0 / std::sqrt(std::abs(x) + 1e-300);
    return v;
  };
  CHECK_THROWS_AS(integrate_adaptive(spike, -1, 1, 1e-15, 16, 20), QuadratureBudgetExceeded);
}

}
