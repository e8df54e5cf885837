#include "modtheory/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "modtheory/core.hpp"

namespace modtheory {

namespace {

// Orthonormal Hermite recursion without the Gaussian factor, rescaled on the
// fly so large nodes do not overflow. Returns p_n and p_{n-1} sharing one
// scale, plus the log of that scale.
struct HermiteEval {
  double pn, pn1, log_scale;
};

HermiteEval hermite_eval(int n, double x) {
  constexpr double kBig = 1e150;
  double p1 = std::pow(std::numbers::pi, -0.25), p2 = 0.0, log_scale = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double p3 = p2;
    p2 = p1;
    p1 = x * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
    if (std::abs(p1) > kBig) {
      p1 /= kBig;
      p2 /= kBig;
      log_scale += std::log(kBig);
    }
  }
  return {p1, p2, log_scale};
}

QuadratureRule build_hermite(int n) {
  QuadratureRule r;
  r.nodes.assign(n, 0.0);
  r.weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  // Golub–Welsch starting values: eigenvalues of the symmetric Jacobi matrix
  // (zero diagonal, off-diagonal sqrt(k/2)); Newton then polishes each one
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n), sub(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) sub(k - 1) = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ConvergenceFailure("gauss_hermite: Jacobi eigenvalue solve failed");
  for (int i = 0; i < m; ++i) {
    double z = es.eigenvalues()(n - 1 - i);  // descending, positive half first
    HermiteEval h{};
    bool done = false;
    double step = INFINITY;
    for (int it = 0; it < 100; ++it) {
      h = hermite_eval(n, z);
      const double dp = std::sqrt(2.0 * n) * h.pn1;
      step = h.pn / dp;
      z -= step;
      if (std::abs(step) <= 4e-15 * std::max(1.0, std::abs(z))) {
        done = true;
        break;
      }
    }
    // roundoff can keep the last step bouncing just above the threshold
    if (!done && std::abs(step) <= 1e-12 * std::max(1.0, std::abs(z))) done = true;
    if (!done)
      throw ConvergenceFailure("gauss_hermite: Newton iteration did not converge for node " + std::to_string(i) +
                               " of " + std::to_string(n));
    h = hermite_eval(n, z);
    const double log_dp = std::log(std::sqrt(2.0 * n) * std::abs(h.pn1)) + h.log_scale;
    const double w = std::exp(std::log(2.0) - 2.0 * log_dp);
    r.nodes[i] = z;
    r.nodes[n - 1 - i] = -z;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[m - 1] = 0.0;
  // ascending order
  std::reverse(r.nodes.begin(), r.nodes.end());
  std::reverse(r.weights.begin(), r.weights.end());
  return r;
}

QuadratureRule build_legendre(int n) {
  QuadratureRule r;
  r.nodes.assign(n, 0.0);
  r.weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double step = p1 / pp;
      z -= step;
      if (std::abs(step) <= 1e-16) break;
    }
    double p1 = 1.0, p2 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    pp = n * (z * p1 - p2) / (z * z - 1.0);
    r.nodes[i] = -z;
    r.nodes[n - 1 - i] = z;
    r.weights[i] = r.weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  return r;
}

template <typename Build>
const QuadratureRule& cached(std::map<int, std::unique_ptr<QuadratureRule>>& cache, std::mutex& mu, int n,
                             Build build) {
  if (n < 1) throw DomainError("quadrature rule needs at least one node");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_unique<QuadratureRule>(build(n))).first;
  return *it->second;
}

}  // namespace

const QuadratureRule& gauss_hermite(int n) {
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  static std::mutex mu;
  return cached(cache, mu, n, build_hermite);
}

const QuadratureRule& gauss_legendre(int n) {
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  static std::mutex mu;
  return cached(cache, mu, n, build_legendre);
}

}  // namespace modtheory

namespace modtheory {

AdaptiveResult integrate_adaptive(const std::function<Eigen::VectorXcd(double)>& f, double a, double b, double tol,
                                  int order, int max_panels) {
  const QuadratureRule& lo = gauss_legendre(order);
  const QuadratureRule& hi = gauss_legendre(2 * order);
  auto rule = [&f](const QuadratureRule& r, double x0, double x1) {
    const double half = 0.5 * (x1 - x0), mid = 0.5 * (x1 + x0);
    Eigen::VectorXcd acc;
    for (size_t k = 0; k < r.nodes.size(); ++k) {
      const Eigen::VectorXcd v = f(mid + half * r.nodes[k]);
      if (acc.size() == 0) acc = Eigen::VectorXcd::Zero(v.size());
      acc += (r.weights[k] * half) * v;
    }
    return acc;
  };
  AdaptiveResult out;
  const double width = b - a;
  if (width == 0) {
    out.value = f(a) * 0.0;
    return out;
  }
  struct Panel {
    double x0, x1;
    int depth;
  };
  std::vector<Panel> stack{{a, b, 0}};
  while (!stack.empty()) {
    const Panel pnl = stack.back();
    stack.pop_back();
    const Eigen::VectorXcd coarse = rule(lo, pnl.x0, pnl.x1);
    const Eigen::VectorXcd fine = rule(hi, pnl.x0, pnl.x1);
    const double diff = std::abs(fine(0) - coarse(0));
    const double share = tol * std::abs(pnl.x1 - pnl.x0) / std::abs(width);
    if (diff <= share || pnl.depth >= 48) {
      out.error += diff;  // at the depth limit this is still the honest estimate
      if (out.value.size() == 0) out.value = Eigen::VectorXcd::Zero(fine.size());
      out.value += fine;
      ++out.panels;
      if (out.panels > max_panels)
        throw QuadratureBudgetExceeded("integrate_adaptive: panel budget exhausted");
      continue;
    }
    const double mid = 0.5 * (pnl.x0 + pnl.x1);
    stack.push_back({mid, pnl.x1, pnl.depth + 1});
    stack.push_back({pnl.x0, mid, pnl.depth + 1});
  }
  return out;
}

}  // namespace modtheory
