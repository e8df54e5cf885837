#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace modtheory {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss–Hermite rule for weight e^{−x²}. Weights that underflow double
// precision are stored as 0. Rules are cached; the reference stays valid.
const QuadratureRule& gauss_hermite(int n);

// Gauss–Legendre rule on [−1, 1].
const QuadratureRule& gauss_legendre(int n);


// Adaptive Gauss–Legendre on [a, b] for a vector-valued complex integrand.
// Panels are bisected until |G_q − G_2q| of component 0 falls below tol times
// the panel's share of [a, b]; the other components ride along on the same
// panels (used for error-propagation integrals).
struct AdaptiveResult {
  Eigen::VectorXcd value;
  double error = 0;  // sum of accepted panel differences, component 0
  int panels = 0;
};
AdaptiveResult integrate_adaptive(const std::function<Eigen::VectorXcd(double)>& f, double a, double b, double tol,
                                  int order = 16, int max_panels = 20000);

}  // namespace modtheory
