#include "modtheory/random.hpp"

#include <cmath>

namespace modtheory {

Mat random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  Mat m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = nd(rng);
      const double im = nd(rng);
      m(i, j) = cplx(re, im);
    }
  return m;
}

Vec random_gaussian_vector(Eigen::Index n, Rng& rng) { return random_gaussian(n, 1, rng).col(0); }

Mat random_hermitian(Eigen::Index n, Rng& rng) {
  const Mat g = random_gaussian(n, n, rng);
  return (g + g.adjoint()) / 2.0;
}

Mat random_unitary(Eigen::Index n, Rng& rng) {
  const Mat g = random_gaussian(n, n, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix column phases so the distribution is Haar
  for (Eigen::Index k = 0; k < n; ++k) {
    const cplx d = r(k, k);
    if (std::abs(d) > 0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

Mat random_density(Eigen::Index n, Rng& rng, double min_eig) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const Mat g = random_gaussian(n, n, rng);
    Mat w = g * g.adjoint();
    w /= w.trace().real();
    w = (w + w.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(w, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) > min_eig) return w;
  }
  throw ConvergenceFailure("random_density: rejection sampling exhausted");
}

}  // namespace modtheory
