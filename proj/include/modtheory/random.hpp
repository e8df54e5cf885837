#pragma once

#include <random>

#include "modtheory/core.hpp"

namespace modtheory {

using Rng = std::mt19937_64;

// i.i.d. standard complex Gaussian entries (real and imaginary parts N(0,1/2)).
Mat random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng);
Vec random_gaussian_vector(Eigen::Index n, Rng& rng);
Mat random_hermitian(Eigen::Index n, Rng& rng);
Mat random_unitary(Eigen::Index n, Rng& rng);
// Normalized Wishart matrix, resampled until its smallest eigenvalue exceeds min_eig.
Mat random_density(Eigen::Index n, Rng& rng, double min_eig = 1e-3);

}  // namespace modtheory
