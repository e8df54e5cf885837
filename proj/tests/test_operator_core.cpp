#include "doctest.h"
#include "generators.hpp"

#include "modtheory/core.hpp"

using namespace modtheory;

TEST_SUITE("operator-core") {

TEST_CASE("herm_eig rejects non-Hermitian input") {
  Mat h(2, 2);
  h << 1, 1, 0, 1;
  CHECK_THROWS_AS(herm_eig(h), NonHermitian);
  Mat r(2, 3);
  r.setZero();
  CHECK_THROWS_AS(herm_eig(r), NonHermitian);
}

TEST_CASE("mat_fn reproduces the identity and the square") {
  Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = gen::dim(rng, 1, 6);
    const Mat rho = gen::density(rng, d);
    CHECK((mat_fn(rho, [](double l) { return l; }) - rho).norm() < 1e-12);
    CHECK((mat_pow(rho, 2.0) - rho * rho).norm() < 1e-12);
    const Mat s = mat_pow(rho, 0.5);
    CHECK((s * s - rho).norm() < 1e-12);
    CHECK((mat_pow(rho, -1.0) * rho - Mat::Identity(d, d)).norm() < 1e-9);
  }
}

TEST_CASE("negative powers act as the pseudo-inverse on the support") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat rho = gen::low_rank_density(rng, 4, 2);
    const Mat inv = mat_pow(rho, -1.0);
    const Mat p = support_projection(rho);
    CHECK((rho * inv - p).norm() < 1e-8);
    CHECK(std::abs(p.trace().real() - 2.0) < 1e-10);
  }
}

TEST_CASE("mat_fn rejects clearly negative eigenvalues") {
  Mat h = Mat::Identity(2, 2);
  h(1, 1) = -0.5;
  CHECK_THROWS_AS(mat_pow(h, 0.5), DomainError);
}

TEST_CASE("row-major vectorization intertwines left and right actions") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = gen::dim(rng);
    const Mat x = random_gaussian(d, d, rng), a = random_gaussian(d, d, rng), m = random_gaussian(d, d, rng);
    CHECK((left_op(a) * vec(x) - vec(Mat(a * x))).norm() < 1e-12);
    CHECK((right_op(m) * vec(x) - vec(Mat(x * m.transpose()))).norm() < 1e-12);
    CHECK((unvec(vec(x)) - x).norm() == 0.0);
    CHECK((swap_matrix<double>(d) * vec(x) - vec(Mat(x.transpose()))).norm() == 0.0);
  }
  CHECK_THROWS_AS(unvec(Vec(Vec::Zero(5))), DomainError);
}

TEST_CASE("partial traces of a product are the factors") {
  Rng rng(11);
  const Mat a = gen::density(rng, 2), b = gen::density(rng, 3);
  const Mat ab = kron(a, b);
  CHECK((trace_out_second(ab, 2, 3) - a).norm() < 1e-14);
  CHECK((trace_out_first(ab, 2, 3) - b).norm() < 1e-14);
}

TEST_CASE("antilinear adjoint satisfies <x, A y> = conj<A* x, y>") {
  Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = gen::dim(rng, 2, 6);
    const AntilinearMap<double> A{random_gaussian(d, d, rng)};
    const Vec x = random_gaussian_vector(d, rng), y = random_gaussian_vector(d, rng);
    const cplx lhs = x.dot(A(y));
    const cplx rhs = std::conj(A.adjoint()(x).dot(y));
    CHECK(std::abs(lhs - rhs) < 1e-12 * (1 + std::abs(lhs)));
    // composition rules
    const AntilinearMap<double> B{random_gaussian(d, d, rng)};
    CHECK((A.then_linear(B) * y - A(B(y))).norm() < 1e-10);
    const Mat M = random_gaussian(d, d, rng);
    CHECK((A.after(M)(y) - A(Vec(M * y))).norm() < 1e-10);
    CHECK(((M * A)(y) - M * A(y)).norm() < 1e-10);
  }
}

TEST_CASE("op_norm is the largest singular value") {
  Mat d = Mat::Zero(3, 3);
  d(0, 0) = 2;
  d(1, 1) = cplx(0, -5);
  d(2, 2) = 1;
  CHECK(op_norm(d) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(op_norm(Mat(0, 0)) == 0.0);
}

TEST_CASE("the scalar type is a template parameter") {
  CMatrix<float> h = CMatrix<float>::Identity(2, 2);
  h(0, 0) = 4;
  const CMatrix<float> s = mat_pow(h, 0.5f);
  CHECK(std::abs(s(0, 0).real() - 2.0f) < 1e-6f);
}

}
