#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace modtheory {

template <typename T>
using CMatrix = Eigen::Matrix<std::complex<T>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using CVector = Eigen::Matrix<std::complex<T>, Eigen::Dynamic, 1>;
template <typename T>
using RVector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using cplx = std::complex<double>;
using Mat = CMatrix<double>;
using Vec = CVector<double>;
using RVec = RVector<double>;

// Error taxonomy. Every failure mode carries its own type so callers can
// dispatch without string matching.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
#define MODTHEORY_ERROR(Name) \
  struct Name : Error {       \
    using Error::Error;       \
  }
MODTHEORY_ERROR(NonHermitian);
MODTHEORY_ERROR(DomainError);
MODTHEORY_ERROR(ConvergenceFailure);
MODTHEORY_ERROR(NotFaithful);
MODTHEORY_ERROR(NotDensity);
MODTHEORY_ERROR(DegenerateInput);
MODTHEORY_ERROR(NotNormalized);
MODTHEORY_ERROR(NumericalKernel);
MODTHEORY_ERROR(AlphaOutOfRange);
MODTHEORY_ERROR(ConvexityViolated);
MODTHEORY_ERROR(ClosedFormUnavailable);
MODTHEORY_ERROR(QuadratureBudgetExceeded);
MODTHEORY_ERROR(CancellationGuard);
MODTHEORY_ERROR(ExpansionOutOfRange);
MODTHEORY_ERROR(TailBoundTooLarge);
MODTHEORY_ERROR(ConventionMismatch);
MODTHEORY_ERROR(ConfigError);
#undef MODTHEORY_ERROR

// Eigenvalues at or below this fraction of the largest one count as kernel.
inline constexpr double kKernelRel = 1e-12;

template <typename T>
struct Spectrum {
  RVector<T> eigenvalues;   // ascending
  CMatrix<T> eigenvectors;  // columns
};

template <typename Derived>
typename Derived::RealScalar op_norm(const Eigen::MatrixBase<Derived>& a) {
  using R = typename Derived::RealScalar;
  if (a.size() == 0) return R(0);
  if (!a.allFinite()) throw DomainError("op_norm: non-finite entries");
  Eigen::JacobiSVD<typename Derived::PlainObject> svd(a.derived());
  return svd.singularValues()(0);
}

template <typename T>
Spectrum<T> herm_eig(const CMatrix<T>& h) {
  if (h.rows() != h.cols()) throw NonHermitian("herm_eig: matrix not square");
  if (!h.allFinite()) throw DomainError("herm_eig: non-finite entries");
  const T scale = std::max(op_norm(h), std::numeric_limits<T>::min());
  if ((h - h.adjoint()).norm() > T(1e-10) * scale)
    throw NonHermitian("herm_eig: ‖H − H†‖ exceeds 1e-10·‖H‖");
  const CMatrix<T> sym = (h + h.adjoint()) / T(2);
  Eigen::SelfAdjointEigenSolver<CMatrix<T>> es(sym);
  if (es.info() != Eigen::Success) throw ConvergenceFailure("herm_eig: eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

// Threshold below which an eigenvalue of a PSD matrix is treated as exactly 0.
template <typename T>
T kernel_threshold(const RVector<T>& evals) {
  const T top = evals.size() ? std::max(evals.maxCoeff(), T(0)) : T(0);
  return T(kKernelRel) * top;
}

// f(H) = V diag(f(λ)) V†. f may return a real or a complex value. With
// support_only the kernel (λ ≤ threshold) is mapped to 0 regardless of f.
template <typename T, typename F>
CMatrix<T> mat_fn(const Spectrum<T>& sp, F&& f, bool support_only = false) {
  const auto& lam = sp.eigenvalues;
  const T thr = kernel_threshold(lam);
  const T neg_tol = T(1e-12) * std::max(lam.cwiseAbs().maxCoeff(), T(1));
  const Eigen::Index n = lam.size();
  CVector<T> d(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    T l = lam(k);
    if (support_only && l <= thr) {
      d(k) = 0;
      continue;
    }
    if (l < -neg_tol) throw DomainError("mat_fn: negative eigenvalue " + std::to_string(l));
    l = std::max(l, T(0));
    std::complex<T> v = f(l);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw DomainError("mat_fn: f not finite at eigenvalue " + std::to_string(l));
    d(k) = v;
  }
  return sp.eigenvectors * d.asDiagonal() * sp.eigenvectors.adjoint();
}

template <typename T, typename F>
CMatrix<T> mat_fn(const CMatrix<T>& h, F&& f, bool support_only = false) {
  return mat_fn(herm_eig(h), std::forward<F>(f), support_only);
}

template <typename T>
CMatrix<T> mat_pow(const CMatrix<T>& h, T r) {
  // Negative powers live on the support (pseudo-inverse convention).
  return mat_fn(h, [r](T l) { return std::pow(l, r); }, r < 0);
}

template <typename T>
CMatrix<T> support_projection(const CMatrix<T>& h) {
  return mat_fn(h, [](T) { return T(1); }, true);
}

template <typename DA, typename DB>
typename DA::PlainObject kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  typename DA::PlainObject out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Partial traces on C^da ⊗ C^db with the first factor major in the index.
template <typename T>
CMatrix<T> trace_out_second(const CMatrix<T>& m, Eigen::Index da, Eigen::Index db) {
  CMatrix<T> out = CMatrix<T>::Zero(da, da);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j)
      for (Eigen::Index k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
  return out;
}

template <typename T>
CMatrix<T> trace_out_first(const CMatrix<T>& m, Eigen::Index da, Eigen::Index db) {
  CMatrix<T> out = CMatrix<T>::Zero(db, db);
  for (Eigen::Index i = 0; i < db; ++i)
    for (Eigen::Index j = 0; j < db; ++j)
      for (Eigen::Index k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
  return out;
}

// ξ ↦ linear_part · conj(ξ)
template <typename T>
struct AntilinearMap {
  CMatrix<T> linear_part;

  CVector<T> operator()(const CVector<T>& xi) const { return linear_part * xi.conjugate(); }

  // ⟨ξ, Aη⟩ = conj⟨A†ξ, η⟩ gives linear part Lᵀ.
  AntilinearMap adjoint() const { return {linear_part.transpose()}; }

  // A∘B for two antilinear maps is linear.
  CMatrix<T> then_linear(const AntilinearMap& inner) const {
    return linear_part * inner.linear_part.conjugate();
  }
  // A∘M with M linear.
  AntilinearMap after(const CMatrix<T>& m) const { return {linear_part * m.conjugate()}; }
  // M∘A with M linear.
  friend AntilinearMap operator*(const CMatrix<T>& m, const AntilinearMap& a) {
    return {m * a.linear_part};
  }
};

// Row-major vectorization: X ↦ Σ X_ij e_i ⊗ e_j, so a⊗1 acts as X ↦ aX and
// 1⊗m acts as X ↦ X mᵀ.
template <typename T>
CVector<T> vec(const CMatrix<T>& x) {
  CVector<T> v(x.size());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) v(i * x.cols() + j) = x(i, j);
  return v;
}

template <typename T>
CMatrix<T> unvec(const CVector<T>& v) {
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (n * n != v.size()) throw DomainError("unvec: length is not a square");
  CMatrix<T> x(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) x(i, j) = v(i * n + j);
  return x;
}

template <typename T>
CMatrix<T> left_op(const CMatrix<T>& a) {
  return kron(a, CMatrix<T>::Identity(a.rows(), a.rows()).eval());
}

// Operator of the commutant element 1⊗m.
template <typename T>
CMatrix<T> right_op(const CMatrix<T>& m) {
  return kron(CMatrix<T>::Identity(m.rows(), m.rows()).eval(), m);
}

// Commutation (swap) matrix: vec(Xᵀ) = swap · vec(X).
template <typename T>
CMatrix<T> swap_matrix(Eigen::Index n) {
  CMatrix<T> s = CMatrix<T>::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) s(j * n + i, i * n + j) = 1;
  return s;
}

template <typename T>
T hermitian_defect(const CMatrix<T>& h) {
  return (h - h.adjoint()).norm();
}

}  // namespace modtheory
