#pragma once

// Dense complex matrix primitives: adjoint, Hermitian eigendecomposition
// (cyclic complex Jacobi), operator norm, |A|, Cartesian decomposition and
// the PSD test. Everything is templated on the real scalar type and accepts
// arbitrary Eigen expressions.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include "nrange/errors.hpp"

namespace nrange {

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using ComplexMatrix = CMatrix<double>;
using ComplexVector = CVector<double>;
using RealVector = RVector<double>;
using complexd = std::complex<double>;

/// Relative tolerance on ||H - H*||_F used to accept a matrix as Hermitian.
template <typename Real>
inline constexpr Real default_hermitian_tol = Real(1e-10);
template <>
inline constexpr float default_hermitian_tol<float> = 1e-4f;

/// Jacobi stops once the off-diagonal Frobenius norm drops below this times ||H||_F.
template <typename Real>
inline constexpr Real jacobi_offdiag_rel = Real(1e-13);
template <>
inline constexpr float jacobi_offdiag_rel<float> = 1e-6f;

inline constexpr int jacobi_max_sweeps = 30;

template <typename Real>
struct HermitianEigen {
  RVector<Real> eigenvalues; ///< ascending
  CMatrix<Real> vectors;     ///< orthonormal columns, vectors.col(i) pairs with eigenvalues(i)
  int sweeps = 0;

  Real min() const { return eigenvalues.size() ? eigenvalues(0) : Real(0); }
  Real max() const { return eigenvalues.size() ? eigenvalues(eigenvalues.size() - 1) : Real(0); }
  /// Largest |eigenvalue|, the operator norm of the decomposed matrix.
  Real spectral_radius() const { return std::max(std::abs(min()), std::abs(max())); }

  /// V * diag(g(lambda)) * V^*.
  template <typename Fn>
  CMatrix<Real> map(Fn&& g) const {
    RVector<Real> mapped = eigenvalues.unaryExpr(std::forward<Fn>(g));
    return vectors * mapped.template cast<std::complex<Real>>().asDiagonal() * vectors.adjoint();
  }

  CMatrix<Real> reconstruct() const {
    return vectors * eigenvalues.template cast<std::complex<Real>>().asDiagonal() * vectors.adjoint();
  }
};

template <typename Derived>
auto adjoint(const Eigen::MatrixBase<Derived>& A) {
  return A.adjoint().eval();
}

template <typename Derived>
auto hermitian_residual(const Eigen::MatrixBase<Derived>& H) -> typename Derived::RealScalar {
  return (H - H.adjoint()).norm();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& H,
                  typename Derived::RealScalar tol = default_hermitian_tol<typename Derived::RealScalar>) {
  using Real = typename Derived::RealScalar;
  return hermitian_residual(H) <= tol * std::max(Real(1), H.norm());
}

namespace detail {

template <typename Real>
void require_square(const CMatrix<Real>& H, const char* what) {
  if (H.rows() != H.cols()) {
    throw InvalidInput(std::string(what) + ": matrix is not square");
  }
}

// One cyclic Jacobi run on a Hermitian matrix, in place. On return the
// diagonal of H holds the eigenvalues (unsorted); V (if non-null) holds the
// accumulated unitary.
template <typename Real>
int jacobi_in_place(CMatrix<Real>& H, CMatrix<Real>* V) {
  using Complex = std::complex<Real>;
  const Eigen::Index n = H.rows();
  const Real scale = H.norm();
  const Real threshold = jacobi_offdiag_rel<Real> * scale;

  auto offdiag = [&] {
    Real s = 0;
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i)
        if (i != j) s += std::norm(H(i, j));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < jacobi_max_sweeps; ++sweep) {
    if (offdiag() <= threshold) return sweep;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex hpq = H(p, q);
        const Real g = std::abs(hpq);
        if (g == Real(0)) continue;
        const Real a = std::real(H(p, p));
        const Real b = std::real(H(q, q));
        if (sweep > 3 && std::abs(a) + Real(100) * g == std::abs(a) &&
            std::abs(b) + Real(100) * g == std::abs(b)) {
          H(p, q) = H(q, p) = Complex(0);
          continue;
        }
        // U = [[c, s e], [-s conj(e), c]] with e = hpq / |hpq| zeroes the (p,q) entry.
        const Complex e = hpq / g;
        const Real tau = (b - a) / (Real(2) * g);
        const Real t = std::copysign(Real(1), tau) / (std::abs(tau) + std::hypot(Real(1), tau));
        const Real c = Real(1) / std::sqrt(Real(1) + t * t);
        const Real s = t * c;
        const Complex se = s * e;
        const Complex sec = s * std::conj(e);

        for (Eigen::Index k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Complex hkp = H(k, p);
          const Complex hkq = H(k, q);
          H(k, p) = c * hkp - sec * hkq;
          H(k, q) = se * hkp + c * hkq;
          H(p, k) = std::conj(H(k, p));
          H(q, k) = std::conj(H(k, q));
        }
        H(p, p) = Complex(a - t * g);
        H(q, q) = Complex(b + t * g);
        H(p, q) = H(q, p) = Complex(0);

        if (V != nullptr) {
          for (Eigen::Index k = 0; k < n; ++k) {
            const Complex vkp = (*V)(k, p);
            const Complex vkq = (*V)(k, q);
            (*V)(k, p) = c * vkp - sec * vkq;
            (*V)(k, q) = se * vkp + c * vkq;
          }
        }
      }
    }
  }
  if (offdiag() <= threshold) return jacobi_max_sweeps;
  throw NoConvergence("hermitian_eigen: Jacobi sweep budget exhausted");
}

template <typename Derived>
auto prepare_hermitian(const Eigen::MatrixBase<Derived>& H, typename Derived::RealScalar tol) {
  using Real = typename Derived::RealScalar;
  CMatrix<Real> M = H;
  require_square(M, "hermitian_eigen");
  if (!M.allFinite()) throw InvalidInput("hermitian_eigen: non-finite entry");
  if (hermitian_residual(M) > tol * std::max(Real(1), M.norm())) {
    throw NotHermitian("hermitian_eigen: input is not Hermitian within tolerance");
  }
  CMatrix<Real> sym = (M + M.adjoint()) / Real(2);
  return sym;
}

} // namespace detail

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
/// The input is symmetrized as (H + H^*)/2 first; eigenvalues come back ascending.
template <typename Derived>
auto hermitian_eigen(const Eigen::MatrixBase<Derived>& H,
                     typename Derived::RealScalar tol = default_hermitian_tol<typename Derived::RealScalar>)
    -> HermitianEigen<typename Derived::RealScalar> {
  using Real = typename Derived::RealScalar;
  CMatrix<Real> work = detail::prepare_hermitian(H, tol);
  const Eigen::Index n = work.rows();
  CMatrix<Real> V = CMatrix<Real>::Identity(n, n);
  const int sweeps = detail::jacobi_in_place(work, &V);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return std::real(work(i, i)) < std::real(work(j, j));
  });

  HermitianEigen<Real> out;
  out.eigenvalues.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.eigenvalues(k) = std::real(work(src, src));
    out.vectors.col(k) = V.col(src);
  }
  out.sweeps = sweeps;
  return out;
}

/// Eigenvalues only (ascending); skips accumulating the rotations.
template <typename Derived>
auto hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& H,
                           typename Derived::RealScalar tol = default_hermitian_tol<typename Derived::RealScalar>)
    -> RVector<typename Derived::RealScalar> {
  using Real = typename Derived::RealScalar;
  CMatrix<Real> work = detail::prepare_hermitian(H, tol);
  detail::jacobi_in_place<Real>(work, nullptr);
  RVector<Real> values = work.diagonal().real();
  std::sort(values.data(), values.data() + values.size());
  return values;
}

/// ||A|| = sqrt(lambda_max(A^* A)).
template <typename Derived>
auto operator_norm(const Eigen::MatrixBase<Derived>& A) -> typename Derived::RealScalar {
  using Real = typename Derived::RealScalar;
  const CMatrix<Real> M = A;
  if (M.size() == 0) return Real(0);
  const RVector<Real> values = hermitian_eigenvalues(CMatrix<Real>(M.adjoint() * M));
  return std::sqrt(std::max(Real(0), values(values.size() - 1)));
}

/// |A| = (A^* A)^{1/2}. Eigenvalues of A^*A in [-tol*scale, 0) are treated as
/// roundoff and clamped to zero; anything more negative is an error.
template <typename Derived>
auto matrix_abs(const Eigen::MatrixBase<Derived>& A,
                typename Derived::RealScalar tol = default_hermitian_tol<typename Derived::RealScalar>)
    -> CMatrix<typename Derived::RealScalar> {
  using Real = typename Derived::RealScalar;
  const CMatrix<Real> M = A;
  const auto eig = hermitian_eigen(CMatrix<Real>(M.adjoint() * M));
  const Real floor = -tol * std::max(Real(1), eig.spectral_radius());
  if (eig.min() < floor) {
    throw DomainViolation("matrix_abs: A^*A has a negative eigenvalue beyond roundoff");
  }
  CMatrix<Real> out = eig.map([](Real l) { return std::sqrt(std::max(Real(0), l)); });
  return (out + out.adjoint()) / Real(2);
}

template <typename Real>
struct CartesianParts {
  CMatrix<Real> real_part; ///< B = (A + A^*)/2
  CMatrix<Real> imag_part; ///< C = (A - A^*)/(2i)
};

/// A = B + iC with B, C Hermitian.
template <typename Derived>
auto cartesian_decomposition(const Eigen::MatrixBase<Derived>& A)
    -> CartesianParts<typename Derived::RealScalar> {
  using Real = typename Derived::RealScalar;
  using Complex = std::complex<Real>;
  const CMatrix<Real> M = A;
  CartesianParts<Real> parts;
  parts.real_part = (M + M.adjoint()) / Real(2);
  parts.imag_part = (M - M.adjoint()) * Complex(0, Real(-0.5));
  return parts;
}

/// lambda_min(H) >= -tol * max(1, ||H||).
template <typename Derived>
bool is_psd(const Eigen::MatrixBase<Derived>& H,
            typename Derived::RealScalar tol = default_hermitian_tol<typename Derived::RealScalar>) {
  using Real = typename Derived::RealScalar;
  const RVector<Real> values = hermitian_eigenvalues(H);
  if (values.size() == 0) return true;
  const Real norm = std::max(std::abs(values(0)), std::abs(values(values.size() - 1)));
  return values(0) >= -tol * std::max(Real(1), norm);
}

} // namespace nrange
