#pragma once

#include <cmath>
#include <functional>

#include "nrange/linalg.hpp"
#include "nrange/registry.hpp"

namespace nrange::detail {

inline ComplexMatrix hermitize(const ComplexMatrix& M) { return (M + M.adjoint()) * 0.5; }

inline double hermitian_norm(const ComplexMatrix& H) { return hermitian_eigen(H).spectral_radius(); }

struct AbsParts {
  ComplexMatrix abs;        ///< |A|
  ComplexMatrix abs_adj;    ///< |A^*|
  ComplexMatrix abs_sq;     ///< |A|^2 = A^*A
  ComplexMatrix abs_adj_sq; ///< |A^*|^2 = AA^*
  ComplexMatrix mean_sq;    ///< ((|A| + |A^*|)/2)^2
};

inline AbsParts abs_parts(const ComplexMatrix& A) {
  AbsParts p;
  p.abs = matrix_abs(A);
  p.abs_adj = matrix_abs(ComplexMatrix(A.adjoint()));
  p.abs_sq = hermitize(A.adjoint() * A);
  p.abs_adj_sq = hermitize(A * A.adjoint());
  const ComplexMatrix m = (p.abs + p.abs_adj) * 0.5;
  p.mean_sq = hermitize(m * m);
  return p;
}

/// Golden-section search for the minimum of a convex g on [0, 1]. The
/// endpoints are compared too, since the minimum of a convex function on a
/// closed interval is often attained there.
inline AlphaMinimum golden_section_minimize(const std::function<double(double)>& g, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = 1.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double gc = g(c), gd = g(d);
  while (b - a > tol) {
    if (gc <= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - inv_phi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + inv_phi * (b - a);
      gd = g(d);
    }
  }
  AlphaMinimum best{0.5 * (a + b), g(0.5 * (a + b))};
  for (double edge : {0.0, 1.0}) {
    const double v = g(edge);
    if (v < best.value) best = {edge, v};
  }
  return best;
}

/// min over a of ||aX + (1-a)Y|| for Hermitian X, Y.
inline AlphaMinimum minimize_mixed_norm(const ComplexMatrix& X, const ComplexMatrix& Y, double tol) {
  return golden_section_minimize([&](double a) { return hermitian_norm(ComplexMatrix(a * X + (1.0 - a) * Y)); },
                                 tol);
}

/// ||S^2 + s^2 I + s S||^(1/2)/sqrt 3: the square root of the norm of the
/// integral of ((1-t)S + t s I)^2.
inline double squared_mean_root(const ComplexMatrix& S, double s) {
  const Eigen::Index n = S.rows();
  const ComplexMatrix M = (S * S + (s * s) * ComplexMatrix::Identity(n, n) + s * S) / 3.0;
  return std::sqrt(hermitian_norm(hermitize(M)));
}

inline AlphaMinimum minimize_squared_mean_root(const ComplexMatrix& X, const ComplexMatrix& Y, double s,
                                               double tol) {
  return golden_section_minimize(
      [&](double a) { return squared_mean_root(ComplexMatrix(a * X + (1.0 - a) * Y), s); }, tol);
}

} // namespace nrange::detail
