#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "nrange/linalg.hpp"

namespace nrange {

enum class FunctionDomain { all_reals, nonnegative, positive };

struct FunctionFlags {
  bool nonnegative = false;
  bool increasing = false;
  bool operator_convex = false;
};

/// A real function applied to Hermitian matrices through the spectral theorem.
/// The flags are declarations; check_operator_convexity can only falsify them.
class ScalarFunction {
public:
  struct Power {
    double exponent;
  };
  struct Polynomial {
    std::vector<double> coeffs; ///< coeffs[k] multiplies t^k
  };

  /// t^r. For r in [1, 2]: domain [0, inf), nonnegative, increasing, operator
  /// convex. For r in [-1, 0): domain (0, inf), operator convex, decreasing.
  static ScalarFunction power(double exponent);
  static ScalarFunction polynomial(std::vector<double> coeffs, FunctionDomain domain, FunctionFlags flags);
  /// Parses "t", "t^1.5", "t^2" (any "t^<r>").
  static ScalarFunction parse(const std::string& text);

  double operator()(double t) const;

  FunctionDomain domain() const { return domain_; }
  const FunctionFlags& flags() const { return flags_; }
  const std::variant<Power, Polynomial>& kind() const { return kind_; }
  std::string name() const;

  /// True for t^2 written either as a power or as the polynomial {0, 0, 1}.
  bool is_square() const;

private:
  ScalarFunction(std::variant<Power, Polynomial> kind, FunctionDomain domain, FunctionFlags flags)
      : kind_(std::move(kind)), domain_(domain), flags_(flags) {}

  std::variant<Power, Polynomial> kind_;
  FunctionDomain domain_;
  FunctionFlags flags_;
};

struct QuadratureConfig {
  int nodes = 32; ///< Gauss-Legendre order on [0, 1]; at least 2

  void validate() const;
};

/// Gauss-Legendre nodes and weights mapped to [0, 1], nodes ascending.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre_unit(int order);

/// Domain clamp: eigenvalues in [-1e-10*scale, 0) are zeroed for nonnegative domains.
inline constexpr double domain_clamp_rel = 1e-10;
/// Eigenvalues below 1e-12*scale are outside a positive domain.
inline constexpr double positive_floor_rel = 1e-12;

/// Maps eigenvalues into f's domain (with roundoff clamping) or throws DomainViolation.
RealVector clamp_to_domain(const ScalarFunction& f, const RealVector& eigenvalues);

/// f(H) = V diag(f(lambda)) V^*.
ComplexMatrix apply_scalar_function(const ScalarFunction& f, const ComplexMatrix& H);
ComplexMatrix apply_scalar_function(const ScalarFunction& f, const HermitianEigen<double>& eig);

/// Y - X >= 0 up to lambda_min(Y - X) >= -tol * max(1, ||X||, ||Y||).
bool loewner_leq(const ComplexMatrix& X, const ComplexMatrix& Y, double tol);

/// lambda_min(Y - X) / max(1, ||X||, ||Y||): the normalized Loewner margin.
double loewner_margin(const ComplexMatrix& X, const ComplexMatrix& Y);

/// Integral over t in [0,1] of f((1-t)X + tY), by Gauss-Legendre quadrature with
/// nodes summed in a fixed order. When X or Y is a real multiple of I the two
/// commute and the integrand is diagonal in one eigenbasis.
ComplexMatrix hh_integral_mean(const ScalarFunction& f, const ComplexMatrix& X, const ComplexMatrix& Y,
                               const QuadratureConfig& q = {});

/// Integral of ((1-t)X + tY)^2 = (X^2 + Y^2)/3 + (XY + YX)/6.
ComplexMatrix squared_integral_mean_closed_form(const ComplexMatrix& X, const ComplexMatrix& Y);

struct ConvexityReport {
  std::int64_t violations = 0;
  double worst_slack = 0.0; ///< min normalized lambda_min over every trial
  std::int64_t checks = 0;  ///< (pair, t) combinations evaluated
};

/// Random search for violations of f((1-t)X + tY) <= (1-t)f(X) + t f(Y) over
/// Hermitian pairs with spectra in f's domain and t in {0.1, ..., 0.9}.
ConvexityReport check_operator_convexity(const ScalarFunction& f, int n, std::int64_t trials,
                                         std::uint64_t seed, double tol);

/// Normalized lambda_min of (1-t)f(X) + t f(Y) - f((1-t)X + tY).
double convexity_margin(const ScalarFunction& f, const ComplexMatrix& X, const ComplexMatrix& Y, double t);

} // namespace nrange
