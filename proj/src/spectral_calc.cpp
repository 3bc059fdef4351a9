#include "nrange/spectral_calc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "nrange/sampling.hpp"

namespace nrange {

namespace {

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  // Prefer the short form when it round-trips ("1.5" rather than "1.5000000000000000").
  for (int digits = 1; digits <= 17; ++digits) {
    std::ostringstream shorter;
    shorter.precision(digits);
    shorter << v;
    if (std::stod(shorter.str()) == v) return shorter.str();
  }
  return os.str();
}

void require_hermitian(const ComplexMatrix& H, const char* what) {
  if (H.rows() != H.cols()) throw InvalidInput(std::string(what) + ": matrix is not square");
  if (!is_hermitian(H)) throw NotHermitian(std::string(what) + ": input is not Hermitian");
}

// Exactly c*I with c real, as produced by scalar shifts.
bool is_real_scalar_identity(const ComplexMatrix& M, double& c) {
  if (M.rows() == 0) return false;
  c = M(0, 0).real();
  for (Eigen::Index j = 0; j < M.cols(); ++j) {
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
      const complexd expected = (i == j) ? complexd(c, 0.0) : complexd(0.0, 0.0);
      if (M(i, j) != expected) return false;
    }
  }
  return true;
}

ComplexMatrix hermitize(const ComplexMatrix& M) { return (M + M.adjoint()) / 2.0; }

double hermitian_norm(const ComplexMatrix& H) {
  if (H.size() == 0) return 0.0;
  const RealVector ev = hermitian_eigenvalues(H);
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

} // namespace

ScalarFunction ScalarFunction::power(double r) {
  if (!std::isfinite(r)) throw InvalidInput("power: exponent must be finite");
  FunctionFlags flags;
  FunctionDomain domain = FunctionDomain::nonnegative;
  if (r >= 1.0 && r <= 2.0) {
    flags = {true, true, true};
  } else if (r >= -1.0 && r < 0.0) {
    domain = FunctionDomain::positive;
    flags = {true, false, true};
  } else if (r == 0.0) {
    flags = {true, false, true};
  } else if (r < -1.0) {
    domain = FunctionDomain::positive;
    flags = {true, false, false};
  } else {
    // (0, 1) is operator concave; r > 2 is convex but not operator convex.
    flags = {true, true, false};
  }
  return ScalarFunction(Power{r}, domain, flags);
}

ScalarFunction ScalarFunction::polynomial(std::vector<double> coeffs, FunctionDomain domain, FunctionFlags flags) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw InvalidInput("polynomial: coefficients must be finite");
  }
  return ScalarFunction(Polynomial{std::move(coeffs)}, domain, flags);
}

ScalarFunction ScalarFunction::parse(const std::string& text) {
  if (text == "t") return power(1.0);
  if (text.size() > 2 && text.compare(0, 2, "t^") == 0) {
    const std::string exponent = text.substr(2);
    std::size_t used = 0;
    double r = 0.0;
    try {
      r = std::stod(exponent, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == exponent.size() && used > 0) return power(r);
  }
  throw InvalidInput("unrecognized function '" + text + "' (expected t or t^<r>)");
}

double ScalarFunction::operator()(double t) const {
  if (const auto* p = std::get_if<Power>(&kind_)) {
    if (p->exponent == 1.0) return t;
    if (p->exponent == 2.0) return t * t;
    return std::pow(t, p->exponent);
  }
  const auto& coeffs = std::get<Polynomial>(kind_).coeffs;
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::string ScalarFunction::name() const {
  if (const auto* p = std::get_if<Power>(&kind_)) {
    if (p->exponent == 1.0) return "t";
    return "t^" + format_number(p->exponent);
  }
  std::string out = "poly(";
  const auto& coeffs = std::get<Polynomial>(kind_).coeffs;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (k) out += ",";
    out += format_number(coeffs[k]);
  }
  return out + ")";
}

bool ScalarFunction::is_square() const {
  if (const auto* p = std::get_if<Power>(&kind_)) return p->exponent == 2.0;
  auto coeffs = std::get<Polynomial>(kind_).coeffs;
  while (coeffs.size() > 3 && coeffs.back() == 0.0) coeffs.pop_back();
  return coeffs.size() == 3 && coeffs[0] == 0.0 && coeffs[1] == 0.0 && coeffs[2] == 1.0;
}

void QuadratureConfig::validate() const {
  if (nodes < 2) throw InvalidInput("quadrature: nodes must be >= 2");
}

QuadratureRule gauss_legendre_unit(int order) {
  if (order < 1) throw InvalidInput("gauss_legendre_unit: order must be >= 1");
  const auto n = static_cast<std::size_t>(order);
  QuadratureRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Newton on P_n from the usual cosine guess; roots come out descending.
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= order; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = order * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) <= 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = 0.5 * (1.0 - z);
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + z);
    rule.weights[i] = 0.5 * w;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

RealVector clamp_to_domain(const ScalarFunction& f, const RealVector& eigenvalues) {
  RealVector out = eigenvalues;
  if (out.size() == 0 || f.domain() == FunctionDomain::all_reals) return out;
  const double scale = std::max(1.0, out.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (f.domain() == FunctionDomain::nonnegative) {
      if (out(i) < -domain_clamp_rel * scale) {
        throw DomainViolation(f.name() + ": eigenvalue " + format_number(out(i)) + " outside [0, inf)");
      }
      out(i) = std::max(out(i), 0.0);
    } else if (out(i) < positive_floor_rel * scale) {
      throw DomainViolation(f.name() + ": eigenvalue " + format_number(out(i)) + " outside (0, inf)");
    }
  }
  return out;
}

ComplexMatrix apply_scalar_function(const ScalarFunction& f, const HermitianEigen<double>& eig) {
  const RealVector mapped = clamp_to_domain(f, eig.eigenvalues).unaryExpr([&](double l) { return f(l); });
  return hermitize(eig.vectors * mapped.cast<complexd>().asDiagonal() * eig.vectors.adjoint());
}

ComplexMatrix apply_scalar_function(const ScalarFunction& f, const ComplexMatrix& H) {
  require_hermitian(H, "apply_scalar_function");
  return apply_scalar_function(f, hermitian_eigen(H));
}

double loewner_margin(const ComplexMatrix& X, const ComplexMatrix& Y) {
  require_hermitian(X, "loewner_leq");
  require_hermitian(Y, "loewner_leq");
  if (X.rows() != Y.rows()) throw InvalidInput("loewner_leq: dimension mismatch");
  if (X.size() == 0) return 0.0;
  const double scale = std::max({1.0, hermitian_norm(X), hermitian_norm(Y)});
  return hermitian_eigenvalues(ComplexMatrix(hermitize(Y - X)))(0) / scale;
}

bool loewner_leq(const ComplexMatrix& X, const ComplexMatrix& Y, double tol) {
  return loewner_margin(X, Y) >= -tol;
}

ComplexMatrix hh_integral_mean(const ScalarFunction& f, const ComplexMatrix& X, const ComplexMatrix& Y,
                               const QuadratureConfig& q) {
  q.validate();
  require_hermitian(X, "hh_integral_mean");
  require_hermitian(Y, "hh_integral_mean");
  if (X.rows() != Y.rows()) throw InvalidInput("hh_integral_mean: dimension mismatch");
  const Eigen::Index n = X.rows();
  const QuadratureRule rule = gauss_legendre_unit(q.nodes);

  double shift = 0.0;
  const bool y_scalar = is_real_scalar_identity(Y, shift);
  const bool x_scalar = !y_scalar && is_real_scalar_identity(X, shift);
  if (y_scalar || x_scalar) {
    const auto eig = hermitian_eigen(y_scalar ? X : Y);
    clamp_to_domain(f, RealVector::Constant(1, shift));
    const RealVector lambda = clamp_to_domain(f, eig.eigenvalues);
    RealVector integrated = RealVector::Zero(n);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double t = rule.nodes[k];
      for (Eigen::Index i = 0; i < n; ++i) {
        const double arg = y_scalar ? (1.0 - t) * lambda(i) + t * shift : (1.0 - t) * shift + t * lambda(i);
        integrated(i) += rule.weights[k] * f(arg);
      }
    }
    return hermitize(eig.vectors * integrated.cast<complexd>().asDiagonal() * eig.vectors.adjoint());
  }

  // Spectra of convex combinations stay inside the hull of the endpoint spectra.
  clamp_to_domain(f, hermitian_eigenvalues(X));
  clamp_to_domain(f, hermitian_eigenvalues(Y));
  clamp_to_domain(f, hermitian_eigenvalues(ComplexMatrix(hermitize((X + Y) / 2.0))));

  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double t = rule.nodes[k];
    const ComplexMatrix point = hermitize((1.0 - t) * X + t * Y);
    acc += rule.weights[k] * apply_scalar_function(f, hermitian_eigen(point));
  }
  return hermitize(acc);
}

ComplexMatrix squared_integral_mean_closed_form(const ComplexMatrix& X, const ComplexMatrix& Y) {
  require_hermitian(X, "squared_integral_mean_closed_form");
  require_hermitian(Y, "squared_integral_mean_closed_form");
  if (X.rows() != Y.rows()) throw InvalidInput("squared_integral_mean_closed_form: dimension mismatch");
  return hermitize((X * X + Y * Y) / 3.0 + (X * Y + Y * X) / 6.0);
}

double convexity_margin(const ScalarFunction& f, const ComplexMatrix& X, const ComplexMatrix& Y, double t) {
  const ComplexMatrix rhs = (1.0 - t) * apply_scalar_function(f, X) + t * apply_scalar_function(f, Y);
  const ComplexMatrix lhs = apply_scalar_function(f, ComplexMatrix(hermitize((1.0 - t) * X + t * Y)));
  return loewner_margin(lhs, hermitize(rhs));
}

ConvexityReport check_operator_convexity(const ScalarFunction& f, int n, std::int64_t trials,
                                         std::uint64_t seed, double tol) {
  if (trials < 1) throw InvalidInput("check_operator_convexity: trials must be >= 1");
  GeneratorConfig cfg;
  cfg.n = n;
  cfg.seed = seed;
  cfg.count = trials;
  switch (f.domain()) {
  case FunctionDomain::all_reals:
    cfg.cls = EnsembleClass::hermitian;
    break;
  case FunctionDomain::nonnegative:
    cfg.cls = EnsembleClass::psd;
    break;
  case FunctionDomain::positive:
    cfg.cls = EnsembleClass::positive_definite;
    break;
  }

  ConvexityReport report;
  report.worst_slack = std::numeric_limits<double>::infinity();
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    const ComplexMatrix X = generate_slot(cfg, trial, 0);
    const ComplexMatrix Y = generate_slot(cfg, trial, 1);
    const ComplexMatrix fX = apply_scalar_function(f, X);
    const ComplexMatrix fY = apply_scalar_function(f, Y);
    for (int step = 1; step <= 9; ++step) {
      const double t = step / 10.0;
      const ComplexMatrix rhs = hermitize((1.0 - t) * fX + t * fY);
      const ComplexMatrix lhs = apply_scalar_function(f, ComplexMatrix(hermitize((1.0 - t) * X + t * Y)));
      const double margin = loewner_margin(lhs, rhs);
      ++report.checks;
      report.worst_slack = std::min(report.worst_slack, margin);
      if (margin < -tol) ++report.violations;
    }
  }
  return report;
}

} // namespace nrange
