#include "nrange/numerical_range.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <sstream>
#include <vector>

#include "nrange/sampling.hpp"

namespace nrange {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Re(e^{i theta} A) = cos(theta) B - sin(theta) C for A = B + iC.
class RotatedHermitianPart {
public:
  explicit RotatedHermitianPart(const ComplexMatrix& A) {
    auto parts = cartesian_decomposition(A);
    real_part_ = std::move(parts.real_part);
    imag_part_ = std::move(parts.imag_part);
  }

  RealVector eigenvalues(double theta) {
    ++evaluations_;
    return hermitian_eigenvalues(ComplexMatrix(std::cos(theta) * real_part_ - std::sin(theta) * imag_part_));
  }

  int evaluations() const { return evaluations_; }

private:
  ComplexMatrix real_part_;
  ComplexMatrix imag_part_;
  int evaluations_ = 0;
};

struct Grid {
  std::vector<double> theta;
  std::vector<double> lmax;
  std::vector<double> lmin;
};

// lambda_max(theta + pi) = -lambda_min(theta), so an even grid needs only half
// the eigenvalue problems.
Grid sample_grid(RotatedHermitianPart& family, int points) {
  Grid g;
  const auto count = static_cast<std::size_t>(points);
  g.theta.resize(count);
  g.lmax.resize(count);
  g.lmin.resize(count);
  const double step = two_pi / points;
  for (std::size_t k = 0; k < count; ++k) g.theta[k] = step * static_cast<double>(k);
  if (points % 2 == 0) {
    const std::size_t half = count / 2;
    for (std::size_t k = 0; k < half; ++k) {
      const RealVector ev = family.eigenvalues(g.theta[k]);
      g.lmax[k] = ev(ev.size() - 1);
      g.lmin[k] = ev(0);
      g.lmax[k + half] = -ev(0);
      g.lmin[k + half] = -ev(ev.size() - 1);
    }
  } else {
    for (std::size_t k = 0; k < count; ++k) {
      const RealVector ev = family.eigenvalues(g.theta[k]);
      g.lmax[k] = ev(ev.size() - 1);
      g.lmin[k] = ev(0);
    }
  }
  return g;
}

// Maximizes objective(theta) starting from sampled values. Every grid local
// maximum is a candidate bracket [theta_{k-1}, theta_{k+1}]. The objective is
// Lipschitz with constant <= ||A|| <= ||A||_F, so a bracket whose grid value
// plus lipschitz*step/2 cannot beat the incumbent (or `floor`) is skipped.
template <typename Objective>
SweepResult maximize_over_angle(const std::vector<double>& theta, const std::vector<double>& values,
                                Objective&& objective, double lipschitz, double floor,
                                const AngleSweepConfig& cfg) {
  const std::size_t count = values.size();
  const double step = two_pi / static_cast<double>(count);

  SweepResult best;
  best.value = values[0];
  best.theta = theta[0];
  for (std::size_t k = 1; k < count; ++k) {
    if (values[k] > best.value) {
      best.value = values[k];
      best.theta = theta[k];
    }
  }

  std::vector<std::size_t> candidates;
  for (std::size_t k = 0; k < count; ++k) {
    const double prev = values[(k + count - 1) % count];
    const double next = values[(k + 1) % count];
    if (values[k] >= prev && values[k] > next) candidates.push_back(k);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (const std::size_t k : candidates) {
    const double reachable = values[k] + 0.5 * lipschitz * step;
    if (reachable <= std::max(best.value, floor)) continue;
    ++best.brackets_refined;

    double lo = theta[k] - step;
    double hi = theta[k] + step;
    double x1 = hi - phi * (hi - lo);
    double x2 = lo + phi * (hi - lo);
    double f1 = objective(x1);
    double f2 = objective(x2);
    for (int iter = 0; iter < cfg.refine_max_iter && hi - lo > cfg.refine_tol; ++iter) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + phi * (hi - lo);
        f2 = objective(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - phi * (hi - lo);
        f1 = objective(x1);
      }
      if (f1 > best.value) {
        best.value = f1;
        best.theta = x1;
      }
      if (f2 > best.value) {
        best.value = f2;
        best.theta = x2;
      }
    }
    if (f1 > best.value) {
      best.value = f1;
      best.theta = x1;
    }
    if (f2 > best.value) {
      best.value = f2;
      best.theta = x2;
    }
  }
  best.theta = std::fmod(std::fmod(best.theta, two_pi) + two_pi, two_pi);
  return best;
}

void require_square_finite(const ComplexMatrix& A, const char* what) {
  if (A.rows() != A.cols()) throw InvalidInput(std::string(what) + ": matrix is not square");
  if (!A.allFinite()) throw InvalidInput(std::string(what) + ": non-finite entry");
}

} // namespace

void AngleSweepConfig::validate() const {
  if (grid_points < 8) throw InvalidInput("angle sweep: grid_points must be >= 8");
  if (!(refine_tol > 0.0)) throw InvalidInput("angle sweep: refine_tol must be > 0");
  if (refine_max_iter < 1) throw InvalidInput("angle sweep: refine_max_iter must be >= 1");
}

double support_function(const ComplexMatrix& A, double theta) {
  require_square_finite(A, "support_function");
  if (A.size() == 0) return 0.0;
  RotatedHermitianPart family(A);
  const RealVector ev = family.eigenvalues(theta);
  return ev(ev.size() - 1);
}

SweepResult numerical_radius_sweep(const ComplexMatrix& A, const AngleSweepConfig& cfg) {
  cfg.validate();
  require_square_finite(A, "numerical_radius");
  if (A.size() == 0) return {};
  RotatedHermitianPart family(A);
  const Grid grid = sample_grid(family, cfg.grid_points);
  auto objective = [&](double theta) {
    const RealVector ev = family.eigenvalues(theta);
    return ev(ev.size() - 1);
  };
  SweepResult result = maximize_over_angle(grid.theta, grid.lmax, objective, A.norm(), 0.0, cfg);
  result.value = std::max(result.value, 0.0);
  result.evaluations = family.evaluations();
  return result;
}

double numerical_radius(const ComplexMatrix& A, const AngleSweepConfig& cfg) {
  return numerical_radius_sweep(A, cfg).value;
}

double interval_crawford(double lo, double hi) {
  if (lo <= 0.0 && 0.0 <= hi) return 0.0;
  return std::min(std::abs(lo), std::abs(hi));
}

SweepResult crawford_number_sweep(const ComplexMatrix& A, const AngleSweepConfig& cfg) {
  cfg.validate();
  require_square_finite(A, "crawford_number");
  if (A.size() == 0) return {};

  const double scale = std::max(1.0, A.norm());
  if (hermitian_residual(A) <= default_hermitian_tol<double> * scale) {
    const RealVector ev = hermitian_eigenvalues(A);
    SweepResult r;
    r.value = interval_crawford(ev(0), ev(ev.size() - 1));
    r.evaluations = 1;
    return r;
  }
  if ((A + A.adjoint()).norm() <= default_hermitian_tol<double> * scale) {
    // A/i is Hermitian and |<(A/i)x, x>| = |<Ax, x>|.
    const ComplexMatrix rotated = A * complexd(0.0, -1.0);
    const RealVector ev = hermitian_eigenvalues(ComplexMatrix((rotated + rotated.adjoint()) / 2.0));
    SweepResult r;
    r.value = interval_crawford(ev(0), ev(ev.size() - 1));
    r.evaluations = 1;
    return r;
  }

  return crawford_general_sweep(A, cfg);
}

SweepResult crawford_general_sweep(const ComplexMatrix& A, const AngleSweepConfig& cfg) {
  cfg.validate();
  require_square_finite(A, "crawford_number");
  if (A.size() == 0) return {};
  RotatedHermitianPart family(A);
  const Grid grid = sample_grid(family, cfg.grid_points);
  auto objective = [&](double theta) { return family.eigenvalues(theta)(0); };
  SweepResult result = maximize_over_angle(grid.theta, grid.lmin, objective, A.norm(), 0.0, cfg);
  result.value = std::max(result.value, 0.0);
  result.evaluations = family.evaluations();
  return result;
}

double crawford_number(const ComplexMatrix& A, const AngleSweepConfig& cfg) {
  return crawford_number_sweep(A, cfg).value;
}

double numerical_radius_sample_oracle(const ComplexMatrix& A, std::int64_t samples, std::uint64_t seed) {
  require_square_finite(A, "numerical_radius_sample_oracle");
  if (samples < 1) throw InvalidInput("sample oracle: samples must be >= 1");
  if (A.size() == 0) return 0.0;
  std::mt19937_64 rng(seed);
  const int n = static_cast<int>(A.rows());
  double best = 0.0;
  for (std::int64_t s = 0; s < samples; ++s) {
    const ComplexVector x = random_unit_vector(rng, n);
    best = std::max(best, std::abs(x.dot(A * x)));
  }
  return best;
}

double crawford_sample_oracle(const ComplexMatrix& A, std::int64_t samples, std::uint64_t seed) {
  require_square_finite(A, "crawford_sample_oracle");
  if (samples < 1) throw InvalidInput("sample oracle: samples must be >= 1");
  if (A.size() == 0) return 0.0;
  std::mt19937_64 rng(seed);
  const int n = static_cast<int>(A.rows());
  double best = std::numeric_limits<double>::infinity();
  for (std::int64_t s = 0; s < samples; ++s) {
    const ComplexVector x = random_unit_vector(rng, n);
    best = std::min(best, std::abs(x.dot(A * x)));
  }
  return best;
}

QuantityReport compute_quantities(const ComplexMatrix& A, const AngleSweepConfig& cfg) {
  QuantityReport report;
  report.operator_norm = operator_norm(A);
  const SweepResult w = numerical_radius_sweep(A, cfg);
  const SweepResult c = crawford_number_sweep(A, cfg);
  report.numerical_radius = w.value;
  report.crawford_number = c.value;
  std::ostringstream notes;
  notes << "theta grid " << cfg.grid_points << " points, golden-section refinement to " << cfg.refine_tol
        << " rad; w: " << w.brackets_refined << " bracket(s), " << w.evaluations
        << " eigenvalue problems; c: " << c.brackets_refined << " bracket(s), " << c.evaluations
        << " eigenvalue problems";
  report.method_notes = notes.str();
  return report;
}

} // namespace nrange
