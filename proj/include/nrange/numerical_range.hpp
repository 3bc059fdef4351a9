#pragma once

#include <cstdint>
#include <string>

#include "nrange/linalg.hpp"

namespace nrange {

/// Controls the support-function sweep over the rotation angle theta.
struct AngleSweepConfig {
  int grid_points = 256;      ///< uniform grid over [0, 2pi); at least 8
  double refine_tol = 1e-10;  ///< golden-section stops at this bracket width (radians)
  int refine_max_iter = 200;  ///< per bracket

  void validate() const;
};

/// Outcome of one sweep, kept for diagnostics.
struct SweepResult {
  double value = 0.0;       ///< optimum found
  double theta = 0.0;       ///< angle where it was attained
  int brackets_refined = 0;
  int evaluations = 0;      ///< eigenvalue problems solved
};

/// lambda_max(Re(e^{i theta} A)): the support function of W(A) in direction -theta.
double support_function(const ComplexMatrix& A, double theta);

/// w(A) = max_theta lambda_max(Re(e^{i theta} A)). Never exceeds the true value
/// by more than eigensolver roundoff.
SweepResult numerical_radius_sweep(const ComplexMatrix& A, const AngleSweepConfig& cfg = {});
double numerical_radius(const ComplexMatrix& A, const AngleSweepConfig& cfg = {});

/// c(A) = max(0, max_theta lambda_min(Re(e^{i theta} A))).
///
/// W(A) is compact and convex, so the distance from the origin to W(A) is the
/// largest margin of a half-plane {z : Re(e^{i theta} z) >= m} containing W(A);
/// that margin is lambda_min(Re(e^{i theta} A)). When the best margin is <= 0 the
/// origin lies in W(A) and c(A) = 0. Hermitian inputs (and skew-Hermitian ones,
/// through A/i) skip the sweep: W is the real interval [lambda_min, lambda_max].
SweepResult crawford_number_sweep(const ComplexMatrix& A, const AngleSweepConfig& cfg = {});
double crawford_number(const ComplexMatrix& A, const AngleSweepConfig& cfg = {});
/// The theta sweep alone, without the Hermitian / skew-Hermitian shortcut.
SweepResult crawford_general_sweep(const ComplexMatrix& A, const AngleSweepConfig& cfg = {});

/// Distance from 0 to the interval [lo, hi].
double interval_crawford(double lo, double hi);

/// Largest |<Ax, x>| over `samples` random unit vectors. A lower bound for w(A).
double numerical_radius_sample_oracle(const ComplexMatrix& A, std::int64_t samples, std::uint64_t seed);

/// Smallest |<Ax, x>| over `samples` random unit vectors. An upper bound for c(A).
double crawford_sample_oracle(const ComplexMatrix& A, std::int64_t samples, std::uint64_t seed);

struct QuantityReport {
  double operator_norm = 0.0;
  double numerical_radius = 0.0;
  double crawford_number = 0.0;
  std::string method_notes;
};

QuantityReport compute_quantities(const ComplexMatrix& A, const AngleSweepConfig& cfg = {});

} // namespace nrange
