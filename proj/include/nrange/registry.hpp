#pragma once

// Named inequality chains. A chain is an ordered list of scalar terms that
// must be nondecreasing; evaluating one on concrete inputs yields a verdict
// with every term value and the worst normalized gap between neighbours.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nrange/linalg.hpp"
#include "nrange/numerical_range.hpp"
#include "nrange/sampling.hpp"
#include "nrange/spectral_calc.hpp"

namespace nrange {

inline constexpr double default_chain_tol = 1e-8;

enum class InputSignature { single_matrix, matrix_pair, positive_pair, hermitian_pair, vector_triple };
enum class ChainKind { inequality_chain, equality, operator_order_triple };
enum class ParamSpec { none, function, alpha, function_alpha };

std::string_view to_string(InputSignature s);
std::string_view to_string(ChainKind k);
std::string_view to_string(ParamSpec p);

struct ChainInfo {
  std::string id;
  std::string name;      ///< short title of the inequality
  std::string statement; ///< the inequality written out in plain text
  InputSignature signature;
  ChainKind kind;
  ParamSpec params;
  std::vector<std::string> term_labels;
};

/// Complete catalog, ordered by id.
const std::vector<ChainInfo>& list_chains();
/// Throws UnknownChain.
const ChainInfo& chain_info(std::string_view id);

struct ChainParams {
  std::optional<ScalarFunction> f;
  std::optional<double> alpha;
};

struct ChainInputs {
  std::vector<ComplexMatrix> matrices;
  std::optional<VectorTriple> vectors;

  static ChainInputs single(ComplexMatrix A);
  static ChainInputs pair(ComplexMatrix A, ComplexMatrix D);
  static ChainInputs triple(VectorTriple t);
};

struct Term {
  std::string label;
  double value = 0.0;
};

struct ChainVerdict {
  std::string chain_id;
  std::vector<Term> terms;
  /// Normalized gaps: (next - prev)/max(1, |prev|, |next|) for chains,
  /// -|a - b|/max(1, |a|, |b|) for equalities, normalized lambda_min margins
  /// for operator-order triples.
  std::vector<double> gaps;
  double min_slack = 0.0;
  bool pass = false;
  double tol = default_chain_tol;
  std::string inputs_digest;
  std::string function_name; ///< empty when the chain takes no f
  std::optional<double> alpha;
  std::vector<Term> notes; ///< auxiliary values: both sides of a min, cross-checks
};

/// (v - u)/max(1, |u|, |v|).
double normalized_gap(double u, double v);

/// 64-bit FNV-1a over dimensions and entries, as 16 hex digits.
std::string inputs_digest(const ChainInputs& inputs);

struct EvaluationSettings {
  AngleSweepConfig sweep;
  QuadratureConfig quadrature;
  double alpha_search_tol = 1e-10;
};

/// Evaluates chains against one fixed set of inputs, caching shared
/// quantities (w(A), norms, |A|, ...) across evaluations. Not thread-safe;
/// use one evaluator per thread.
class ChainEvaluator {
public:
  explicit ChainEvaluator(ChainInputs inputs, EvaluationSettings settings = {});
  ~ChainEvaluator();
  ChainEvaluator(ChainEvaluator&&) noexcept;
  ChainEvaluator& operator=(ChainEvaluator&&) noexcept;

  /// Throws UnknownChain, SignatureMismatch, PositivityViolation and numeric errors.
  ChainVerdict evaluate(std::string_view id, const ChainParams& params = {}, double tol = default_chain_tol);

  const ChainInputs& inputs() const;

  struct Workspace; ///< opaque cache, defined in the implementation

private:
  std::unique_ptr<Workspace> ws_;
};

ChainVerdict evaluate_chain(std::string_view id, const ChainInputs& inputs, const ChainParams& params = {},
                            double tol = default_chain_tol, const EvaluationSettings& settings = {});

enum class AlphaMode { imp3, gamma1, gamma2, cor1, cor2, cor2b };
std::string_view to_string(AlphaMode m);
AlphaMode parse_alpha_mode(std::string_view name);

struct AlphaMinimum {
  double alpha = 0.0;
  double value = 0.0;
};

/// Minimizes a convex function of alpha over [0, 1] by golden-section search:
///  imp3:   ||a A^*A + (1-a) AA^*||
///  gamma1: ||a ((|A|+|A^*|)/2)^2 + (1-a) |A^*|^2||
///  gamma2: ||a ((|A|+|A^*|)/2)^2 + (1-a) |A|^2||
///  cor1 / cor2 / cor2b: the squared-mean middle term sqrt(||(S^2 + w^4 I + w^2 S)/3||)
///  with S = a|A|^2 + (1-a)|A^*|^2, a((|A|+|A^*|)/2)^2 + (1-a)|A^*|^2 and
///  a((|A|+|A^*|)/2)^2 + (1-a)|A|^2 respectively.
/// Every mode's minimum is an upper bound for w^2(A).
AlphaMinimum alpha_minimized_norm(const ComplexMatrix& A, AlphaMode mode, double search_tol = 1e-10,
                                  const AngleSweepConfig& sweep = {});

/// |<x,e><e,y>| <= (||x|| ||y|| + |<x,y>|)/2 for unit e. Throws NotUnitVector.
ChainVerdict check_buzano(const ComplexVector& x, const ComplexVector& e, const ComplexVector& y,
                          double tol = default_chain_tol);

struct EqualityCase {
  std::string name;
  std::string description;
  std::vector<Term> values;
  bool pass = false;
};

struct EqualityCaseReport {
  std::vector<EqualityCase> cases;
  bool all_pass() const;
};

/// Pinned instances for the equality/sharpness remarks (I and -I, Hermitian A,
/// positive pairs with ||A+D|| = ||A|| + ||D||).
EqualityCaseReport equality_case_suite();

} // namespace nrange
