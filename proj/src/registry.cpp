#include "nrange/registry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <cstdio>

#include "detail/alpha_search.hpp"
#include "nrange/errors.hpp"

namespace nrange {

namespace {

using IS = InputSignature;
using CK = ChainKind;
using PS = ParamSpec;

std::vector<ChainInfo> build_catalog() {
  const std::vector<std::string> t_shape = {"f(s)", "||int f((1-t)X + t s I) dt||", "||f(X)||"};
  std::vector<ChainInfo> c = {
      {"CH-EQV", "norm equivalence", "||A||/2 <= w(A) <= ||A||", IS::single_matrix, CK::inequality_chain, PS::none,
       {"||A||/2", "w(A)", "||A||"}},
      {"CH-KIT05", "w^2 between quarter and half of ||A^*A + AA^*||",
       "||A^*A + AA^*||/4 <= w^2(A) <= ||A^*A + AA^*||/2", IS::single_matrix, CK::inequality_chain, PS::none,
       {"||A^*A+AA^*||/4", "w^2(A)", "||A^*A+AA^*||/2"}},
      {"CH-KIT03", "absolute-value bound", "w(A) <= ||(|A| + |A^*|)||/2 <= ||A||/2 + ||A^2||^(1/2)/2",
       IS::single_matrix, CK::inequality_chain, PS::none,
       {"w(A)", "|| |A|+|A^*| ||/2", "||A||/2+||A^2||^(1/2)/2"}},
      {"CH-BP-ALPHA", "alpha-minimized mixed square bound",
       "w^2(A) <= min_{0<=a<=1} ||a A^*A + (1-a) AA^*||", IS::single_matrix, CK::inequality_chain, PS::none,
       {"w^2(A)", "min_a ||a A^*A+(1-a)AA^*||"}},
      {"CH-BP-GAMMA", "gamma bound",
       "w^2(A) <= min{g1, g2}, g1 = min_a ||a((|A|+|A^*|)/2)^2 + (1-a)|A^*|^2||, "
       "g2 = min_a ||a((|A|+|A^*|)/2)^2 + (1-a)|A|^2||",
       IS::single_matrix, CK::inequality_chain, PS::none, {"w^2(A)", "min{g1,g2}"}},
      {"CH-OM", "product of real and imaginary part norms", "||A+A^*|| ||A-A^*||/4 <= w^2(A)", IS::single_matrix,
       CK::inequality_chain, PS::none, {"||A+A^*|| ||A-A^*||/4", "w^2(A)"}},
      {"CH-IDENT", "Cartesian identity", "||A^*A + AA^*||/4 = ||B^2 + C^2||/2 with A = B + iC", IS::single_matrix,
       CK::equality, PS::none, {"||A^*A+AA^*||/4", "||B^2+C^2||/2"}},
      {"CH-T2.1", "Crawford-number refinement of the lower bound",
       "||A^*A+AA^*||/4 <= (p^2+q^2)/8 <= (p^2+q^2)/8 + c^2(A+A^*)/8 + c^2(A-A^*)/8 <= w^2(A), "
       "p = ||A+A^*||, q = ||A-A^*||",
       IS::single_matrix, CK::inequality_chain, PS::none,
       {"||A^*A+AA^*||/4", "(p^2+q^2)/8", "(p^2+q^2)/8+c^2(A+A^*)/8+c^2(A-A^*)/8", "w^2(A)"}},
      {"CH-C2.3", "Crawford-number lower bound",
       "||A^*A+AA^*||/4 + c^2(A+A^*)/8 + c^2(A-A^*)/8 <= w^2(A)", IS::single_matrix, CK::inequality_chain,
       PS::none, {"||A^*A+AA^*||/4+c^2(A+A^*)/8+c^2(A-A^*)/8", "w^2(A)"}},
      {"CH-T2.4", "sum norm via A^*D + D^*A",
       "||A+D||^2 <= ||A||^2 + ||D||^2 + ||A^*D + D^*A|| <= (||A|| + ||D||)^2", IS::matrix_pair,
       CK::inequality_chain, PS::none, {"||A+D||^2", "||A||^2+||D||^2+||A^*D+D^*A||", "(||A||+||D||)^2"}},
      {"CH-T2.6", "sum norm via numerical radius of products",
       "||A+D||^2 <= ||A||^2 + ||D||^2 + ||A|| ||D|| + min{w(A^*D), w(AD^*)} <= (||A|| + ||D||)^2",
       IS::matrix_pair, CK::inequality_chain, PS::none,
       {"||A+D||^2", "||A||^2+||D||^2+||A|| ||D||+min{w(A^*D),w(AD^*)}", "(||A||+||D||)^2"}},
      {"CH-L2.DP", "positive sum bound", "||A+D|| <= max{||A||, ||D||} + ||AD||^(1/2) for A, D >= 0",
       IS::positive_pair, CK::inequality_chain, PS::none, {"||A+D||", "max{||A||,||D||}+||AD||^(1/2)"}},
      {"CH-T2.8", "max-plus-product lower bound",
       "||A^*A+AA^*||/4 <= (max{p^2, q^2} + pq)/8 <= w^2(A)", IS::single_matrix, CK::inequality_chain, PS::none,
       {"||A^*A+AA^*||/4", "(max{p^2,q^2}+pq)/8", "w^2(A)"}},
      {"CH-L2.BBP1", "sum norm via Gram sums",
       "||A+D||^2 <= 2 max{||A^*A + D^*D||, ||AA^* + DD^*||}", IS::matrix_pair, CK::inequality_chain, PS::none,
       {"||A+D||^2", "2max{||A^*A+D^*D||,||AA^*+DD^*||}"}},
      {"CH-T2.10", "quartic-sum lower bound", "||A^*A+AA^*||/4 <= (p^4+q^4)^(1/2)/(4 sqrt 2) <= w^2(A)",
       IS::single_matrix, CK::inequality_chain, PS::none,
       {"||A^*A+AA^*||/4", "(p^4+q^4)^(1/2)/(4sqrt2)", "w^2(A)"}},
      {"CH-L2.BBP2", "fourth-power sum norm bound",
       "||A+D||^4 <= 2 max{||A^*A + D^*D||^2 + 4w^2(D^*A), ||AA^* + DD^*||^2 + 4w^2(AD^*)}", IS::matrix_pair,
       CK::inequality_chain, PS::none,
       {"||A+D||^4", "2max{||A^*A+D^*D||^2+4w^2(D^*A),||AA^*+DD^*||^2+4w^2(AD^*)}"}},
      {"CH-T2.12", "eighth-power lower bound",
       "||A^*A+AA^*||/4 <= (2(p^4+q^4)^2 + 8p^4q^4)^(1/4)/8 <= w^2(A)", IS::single_matrix, CK::inequality_chain,
       PS::none, {"||A^*A+AA^*||/4", "(2(p^4+q^4)^2+8p^4q^4)^(1/4)/8", "w^2(A)"}},
      {"CH-T2.13a", "sum norm via A^*D", "||A+D||^2 <= ||A||^2 + ||D||^2 + ||A^*A + D^*D||/2 + w(A^*D)",
       IS::matrix_pair, CK::inequality_chain, PS::none,
       {"||A+D||^2", "||A||^2+||D||^2+||A^*A+D^*D||/2+w(A^*D)"}},
      {"CH-T2.13b", "sum norm via AD^*", "||A+D||^2 <= ||A||^2 + ||D||^2 + ||AA^* + DD^*||/2 + w(AD^*)",
       IS::matrix_pair, CK::inequality_chain, PS::none,
       {"||A+D||^2", "||A||^2+||D||^2+||AA^*+DD^*||/2+w(AD^*)"}},
      {"CH-T2.14", "squared-difference lower bound",
       "||A^*A+AA^*||/4 <= ((p^2+q^2)^2 + (p^2-q^2)^2/2)^(1/2)/8 <= w^2(A)", IS::single_matrix,
       CK::inequality_chain, PS::none,
       {"||A^*A+AA^*||/4", "((p^2+q^2)^2+(p^2-q^2)^2/2)^(1/2)/8", "w^2(A)"}},
      {"CH-BK2", "arithmetic-geometric mean for positive pairs", "||AD|| <= ||A+D||^2/4 for A, D >= 0",
       IS::positive_pair, CK::inequality_chain, PS::none, {"||AD||", "||A+D||^2/4"}},
      {"CH-BK", "arithmetic-geometric mean for products", "||AD^*|| <= ||A^*A + D^*D||/2", IS::matrix_pair,
       CK::inequality_chain, PS::none, {"||AD^*||", "||A^*A+D^*D||/2"}},
      {"CH-T2.16", "product-term lower bound",
       "||A^*A+AA^*||/4 <= w^2(A)/2 + ||(A+A^*)^2 (A-A^*)^2||^(1/2)/8 <= w^2(A)", IS::single_matrix,
       CK::inequality_chain, PS::none,
       {"||A^*A+AA^*||/4", "w^2(A)/2+||(A+A^*)^2(A-A^*)^2||^(1/2)/8", "w^2(A)"}},
      {"CH-C2.17", "product-term upper refinement",
       "||A^*A+AA^*||/2 - ||(A+A^*)^2 (A-A^*)^2||^(1/2)/4 <= w^2(A) <= ||A^*A+AA^*||/2", IS::single_matrix,
       CK::inequality_chain, PS::none,
       {"||A^*A+AA^*||/2-||(A+A^*)^2(A-A^*)^2||^(1/2)/4", "w^2(A)", "||A^*A+AA^*||/2"}},
      {"CH-BUZANO", "Buzano inequality", "|<x,e><e,y>| <= (||x|| ||y|| + |<x,y>|)/2 for unit e",
       IS::vector_triple, CK::inequality_chain, PS::none, {"|<x,e><e,y>|", "(||x|| ||y||+|<x,y>|)/2"}},
      {"CH-L3.1", "operator convex f of mixed squares", "f(w^2(A)) <= ||f(a|A|^2 + (1-a)|A^*|^2)||",
       IS::single_matrix, CK::inequality_chain, PS::function_alpha, {"f(w^2(A))", "||f(a|A|^2+(1-a)|A^*|^2)||"}},
      {"CH-HH", "Hermite-Hadamard operator inequality",
       "f((X+Y)/2) <= int_0^1 f((1-t)X + tY) dt <= (f(X) + f(Y))/2 in the Loewner order", IS::hermitian_pair,
       CK::operator_order_triple, PS::function, {"||f((X+Y)/2)||", "||int f((1-t)X+tY) dt||", "||f(X)+f(Y)||/2"}},
      {"CH-HH-NORM", "Hermite-Hadamard norm form",
       "||f((X+Y)/2)|| <= ||int_0^1 f((1-t)X + tY) dt|| <= ||f(X) + f(Y)||/2 for nonnegative f",
       IS::hermitian_pair, CK::inequality_chain, PS::function,
       {"||f((X+Y)/2)||", "||int f((1-t)X+tY) dt||", "||f(X)+f(Y)||/2"}},
      {"CH-T3.5", "integral-mean bound with S_a = a|A|^2 + (1-a)|A^*|^2",
       "f(w^2(A)) <= ||int_0^1 f((1-t)S_a + t w^2(A) I) dt|| <= ||f(S_a)||", IS::single_matrix,
       CK::inequality_chain, PS::function_alpha, t_shape},
      {"CH-C3.6", "squared integral-mean bound with S_a",
       "w^2(A) <= ||S_a^2 + w^4(A) I + w^2(A) S_a||^(1/2)/sqrt 3 <= ||S_a||", IS::single_matrix,
       CK::inequality_chain, PS::alpha, {"w^2(A)", "||S^2+w^4 I+w^2 S||^(1/2)/sqrt3", "||S||"}},
      {"CH-T3.7", "integral-mean bound with T_a = a((|A|+|A^*|)/2)^2 + (1-a)|A|^2",
       "f(w^2(A)) <= ||int_0^1 f((1-t)T_a + t w^2(A) I) dt|| <= ||f(T_a)||", IS::single_matrix,
       CK::inequality_chain, PS::function_alpha, t_shape},
      {"CH-C3.8", "squared integral-mean bound with T_a",
       "w^2(A) <= ||T_a^2 + w^4(A) I + w^2(A) T_a||^(1/2)/sqrt 3 <= ||T_a||", IS::single_matrix,
       CK::inequality_chain, PS::alpha, {"w^2(A)", "||T^2+w^4 I+w^2 T||^(1/2)/sqrt3", "||T||"}},
      {"CH-T3.9", "integral-mean bound with U_a = a((|A|+|A^*|)/2)^2 + (1-a)|A^*|^2",
       "f(w^2(A)) <= ||int_0^1 f((1-t)U_a + t w^2(A) I) dt|| <= ||f(U_a)||", IS::single_matrix,
       CK::inequality_chain, PS::function_alpha, t_shape},
      {"CH-C3.10", "squared integral-mean bound with U_a",
       "w^2(A) <= ||U_a^2 + w^4(A) I + w^2(A) U_a||^(1/2)/sqrt 3 <= ||U_a||", IS::single_matrix,
       CK::inequality_chain, PS::alpha, {"w^2(A)", "||U^2+w^4 I+w^2 U||^(1/2)/sqrt3", "||U||"}},
      {"CH-T3.11", "integral-mean bound for ||AD||, A, D >= 0",
       "f(||AD||) <= ||int_0^1 f((1-t)((A+D)/2)^2 + t||AD|| I) dt|| <= ||f(((A+D)/2)^2)||", IS::positive_pair,
       CK::inequality_chain, PS::function, t_shape},
      {"CH-C3.12", "squared integral-mean bound for ||AD||, A, D >= 0",
       "||AD|| <= ||Q^2 + ||AD||^2 I + ||AD|| Q||^(1/2)/sqrt 3 <= ||Q||, Q = ((A+D)/2)^2", IS::positive_pair,
       CK::inequality_chain, PS::none, {"||AD||", "||Q^2+||AD||^2 I+||AD|| Q||^(1/2)/sqrt3", "||Q||"}},
      {"CH-T3.13", "integral-mean bound for ||AD^*||",
       "f(||AD^*||) <= ||int_0^1 f((1-t)M + t||AD^*|| I) dt|| <= ||f(M)||, M = (|A|^2 + |D|^2)/2",
       IS::matrix_pair, CK::inequality_chain, PS::function, t_shape},
      {"CH-C3.14", "squared integral-mean bound for ||AD^*||",
       "||AD^*|| <= ||M^2 + ||AD^*||^2 I + ||AD^*|| M||^(1/2)/sqrt 3 <= ||M||, M = (|A|^2 + |D|^2)/2",
       IS::matrix_pair, CK::inequality_chain, PS::none,
       {"||AD^*||", "||M^2+||AD^*||^2 I+||AD^*|| M||^(1/2)/sqrt3", "||M||"}},
  };
  std::sort(c.begin(), c.end(), [](const ChainInfo& a, const ChainInfo& b) { return a.id < b.id; });
  return c;
}

std::uint64_t fnv_bytes(std::uint64_t h, const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv_double(std::uint64_t h, double x) {
  if (x == 0.0) x = 0.0; // fold -0 into +0
  std::uint64_t bits;
  std::memcpy(&bits, &x, sizeof bits);
  return fnv_bytes(h, &bits, sizeof bits);
}

std::uint64_t fnv_size(std::uint64_t h, std::int64_t n) { return fnv_bytes(h, &n, sizeof n); }

double norm_of(const ComplexVector& v) { return v.norm(); }

} // namespace

std::string_view to_string(InputSignature s) {
  switch (s) {
  case IS::single_matrix: return "single-matrix";
  case IS::matrix_pair: return "matrix-pair";
  case IS::positive_pair: return "positive-pair";
  case IS::hermitian_pair: return "hermitian-pair";
  case IS::vector_triple: return "vector-triple";
  }
  return "?";
}

std::string_view to_string(ChainKind k) {
  switch (k) {
  case CK::inequality_chain: return "inequality-chain";
  case CK::equality: return "equality";
  case CK::operator_order_triple: return "operator-order-triple";
  }
  return "?";
}

std::string_view to_string(ParamSpec p) {
  switch (p) {
  case PS::none: return "none";
  case PS::function: return "f";
  case PS::alpha: return "alpha";
  case PS::function_alpha: return "f,alpha";
  }
  return "?";
}

const std::vector<ChainInfo>& list_chains() {
  static const std::vector<ChainInfo> catalog = build_catalog();
  return catalog;
}

const ChainInfo& chain_info(std::string_view id) {
  const auto& c = list_chains();
  auto it = std::lower_bound(c.begin(), c.end(), id, [](const ChainInfo& a, std::string_view b) { return a.id < b; });
  if (it == c.end() || it->id != id) throw UnknownChain("unknown chain id: " + std::string(id));
  return *it;
}

ChainInputs ChainInputs::single(ComplexMatrix A) {
  ChainInputs in;
  in.matrices.push_back(std::move(A));
  return in;
}

ChainInputs ChainInputs::pair(ComplexMatrix A, ComplexMatrix D) {
  ChainInputs in;
  in.matrices.push_back(std::move(A));
  in.matrices.push_back(std::move(D));
  return in;
}

ChainInputs ChainInputs::triple(VectorTriple t) {
  ChainInputs in;
  in.vectors = std::move(t);
  return in;
}

double normalized_gap(double u, double v) {
  return (v - u) / std::max({1.0, std::abs(u), std::abs(v)});
}

std::string inputs_digest(const ChainInputs& inputs) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = fnv_size(h, static_cast<std::int64_t>(inputs.matrices.size()));
  for (const auto& M : inputs.matrices) {
    h = fnv_size(h, M.rows());
    h = fnv_size(h, M.cols());
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
      for (Eigen::Index j = 0; j < M.cols(); ++j) {
        h = fnv_double(h, M(i, j).real());
        h = fnv_double(h, M(i, j).imag());
      }
    }
  }
  if (inputs.vectors) {
    for (const ComplexVector* v : {&inputs.vectors->x, &inputs.vectors->e, &inputs.vectors->y}) {
      h = fnv_size(h, v->size());
      for (Eigen::Index i = 0; i < v->size(); ++i) {
        h = fnv_double(h, (*v)(i).real());
        h = fnv_double(h, (*v)(i).imag());
      }
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ChainVerdict evaluate_chain(std::string_view id, const ChainInputs& inputs, const ChainParams& params, double tol,
                            const EvaluationSettings& settings) {
  ChainEvaluator ev(inputs, settings);
  return ev.evaluate(id, params, tol);
}

std::string_view to_string(AlphaMode m) {
  switch (m) {
  case AlphaMode::imp3: return "imp3";
  case AlphaMode::gamma1: return "gamma1";
  case AlphaMode::gamma2: return "gamma2";
  case AlphaMode::cor1: return "cor1";
  case AlphaMode::cor2: return "cor2";
  case AlphaMode::cor2b: return "cor2b";
  }
  return "?";
}

AlphaMode parse_alpha_mode(std::string_view name) {
  for (AlphaMode m : {AlphaMode::imp3, AlphaMode::gamma1, AlphaMode::gamma2, AlphaMode::cor1, AlphaMode::cor2,
                      AlphaMode::cor2b}) {
    if (to_string(m) == name) return m;
  }
  throw InvalidInput("unknown alpha mode: " + std::string(name));
}

AlphaMinimum alpha_minimized_norm(const ComplexMatrix& A, AlphaMode mode, double search_tol,
                                  const AngleSweepConfig& sweep) {
  if (!(search_tol > 0.0)) throw InvalidInput("alpha_minimized_norm: search_tol must be positive");
  const detail::AbsParts parts = detail::abs_parts(A);
  const ComplexMatrix* X = nullptr;
  const ComplexMatrix* Y = nullptr;
  switch (mode) {
  case AlphaMode::imp3: return detail::minimize_mixed_norm(parts.abs_sq, parts.abs_adj_sq, search_tol);
  case AlphaMode::gamma1: return detail::minimize_mixed_norm(parts.mean_sq, parts.abs_adj_sq, search_tol);
  case AlphaMode::gamma2: return detail::minimize_mixed_norm(parts.mean_sq, parts.abs_sq, search_tol);
  case AlphaMode::cor1: X = &parts.abs_sq; Y = &parts.abs_adj_sq; break;
  case AlphaMode::cor2: X = &parts.mean_sq; Y = &parts.abs_adj_sq; break;
  case AlphaMode::cor2b: X = &parts.mean_sq; Y = &parts.abs_sq; break;
  }
  const double w = numerical_radius(A, sweep);
  return detail::minimize_squared_mean_root(*X, *Y, w * w, search_tol);
}

ChainVerdict check_buzano(const ComplexVector& x, const ComplexVector& e, const ComplexVector& y, double tol) {
  if (x.size() != e.size() || y.size() != e.size() || e.size() == 0) {
    throw SignatureMismatch("check_buzano: vectors must share a positive length");
  }
  if (!x.allFinite() || !e.allFinite() || !y.allFinite()) throw InvalidInput("check_buzano: non-finite entry");
  if (std::abs(norm_of(e) - 1.0) > 1e-12) throw NotUnitVector("check_buzano: e must have unit norm");

  // Eigen's dot conjugates its left operand: a.dot(b) = <b, a>.
  const double lhs = std::abs(e.dot(x) * y.dot(e));
  const double rhs = 0.5 * (x.norm() * y.norm() + std::abs(y.dot(x)));

  ChainVerdict v;
  v.chain_id = "CH-BUZANO";
  v.terms = {{"|<x,e><e,y>|", lhs}, {"(||x|| ||y||+|<x,y>|)/2", rhs}};
  v.gaps = {normalized_gap(lhs, rhs)};
  v.min_slack = v.gaps.front();
  v.tol = tol;
  v.pass = v.min_slack >= -tol;
  VectorTriple t{x, e, y};
  v.inputs_digest = inputs_digest(ChainInputs::triple(std::move(t)));
  return v;
}

bool EqualityCaseReport::all_pass() const {
  return std::all_of(cases.begin(), cases.end(), [](const EqualityCase& c) { return c.pass; });
}

namespace {

constexpr double equality_tol = 1e-12;

bool close(double a, double b) { return std::abs(a - b) <= equality_tol * std::max({1.0, std::abs(a), std::abs(b)}); }

double hermitian_norm(const ComplexMatrix& H) { return hermitian_eigen(H).spectral_radius(); }

EqualityCase norm_sum_product_case(const std::string& name, const ComplexMatrix& A, const ComplexMatrix& D,
                                   bool expect_equalities) {
  const double nA = operator_norm(A);
  const double nD = operator_norm(D);
  const double sum = operator_norm(ComplexMatrix(A + D));
  const double prod = operator_norm(ComplexMatrix(A * D));
  const bool sum_eq = close(sum, nA + nD);
  const bool prod_eq = close(prod, nA * nD);
  EqualityCase c;
  c.name = name;
  c.description = expect_equalities ? "positive pair with ||A+D|| = ||A||+||D|| and ||AD|| = ||A|| ||D||"
                                    : "positive pair where neither equality holds";
  c.values = {{"||A+D||", sum}, {"||A||+||D||", nA + nD}, {"||AD||", prod}, {"||A|| ||D||", nA * nD}};
  // The two equalities hold or fail together for positive pairs.
  c.pass = (sum_eq == prod_eq) && (sum_eq == expect_equalities);
  return c;
}

} // namespace

EqualityCaseReport equality_case_suite() {
  EqualityCaseReport r;
  const ComplexMatrix I = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix A = I;
  const ComplexMatrix D = -I;
  const double nA = operator_norm(A);
  const double nD = operator_norm(D);
  const double sum = operator_norm(ComplexMatrix(A + D));

  {
    const double cross = hermitian_norm(ComplexMatrix(A.adjoint() * D + D.adjoint() * A));
    EqualityCase c;
    c.name = "cross-term-equality";
    c.description = "A = I, D = -I: ||A^*D + D^*A|| = 2||A|| ||D|| while ||A+D|| = 0 < ||A|| + ||D||";
    c.values = {{"||A^*D+D^*A||", cross}, {"2||A|| ||D||", 2 * nA * nD}, {"||A+D||", sum}, {"||A||+||D||", nA + nD}};
    c.pass = close(cross, 2 * nA * nD) && close(sum, 0.0) && !close(sum, nA + nD);
    r.cases.push_back(std::move(c));
  }
  {
    const double w = numerical_radius(ComplexMatrix(A.adjoint() * D));
    EqualityCase c;
    c.name = "product-radius-equality";
    c.description = "A = I, D = -I: w(A^*D) = ||A|| ||D|| while ||A+D|| = 0 < ||A|| + ||D||";
    c.values = {{"w(A^*D)", w}, {"||A|| ||D||", nA * nD}, {"||A+D||", sum}, {"||A||+||D||", nA + nD}};
    c.pass = close(w, nA * nD) && close(sum, 0.0) && !close(sum, nA + nD);
    r.cases.push_back(std::move(c));
  }
  {
    ComplexMatrix H = ComplexMatrix::Zero(2, 2);
    H(0, 0) = 1.0;
    H(1, 1) = -3.0;
    const ComplexMatrix P = H + H.adjoint();
    const ComplexMatrix Q = H - H.adjoint();
    const double product_term = operator_norm(ComplexMatrix(P * P * Q * Q));
    const double w = numerical_radius(H);
    const double half_k = 0.5 * hermitian_norm(ComplexMatrix(H.adjoint() * H + H * H.adjoint()));
    EqualityCase c;
    c.name = "hermitian-product-term";
    c.description = "A = diag(1,-3): A - A^* = 0, the product term vanishes and w^2(A) = ||A^*A + AA^*||/2";
    c.values = {{"||(A+A^*)^2(A-A^*)^2||", product_term}, {"w^2(A)", w * w}, {"||A^*A+AA^*||/2", half_k}};
    c.pass = product_term == 0.0 && close(w * w, half_k) && close(w * w, 9.0);
    r.cases.push_back(std::move(c));
  }
  r.cases.push_back(norm_sum_product_case("norm-equalities-identity", I, I, true));
  {
    ComplexMatrix E = ComplexMatrix::Zero(2, 2);
    E(0, 0) = 1.0;
    E(1, 1) = 2.0;
    r.cases.push_back(norm_sum_product_case("norm-equalities-diagonal", E, E, true));
  }
  {
    ComplexMatrix P0 = ComplexMatrix::Zero(2, 2);
    ComplexMatrix P1 = ComplexMatrix::Zero(2, 2);
    P0(0, 0) = 1.0;
    P1(1, 1) = 1.0;
    r.cases.push_back(norm_sum_product_case("norm-equalities-orthogonal", P0, P1, false));
  }
  return r;
}

} // namespace nrange
