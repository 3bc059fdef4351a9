#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>

#include "detail/alpha_search.hpp"
#include "nrange/errors.hpp"
#include "nrange/registry.hpp"

namespace nrange {

using detail::hermitian_norm;
using detail::hermitize;

namespace {

constexpr complexd minus_i{0.0, -1.0};

/// Values computed by one chain body, before labels and gaps are attached.
struct Draft {
  std::vector<double> values;
  std::vector<Term> notes;
  std::vector<double> margins; ///< operator-order triples only
  std::string function_name;
};

} // namespace

struct ChainEvaluator::Workspace {
  ChainInputs in;
  EvaluationSettings settings;
  std::string digest;
  std::map<std::string, double, std::less<>> scalars;
  std::map<std::string, ComplexMatrix, std::less<>> matrices;
  std::map<std::string, HermitianEigen<double>, std::less<>> eigs;
  std::optional<detail::AbsParts> abs;

  Workspace(ChainInputs inputs, EvaluationSettings s) : in(std::move(inputs)), settings(s) {
    digest = inputs_digest(in);
  }

  template <class Fn>
  double scalar(const std::string& key, Fn&& fn) {
    if (auto it = scalars.find(key); it != scalars.end()) return it->second;
    return scalars.emplace(key, fn()).first->second;
  }

  template <class Fn>
  const ComplexMatrix& matrix(const std::string& key, Fn&& fn) {
    if (auto it = matrices.find(key); it != matrices.end()) return it->second;
    return matrices.emplace(key, fn()).first->second;
  }

  const HermitianEigen<double>& eig(const std::string& key, const ComplexMatrix& H) {
    if (auto it = eigs.find(key); it != eigs.end()) return it->second;
    return eigs.emplace(key, hermitian_eigen(H)).first->second;
  }

  const ComplexMatrix& A() const { return in.matrices.at(0); }
  const ComplexMatrix& D() const { return in.matrices.at(1); }
  Eigen::Index n() const { return A().rows(); }
  ComplexMatrix identity() const { return ComplexMatrix::Identity(n(), n()); }

  // ---- single-matrix quantities -------------------------------------------

  double w() {
    return scalar("w(A)", [&] { return numerical_radius(A(), settings.sweep); });
  }
  double w2() { return w() * w(); }
  double norm_A() {
    return scalar("||A||", [&] { return operator_norm(A()); });
  }
  const detail::AbsParts& parts() {
    if (!abs) abs = detail::abs_parts(A());
    return *abs;
  }
  /// ||A^*A + AA^*||
  double gram_sum() {
    return scalar("||A^*A+AA^*||", [&] { return hermitian_norm(ComplexMatrix(parts().abs_sq + parts().abs_adj_sq)); });
  }
  const HermitianEigen<double>& real_part_eig() {
    return eig("A+A^*", matrix("A+A^*", [&] { return ComplexMatrix(A() + A().adjoint()); }));
  }
  /// A - A^* is skew-Hermitian; -i(A - A^*) is Hermitian with the same norm
  /// and the same Crawford number.
  const HermitianEigen<double>& imag_part_eig() {
    return eig("-i(A-A^*)", matrix("-i(A-A^*)", [&] { return ComplexMatrix((A() - A().adjoint()) * minus_i); }));
  }
  double p() { return real_part_eig().spectral_radius(); }
  double q() { return imag_part_eig().spectral_radius(); }
  double c_plus() { return interval_crawford(real_part_eig().min(), real_part_eig().max()); }
  double c_minus() { return interval_crawford(imag_part_eig().min(), imag_part_eig().max()); }
  /// ||(A+A^*)^2 (A-A^*)^2||
  double product_term() {
    return scalar("||(A+A^*)^2(A-A^*)^2||", [&] {
      const ComplexMatrix P = A() + A().adjoint();
      const ComplexMatrix Q = A() - A().adjoint();
      return operator_norm(ComplexMatrix(P * P * (Q * Q)));
    });
  }

  // ---- pair quantities -----------------------------------------------------

  double norm_D() {
    return scalar("||D||", [&] { return operator_norm(D()); });
  }
  double norm_sum() {
    return scalar("||A+D||", [&] { return operator_norm(ComplexMatrix(A() + D())); });
  }
  double w_adjA_D() {
    return scalar("w(A^*D)", [&] { return numerical_radius(ComplexMatrix(A().adjoint() * D()), settings.sweep); });
  }
  double w_A_adjD() {
    return scalar("w(AD^*)", [&] { return numerical_radius(ComplexMatrix(A() * D().adjoint()), settings.sweep); });
  }
  const ComplexMatrix& gram_left() {
    return matrix("A^*A+D^*D", [&] { return hermitize(A().adjoint() * A() + D().adjoint() * D()); });
  }
  const ComplexMatrix& gram_right() {
    return matrix("AA^*+DD^*", [&] { return hermitize(A() * A().adjoint() + D() * D().adjoint()); });
  }
  double norm_gram_left() {
    return scalar("||A^*A+D^*D||", [&] { return hermitian_norm(gram_left()); });
  }
  double norm_gram_right() {
    return scalar("||AA^*+DD^*||", [&] { return hermitian_norm(gram_right()); });
  }
  double norm_AD() {
    return scalar("||AD||", [&] { return operator_norm(ComplexMatrix(A() * D())); });
  }
  double norm_A_adjD() {
    return scalar("||AD^*||", [&] { return operator_norm(ComplexMatrix(A() * D().adjoint())); });
  }
};

namespace {

const ScalarFunction& require_function(const ChainParams& p, std::string_view id) {
  if (!p.f) throw InvalidInput(std::string(id) + " requires a function parameter f");
  return *p.f;
}

/// The integral-mean chains need f nonnegative, increasing and operator convex.
const ScalarFunction& require_monotone_convex(const ChainParams& p, std::string_view id) {
  const ScalarFunction& f = require_function(p, id);
  const auto& fl = f.flags();
  if (!fl.nonnegative || !fl.increasing || !fl.operator_convex) {
    throw InvalidInput(std::string(id) + " requires a nonnegative increasing operator convex f; got " + f.name());
  }
  return f;
}

double require_alpha(const ChainParams& p, std::string_view id) {
  if (!p.alpha) throw InvalidInput(std::string(id) + " requires an alpha parameter");
  const double a = *p.alpha;
  if (!(a >= 0.0 && a <= 1.0)) throw InvalidInput(std::string(id) + ": alpha must lie in [0, 1]");
  return a;
}

std::string alpha_key(const char* prefix, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s(%.17g)", prefix, a);
  return buf;
}

/// Upper and middle terms of the integral-mean chains:
/// [f(s), ||int f((1-t)X + t s I) dt||, ||f(X)||] for PSD X.
Draft integral_mean_terms(ChainEvaluator::Workspace& ws, const ScalarFunction& f, const std::string& xkey,
                          const ComplexMatrix& X, double s) {
  Draft d;
  d.function_name = f.name();
  const auto& ex = ws.eig(xkey, X);
  const RealVector lam = clamp_to_domain(f, ex.eigenvalues);
  double upper = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) upper = std::max(upper, std::abs(f(lam(i))));

  const ComplexMatrix shift = s * ws.identity();
  const ComplexMatrix quad = hh_integral_mean(f, X, shift, ws.settings.quadrature);
  const double quad_norm = hermitian_norm(hermitize(quad));
  double middle = quad_norm;
  if (f.is_square()) {
    middle = hermitian_norm(squared_integral_mean_closed_form(X, shift));
    d.notes.push_back({"middle_quadrature", quad_norm});
    d.notes.push_back({"closed_form_vs_quadrature", normalized_gap(middle, quad_norm)});
  }
  d.values = {f(s), middle, upper};
  return d;
}

/// [s, ||int ((1-t)X + t s I)^2 dt||^(1/2), ||X||].
Draft squared_mean_terms(ChainEvaluator::Workspace& ws, const std::string& xkey, const ComplexMatrix& X, double s) {
  Draft d;
  d.function_name = "t^2";
  const double upper = ws.eig(xkey, X).spectral_radius();
  const double middle = std::sqrt(hermitian_norm(squared_integral_mean_closed_form(X, s * ws.identity())));
  d.values = {s, middle, upper};
  return d;
}

enum class MixKind { S, T, U };

const ComplexMatrix& mixed(ChainEvaluator::Workspace& ws, MixKind kind, double a, std::string& key) {
  const char* prefix = kind == MixKind::S ? "S" : kind == MixKind::T ? "T" : "U";
  key = alpha_key(prefix, a);
  return ws.matrix(key, [&] {
    const auto& p = ws.parts();
    switch (kind) {
    case MixKind::S: return ComplexMatrix(a * p.abs_sq + (1.0 - a) * p.abs_adj_sq);
    case MixKind::T: return ComplexMatrix(a * p.mean_sq + (1.0 - a) * p.abs_sq);
    case MixKind::U: break;
    }
    return ComplexMatrix(a * p.mean_sq + (1.0 - a) * p.abs_adj_sq);
  });
}

Draft mixed_integral_chain(ChainEvaluator::Workspace& ws, const ChainParams& prm, std::string_view id, MixKind k) {
  const ScalarFunction& f = require_monotone_convex(prm, id);
  const double a = require_alpha(prm, id);
  std::string key;
  const ComplexMatrix& X = mixed(ws, k, a, key);
  return integral_mean_terms(ws, f, key, X, ws.w2());
}

Draft mixed_squared_chain(ChainEvaluator::Workspace& ws, const ChainParams& prm, std::string_view id, MixKind k) {
  const double a = require_alpha(prm, id);
  std::string key;
  const ComplexMatrix& X = mixed(ws, k, a, key);
  return squared_mean_terms(ws, key, X, ws.w2());
}

const ComplexMatrix& half_sum_squared(ChainEvaluator::Workspace& ws) {
  return ws.matrix("((A+D)/2)^2", [&] {
    const ComplexMatrix m = (ws.A() + ws.D()) * 0.5;
    return hermitize(m * m);
  });
}

const ComplexMatrix& half_gram_left(ChainEvaluator::Workspace& ws) {
  return ws.matrix("(A^*A+D^*D)/2", [&] { return ComplexMatrix(ws.gram_left() * 0.5); });
}

struct HHParts {
  ComplexMatrix mid;  ///< f((X+Y)/2)
  ComplexMatrix mean; ///< int f((1-t)X + tY) dt
  ComplexMatrix avg;  ///< (f(X) + f(Y))/2
};

HHParts hh_parts(ChainEvaluator::Workspace& ws, const ScalarFunction& f) {
  const ComplexMatrix& X = ws.A();
  const ComplexMatrix& Y = ws.D();
  HHParts h;
  h.mean = hermitize(hh_integral_mean(f, X, Y, ws.settings.quadrature));
  h.mid = apply_scalar_function(f, hermitize((X + Y) * 0.5));
  h.avg = hermitize((apply_scalar_function(f, X) + apply_scalar_function(f, Y)) * 0.5);
  return h;
}

using Body = std::function<Draft(ChainEvaluator::Workspace&, const ChainParams&)>;

Draft plain(std::vector<double> values) {
  Draft d;
  d.values = std::move(values);
  return d;
}

const std::unordered_map<std::string, Body>& bodies() {
  static const std::unordered_map<std::string, Body> table = {
      {"CH-EQV", [](auto& ws, auto&) { return plain({ws.norm_A() / 2, ws.w(), ws.norm_A()}); }},
      {"CH-KIT05", [](auto& ws, auto&) { return plain({ws.gram_sum() / 4, ws.w2(), ws.gram_sum() / 2}); }},
      {"CH-KIT03",
       [](auto& ws, auto&) {
         const auto& pa = ws.parts();
         const double mid = hermitian_norm(ComplexMatrix(pa.abs + pa.abs_adj)) / 2;
         const double sq = operator_norm(ComplexMatrix(ws.A() * ws.A()));
         return plain({ws.w(), mid, ws.norm_A() / 2 + std::sqrt(sq) / 2});
       }},
      {"CH-BP-ALPHA",
       [](auto& ws, auto&) {
         const auto& pa = ws.parts();
         const AlphaMinimum m = detail::minimize_mixed_norm(pa.abs_sq, pa.abs_adj_sq, ws.settings.alpha_search_tol);
         Draft d = plain({ws.w2(), m.value});
         d.notes = {{"alpha_star", m.alpha}};
         return d;
       }},
      {"CH-BP-GAMMA",
       [](auto& ws, auto&) {
         const auto& pa = ws.parts();
         const double tol = ws.settings.alpha_search_tol;
         const AlphaMinimum g1 = detail::minimize_mixed_norm(pa.mean_sq, pa.abs_adj_sq, tol);
         const AlphaMinimum g2 = detail::minimize_mixed_norm(pa.mean_sq, pa.abs_sq, tol);
         Draft d = plain({ws.w2(), std::min(g1.value, g2.value)});
         d.notes = {{"gamma1", g1.value}, {"alpha1", g1.alpha}, {"gamma2", g2.value}, {"alpha2", g2.alpha}};
         return d;
       }},
      {"CH-OM", [](auto& ws, auto&) { return plain({ws.p() * ws.q() / 4, ws.w2()}); }},
      {"CH-IDENT",
       [](auto& ws, auto&) {
         const auto parts = cartesian_decomposition(ws.A());
         const ComplexMatrix& B = parts.real_part;
         const ComplexMatrix& C = parts.imag_part;
         const double rhs = hermitian_norm(hermitize(B * B + C * C)) / 2;
         return plain({ws.gram_sum() / 4, rhs});
       }},
      {"CH-T2.1",
       [](auto& ws, auto&) {
         const double base = (ws.p() * ws.p() + ws.q() * ws.q()) / 8;
         const double cp = ws.c_plus(), cm = ws.c_minus();
         Draft d = plain({ws.gram_sum() / 4, base, base + cp * cp / 8 + cm * cm / 8, ws.w2()});
         d.notes = {{"c(A+A^*)", cp}, {"c(A-A^*)", cm}};
         return d;
       }},
      {"CH-C2.3",
       [](auto& ws, auto&) {
         const double cp = ws.c_plus(), cm = ws.c_minus();
         Draft d = plain({ws.gram_sum() / 4 + cp * cp / 8 + cm * cm / 8, ws.w2()});
         d.notes = {{"c(A+A^*)", cp}, {"c(A-A^*)", cm}};
         return d;
       }},
      {"CH-T2.4",
       [](auto& ws, auto&) {
         const double a = ws.norm_A(), b = ws.norm_D(), s = ws.norm_sum();
         const double cross = hermitian_norm(hermitize(ws.A().adjoint() * ws.D() + ws.D().adjoint() * ws.A()));
         return plain({s * s, a * a + b * b + cross, (a + b) * (a + b)});
       }},
      {"CH-T2.6",
       [](auto& ws, auto&) {
         const double a = ws.norm_A(), b = ws.norm_D(), s = ws.norm_sum();
         const double w1 = ws.w_adjA_D(), w2 = ws.w_A_adjD();
         Draft d = plain({s * s, a * a + b * b + a * b + std::min(w1, w2), (a + b) * (a + b)});
         d.notes = {{"w(A^*D)", w1}, {"w(AD^*)", w2}};
         return d;
       }},
      {"CH-L2.DP",
       [](auto& ws, auto&) {
         return plain({ws.norm_sum(), std::max(ws.norm_A(), ws.norm_D()) + std::sqrt(ws.norm_AD())});
       }},
      {"CH-T2.8",
       [](auto& ws, auto&) {
         const double p = ws.p(), q = ws.q();
         return plain({ws.gram_sum() / 4, (std::max(p * p, q * q) + p * q) / 8, ws.w2()});
       }},
      {"CH-L2.BBP1",
       [](auto& ws, auto&) {
         const double s = ws.norm_sum();
         return plain({s * s, 2 * std::max(ws.norm_gram_left(), ws.norm_gram_right())});
       }},
      {"CH-T2.10",
       [](auto& ws, auto&) {
         const double p2 = ws.p() * ws.p(), q2 = ws.q() * ws.q();
         return plain({ws.gram_sum() / 4, std::sqrt(p2 * p2 + q2 * q2) / (4 * std::sqrt(2.0)), ws.w2()});
       }},
      {"CH-L2.BBP2",
       [](auto& ws, auto&) {
         const double s2 = ws.norm_sum() * ws.norm_sum();
         const double gl = ws.norm_gram_left(), gr = ws.norm_gram_right();
         // D^*A = (A^*D)^* and w is invariant under the adjoint.
         const double wl = ws.w_adjA_D(), wr = ws.w_A_adjD();
         const double left = gl * gl + 4 * wl * wl;
         const double right = gr * gr + 4 * wr * wr;
         Draft d = plain({s2 * s2, 2 * std::max(left, right)});
         d.notes = {{"w(D^*A)", wl}, {"w(AD^*)", wr}};
         return d;
       }},
      {"CH-T2.12",
       [](auto& ws, auto&) {
         const double p4 = std::pow(ws.p(), 4), q4 = std::pow(ws.q(), 4);
         const double mid = std::pow(2 * (p4 + q4) * (p4 + q4) + 8 * p4 * q4, 0.25) / 8;
         return plain({ws.gram_sum() / 4, mid, ws.w2()});
       }},
      {"CH-T2.13a",
       [](auto& ws, auto&) {
         const double a = ws.norm_A(), b = ws.norm_D(), s = ws.norm_sum();
         return plain({s * s, a * a + b * b + ws.norm_gram_left() / 2 + ws.w_adjA_D()});
       }},
      {"CH-T2.13b",
       [](auto& ws, auto&) {
         const double a = ws.norm_A(), b = ws.norm_D(), s = ws.norm_sum();
         return plain({s * s, a * a + b * b + ws.norm_gram_right() / 2 + ws.w_A_adjD()});
       }},
      {"CH-T2.14",
       [](auto& ws, auto&) {
         const double p2 = ws.p() * ws.p(), q2 = ws.q() * ws.q();
         const double mid = std::sqrt((p2 + q2) * (p2 + q2) + (p2 - q2) * (p2 - q2) / 2) / 8;
         return plain({ws.gram_sum() / 4, mid, ws.w2()});
       }},
      {"CH-BK2",
       [](auto& ws, auto&) {
         const double s = ws.norm_sum();
         return plain({ws.norm_AD(), s * s / 4});
       }},
      {"CH-BK", [](auto& ws, auto&) { return plain({ws.norm_A_adjD(), ws.norm_gram_left() / 2}); }},
      {"CH-T2.16",
       [](auto& ws, auto&) {
         return plain({ws.gram_sum() / 4, ws.w2() / 2 + std::sqrt(ws.product_term()) / 8, ws.w2()});
       }},
      {"CH-C2.17",
       [](auto& ws, auto&) {
         return plain({ws.gram_sum() / 2 - std::sqrt(ws.product_term()) / 4, ws.w2(), ws.gram_sum() / 2});
       }},
      {"CH-L3.1",
       [](auto& ws, auto& prm) {
         const ScalarFunction& f = require_monotone_convex(prm, "CH-L3.1");
         const double a = require_alpha(prm, "CH-L3.1");
         std::string key;
         const ComplexMatrix& S = mixed(ws, MixKind::S, a, key);
         const RealVector lam = clamp_to_domain(f, ws.eig(key, S).eigenvalues);
         double upper = 0.0;
         for (Eigen::Index i = 0; i < lam.size(); ++i) upper = std::max(upper, std::abs(f(lam(i))));
         Draft d = plain({f(ws.w2()), upper});
         d.function_name = f.name();
         return d;
       }},
      {"CH-HH",
       [](auto& ws, auto& prm) {
         const ScalarFunction& f = require_function(prm, "CH-HH");
         if (!f.flags().operator_convex) throw InvalidInput("CH-HH requires an operator convex f; got " + f.name());
         const HHParts h = hh_parts(ws, f);
         Draft d = plain({hermitian_norm(h.mid), hermitian_norm(h.mean), hermitian_norm(h.avg)});
         d.margins = {loewner_margin(h.mid, h.mean), loewner_margin(h.mean, h.avg)};
         d.function_name = f.name();
         return d;
       }},
      {"CH-HH-NORM",
       [](auto& ws, auto& prm) {
         const ScalarFunction& f = require_function(prm, "CH-HH-NORM");
         if (!f.flags().operator_convex || !f.flags().nonnegative) {
           throw InvalidInput("CH-HH-NORM requires a nonnegative operator convex f; got " + f.name());
         }
         const HHParts h = hh_parts(ws, f);
         Draft d = plain({hermitian_norm(h.mid), hermitian_norm(h.mean), hermitian_norm(h.avg)});
         d.function_name = f.name();
         return d;
       }},
      {"CH-T3.5", [](auto& ws, auto& prm) { return mixed_integral_chain(ws, prm, "CH-T3.5", MixKind::S); }},
      {"CH-C3.6", [](auto& ws, auto& prm) { return mixed_squared_chain(ws, prm, "CH-C3.6", MixKind::S); }},
      {"CH-T3.7", [](auto& ws, auto& prm) { return mixed_integral_chain(ws, prm, "CH-T3.7", MixKind::T); }},
      {"CH-C3.8", [](auto& ws, auto& prm) { return mixed_squared_chain(ws, prm, "CH-C3.8", MixKind::T); }},
      {"CH-T3.9", [](auto& ws, auto& prm) { return mixed_integral_chain(ws, prm, "CH-T3.9", MixKind::U); }},
      {"CH-C3.10", [](auto& ws, auto& prm) { return mixed_squared_chain(ws, prm, "CH-C3.10", MixKind::U); }},
      {"CH-T3.11",
       [](auto& ws, auto& prm) {
         const ScalarFunction& f = require_monotone_convex(prm, "CH-T3.11");
         return integral_mean_terms(ws, f, "((A+D)/2)^2", half_sum_squared(ws), ws.norm_AD());
       }},
      {"CH-C3.12",
       [](auto& ws, auto&) { return squared_mean_terms(ws, "((A+D)/2)^2", half_sum_squared(ws), ws.norm_AD()); }},
      {"CH-T3.13",
       [](auto& ws, auto& prm) {
         const ScalarFunction& f = require_monotone_convex(prm, "CH-T3.13");
         return integral_mean_terms(ws, f, "(A^*A+D^*D)/2", half_gram_left(ws), ws.norm_A_adjD());
       }},
      {"CH-C3.14",
       [](auto& ws, auto&) {
         return squared_mean_terms(ws, "(A^*A+D^*D)/2", half_gram_left(ws), ws.norm_A_adjD());
       }},
  };
  return table;
}

bool is_squared_specialization(std::string_view id) {
  return id == "CH-C3.6" || id == "CH-C3.8" || id == "CH-C3.10" || id == "CH-C3.12" || id == "CH-C3.14";
}

void check_params(const ChainInfo& info, const ChainParams& p) {
  const bool takes_f = info.params == ParamSpec::function || info.params == ParamSpec::function_alpha;
  const bool takes_alpha = info.params == ParamSpec::alpha || info.params == ParamSpec::function_alpha;
  if (p.f && !takes_f) {
    // The squared forms fix f = t^2; passing it explicitly is harmless.
    if (!(is_squared_specialization(info.id) && p.f->is_square())) {
      throw InvalidInput(info.id + " does not take a function parameter");
    }
  }
  if (p.alpha && !takes_alpha) throw InvalidInput(info.id + " does not take an alpha parameter");
}

void check_matrix(const ComplexMatrix& M, const std::string& id) {
  if (M.rows() == 0 || M.rows() != M.cols()) throw SignatureMismatch(id + ": inputs must be nonempty square matrices");
  if (!M.allFinite()) throw InvalidInput(id + ": non-finite matrix entry");
}

void check_signature(const ChainInfo& info, const ChainInputs& in, double tol) {
  const auto count_error = [&](const char* want) {
    return SignatureMismatch(info.id + " expects " + want + " (signature " + std::string(to_string(info.signature)) +
                             ")");
  };
  switch (info.signature) {
  case InputSignature::vector_triple:
    if (!in.vectors || !in.matrices.empty()) throw count_error("a vector triple");
    return;
  case InputSignature::single_matrix:
    if (in.matrices.size() != 1 || in.vectors) throw count_error("one matrix");
    check_matrix(in.matrices[0], info.id);
    return;
  case InputSignature::matrix_pair:
  case InputSignature::positive_pair:
  case InputSignature::hermitian_pair: break;
  }
  if (in.matrices.size() != 2 || in.vectors) throw count_error("two matrices");
  for (const auto& M : in.matrices) check_matrix(M, info.id);
  if (in.matrices[0].rows() != in.matrices[1].rows()) throw SignatureMismatch(info.id + ": matrix sizes differ");

  if (info.signature == InputSignature::hermitian_pair) {
    for (const auto& M : in.matrices) {
      if (!is_hermitian(M)) throw SignatureMismatch(info.id + " expects a pair of Hermitian matrices");
    }
  } else if (info.signature == InputSignature::positive_pair) {
    for (const auto& M : in.matrices) {
      if (!is_hermitian(M) || !is_psd(M, tol)) {
        throw PositivityViolation(info.id + " expects a pair of positive semidefinite matrices");
      }
    }
  }
}

} // namespace

ChainEvaluator::ChainEvaluator(ChainInputs inputs, EvaluationSettings settings)
    : ws_(std::make_unique<Workspace>(std::move(inputs), settings)) {
  settings.sweep.validate();
  settings.quadrature.validate();
}

ChainEvaluator::~ChainEvaluator() = default;
ChainEvaluator::ChainEvaluator(ChainEvaluator&&) noexcept = default;
ChainEvaluator& ChainEvaluator::operator=(ChainEvaluator&&) noexcept = default;

const ChainInputs& ChainEvaluator::inputs() const { return ws_->in; }

ChainVerdict ChainEvaluator::evaluate(std::string_view id, const ChainParams& params, double tol) {
  const ChainInfo& info = chain_info(id);
  if (!(tol >= 0.0) || !std::isfinite(tol)) throw InvalidInput("tolerance must be a finite nonnegative number");
  check_params(info, params);
  check_signature(info, ws_->in, tol);

  if (info.signature == InputSignature::vector_triple) {
    const VectorTriple& t = *ws_->in.vectors;
    return check_buzano(t.x, t.e, t.y, tol);
  }

  Draft d = bodies().at(info.id)(*ws_, params);
  if (d.values.size() != info.term_labels.size()) {
    throw Error(info.id + ": internal term count mismatch");
  }

  ChainVerdict v;
  v.chain_id = info.id;
  v.tol = tol;
  v.inputs_digest = ws_->digest;
  v.function_name = std::move(d.function_name);
  if (info.params == ParamSpec::alpha || info.params == ParamSpec::function_alpha) v.alpha = params.alpha;
  v.notes = std::move(d.notes);
  for (std::size_t i = 0; i < d.values.size(); ++i) v.terms.push_back({info.term_labels[i], d.values[i]});

  switch (info.kind) {
  case ChainKind::inequality_chain:
    for (std::size_t i = 0; i + 1 < d.values.size(); ++i) v.gaps.push_back(normalized_gap(d.values[i], d.values[i + 1]));
    break;
  case ChainKind::equality: {
    const double a = d.values[0], b = d.values[1];
    v.gaps.push_back(-std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}));
    break;
  }
  case ChainKind::operator_order_triple: v.gaps = std::move(d.margins); break;
  }
  v.min_slack = v.gaps.empty() ? 0.0 : *std::min_element(v.gaps.begin(), v.gaps.end());
  v.pass = std::isfinite(v.min_slack) && v.min_slack >= -tol;
  return v;
}

} // namespace nrange
