#include "nrange/worked_examples.hpp"

#include <algorithm>
#include <cmath>

#include "nrange/errors.hpp"

namespace nrange {

namespace {

ComplexMatrix nilpotent_2x2() {
  ComplexMatrix A = ComplexMatrix::Zero(2, 2);
  A(0, 1) = 2.0;
  return A;
}

ComplexMatrix diag2(double a, double b) {
  ComplexMatrix A = ComplexMatrix::Zero(2, 2);
  A(0, 0) = a;
  A(1, 1) = b;
  return A;
}

class Builder {
public:
  Builder(std::string id, std::string description) {
    ex_.id = std::move(id);
    ex_.description = std::move(description);
  }

  const ChainVerdict& run(const std::string& input_label, std::string_view chain, const ChainInputs& inputs,
                          const ChainParams& params = {}) {
    ex_.verdicts.push_back({SampleRef{std::nullopt, 0, -1, input_label}, evaluate_chain(chain, inputs, params)});
    return ex_.verdicts.back().verdict;
  }

  void check(std::string label, double expected, double actual, double tol) {
    const bool ok = std::isfinite(actual) && std::abs(actual - expected) <= tol;
    ex_.checks.push_back({std::move(label), expected, actual, tol, ok});
  }

  /// Pins every term of a verdict.
  void check_terms(const ChainVerdict& v, const std::vector<double>& expected, double tol) {
    for (std::size_t i = 0; i < expected.size() && i < v.terms.size(); ++i) {
      check(v.chain_id + " " + v.terms[i].label, expected[i], v.terms[i].value, tol);
    }
  }

  WorkedExample done() { return std::move(ex_); }

private:
  WorkedExample ex_;
};

WorkedExample cor5_2x2() {
  Builder b("cor5-2x2", "A = [[0,2],[0,0]], D = I, f = t^2: the squared integral-mean bound for ||AD^*||");
  const auto in = ChainInputs::pair(nilpotent_2x2(), ComplexMatrix::Identity(2, 2));
  const auto& v = b.run("A=[[0,2],[0,0]], D=I", "CH-C3.14", in);
  b.check("||AD^*||", 2.0, v.terms[0].value, 1e-12);
  b.check("middle term sqrt(61/12)", std::sqrt(61.0 / 12.0), v.terms[1].value, 1e-9);
  b.check("||A^*A+D^*D||/2", 2.5, v.terms[2].value, 1e-12);
  const auto& t = b.run("A=[[0,2],[0,0]], D=I", "CH-T3.13", in, {ScalarFunction::power(2.0), std::nullopt});
  b.check_terms(t, {4.0, 61.0 / 12.0, 6.25}, 1e-9);
  return b.done();
}

WorkedExample nilpotent_sharpness() {
  Builder b("nilpotent-sharpness", "A = [[0,2],[0,0]] with A^2 = 0: w(A) = ||A||/2 and every CH-T2.1 term equals 1");
  const auto in = ChainInputs::single(nilpotent_2x2());
  b.check_terms(b.run("A=[[0,2],[0,0]]", "CH-T2.1", in), {1.0, 1.0, 1.0, 1.0}, 1e-9);
  b.check_terms(b.run("A=[[0,2],[0,0]]", "CH-EQV", in), {1.0, 1.0, 2.0}, 1e-9);
  return b.done();
}

WorkedExample hermitian_sharpness() {
  Builder b("hermitian-sharpness",
            "A = diag(1,-3): A - A^* = 0, so w^2(A) = ||A^*A + AA^*||/2 and the product term vanishes");
  const auto in = ChainInputs::single(diag2(1.0, -3.0));
  b.check_terms(b.run("A=diag(1,-3)", "CH-KIT05", in), {4.5, 9.0, 9.0}, 1e-9);
  b.check_terms(b.run("A=diag(1,-3)", "CH-C2.17", in), {9.0, 9.0, 9.0}, 1e-9);
  b.check_terms(b.run("A=diag(1,-3)", "CH-EQV", in), {1.5, 3.0, 3.0}, 1e-9);
  // A + A^* = diag(2,-6) has 0 in its numerical range, so c(A+A^*) = 0.
  b.check_terms(b.run("A=diag(1,-3)", "CH-T2.1", in), {4.5, 4.5, 4.5, 9.0}, 1e-9);
  return b.done();
}

WorkedExample remark_counterexamples() {
  Builder b("remark-counterexamples",
            "A = I, D = -I: the cross terms attain ||A|| ||D|| bounds while ||A+D|| = 0 < ||A|| + ||D||");
  const ComplexMatrix I = ComplexMatrix::Identity(2, 2);
  const auto in = ChainInputs::pair(I, ComplexMatrix(-I));
  b.check_terms(b.run("A=I, D=-I", "CH-T2.4", in), {0.0, 4.0, 4.0}, 1e-9);
  const auto& v = b.run("A=I, D=-I", "CH-T2.6", in);
  b.check_terms(v, {0.0, 4.0, 4.0}, 1e-9);
  const auto w_it = std::find_if(v.notes.begin(), v.notes.end(), [](const Term& t) { return t.label == "w(A^*D)"; });
  b.check("w(A^*D)", 1.0, w_it == v.notes.end() ? NAN : w_it->value, 1e-9);
  const EqualityCaseReport suite = equality_case_suite();
  for (const auto& c : suite.cases) b.check("equality case " + c.name, 1.0, c.pass ? 1.0 : 0.0, 0.0);
  return b.done();
}

} // namespace

bool WorkedExample::pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const ReportedVerdict& v) { return v.verdict.pass; }) &&
         std::all_of(checks.begin(), checks.end(), [](const PinnedCheck& c) { return c.pass; });
}

const std::vector<std::string>& worked_example_ids() {
  static const std::vector<std::string> ids = {"cor5-2x2", "hermitian-sharpness", "nilpotent-sharpness",
                                               "remark-counterexamples"};
  return ids;
}

WorkedExample run_worked_example(std::string_view id) {
  if (id == "cor5-2x2") return cor5_2x2();
  if (id == "nilpotent-sharpness") return nilpotent_sharpness();
  if (id == "hermitian-sharpness") return hermitian_sharpness();
  if (id == "remark-counterexamples") return remark_counterexamples();
  throw InvalidInput("unknown example id: " + std::string(id));
}

} // namespace nrange
