#include "nrange/batch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "nrange/errors.hpp"

namespace nrange {

std::vector<double> default_alpha_values(std::uint64_t seed) {
  std::vector<double> a = {0.0, 0.25, 0.5, 0.75, 1.0};
  auto rng = substream(seed, 0xa1fa, 0, 0, 0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 3; ++i) a.push_back(u(rng));
  return a;
}

std::vector<std::string> default_function_names() { return {"t", "t^1.5", "t^2"}; }

void BatchConfig::validate() const {
  for (const auto& id : chains) chain_info(id);
  if (classes.empty()) throw InvalidInput("batch: at least one ensemble class is required");
  if (dims.empty()) throw InvalidInput("batch: at least one dimension is required");
  for (int n : dims) {
    if (n < 1 || n > 64) throw InvalidInput("batch: n must lie in [1, 64]");
  }
  if (count < 1) throw InvalidInput("batch: count must be at least 1");
  if (!(tol >= 0.0) || !std::isfinite(tol)) throw InvalidInput("batch: tol must be finite and nonnegative");
  for (double a : alphas) {
    if (!(a >= 0.0 && a <= 1.0)) throw InvalidInput("batch: alpha values must lie in [0, 1]");
  }
  for (const auto& f : functions) ScalarFunction::parse(f);
  if (threads < 1) throw InvalidInput("batch: threads must be at least 1");
  settings.sweep.validate();
  settings.quadrature.validate();
}

BatchConfig BatchConfig::resolved() const {
  BatchConfig r = *this;
  if (r.chains.empty()) {
    for (const auto& c : list_chains()) r.chains.push_back(c.id);
  }
  std::sort(r.chains.begin(), r.chains.end());
  r.chains.erase(std::unique(r.chains.begin(), r.chains.end()), r.chains.end());
  if (r.alphas.empty()) r.alphas = default_alpha_values(seed);
  if (r.functions.empty()) r.functions = default_function_names();
  return r;
}

std::vector<ChainParams> expand_params(const ChainInfo& info, const std::vector<double>& alphas,
                                       const std::vector<ScalarFunction>& functions) {
  std::vector<ChainParams> out;
  switch (info.params) {
  case ParamSpec::none: out.push_back({}); break;
  case ParamSpec::alpha:
    for (double a : alphas) out.push_back({std::nullopt, a});
    break;
  case ParamSpec::function:
    for (const auto& f : functions) out.push_back({f, std::nullopt});
    break;
  case ParamSpec::function_alpha:
    for (const auto& f : functions) {
      for (double a : alphas) out.push_back({f, a});
    }
    break;
  }
  return out;
}

// ---- summaries ---------------------------------------------------------------

void SummaryBuilder::add(const ChainVerdict& v) {
  ++total_;
  if (v.pass) ++passed_;
  worst_ = std::min(worst_, v.min_slack);
  Acc& a = per_chain_[v.chain_id];
  ++a.total;
  if (v.pass) ++a.passed;
  a.worst_slack = std::min(a.worst_slack, v.min_slack);
  if (a.sum.size() < v.gaps.size()) {
    a.sum.resize(v.gaps.size(), 0.0);
    a.min.resize(v.gaps.size(), std::numeric_limits<double>::infinity());
    a.max.resize(v.gaps.size(), -std::numeric_limits<double>::infinity());
    a.count.resize(v.gaps.size(), 0);
  }
  for (std::size_t i = 0; i < v.gaps.size(); ++i) {
    a.sum[i] += v.gaps[i];
    a.min[i] = std::min(a.min[i], v.gaps[i]);
    a.max[i] = std::max(a.max[i], v.gaps[i]);
    ++a.count[i];
  }
}

RunSummary SummaryBuilder::finish() const {
  RunSummary s;
  s.total = total_;
  s.passed = passed_;
  s.failed = total_ - passed_;
  s.worst_slack = total_ > 0 ? worst_ : 0.0;
  for (const auto& [id, a] : per_chain_) {
    ChainSummary c;
    c.chain_id = id;
    c.total = a.total;
    c.passed = a.passed;
    c.worst_slack = a.worst_slack;
    for (std::size_t i = 0; i < a.sum.size(); ++i) {
      c.gaps.push_back({a.count[i], a.sum[i] / static_cast<double>(a.count[i]), a.min[i], a.max[i]});
    }
    s.chains.push_back(std::move(c));
  }
  return s;
}

RunSummary summarize(const std::vector<ReportedVerdict>& verdicts) {
  SummaryBuilder b;
  for (const auto& v : verdicts) b.add(v.verdict);
  return b.finish();
}

// ---- batch evaluation ----------------------------------------------------------

namespace {

struct Plan {
  BatchConfig cfg;
  std::vector<const ChainInfo*> chains;
  std::vector<std::vector<ChainParams>> params; ///< per chain
};

struct Unit {
  EnsembleClass cls;
  int n;
  std::int64_t index;
};

ComplexMatrix lift_to_psd(const ComplexMatrix& M, double tol) {
  if (is_hermitian(M) && is_psd(M, tol)) return M;
  return matrix_abs(M);
}

std::vector<ReportedVerdict> evaluate_unit(const Plan& plan, const Unit& u) {
  const BatchConfig& cfg = plan.cfg;
  const GeneratorConfig gen{u.cls, u.n, cfg.seed, cfg.count};
  const ComplexMatrix A = generate_slot(gen, u.index, 0);
  const ComplexMatrix D = generate_slot(gen, u.index, 1);

  std::optional<ChainEvaluator> single, pair, positive, triple;
  auto evaluator_for = [&](InputSignature s) -> ChainEvaluator& {
    switch (s) {
    case InputSignature::single_matrix:
      if (!single) single.emplace(ChainInputs::single(A), cfg.settings);
      return *single;
    case InputSignature::matrix_pair:
      if (!pair) pair.emplace(ChainInputs::pair(A, D), cfg.settings);
      return *pair;
    case InputSignature::positive_pair:
    case InputSignature::hermitian_pair:
      if (!positive) {
        if (cfg.lift_inputs) {
          positive.emplace(ChainInputs::pair(lift_to_psd(A, cfg.tol), lift_to_psd(D, cfg.tol)), cfg.settings);
        } else {
          positive.emplace(ChainInputs::pair(A, D), cfg.settings);
        }
      }
      return *positive;
    case InputSignature::vector_triple: break;
    }
    if (!triple) triple.emplace(ChainInputs::triple(generate_vector_triple(gen, u.index)), cfg.settings);
    return *triple;
  };

  std::vector<ReportedVerdict> out;
  const SampleRef ref{u.cls, u.n, u.index, {}};
  for (std::size_t c = 0; c < plan.chains.size(); ++c) {
    ChainEvaluator& ev = evaluator_for(plan.chains[c]->signature);
    for (const auto& prm : plan.params[c]) {
      out.push_back({ref, ev.evaluate(plan.chains[c]->id, prm, cfg.tol)});
    }
  }
  return out;
}

Plan make_plan(const BatchConfig& cfg) {
  Plan plan;
  plan.cfg = cfg.resolved();
  plan.cfg.validate();
  std::vector<ScalarFunction> fs;
  for (const auto& name : plan.cfg.functions) fs.push_back(ScalarFunction::parse(name));
  for (const auto& id : plan.cfg.chains) {
    const ChainInfo& info = chain_info(id);
    plan.chains.push_back(&info);
    plan.params.push_back(expand_params(info, plan.cfg.alphas, fs));
  }
  return plan;
}

/// Runs fn(i) for i in [0, count) on up to `threads` workers. The first
/// exception (by index) is rethrown after all workers stop.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex err_mutex;
  std::size_t err_index = count;
  std::exception_ptr err;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || stop.load()) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(err_mutex);
        if (i < err_index) {
          err_index = i;
          err = std::current_exception();
        }
        stop.store(true);
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t n_workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  for (std::size_t t = 0; t < n_workers; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

} // namespace

BatchResult run_batch(const BatchConfig& cfg, Retention retention,
                      const std::function<void(const ReportedVerdict&)>& observer) {
  const Plan plan = make_plan(cfg);

  std::vector<Unit> units;
  for (EnsembleClass cls : plan.cfg.classes) {
    for (int n : plan.cfg.dims) {
      for (std::int64_t i = 0; i < plan.cfg.count; ++i) units.push_back({cls, n, i});
    }
  }

  BatchResult result;
  SummaryBuilder summary;
  constexpr std::size_t block = 256;
  std::vector<std::vector<ReportedVerdict>> slots;
  for (std::size_t start = 0; start < units.size(); start += block) {
    const std::size_t len = std::min(block, units.size() - start);
    slots.assign(len, {});
    parallel_for(len, plan.cfg.threads, [&](std::size_t k) { slots[k] = evaluate_unit(plan, units[start + k]); });
    for (auto& unit_verdicts : slots) {
      for (auto& rv : unit_verdicts) {
        summary.add(rv.verdict);
        if (observer) observer(rv);
        if (retention == Retention::all || (retention == Retention::failures && !rv.verdict.pass)) {
          result.verdicts.push_back(std::move(rv));
        }
      }
    }
  }
  std::stable_sort(result.verdicts.begin(), result.verdicts.end(),
                   [](const ReportedVerdict& a, const ReportedVerdict& b) {
                     return a.verdict.chain_id < b.verdict.chain_id;
                   });
  result.summary = summary.finish();
  return result;
}

} // namespace nrange
