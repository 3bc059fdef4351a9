#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nrange/registry.hpp"
#include "nrange/sampling.hpp"

namespace nrange {

/// Alpha values {0, 0.25, 0.5, 0.75, 1} followed by three seeded draws from (0, 1).
std::vector<double> default_alpha_values(std::uint64_t seed);
/// "t", "t^1.5", "t^2".
std::vector<std::string> default_function_names();

struct BatchConfig {
  std::vector<std::string> chains; ///< catalog ids; empty means every chain
  std::vector<EnsembleClass> classes = {EnsembleClass::ginibre};
  std::vector<int> dims = {4};
  std::int64_t count = 200;
  std::uint64_t seed = 1;
  double tol = default_chain_tol;
  std::vector<double> alphas;         ///< empty means default_alpha_values(seed)
  std::vector<std::string> functions; ///< empty means default_function_names()
  /// Positive-pair and Hermitian-pair chains receive |A|, |D| in place of
  /// samples that are not positive semidefinite. When false such samples are
  /// passed through and the chain raises PositivityViolation / SignatureMismatch.
  bool lift_inputs = true;
  int threads = 1;
  EvaluationSettings settings;

  void validate() const;
  /// Copy with every default made explicit, suitable for echoing.
  BatchConfig resolved() const;
};

/// Where a verdict's inputs came from: a generated sample or a named input.
struct SampleRef {
  std::optional<EnsembleClass> cls;
  int n = 0;
  std::int64_t index = -1;
  std::string label;
};

struct ReportedVerdict {
  SampleRef sample;
  ChainVerdict verdict;
};

struct GapStats {
  std::int64_t count = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct ChainSummary {
  std::string chain_id;
  std::int64_t total = 0;
  std::int64_t passed = 0;
  double worst_slack = 0.0;
  std::vector<GapStats> gaps; ///< one entry per consecutive term pair
};

struct RunSummary {
  std::int64_t total = 0;
  std::int64_t passed = 0;
  std::int64_t failed = 0;
  double worst_slack = 0.0;
  std::vector<ChainSummary> chains; ///< ordered by chain id
};

/// Accumulates verdicts in arrival order into a RunSummary.
class SummaryBuilder {
public:
  void add(const ChainVerdict& v);
  RunSummary finish() const;

private:
  struct Acc {
    std::int64_t total = 0;
    std::int64_t passed = 0;
    double worst_slack = std::numeric_limits<double>::infinity();
    std::vector<double> sum, min, max;
    std::vector<std::int64_t> count;
  };
  std::map<std::string, Acc> per_chain_;
  std::int64_t total_ = 0;
  std::int64_t passed_ = 0;
  double worst_ = std::numeric_limits<double>::infinity();
};

RunSummary summarize(const std::vector<ReportedVerdict>& verdicts);

enum class Retention { all, failures, none };

struct BatchResult {
  RunSummary summary;
  std::vector<ReportedVerdict> verdicts; ///< ordered by (chain id, class, n, sample index, parameters)
};

/// Evaluates every selected chain on every generated sample. Each sample's
/// pair (A, D) is generate_slot(.., 0) and generate_slot(.., 1). Output is
/// independent of `threads`. The observer, when set, sees every verdict in
/// generation order on the calling thread.
BatchResult run_batch(const BatchConfig& cfg, Retention retention = Retention::all,
                      const std::function<void(const ReportedVerdict&)>& observer = {});

/// Parameter combinations a batch evaluates for one chain.
std::vector<ChainParams> expand_params(const ChainInfo& info, const std::vector<double>& alphas,
                                       const std::vector<ScalarFunction>& functions);

enum class ReportFormat { json, csv, text };
ReportFormat parse_report_format(std::string_view name);

struct RunReport {
  std::string tool_version;
  std::string command;
  std::optional<BatchConfig> batch; ///< resolved config for batch runs
  std::vector<std::pair<std::string, std::string>> echo; ///< config echo for other commands
  std::vector<ReportedVerdict> verdicts;
  RunSummary summary;
};

std::string tool_version();

std::string format_report(const RunReport& report, ReportFormat format);

/// Reads the config echo of a JSON batch report so the run can be repeated.
BatchConfig batch_config_from_report(const std::string& json_text);

} // namespace nrange
