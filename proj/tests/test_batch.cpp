#include <gtest/gtest.h>

#include <json.hpp>

#include <algorithm>
#include <sstream>

#include "nrange/batch.hpp"
#include "test_support.hpp"

using namespace nrange;

namespace {

BatchConfig small_config() {
  BatchConfig cfg;
  cfg.classes = {EnsembleClass::ginibre, EnsembleClass::psd, EnsembleClass::hermitian};
  cfg.dims = {2, 3};
  cfg.count = 4;
  cfg.seed = 9;
  return cfg;
}

std::vector<std::string> flatten(const BatchResult& r) {
  std::vector<std::string> out;
  for (const auto& rv : r.verdicts) {
    std::ostringstream os;
    os << rv.verdict.chain_id << '|' << (rv.sample.cls ? to_string(*rv.sample.cls) : "-") << '|' << rv.sample.n
       << '|' << rv.sample.index << '|' << rv.verdict.function_name << '|' << rv.verdict.alpha.value_or(-1.0) << '|'
       << rv.verdict.inputs_digest;
    for (const auto& t : rv.verdict.terms) os << '|' << t.value;
    out.push_back(os.str());
  }
  return out;
}

} // namespace

TEST(Batch, DefaultParameters) {
  const auto alphas = default_alpha_values(1);
  ASSERT_EQ(alphas.size(), 8u);
  EXPECT_EQ(std::vector<double>(alphas.begin(), alphas.begin() + 5), (std::vector<double>{0, 0.25, 0.5, 0.75, 1}));
  for (double a : alphas) {
    EXPECT_GE(a, 0.0);
    EXPECT_LE(a, 1.0);
  }
  EXPECT_EQ(default_alpha_values(1), default_alpha_values(1));
  EXPECT_NE(default_alpha_values(1), default_alpha_values(2));
  EXPECT_EQ(default_function_names(), (std::vector<std::string>{"t", "t^1.5", "t^2"}));
}

TEST(Batch, ExpandParams) {
  const std::vector<ScalarFunction> fs = {ScalarFunction::parse("t"), ScalarFunction::parse("t^2")};
  const std::vector<double> as = {0.0, 1.0, 0.5};
  EXPECT_EQ(expand_params(chain_info("CH-EQV"), as, fs).size(), 1u);
  EXPECT_EQ(expand_params(chain_info("CH-C3.6"), as, fs).size(), 3u);
  EXPECT_EQ(expand_params(chain_info("CH-T3.13"), as, fs).size(), 2u);
  EXPECT_EQ(expand_params(chain_info("CH-T3.5"), as, fs).size(), 6u);
}

TEST(Batch, ThreadCountDoesNotChangeOutput) {
  BatchConfig cfg = small_config();
  cfg.threads = 1;
  const BatchResult one = run_batch(cfg);
  cfg.threads = 3;
  const BatchResult three = run_batch(cfg);
  EXPECT_EQ(flatten(one), flatten(three));
  EXPECT_EQ(one.summary.total, three.summary.total);
  EXPECT_EQ(one.summary.worst_slack, three.summary.worst_slack);
}

TEST(Batch, SummaryInvariants) {
  const BatchResult r = run_batch(small_config());
  EXPECT_EQ(r.summary.total, static_cast<std::int64_t>(r.verdicts.size()));
  EXPECT_EQ(r.summary.passed + r.summary.failed, r.summary.total);
  EXPECT_EQ(r.summary.failed, 0);
  EXPECT_GE(r.summary.worst_slack, -1e-8);
  EXPECT_EQ(r.summary.chains.size(), list_chains().size());
  std::int64_t sum = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& c : r.summary.chains) {
    sum += c.total;
    worst = std::min(worst, c.worst_slack);
    EXPECT_EQ(c.gaps.size(), chain_info(c.chain_id).term_labels.size() - 1) << c.chain_id;
    for (const auto& g : c.gaps) {
      EXPECT_LE(g.min, g.mean);
      EXPECT_LE(g.mean, g.max);
      EXPECT_EQ(g.count, c.total);
    }
  }
  EXPECT_EQ(sum, r.summary.total);
  EXPECT_EQ(worst, r.summary.worst_slack);
  // Verdicts are grouped by chain id.
  EXPECT_TRUE(std::is_sorted(r.verdicts.begin(), r.verdicts.end(), [](const auto& a, const auto& b) {
    return a.verdict.chain_id < b.verdict.chain_id;
  }));
}

TEST(Batch, RetentionAndObserver) {
  BatchConfig cfg = small_config();
  std::int64_t seen = 0;
  const BatchResult none = run_batch(cfg, Retention::none, [&](const ReportedVerdict&) { ++seen; });
  EXPECT_TRUE(none.verdicts.empty());
  EXPECT_EQ(seen, none.summary.total);
  EXPECT_TRUE(run_batch(cfg, Retention::failures).verdicts.empty());
  // At zero tolerance roundoff may fail some equalities; retained rows must match the count.
  cfg.chains = {"CH-IDENT"};
  cfg.tol = 0.0;
  const BatchResult strict = run_batch(cfg, Retention::failures);
  EXPECT_EQ(static_cast<std::int64_t>(strict.verdicts.size()), strict.summary.failed);
}

TEST(Batch, SummarizeMatchesBuilder) {
  const BatchResult r = run_batch(small_config());
  const RunSummary s = summarize(r.verdicts);
  EXPECT_EQ(s.total, r.summary.total);
  EXPECT_EQ(s.worst_slack, r.summary.worst_slack);
  ASSERT_EQ(s.chains.size(), r.summary.chains.size());
  for (std::size_t i = 0; i < s.chains.size(); ++i) EXPECT_EQ(s.chains[i].total, r.summary.chains[i].total);
}

TEST(Batch, JsonReplayReproducesRun) {
  BatchConfig cfg = small_config();
  cfg.chains = {"CH-T2.1", "CH-C3.6", "CH-T3.13", "CH-HH"};
  const BatchResult first = run_batch(cfg);
  RunReport report{tool_version(), "batch", cfg.resolved(), {}, first.verdicts, first.summary};
  const std::string text = format_report(report, ReportFormat::json);
  const auto doc = nlohmann::json::parse(text);
  EXPECT_EQ(doc["verdicts"].size(), first.verdicts.size());
  EXPECT_EQ(doc["summary"]["total"].get<std::int64_t>(), first.summary.total);

  const BatchConfig replay = batch_config_from_report(text);
  EXPECT_EQ(replay.alphas, cfg.resolved().alphas);
  EXPECT_EQ(flatten(run_batch(replay)), flatten(first));
  // Round-trip doubles are exact.
  EXPECT_EQ(doc["verdicts"][0]["terms"][0]["value"].get<double>(), first.verdicts[0].verdict.terms[0].value);

  EXPECT_THROW(batch_config_from_report("{}"), InvalidInput);
  EXPECT_THROW(batch_config_from_report("not json"), InvalidInput);
}

TEST(Batch, CsvHasOneRowPerVerdict) {
  BatchConfig cfg = small_config();
  cfg.chains = {"CH-EQV", "CH-C3.14"};
  const BatchResult r = run_batch(cfg);
  RunReport report{tool_version(), "batch", cfg.resolved(), {}, r.verdicts, r.summary};
  const std::string csv = format_report(report, ReportFormat::csv);
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), r.verdicts.size() + 1);
  EXPECT_EQ(csv.rfind("chain_id,class,n,sample_index,", 0), 0u);
  const std::string text = format_report(report, ReportFormat::text);
  EXPECT_NE(text.find("summary: total"), std::string::npos);
  EXPECT_THROW(parse_report_format("xml"), InvalidInput);
}

TEST(Batch, StrictInputsRejectNonPositiveSamples) {
  BatchConfig cfg;
  cfg.chains = {"CH-BK2"};
  cfg.classes = {EnsembleClass::hermitian};
  cfg.dims = {3};
  cfg.count = 3;
  cfg.lift_inputs = false;
  EXPECT_THROW(run_batch(cfg), PositivityViolation);
  cfg.lift_inputs = true;
  EXPECT_EQ(run_batch(cfg).summary.failed, 0);
  cfg.classes = {EnsembleClass::psd};
  cfg.lift_inputs = false;
  EXPECT_EQ(run_batch(cfg).summary.failed, 0);
}

TEST(Batch, ConfigValidation) {
  BatchConfig cfg;
  cfg.count = 0;
  EXPECT_THROW(cfg.validate(), InvalidInput);
  cfg = {};
  cfg.alphas = {1.5};
  EXPECT_THROW(cfg.validate(), InvalidInput);
  cfg = {};
  cfg.dims = {};
  EXPECT_THROW(cfg.validate(), InvalidInput);
  cfg = {};
  cfg.threads = 0;
  EXPECT_THROW(cfg.validate(), InvalidInput);
  cfg = {};
  cfg.chains = {"CH-NOPE"};
  EXPECT_THROW(run_batch(cfg), UnknownChain);
}
