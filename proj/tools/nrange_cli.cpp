// nrange: numerical-range quantities and inequality-chain checks.
//
// Exit codes: 0 all checks pass, 1 at least one violation, 2 usage or input error.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nrange/batch.hpp"
#include "nrange/errors.hpp"
#include "nrange/matrix_io.hpp"
#include "nrange/numerical_range.hpp"
#include "nrange/registry.hpp"
#include "nrange/worked_examples.hpp"

namespace {

using namespace nrange;

constexpr int exit_pass = 0;
constexpr int exit_violation = 1;
constexpr int exit_input_error = 2;

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

double parse_real(const std::string& s, const char* what) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || !std::isfinite(x)) throw InvalidInput(std::string("invalid ") + what + ": " + s);
  return x;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw InvalidInput("cannot write " + out_path);
  out << text;
}

const char* error_kind(const nrange::Error& e) {
  if (dynamic_cast<const NotHermitian*>(&e)) return "NotHermitian";
  if (dynamic_cast<const NoConvergence*>(&e)) return "NoConvergence";
  if (dynamic_cast<const DomainViolation*>(&e)) return "DomainViolation";
  if (dynamic_cast<const UnknownChain*>(&e)) return "UnknownChain";
  if (dynamic_cast<const SignatureMismatch*>(&e)) return "SignatureMismatch";
  if (dynamic_cast<const PositivityViolation*>(&e)) return "PositivityViolation";
  if (dynamic_cast<const IndexOutOfRange*>(&e)) return "IndexOutOfRange";
  if (dynamic_cast<const NotUnitVector*>(&e)) return "NotUnitVector";
  if (dynamic_cast<const InvalidInput*>(&e)) return "InvalidInput";
  return "Error";
}

// ---- quantities ----------------------------------------------------------------

struct QuantitiesArgs {
  std::string file;
  std::string format = "text";
  int grid = AngleSweepConfig{}.grid_points;
};

int run_quantities(const QuantitiesArgs& a) {
  const ComplexMatrix A = read_matrix_file(a.file);
  AngleSweepConfig cfg;
  cfg.grid_points = a.grid;
  cfg.validate();
  const QuantityReport q = compute_quantities(A, cfg);
  if (a.format == "json") {
    nlohmann::json j = {{"tool_version", tool_version()},
                        {"command", "quantities"},
                        {"input", a.file},
                        {"n", A.rows()},
                        {"operator_norm", q.operator_norm},
                        {"numerical_radius", q.numerical_radius},
                        {"crawford_number", q.crawford_number},
                        {"method_notes", q.method_notes}};
    std::cout << j.dump(2) << '\n';
  } else if (a.format == "text") {
    std::cout << "input: " << a.file << '\n'
              << "n: " << A.rows() << '\n'
              << "operator_norm: " << num(q.operator_norm) << '\n'
              << "numerical_radius: " << num(q.numerical_radius) << '\n'
              << "crawford_number: " << num(q.crawford_number) << '\n'
              << "method: " << q.method_notes << '\n';
  } else {
    throw InvalidInput("quantities supports --format text or json");
  }
  return exit_pass;
}

// ---- check -----------------------------------------------------------------------

struct CheckArgs {
  std::string chain;
  std::vector<std::string> inputs;
  std::string f;
  std::string alpha;
  double tol = default_chain_tol;
  std::string format = "text";
  std::string out;
};

int run_check(const CheckArgs& a) {
  const ChainInfo& info = chain_info(a.chain);
  ChainInputs inputs;
  if (info.signature == InputSignature::vector_triple) {
    if (a.inputs.size() != 1) throw SignatureMismatch(info.id + " expects one vector-triple file");
    inputs = ChainInputs::triple(read_vector_triple_file(a.inputs[0]));
  } else {
    for (const auto& path : a.inputs) inputs.matrices.push_back(read_matrix_file(path));
  }
  ChainParams params;
  if (!a.f.empty()) params.f = ScalarFunction::parse(a.f);
  if (!a.alpha.empty()) params.alpha = parse_real(a.alpha, "alpha");

  RunReport report;
  report.tool_version = tool_version();
  report.command = "check";
  report.echo = {{"chain", info.id}, {"tol", num(a.tol)}};
  std::string joined;
  for (const auto& p : a.inputs) joined += (joined.empty() ? "" : " ") + p;
  report.echo.emplace_back("inputs", joined);
  if (!a.f.empty()) report.echo.emplace_back("f", a.f);
  if (!a.alpha.empty()) report.echo.emplace_back("alpha", a.alpha);

  report.verdicts.push_back({SampleRef{std::nullopt, 0, -1, joined}, evaluate_chain(info.id, inputs, params, a.tol)});
  report.summary = summarize(report.verdicts);
  emit(format_report(report, parse_report_format(a.format)), a.out);
  return report.summary.failed == 0 ? exit_pass : exit_violation;
}

// ---- batch -----------------------------------------------------------------------

struct BatchArgs {
  std::vector<std::string> chains = {"all"};
  std::vector<std::string> classes = {"ginibre"};
  std::vector<std::string> dims = {"4"};
  std::int64_t count = 200;
  std::uint64_t seed = 1;
  double tol = default_chain_tol;
  std::vector<std::string> alphas = {"grid"};
  std::vector<std::string> functions;
  std::string format = "text";
  std::string out;
  int threads = 1;
  bool strict_inputs = false;
  std::string replay;
};

BatchConfig batch_config(const BatchArgs& a) {
  BatchConfig cfg;
  for (const auto& id : split_list(a.chains)) {
    if (id != "all") cfg.chains.push_back(chain_info(id).id);
  }
  cfg.classes.clear();
  for (const auto& name : split_list(a.classes)) {
    if (name == "all") {
      cfg.classes = all_ensemble_classes();
      break;
    }
    cfg.classes.push_back(parse_ensemble_class(name));
  }
  cfg.dims.clear();
  for (const auto& d : split_list(a.dims)) {
    const double n = parse_real(d, "n");
    if (n != std::floor(n)) throw InvalidInput("invalid n: " + d);
    cfg.dims.push_back(static_cast<int>(n));
  }
  cfg.count = a.count;
  cfg.seed = a.seed;
  cfg.tol = a.tol;
  for (const auto& s : split_list(a.alphas)) {
    if (s == "grid") {
      for (double x : default_alpha_values(a.seed)) cfg.alphas.push_back(x);
    } else {
      cfg.alphas.push_back(parse_real(s, "alpha"));
    }
  }
  cfg.functions = split_list(a.functions);
  cfg.lift_inputs = !a.strict_inputs;
  cfg.threads = a.threads;
  cfg.validate();
  return cfg.resolved();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_batch_command(const BatchArgs& a) {
  const BatchConfig cfg = a.replay.empty() ? batch_config(a) : batch_config_from_report(read_file(a.replay)).resolved();
  const ReportFormat format = parse_report_format(a.format);
  const Retention retention = format == ReportFormat::text ? Retention::failures : Retention::all;
  BatchResult result = run_batch(cfg, retention);
  RunReport report;
  report.tool_version = tool_version();
  report.command = "batch";
  report.batch = cfg;
  report.verdicts = std::move(result.verdicts);
  report.summary = result.summary;
  emit(format_report(report, format), a.out);
  return report.summary.failed == 0 ? exit_pass : exit_violation;
}

// ---- paper-example -----------------------------------------------------------------

int run_example(const std::string& id, const std::string& format, const std::string& out) {
  const WorkedExample ex = run_worked_example(id);
  RunReport report;
  report.tool_version = tool_version();
  report.command = "paper-example";
  report.echo = {{"example", ex.id}, {"description", ex.description}};
  for (const auto& c : ex.checks) {
    report.echo.emplace_back("pinned " + c.label, "expected " + num(c.expected) + ", got " + num(c.actual) +
                                                      ", tol " + num(c.tol) + (c.pass ? ", ok" : ", MISMATCH"));
  }
  report.verdicts = ex.verdicts;
  report.summary = summarize(report.verdicts);
  emit(format_report(report, parse_report_format(format)), out);
  return ex.pass() ? exit_pass : exit_violation;
}

// ---- catalog -----------------------------------------------------------------------

int run_catalog(const std::string& format) {
  const auto& chains = list_chains();
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : chains) {
      arr.push_back({{"id", c.id},
                     {"name", c.name},
                     {"statement", c.statement},
                     {"signature", std::string(to_string(c.signature))},
                     {"kind", std::string(to_string(c.kind))},
                     {"params", std::string(to_string(c.params))},
                     {"terms", c.term_labels}});
    }
    std::cout << nlohmann::json{{"tool_version", tool_version()}, {"count", chains.size()}, {"chains", arr}}.dump(2)
              << '\n';
  } else if (format == "text") {
    for (const auto& c : chains) {
      std::cout << std::left << std::setw(12) << c.id << ' ' << std::setw(15) << to_string(c.signature) << ' '
                << std::setw(8) << to_string(c.params) << ' ' << c.statement << '\n';
    }
    std::cout << chains.size() << " chains\n";
  } else {
    throw InvalidInput("catalog supports --format text or json");
  }
  return exit_pass;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical radius, Crawford number and inequality-chain verification"};
  app.set_version_flag("--version", nrange::tool_version());
  app.require_subcommand(1);

  QuantitiesArgs qa;
  auto* q = app.add_subcommand("quantities", "Print ||A||, w(A) and c(A) for a matrix file");
  q->add_option("matrix", qa.file, "Matrix JSON file")->required();
  q->add_option("--format", qa.format, "text or json")->capture_default_str();
  q->add_option("--grid", qa.grid, "Angle grid points")->capture_default_str();

  CheckArgs ca;
  auto* c = app.add_subcommand("check", "Evaluate one chain on matrix (or vector-triple) files");
  c->add_option("chain", ca.chain, "Chain id (see catalog)")->required();
  c->add_option("inputs", ca.inputs, "Input files: one or two matrices, or one vector triple")->required();
  c->add_option("--f", ca.f, "Function parameter: t, t^1.5, t^2, ...");
  c->add_option("--alpha", ca.alpha, "Alpha parameter in [0, 1]");
  c->add_option("--tol", ca.tol, "Normalized slack tolerance")->capture_default_str();
  c->add_option("--format", ca.format, "json, csv or text")->capture_default_str();
  c->add_option("--out", ca.out, "Write the report here instead of stdout");

  BatchArgs ba;
  auto* b = app.add_subcommand("batch", "Evaluate chains on seeded random ensembles");
  b->add_option("--chain", ba.chains, "Chain ids or 'all' (comma separated or repeated)")->capture_default_str();
  b->add_option("--class", ba.classes, "Ensemble classes or 'all'")->capture_default_str();
  b->add_option("--n", ba.dims, "Dimensions")->capture_default_str();
  b->add_option("--count", ba.count, "Samples per class and dimension")->capture_default_str();
  b->add_option("--seed", ba.seed, "Seed")->capture_default_str();
  b->add_option("--tol", ba.tol, "Normalized slack tolerance")->capture_default_str();
  b->add_option("--alpha", ba.alphas, "Alpha values or 'grid' (0, .25, .5, .75, 1 and 3 seeded draws)")
      ->capture_default_str();
  b->add_option("--f", ba.functions, "Functions for f-parameterized chains (default t, t^1.5, t^2)");
  b->add_option("--format", ba.format, "json, csv or text")->capture_default_str();
  b->add_option("--out", ba.out, "Write the report here instead of stdout");
  b->add_option("--threads", ba.threads, "Worker threads")->capture_default_str();
  b->add_flag("--strict-inputs", ba.strict_inputs,
              "Do not replace non-PSD samples by |A| for positive- and Hermitian-pair chains");
  b->add_option("--replay", ba.replay, "Repeat the run echoed in a JSON batch report");

  std::string example_id, example_format = "text", example_out;
  auto* e = app.add_subcommand("paper-example", "Run a pinned worked example");
  e->add_option("id", example_id, "cor5-2x2, nilpotent-sharpness, hermitian-sharpness, remark-counterexamples")
      ->required();
  e->add_option("--format", example_format, "json, csv or text")->capture_default_str();
  e->add_option("--out", example_out, "Write the report here instead of stdout");

  std::string catalog_format = "text";
  auto* k = app.add_subcommand("catalog", "List every registered chain");
  k->add_option("--format", catalog_format, "text or json")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? exit_pass : exit_input_error;
  }

  try {
    if (*q) return run_quantities(qa);
    if (*c) return run_check(ca);
    if (*b) return run_batch_command(ba);
    if (*e) return run_example(example_id, example_format, example_out);
    if (*k) return run_catalog(catalog_format);
  } catch (const nrange::Error& err) {
    std::cerr << "nrange: " << error_kind(err) << ": " << err.what() << '\n';
    return exit_input_error;
  } catch (const std::exception& err) {
    std::cerr << "nrange: error: " << err.what() << '\n';
    return exit_input_error;
  }
  return exit_input_error;
}
