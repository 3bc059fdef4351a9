#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "nrange/batch.hpp"
#include "nrange/errors.hpp"

#ifndef NRANGE_VERSION
#define NRANGE_VERSION "0.0.0"
#endif

namespace nrange {

namespace {

using nlohmann::json;

/// Verdict lists longer than this are shown as failures only in text reports.
constexpr std::size_t text_full_listing_limit = 20;

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::string sample_name(const SampleRef& s) {
  if (!s.label.empty()) return s.label;
  if (!s.cls) return "-";
  std::ostringstream os;
  os << to_string(*s.cls) << "/n=" << s.n << "/#" << s.index;
  return os.str();
}

json terms_json(const std::vector<Term>& terms) {
  json a = json::array();
  for (const auto& t : terms) a.push_back({{"label", t.label}, {"value", t.value}});
  return a;
}

json verdict_json(const ReportedVerdict& rv) {
  const ChainVerdict& v = rv.verdict;
  json j;
  j["chain_id"] = v.chain_id;
  if (rv.sample.cls) {
    j["class"] = std::string(to_string(*rv.sample.cls));
    j["n"] = rv.sample.n;
    j["sample_index"] = rv.sample.index;
  }
  if (!rv.sample.label.empty()) j["input"] = rv.sample.label;
  j["f"] = v.function_name.empty() ? json(nullptr) : json(v.function_name);
  j["alpha"] = v.alpha ? json(*v.alpha) : json(nullptr);
  j["terms"] = terms_json(v.terms);
  j["gaps"] = v.gaps;
  j["min_slack"] = v.min_slack;
  j["pass"] = v.pass;
  j["tol"] = v.tol;
  j["inputs_digest"] = v.inputs_digest;
  if (!v.notes.empty()) j["notes"] = terms_json(v.notes);
  return j;
}

json summary_json(const RunSummary& s) {
  json chains = json::array();
  for (const auto& c : s.chains) {
    json gaps = json::array();
    for (const auto& g : c.gaps) gaps.push_back({{"count", g.count}, {"mean", g.mean}, {"min", g.min}, {"max", g.max}});
    chains.push_back({{"chain_id", c.chain_id},
                      {"total", c.total},
                      {"passed", c.passed},
                      {"failed", c.total - c.passed},
                      {"worst_slack", c.worst_slack},
                      {"gaps", std::move(gaps)}});
  }
  return {{"total", s.total},
          {"passed", s.passed},
          {"failed", s.failed},
          {"worst_slack", s.worst_slack},
          {"chains", std::move(chains)}};
}

json config_json(const BatchConfig& c) {
  json classes = json::array();
  for (auto cls : c.classes) classes.push_back(std::string(to_string(cls)));
  return {{"chains", c.chains},
          {"classes", std::move(classes)},
          {"dims", c.dims},
          {"count", c.count},
          {"seed", c.seed},
          {"tol", c.tol},
          {"alphas", c.alphas},
          {"functions", c.functions},
          {"lift_inputs", c.lift_inputs},
          {"threads", c.threads},
          {"grid_points", c.settings.sweep.grid_points},
          {"refine_tol", c.settings.sweep.refine_tol},
          {"refine_max_iter", c.settings.sweep.refine_max_iter},
          {"quadrature_nodes", c.settings.quadrature.nodes},
          {"alpha_search_tol", c.settings.alpha_search_tol}};
}

std::string format_json(const RunReport& r) {
  json j;
  j["tool_version"] = r.tool_version;
  j["command"] = r.command;
  if (r.batch) {
    j["config"] = config_json(*r.batch);
  } else {
    json echo = json::object();
    for (const auto& [k, v] : r.echo) echo[k] = v;
    j["config"] = std::move(echo);
  }
  json verdicts = json::array();
  for (const auto& v : r.verdicts) verdicts.push_back(verdict_json(v));
  j["verdicts"] = std::move(verdicts);
  j["summary"] = summary_json(r.summary);
  return j.dump(2) + "\n";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string format_csv(const RunReport& r) {
  std::ostringstream os;
  os << "chain_id,class,n,sample_index,input,f,alpha,term_labels,term_values,min_slack,pass,inputs_digest\n";
  for (const auto& rv : r.verdicts) {
    const ChainVerdict& v = rv.verdict;
    std::string labels, values;
    for (std::size_t i = 0; i < v.terms.size(); ++i) {
      if (i) {
        labels += ';';
        values += ';';
      }
      labels += v.terms[i].label;
      values += num(v.terms[i].value);
    }
    os << csv_field(v.chain_id) << ',';
    if (rv.sample.cls) {
      os << to_string(*rv.sample.cls) << ',' << rv.sample.n << ',' << rv.sample.index << ',';
    } else {
      os << ",,,";
    }
    os << csv_field(rv.sample.label) << ',' << csv_field(v.function_name) << ','
       << (v.alpha ? num(*v.alpha) : std::string()) << ',' << csv_field(labels) << ',' << csv_field(values) << ','
       << num(v.min_slack) << ',' << (v.pass ? "true" : "false") << ',' << v.inputs_digest << '\n';
  }
  return os.str();
}

void write_verdict_text(std::ostream& os, const ReportedVerdict& rv) {
  const ChainVerdict& v = rv.verdict;
  os << (v.pass ? "PASS " : "FAIL ") << v.chain_id << "  input " << sample_name(rv.sample);
  if (!v.function_name.empty()) os << "  f=" << v.function_name;
  if (v.alpha) os << "  alpha=" << num(*v.alpha);
  os << "  min_slack=" << num(v.min_slack) << "  tol=" << num(v.tol) << '\n';
  for (const auto& t : v.terms) os << "    " << t.label << " = " << num(t.value) << '\n';
  for (const auto& t : v.notes) os << "    [" << t.label << "] " << num(t.value) << '\n';
}

std::string format_text(const RunReport& r) {
  std::ostringstream os;
  os << "nrange " << r.tool_version << "  " << r.command << '\n';
  if (r.batch) {
    const BatchConfig& c = *r.batch;
    os << "classes:";
    for (auto cls : c.classes) os << ' ' << to_string(cls);
    os << "  n:";
    for (int n : c.dims) os << ' ' << n;
    os << "  count: " << c.count << "  seed: " << c.seed << "  tol: " << num(c.tol) << "  chains: " << c.chains.size()
       << '\n';
  }
  for (const auto& [k, v] : r.echo) os << k << ": " << v << '\n';

  const bool full = r.verdicts.size() <= text_full_listing_limit;
  for (const auto& rv : r.verdicts) {
    if (full || !rv.verdict.pass) write_verdict_text(os, rv);
  }

  const RunSummary& s = r.summary;
  os << "summary: total " << s.total << ", passed " << s.passed << ", failed " << s.failed << ", worst_slack "
     << num(s.worst_slack) << '\n';
  if (s.chains.size() > 1 || (!s.chains.empty() && s.chains.front().total > 1)) {
    os << std::left << std::setw(13) << "chain" << std::right << std::setw(9) << "total" << std::setw(8) << "failed"
       << std::setw(16) << "worst_slack" << "  mean gaps\n";
    for (const auto& c : s.chains) {
      os << std::left << std::setw(13) << c.chain_id << std::right << std::setw(9) << c.total << std::setw(8)
         << c.total - c.passed << std::setw(16) << std::setprecision(6) << c.worst_slack << " ";
      for (const auto& g : c.gaps) os << ' ' << std::setprecision(6) << g.mean;
      os << '\n';
    }
  }
  return os.str();
}

} // namespace

std::string tool_version() { return NRANGE_VERSION; }

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  if (name == "text") return ReportFormat::text;
  throw InvalidInput("unknown report format: " + std::string(name));
}

std::string format_report(const RunReport& report, ReportFormat format) {
  switch (format) {
  case ReportFormat::json: return format_json(report);
  case ReportFormat::csv: return format_csv(report);
  case ReportFormat::text: break;
  }
  return format_text(report);
}

BatchConfig batch_config_from_report(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("report: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("config") || !doc["config"].is_object() || doc.value("command", "") != "batch") {
    throw InvalidInput("report: not a batch report with a config echo");
  }
  const json& c = doc["config"];
  try {
    BatchConfig cfg;
    cfg.chains = c.at("chains").get<std::vector<std::string>>();
    cfg.classes.clear();
    for (const auto& name : c.at("classes")) cfg.classes.push_back(parse_ensemble_class(name.get<std::string>()));
    cfg.dims = c.at("dims").get<std::vector<int>>();
    cfg.count = c.at("count").get<std::int64_t>();
    cfg.seed = c.at("seed").get<std::uint64_t>();
    cfg.tol = c.at("tol").get<double>();
    cfg.alphas = c.at("alphas").get<std::vector<double>>();
    cfg.functions = c.at("functions").get<std::vector<std::string>>();
    cfg.lift_inputs = c.at("lift_inputs").get<bool>();
    cfg.threads = c.at("threads").get<int>();
    cfg.settings.sweep.grid_points = c.at("grid_points").get<int>();
    cfg.settings.sweep.refine_tol = c.at("refine_tol").get<double>();
    cfg.settings.sweep.refine_max_iter = c.at("refine_max_iter").get<int>();
    cfg.settings.quadrature.nodes = c.at("quadrature_nodes").get<int>();
    cfg.settings.alpha_search_tol = c.at("alpha_search_tol").get<double>();
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("report config: ") + e.what());
  }
}

} // namespace nrange
