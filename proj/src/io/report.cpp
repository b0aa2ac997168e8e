#include "fdrthresh/io/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fdrthresh/common.hpp"

namespace fdrthresh::io {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

Json real_json(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

namespace {

std::string csv_cell(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string quoted = "\"";
  for (char c : cell) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

std::string Table::render() const {
  std::ostringstream os;
  os << "# schema: fdrthresh." << name << ".v" << kCsvSchemaVersion << "\n";
  for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_cell(row[c]);
    os << "\n";
  }
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

Json provenance(std::uint64_t seed, const std::string& config_fingerprint) {
  Json j;
  j["tool"] = "fdrthresh";
  j["version"] = kLibraryVersion;
  j["csv_schema"] = kCsvSchemaVersion;
  j["seed"] = seed;
  j["config_fingerprint"] = config_fingerprint;
  return j;
}

Json to_json(const McEstimate& est) {
  Json j;
  j["mean"] = real_json(est.mean);
  j["std_error"] = real_json(est.std_error);
  j["replicates"] = est.replicates;
  j["seed"] = est.seed;
  j["config_fingerprint"] = est.config_fingerprint;
  return j;
}

Json to_json(const SelectorTrace& trace) {
  Json j;
  j["xi1_hat"] = real_json(trace.xi1_hat);
  j["xi2_hat"] = real_json(trace.xi2_hat);
  j["lower"] = real_json(trace.lower);
  j["upper"] = real_json(trace.upper);
  j["lambda_hat"] = real_json(trace.lambda_hat);
  j["rejections"] = trace.rejections;
  j["no_rejections"] = trace.rejections == 0;
  Json xi1 = Json::array();
  Json xi2 = Json::array();
  for (double v : trace.xi1_candidates) xi1.push_back(real_json(v));
  for (double v : trace.xi2_candidates) xi2.push_back(real_json(v));
  j["xi1_candidates"] = xi1;
  j["xi2_candidates"] = xi2;
  j["exceed_counts"] = trace.exceed_counts;
  return j;
}

Json to_json(const EstimateReport& report) {
  Json j;
  j["family"] = report.family;
  j["n"] = report.estimate.size();
  j["lambda_used"] = real_json(report.lambda_used);
  j["nonzero"] = std::count_if(report.estimate.begin(), report.estimate.end(),
                               [](double v) { return v != 0.0; });
  if (report.selector_trace) j["selector_trace"] = to_json(*report.selector_trace);
  return j;
}

Json to_json(const RegretReport& r) {
  Json j;
  j["n"] = r.n;
  j["theta"] = r.theta_descriptor;
  j["family"] = r.family;
  j["adaptive_risk"] = to_json(r.adaptive_risk);
  j["oracle_loss"] = to_json(r.oracle_loss);
  j["mean_lambda_hat"] = real_json(r.mean_lambda_hat);
  j["lambda_G"] = real_json(r.lambda_G);
  j["eta_G"] = real_json(r.eta_G);
  j["lambda_G_star"] = real_json(r.lambda_G_star);
  j["eta_G_star"] = real_json(r.eta_G_star);
  j["regret"] = real_json(r.regret);
  j["regret_se"] = real_json(r.regret_se);
  j["ratio_applicable"] = r.ratio_applicable;
  j["ratio"] = r.ratio_applicable ? real_json(r.ratio) : Json("NA");
  j["ratio_se"] = r.ratio_applicable ? real_json(r.ratio_se) : Json("NA");
  j["strong_ratio"] = real_json(r.strong_ratio);
  j["strong_ratio_se"] = real_json(r.strong_ratio_se);
  j["envelope_ratio"] = real_json(r.envelope_ratio);
  return j;
}

Json to_json(const CommonMeanReport& r) {
  Json j;
  j["n"] = r.n;
  j["firm_kappa0"] = r.firm_kappa0;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json e;
    e["mu"] = real_json(row.mu);
    e["fdr_soft"] = to_json(row.fdr_soft);
    e["fdr_firm"] = to_json(row.fdr_firm);
    e["sample_mean"] = to_json(row.sample_mean);
    e["n_eta_G"] = real_json(row.n_eta_G);
    rows.push_back(e);
  }
  j["rows"] = rows;
  return j;
}

Json to_json(const MinimaxReport& r) {
  Json j;
  j["p"] = r.p;
  j["C"] = r.C;
  j["n"] = r.n;
  j["ball"] = to_string(r.ball);
  j["level"] = real_json(r.level);
  j["formula"] = real_json(r.formula);
  j["nonzeros"] = r.nonzeros;
  j["risk"] = to_json(r.risk);
  j["ratio"] = real_json(r.ratio);
  return j;
}

Json to_json(const ConcentrationReport& r) {
  Json j;
  j["n"] = r.n;
  j["lambda"] = real_json(r.lambda);
  j["family"] = r.family;
  j["mean_loss"] = real_json(r.mean_loss);
  j["variance"] = real_json(r.variance);
  j["variance_se"] = real_json(r.variance_se);
  j["bound"] = real_json(r.bound);
  j["within_bound"] = r.within_bound;
  j["replicates"] = r.replicates;
  j["seed"] = r.seed;
  j["config_fingerprint"] = r.config_fingerprint;
  return j;
}

Json to_json(const FdrControlReport& r) {
  Json j;
  j["n"] = r.n;
  j["nulls"] = r.nulls;
  j["fdr"] = to_json(r.fdr);
  j["mean_rejections"] = real_json(r.mean_rejections);
  j["nominal"] = real_json(r.nominal);
  return j;
}

Json to_json(const SelectorTailReport& r) {
  Json j;
  j["n"] = r.n;
  j["nu1"] = real_json(r.nu1);
  j["nu2"] = real_json(r.nu2);
  j["xi1_star"] = real_json(r.xi1_star);
  j["xi2_star"] = real_json(r.xi2_star);
  j["replicates"] = r.replicates;
  j["seed"] = r.seed;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json e;
    e["k"] = row.k;
    e["xi1_k"] = real_json(row.xi1_k);
    e["xi2_k"] = real_json(row.xi2_k);
    e["step_up_freq"] = real_json(row.step_up_freq);
    e["step_up_se"] = real_json(row.step_up_se);
    e["step_up_bound"] = real_json(row.step_up_bound);
    e["step_up_applies"] = row.step_up_applies;
    e["step_down_freq"] = real_json(row.step_down_freq);
    e["step_down_se"] = real_json(row.step_down_se);
    e["step_down_bound"] = real_json(row.step_down_bound);
    e["step_down_applies"] = row.step_down_applies;
    rows.push_back(e);
  }
  j["rows"] = rows;
  return j;
}

Table risk_curve_table(const RiskCurve& curve) {
  Table t{"risk_curve", {"lambda", "value", "functional"}, {}};
  const std::string name = to_string(curve.functional);
  for (std::size_t i = 0; i < curve.lambdas.size(); ++i) {
    t.rows.push_back({format_real(curve.lambdas[i]), format_real(curve.values[i]), name});
  }
  return t;
}

Table estimate_table(const EstimateReport& report) {
  Table t{"estimate", {"index", "estimate"}, {}};
  for (std::size_t i = 0; i < report.estimate.size(); ++i) {
    t.rows.push_back({std::to_string(i), format_real(report.estimate[i])});
  }
  return t;
}

Table regret_table(const std::vector<RegretReport>& reports) {
  Table t{"regret",
          {"n", "theta", "family", "adaptive_risk", "adaptive_risk_se", "n_eta_G", "lambda_G",
           "mean_lambda_hat", "regret", "regret_se", "ratio", "ratio_se", "oracle_loss",
           "strong_ratio", "strong_ratio_se", "envelope_ratio", "replicates", "seed", "fingerprint"},
          {}};
  for (const auto& r : reports) {
    const double n = static_cast<double>(r.n);
    t.rows.push_back({std::to_string(r.n), r.theta_descriptor, r.family,
                      format_real(r.adaptive_risk.mean), format_real(r.adaptive_risk.std_error),
                      format_real(n * r.eta_G), format_real(r.lambda_G), format_real(r.mean_lambda_hat),
                      format_real(r.regret), format_real(r.regret_se),
                      r.ratio_applicable ? format_real(r.ratio) : "NA",
                      r.ratio_applicable ? format_real(r.ratio_se) : "NA",
                      format_real(r.oracle_loss.mean), format_real(r.strong_ratio),
                      format_real(r.strong_ratio_se), format_real(r.envelope_ratio),
                      std::to_string(r.adaptive_risk.replicates), std::to_string(r.adaptive_risk.seed),
                      r.adaptive_risk.config_fingerprint});
  }
  return t;
}

Table common_mean_table(const CommonMeanReport& report) {
  Table t{"common_mean",
          {"n", "mu", "mu_root_n", "fdr_soft", "fdr_soft_se", "fdr_firm", "fdr_firm_se", "sample_mean",
           "sample_mean_se", "n_eta_G"},
          {}};
  const double root_n = std::sqrt(static_cast<double>(report.n));
  for (const auto& row : report.rows) {
    t.rows.push_back({std::to_string(report.n), format_real(row.mu), format_real(row.mu * root_n),
                      format_real(row.fdr_soft.mean), format_real(row.fdr_soft.std_error),
                      format_real(row.fdr_firm.mean), format_real(row.fdr_firm.std_error),
                      format_real(row.sample_mean.mean), format_real(row.sample_mean.std_error),
                      format_real(row.n_eta_G)});
  }
  return t;
}

Table minimax_table(const std::vector<MinimaxReport>& reports) {
  Table t{"minimax",
          {"n", "p", "C", "ball", "level", "nonzeros", "formula", "risk", "risk_se", "ratio", "seed"},
          {}};
  for (const auto& r : reports) {
    t.rows.push_back({std::to_string(r.n), format_real(r.p), format_real(r.C), to_string(r.ball),
                      format_real(r.level), std::to_string(r.nonzeros), format_real(r.formula),
                      format_real(r.risk.mean), format_real(r.risk.std_error), format_real(r.ratio),
                      std::to_string(r.risk.seed)});
  }
  return t;
}

Table concentration_table(const std::vector<ConcentrationReport>& reports) {
  Table t{"concentration",
          {"n", "lambda", "family", "mean_loss", "variance", "variance_se", "bound", "within_bound",
           "replicates", "seed"},
          {}};
  for (const auto& r : reports) {
    t.rows.push_back({std::to_string(r.n), format_real(r.lambda), r.family, format_real(r.mean_loss),
                      format_real(r.variance), format_real(r.variance_se), format_real(r.bound),
                      r.within_bound ? "true" : "false", std::to_string(r.replicates),
                      std::to_string(r.seed)});
  }
  return t;
}

}  // namespace fdrthresh::io
