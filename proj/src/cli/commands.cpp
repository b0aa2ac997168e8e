#include "fdrthresh/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "fdrthresh/common.hpp"
#include "fdrthresh/estimator.hpp"
#include "fdrthresh/io/config.hpp"
#include "fdrthresh/io/report.hpp"
#include "fdrthresh/io/svg.hpp"
#include "fdrthresh/io/vector_file.hpp"
#include "fdrthresh/risk_engine.hpp"
#include "fdrthresh/rng.hpp"
#include "fdrthresh/simulation.hpp"

namespace fdrthresh::cli {

namespace fs = std::filesystem;

namespace {

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string seed;
  std::string replicates;
  std::string out_dir = "fdrthresh_out";
  std::vector<std::string> formats{"csv", "json", "svg"};
};

void add_common(CLI::App* sub, CommonArgs& args) {
  sub->add_option("--config", args.config_path, "key = value configuration file");
  sub->add_option("--set", args.overrides, "override a configuration key (key=value)");
  sub->add_option("--seed", args.seed, "root seed (U64)");
  sub->add_option("--replicates", args.replicates, "Monte Carlo replicates");
  sub->add_option("--out", args.out_dir, "output directory");
  sub->add_option("--format", args.formats, "output formats")
      ->check(CLI::IsMember({"csv", "json", "svg"}))
      ->delimiter(',');
}

struct Run {
  io::Config config{io::run_schema()};
  std::string out_dir;
  std::set<std::string> formats;
  std::string command;

  bool wants(const std::string& format) const { return formats.count(format) > 0; }
  std::string path(const std::string& file) const { return (fs::path(out_dir) / file).string(); }
  std::string fingerprint() const { return fdrthresh::fingerprint(command + "\n" + config.render()); }
  std::uint64_t seed() const { return config.unsigned_integer("seed"); }
};

Run resolve(const CommonArgs& args, const std::string& command) {
  Run run;
  run.command = command;
  if (!args.config_path.empty()) run.config.load_file(args.config_path);
  for (const auto& item : args.overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ValidationError("--set expects key=value, got '" + item + "'");
    run.config.set(item.substr(0, eq), item.substr(eq + 1), "--set");
  }
  if (!args.seed.empty()) run.config.set("seed", args.seed, "--seed");
  if (!args.replicates.empty()) run.config.set("replicates", args.replicates, "--replicates");
  if (run.config.integer("replicates") < 2) throw ValidationError("replicates must be at least 2");
  if (run.config.integer("intervals") < 1) throw ValidationError("intervals must be positive");
  run.out_dir = args.out_dir;
  run.formats = {args.formats.begin(), args.formats.end()};
  return run;
}

void prepare_output(const Run& run) {
  fs::create_directories(run.out_dir);
  io::write_text(run.path("resolved.cfg"), "# command: " + run.command + "\n" + run.config.render());
}

ThresholdFamily make_family(const io::Config& c) {
  const auto kind = threshold_kind_from_string(c.text("family"));
  try {
    switch (kind) {
      case ThresholdKind::Soft: return ThresholdFamily::soft();
      case ThresholdKind::Hard: return ThresholdFamily::hard();
      case ThresholdKind::Firm: return ThresholdFamily::firm(c.real("kappa0"));
      case ThresholdKind::Interpolated:
        return ThresholdFamily::interpolated(c.real("interp_weight"), c.real("kappa0"));
    }
  } catch (const DomainError& e) {
    throw ValidationError(std::string("family: ") + e.what());
  }
  return ThresholdFamily::soft();
}

FdrConfig make_fdr_config(const io::Config& c) {
  FdrConfig f;
  f.alpha1 = c.real("alpha1");
  f.alpha2 = c.real("alpha2");
  f.alpha1p = c.real("alpha1p");
  f.alpha2p = c.real("alpha2p");
  f.delta1 = c.real("delta1");
  f.delta2 = c.real("delta2");
  f.interp = c.real("interp");
  if (c.text("g1") == "log_shift") f.g1 = G1Transform::log_shift(c.real("g1_c1"), c.real("g1_c2"), c.real("g1_M0"));
  f.validate();
  return f;
}

McOptions make_mc(const io::Config& c) {
  McOptions m;
  m.replicates = static_cast<std::size_t>(c.integer("replicates"));
  m.seed = c.unsigned_integer("seed");
  return m;
}

std::vector<std::size_t> dimension_list(const io::Config& c) {
  std::vector<std::size_t> out;
  for (double v : c.real_list("n_list")) {
    if (!(v >= 2.0) || v != std::floor(v) || v > 1e8) throw ValidationError("n_list entries must be integers in [2, 1e8]");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::vector<double> make_theta(const io::Config& c, std::size_t n) {
  const std::string& kind = c.text("theta");
  if (kind == "zero") return ThetaGenerator::zero(n).generate();
  if (kind == "common_mean") return ThetaGenerator::common_mean(n, c.real("mu")).generate();
  if (kind == "spikes") {
    const long long k = c.integer("spikes");
    if (k < 0) throw ValidationError("spikes must be nonnegative");
    const auto count = k == 0 ? static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))))
                              : static_cast<std::size_t>(k);
    const double a = c.real("spike_magnitude");
    const double magnitude = a == 0.0 ? 0.8 * std::sqrt(2.0 * std::log(static_cast<double>(n))) : a;
    return ThetaGenerator::spikes(n, count, magnitude).generate();
  }
  return ThetaGenerator::least_favorable(n, c.real("p"), c.real("C"), ball_type_from_string(c.text("ball")))
      .generate();
}

std::string theta_descriptor(const io::Config& c, std::size_t n) {
  return c.text("theta") + "(n=" + std::to_string(n) + ")";
}

io::Json document(const Run& run) {
  io::Json j;
  j["provenance"] = io::provenance(run.seed(), run.fingerprint());
  j["command"] = run.command;
  return j;
}

void write_json(const Run& run, const std::string& file, const io::Json& j) {
  if (run.wants("json")) io::write_text(run.path(file), j.dump(2) + "\n");
}

void write_csv(const Run& run, const std::string& file, const io::Table& t) {
  if (run.wants("csv")) io::write_text(run.path(file), t.render());
}

void write_svg(const Run& run, const std::string& file, const io::SvgPlot& plot) {
  if (run.wants("svg")) io::write_text(run.path(file), plot.render());
}

int cmd_estimate(const Run& run, std::ostream& out, std::ostream& err) {
  const auto& c = run.config;
  if (c.text("input").empty()) throw ValidationError("estimate needs an input file (--input or input = ...)");
  const auto x = io::read_vector(c.text("input"));
  EstimatorOptions options;
  options.allow_hard = c.boolean("allow_hard");
  options.noise_scale = c.real("noise_scale");
  const auto family = make_family(c);

  EstimateReport report;
  const std::string& kind = c.text("estimator");
  if (kind == "fdr") {
    report = fdr_threshold_estimate(x, family, make_fdr_config(c), options);
  } else if (kind == "fixed") {
    if (!(c.real("lambda") >= 0.0)) throw ValidationError("lambda must be nonnegative");
    report = fixed_threshold_estimate(x, family, c.real("lambda"), options);
  } else if (kind == "universal") {
    report = universal_threshold_estimate(x, options);
  } else {
    report = sample_mean_estimate(x);
  }

  prepare_output(run);
  write_csv(run, "estimate.csv", io::estimate_table(report));
  auto j = document(run);
  j["report"] = io::to_json(report);
  write_json(run, "trace.json", j);
  if (is_infinite(report.lambda_used)) err << "no rejections: every coordinate was set to zero\n";
  out << "lambda_used = " << io::format_real(report.lambda_used) << "\n";
  return kExitOk;
}

double resolved_B0(const io::Config& c, const ThresholdFamily& family) {
  const double B0 = c.real("B0");
  if (B0 == 0.0) return default_B0(c.real("alpha2p"), smoothness_constant(family));
  if (!(B0 >= 4.0)) throw ValidationError("B0 must be at least 4");
  return B0;
}

int cmd_curve(const Run& run, bool fdr_only, std::ostream& out, std::ostream& err) {
  const auto& c = run.config;
  if (c.text("prior").empty()) throw ValidationError("a prior file is required (--prior or prior = ...)");
  const auto prior = io::read_prior(c.text("prior"));
  const auto family = make_family(c);
  if (!family.is_smooth()) throw ValidationError("risk curves need a smooth family");
  const auto functional = fdr_only ? RiskFunctional::FdrCurve : risk_functional_from_string(c.text("functional"));
  const double lambda_max = c.real("lambda_max") == 0.0 ? default_lambda_max(std::max<std::size_t>(prior.size(), 2))
                                                        : c.real("lambda_max");
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) throw ValidationError("lambda_max must be positive and finite");
  const double B0 = resolved_B0(c, family);

  const auto grid = uniform_grid(lambda_max, static_cast<std::size_t>(c.integer("intervals")));
  RiskCurveOptions options;
  options.B0 = B0;
  options.family = family;
  const auto curve = evaluate_risk_curve(prior, functional, grid, options);
  if (functional == RiskFunctional::FdrCurve && prior.is_null()) {
    err << "warning: degenerate prior (point mass at 0): the FDR curve is identically 1\n";
  }

  prepare_output(run);
  const std::string stem = fdr_only ? "fdr_curve" : "risk_curve";
  write_csv(run, stem + ".csv", io::risk_curve_table(curve));

  auto j = document(run);
  j["functional"] = to_string(functional);
  j["B0"] = B0;
  j["lambda_max"] = lambda_max;
  j["degenerate"] = prior.is_null();
  io::SvgPlot plot;
  plot.x_label = fdr_only ? "t" : "lambda";
  plot.y_label = to_string(functional);
  plot.series.push_back({to_string(functional), curve.lambdas, curve.values, false});
  if (fdr_only) {
    const auto levels = population_fdr_levels(prior, c.real("alpha1p"), c.real("alpha2p"));
    j["xi1_star"] = io::real_json(levels.xi1_star);
    j["xi2_star"] = io::real_json(levels.xi2_star);
    plot.title = "Nominal FDR curve";
    plot.markers = {{levels.xi1_star, "xi1*"}, {levels.xi2_star, "xi2*"}};
  } else {
    const auto levels = optimal_levels(prior, B0);
    j["lambda_G"] = io::real_json(levels.lambda_G);
    j["eta_G"] = io::real_json(levels.eta_G);
    j["lambda_G_star"] = io::real_json(levels.lambda_G_star);
    j["eta_G_star"] = io::real_json(levels.eta_G_star);
    plot.title = "Risk curve";
    plot.markers = {{levels.lambda_G, "lambda_G"}, {levels.lambda_G_star, "lambda*_G"}};
    out << "lambda_G = " << io::format_real(levels.lambda_G) << ", eta_G = " << io::format_real(levels.eta_G)
        << "\n";
  }
  write_json(run, stem + ".json", j);
  write_svg(run, stem + ".svg", plot);
  return kExitOk;
}

int cmd_experiment(const Run& run, const std::string& kind, std::ostream& out, std::ostream& err) {
  const auto& c = run.config;
  const auto family = make_family(c);
  if (!family.is_smooth()) throw ValidationError("experiments need a smooth family");
  const auto config = make_fdr_config(c);
  const auto mc = make_mc(c);
  auto j = document(run);
  j["kind"] = kind;
  io::SvgPlot plot;

  if (kind == "common_mean") {
    const long long n = c.integer("n");
    if (n < 2) throw ValidationError("n must be at least 2");
    const double root_n = std::sqrt(static_cast<double>(n));
    std::vector<double> mus;
    for (double m : c.real_list("mu_over_root_n")) mus.push_back(m / root_n);
    prepare_output(run);
    const auto rep = common_mean_experiment(static_cast<std::size_t>(n), mus, config, mc, c.real("kappa0"));
    write_csv(run, "common_mean.csv", io::common_mean_table(rep));
    j["report"] = io::to_json(rep);
    plot.title = "Common mean: total risk";
    plot.x_label = "mu sqrt(n)";
    plot.y_label = "total risk";
    io::SvgSeries soft_line{"FDR soft", {}, {}, false}, firm_line{"FDR firm", {}, {}, false},
        mean_line{"sample mean", {}, {}, false};
    for (const auto& row : rep.rows) {
      for (auto* s : {&soft_line, &firm_line, &mean_line}) s->x.push_back(row.mu * root_n);
      soft_line.y.push_back(row.fdr_soft.mean);
      firm_line.y.push_back(row.fdr_firm.mean);
      mean_line.y.push_back(row.sample_mean.mean);
      out << "mu*sqrt(n) = " << io::format_real(row.mu * root_n) << ": fdr_soft = "
          << io::format_real(row.fdr_soft.mean) << ", sample_mean = " << io::format_real(row.sample_mean.mean)
          << "\n";
    }
    plot.series = {soft_line, firm_line, mean_line};
  } else if (kind == "regret") {
    const auto ns = dimension_list(c);
    prepare_output(run);
    std::vector<RegretReport> reports;
    io::SvgSeries adaptive{"adaptive risk / n", {}, {}, false}, oracle{"eta_G", {}, {}, false};
    for (std::size_t n : ns) {
      reports.push_back(regret_experiment(make_theta(c, n), family, config, mc, theta_descriptor(c, n)));
      const auto& r = reports.back();
      adaptive.x.push_back(std::log2(static_cast<double>(n)));
      adaptive.y.push_back(r.adaptive_risk.mean / static_cast<double>(n));
      oracle.x.push_back(std::log2(static_cast<double>(n)));
      oracle.y.push_back(r.eta_G);
      err << "regret: n = " << n << " done\n";
      out << "n = " << n << ": ratio = " << (r.ratio_applicable ? io::format_real(r.ratio) : "NA") << "\n";
    }
    write_csv(run, "regret.csv", io::regret_table(reports));
    j["reports"] = io::Json::array();
    for (const auto& r : reports) j["reports"].push_back(io::to_json(r));
    plot.title = "Adaptive risk vs optimal fixed level";
    plot.x_label = "log2 n";
    plot.y_label = "risk per coordinate";
    plot.series = {adaptive, oracle};
  } else if (kind == "minimax") {
    const auto ns = dimension_list(c);
    const auto ball = ball_type_from_string(c.text("ball"));
    prepare_output(run);
    std::vector<MinimaxReport> reports;
    io::SvgSeries risk{"FDR risk", {}, {}, false}, formula{"formula", {}, {}, false};
    for (std::size_t n : ns) {
      reports.push_back(minimax_ball_experiment(c.real("p"), c.real("C"), n, ball, family, config, mc));
      const auto& r = reports.back();
      for (auto* s : {&risk, &formula}) s->x.push_back(std::log2(static_cast<double>(n)));
      risk.y.push_back(r.risk.mean);
      formula.y.push_back(r.formula);
      err << "minimax: n = " << n << " done\n";
      out << "n = " << n << ": risk/formula = " << io::format_real(r.ratio) << "\n";
    }
    write_csv(run, "minimax.csv", io::minimax_table(reports));
    j["reports"] = io::Json::array();
    for (const auto& r : reports) j["reports"].push_back(io::to_json(r));
    plot.title = "Least-favorable risk vs minimax formula";
    plot.x_label = "log2 n";
    plot.y_label = "total risk";
    plot.series = {risk, formula};
  } else if (kind == "concentration") {
    const auto ns = dimension_list(c);
    const double lambda = c.real("lambda");
    prepare_output(run);
    std::vector<ConcentrationReport> reports;
    io::SvgSeries variance{"variance", {}, {}, false}, bound{"bound", {}, {}, false};
    for (std::size_t n : ns) {
      reports.push_back(concentration_check(make_theta(c, n), family, lambda, mc));
      const auto& r = reports.back();
      for (auto* s : {&variance, &bound}) s->x.push_back(std::log2(static_cast<double>(n)));
      variance.y.push_back(r.variance);
      bound.y.push_back(r.bound);
      out << "n = " << n << ": variance = " << io::format_real(r.variance) << ", bound = "
          << io::format_real(r.bound) << (r.within_bound ? " PASS" : " FAIL") << "\n";
    }
    write_csv(run, "concentration.csv", io::concentration_table(reports));
    j["reports"] = io::Json::array();
    for (const auto& r : reports) j["reports"].push_back(io::to_json(r));
    plot.title = "Loss variance vs concentration bound";
    plot.x_label = "log2 n";
    plot.y_label = "variance";
    plot.series = {variance, bound};
  } else {
    throw ValidationError("unknown experiment '" + kind + "'");
  }

  write_json(run, kind + ".json", j);
  write_svg(run, kind + ".svg", plot);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"FDR-driven adaptive threshold estimation of a Gaussian mean vector", "fdrthresh"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kLibraryVersion);

  CommonArgs estimate_args, risk_args, fdr_args, experiment_args;
  std::string input_path, risk_prior, fdr_prior, experiment_kind;

  auto* estimate = app.add_subcommand("estimate", "threshold a vector with a data-driven level");
  add_common(estimate, estimate_args);
  estimate->add_option("--input", input_path, "vector file (CSV or binary)");

  auto* risk = app.add_subcommand("risk-curve", "evaluate a risk functional on a level grid");
  add_common(risk, risk_args);
  risk->add_option("--prior", risk_prior, "prior file");

  auto* fdr = app.add_subcommand("fdr-curve", "evaluate the nominal FDR curve");
  add_common(fdr, fdr_args);
  fdr->add_option("--prior", fdr_prior, "prior file");

  auto* experiment = app.add_subcommand("experiment", "run a Monte Carlo experiment");
  add_common(experiment, experiment_args);
  experiment->add_option("kind", experiment_kind, "regret | common_mean | minimax | concentration")
      ->required()
      ->check(CLI::IsMember({"regret", "common_mean", "minimax", "concentration"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (estimate->parsed()) {
      Run r = resolve(estimate_args, "estimate");
      if (!input_path.empty()) r.config.set("input", input_path, "--input");
      return cmd_estimate(r, out, err);
    }
    if (risk->parsed()) {
      Run r = resolve(risk_args, "risk-curve");
      if (!risk_prior.empty()) r.config.set("prior", risk_prior, "--prior");
      return cmd_curve(r, false, out, err);
    }
    if (fdr->parsed()) {
      Run r = resolve(fdr_args, "fdr-curve");
      if (!fdr_prior.empty()) r.config.set("prior", fdr_prior, "--prior");
      return cmd_curve(r, true, out, err);
    }
    Run r = resolve(experiment_args, "experiment " + experiment_kind);
    return cmd_experiment(r, experiment_kind, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace fdrthresh::cli
