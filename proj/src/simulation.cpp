#include "fdrthresh/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "fdrthresh/common.hpp"
#include "fdrthresh/estimator.hpp"
#include "fdrthresh/risk_engine.hpp"

namespace fdrthresh {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string theta_hash(std::span<const double> theta) {
  std::string bytes(reinterpret_cast<const char*>(theta.data()), theta.size() * sizeof(double));
  return fingerprint(bytes);
}

std::string run_fingerprint(const std::string& what, std::span<const double> theta,
                            const McOptions& options) {
  std::ostringstream os;
  os << what << "|theta=" << theta_hash(theta) << "|n=" << theta.size()
     << "|replicates=" << options.replicates << "|seed=" << options.seed
     << "|antithetic=" << options.antithetic << "|version=" << kLibraryVersion;
  return fingerprint(os.str());
}

void check_replicates(const McOptions& options) {
  if (options.replicates < 2) throw ValidationError("at least 2 replicates are required");
}

struct MeanVar {
  double mean = 0.0;
  double var = 0.0;
};

MeanVar mean_var(std::span<const double> v) {
  MeanVar out;
  const double m = static_cast<double>(v.size());
  out.mean = std::accumulate(v.begin(), v.end(), 0.0) / m;
  double ss = 0.0;
  for (double e : v) ss += (e - out.mean) * (e - out.mean);
  out.var = v.size() > 1 ? ss / (m - 1.0) : 0.0;
  return out;
}

}  // namespace

std::string to_string(BallType ball) { return ball == BallType::Strong ? "strong" : "weak"; }

BallType ball_type_from_string(const std::string& name) {
  if (name == "strong") return BallType::Strong;
  if (name == "weak") return BallType::Weak;
  throw ValidationError("unknown ball type '" + name + "' (expected strong or weak)");
}

double least_favorable_level(double p, double C, std::size_t n) {
  if (!(p >= 0.0 && p < 2.0)) throw DomainError("least_favorable_level: p must lie in [0,2)");
  if (!(C > 0.0)) throw DomainError("least_favorable_level: C must be positive");
  const double p_eff = p > 0.0 ? p : 1.0;
  const double cap = std::min(static_cast<double>(n), std::pow(C, -p_eff));
  return std::sqrt(2.0 * std::log(std::max(1.0, cap)));
}

double minimax_formula(double p, double C, std::size_t n, BallType ball) {
  const double level = least_favorable_level(p, C, n);
  const double p_eff = p > 0.0 ? p : 1.0;
  const double M = ball == BallType::Strong || p == 0.0 ? 1.0 : 2.0 / (2.0 - p);
  return M * static_cast<double>(n) * std::pow(C, p_eff) * std::pow(level, 2.0 - p);
}

bool in_strong_ball(std::span<const double> theta, double p, double C, double tol) {
  const double n = static_cast<double>(theta.size());
  if (p == 0.0) {
    const auto nonzero = std::count_if(theta.begin(), theta.end(), [](double v) { return v != 0.0; });
    return static_cast<double>(nonzero) <= n * C * (1.0 + tol);
  }
  double sum = 0.0;
  for (double v : theta) sum += std::pow(std::abs(v), p);
  return sum / n <= std::pow(C, p) * (1.0 + tol);
}

bool in_weak_ball(std::span<const double> theta, double p, double C, double tol) {
  if (p == 0.0) return in_strong_ball(theta, p, C, tol);
  std::vector<double> mags(theta.size());
  std::transform(theta.begin(), theta.end(), mags.begin(), [](double v) { return std::abs(v); });
  std::sort(mags.begin(), mags.end(), std::greater<>());
  const double n = static_cast<double>(theta.size());
  for (std::size_t k = 1; k <= mags.size(); ++k) {
    if (mags[k - 1] * std::pow(static_cast<double>(k) / n, 1.0 / p) > C * (1.0 + tol)) return false;
  }
  return true;
}

ThetaGenerator ThetaGenerator::zero(std::size_t n) {
  if (n == 0) throw ValidationError("theta: n must be positive");
  return {Kind::Zero, n};
}

ThetaGenerator ThetaGenerator::common_mean(std::size_t n, double mu) {
  if (n == 0) throw ValidationError("theta: n must be positive");
  if (!std::isfinite(mu)) throw ValidationError("theta: mu must be finite");
  ThetaGenerator g(Kind::CommonMean, n);
  g.mu_ = mu;
  return g;
}

ThetaGenerator ThetaGenerator::spikes(std::size_t n, std::size_t count, double magnitude) {
  if (n == 0) throw ValidationError("theta: n must be positive");
  if (count > n) throw ValidationError("theta: spike count exceeds n");
  if (!std::isfinite(magnitude)) throw ValidationError("theta: spike magnitude must be finite");
  ThetaGenerator g(Kind::Spikes, n);
  g.count_ = count;
  g.magnitude_ = magnitude;
  return g;
}

ThetaGenerator ThetaGenerator::least_favorable(std::size_t n, double p, double C, BallType ball) {
  if (n == 0) throw ValidationError("theta: n must be positive");
  if (!(p >= 0.0 && p < 2.0)) throw ValidationError("theta: p must lie in [0,2)");
  if (!(C >= 0.0) || !std::isfinite(C)) throw ValidationError("theta: C must be finite and >= 0");
  ThetaGenerator g(Kind::LeastFavorable, n);
  g.p_ = p;
  g.C_ = C;
  g.ball_ = ball;
  return g;
}

std::vector<double> ThetaGenerator::generate() const {
  std::vector<double> theta(n_, 0.0);
  switch (kind_) {
    case Kind::Zero:
      break;
    case Kind::CommonMean:
      std::fill(theta.begin(), theta.end(), mu_);
      break;
    case Kind::Spikes:
      std::fill_n(theta.begin(), count_, magnitude_);
      break;
    case Kind::LeastFavorable: {
      if (C_ == 0.0) break;
      const double level = least_favorable_level(p_, C_, n_);
      const double n = static_cast<double>(n_);
      if (p_ == 0.0) {
        const auto k = std::min(n_, static_cast<std::size_t>(std::floor(n * C_ + 1e-9)));
        std::fill_n(theta.begin(), k, level);
      } else if (ball_ == BallType::Strong) {
        const double budget = n * std::pow(C_, p_);
        const double per_spike = std::pow(level, p_);
        const auto k = std::min(n_, static_cast<std::size_t>(std::floor(budget / per_spike)));
        std::fill_n(theta.begin(), k, level);
        if (k < n_) theta[k] = std::pow(std::max(0.0, budget - per_spike * static_cast<double>(k)), 1.0 / p_);
      } else {
        for (std::size_t k = 1; k <= n_; ++k) {
          theta[k - 1] = std::min(C_ * std::pow(n / static_cast<double>(k), 1.0 / p_), level);
        }
      }
      const bool inside = ball_ == BallType::Strong ? in_strong_ball(theta, p_, C_, 1e-9)
                                                    : in_weak_ball(theta, p_, C_, 1e-9);
      if (!inside) throw ConvergenceError("least-favorable vector left its l_p ball");
      break;
    }
  }
  return theta;
}

std::string ThetaGenerator::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Zero:
      os << "zero(n=" << n_ << ")";
      break;
    case Kind::CommonMean:
      os << "common_mean(n=" << n_ << ",mu=" << num(mu_) << ")";
      break;
    case Kind::Spikes:
      os << "spikes(n=" << n_ << ",k=" << count_ << ",a=" << num(magnitude_) << ")";
      break;
    case Kind::LeastFavorable:
      os << "least_favorable(n=" << n_ << ",p=" << num(p_) << ",C=" << num(C_)
         << ",ball=" << to_string(ball_) << ")";
      break;
  }
  return os.str();
}

McEstimate summarize(std::span<const double> samples, std::uint64_t seed,
                     const std::string& config_fingerprint) {
  if (samples.size() < 2) throw ValidationError("summarize: at least 2 replicates are required");
  const auto mv = mean_var(samples);
  McEstimate est;
  est.mean = mv.mean;
  est.std_error = std::sqrt(mv.var / static_cast<double>(samples.size()));
  est.replicates = samples.size();
  est.seed = seed;
  est.config_fingerprint = config_fingerprint;
  return est;
}

EstimatorSpec EstimatorSpec::fdr(ThresholdFamily family, FdrConfig config) {
  EstimatorSpec spec;
  spec.kind = Kind::FdrThreshold;
  spec.family = family;
  spec.config = std::move(config);
  return spec;
}

EstimatorSpec EstimatorSpec::fixed(ThresholdFamily family, double lambda) {
  EstimatorSpec spec;
  spec.kind = Kind::FixedThreshold;
  spec.family = family;
  spec.lambda = lambda;
  return spec;
}

EstimatorSpec EstimatorSpec::universal() {
  EstimatorSpec spec;
  spec.kind = Kind::Universal;
  return spec;
}

EstimatorSpec EstimatorSpec::sample_mean() {
  EstimatorSpec spec;
  spec.kind = Kind::SampleMean;
  return spec;
}

std::vector<double> EstimatorSpec::apply(std::span<const double> x) const {
  const EstimatorOptions options{.allow_hard = allow_hard};
  switch (kind) {
    case Kind::FdrThreshold:
      return fdr_threshold_estimate(x, family, config, options).estimate;
    case Kind::FixedThreshold:
      return fixed_threshold_estimate(x, family, lambda, options).estimate;
    case Kind::Universal:
      return universal_threshold_estimate(x, options).estimate;
    case Kind::SampleMean:
      return sample_mean_estimate(x).estimate;
  }
  return {};
}

std::string EstimatorSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::FdrThreshold:
      os << "fdr[" << family.describe() << ";a1=" << num(config.alpha1)
         << ",a2=" << num(config.alpha2) << ",a1p=" << num(config.alpha1p)
         << ",a2p=" << num(config.alpha2p) << ",d1=" << num(config.delta1)
         << ",d2=" << num(config.delta2) << ",g1=" << config.g1.name()
         << ",interp=" << num(config.interp) << "]";
      break;
    case Kind::FixedThreshold:
      os << "fixed[" << family.describe() << ";lambda=" << num(lambda) << "]";
      break;
    case Kind::Universal:
      os << "universal";
      break;
    case Kind::SampleMean:
      os << "sample_mean";
      break;
  }
  return os.str();
}

void draw_observation(std::span<const double> theta, Engine& engine, std::vector<double>& x) {
  std::normal_distribution<double> noise(0.0, 1.0);
  x.resize(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) x[i] = theta[i] + noise(engine);
}

std::vector<double> mc_samples(std::span<const double> theta,
                               const std::function<double(std::span<const double>)>& functional,
                               const McOptions& options, std::uint64_t stream_tag) {
  check_replicates(options);
  return evaluate_indexed(options.replicates, options.execution, [&](std::size_t r) {
    Engine engine = replicate_engine(options.seed, r, stream_tag);
    std::vector<double> x;
    draw_observation(theta, engine, x);
    if (!options.antithetic) return functional(x);
    std::vector<double> mirror(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) mirror[i] = 2.0 * theta[i] - x[i];
    return 0.5 * (functional(x) + functional(mirror));
  });
}

double squared_loss(std::span<const double> estimate, std::span<const double> theta) {
  double s = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double d = estimate[i] - theta[i];
    s += d * d;
  }
  return s;
}

McEstimate mc_risk(std::span<const double> theta, const EstimatorSpec& estimator,
                   const McOptions& options) {
  const auto samples = mc_samples(
      theta, [&](std::span<const double> x) { return squared_loss(estimator.apply(x), theta); },
      options);
  return summarize(samples, options.seed, run_fingerprint(estimator.describe(), theta, options));
}

double soft_loss(std::span<const double> x, std::span<const double> theta, double lambda) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = soft(x[i], lambda) - theta[i];
    s += d * d;
  }
  return s;
}

OracleLoss oracle_loss_min(std::span<const double> x, std::span<const double> theta) {
  if (x.size() != theta.size()) throw DomainError("oracle_loss_min: length mismatch");

  struct Coord {
    double mag;
    double shifted;  // |x_i| - sgn(x_i) theta_i
    double theta_sq;
  };
  std::vector<Coord> alive;
  double zero_part = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t2 = theta[i] * theta[i];
    if (x[i] == 0.0) {
      zero_part += t2;
      continue;
    }
    const double mag = std::abs(x[i]);
    alive.push_back({mag, mag - std::copysign(1.0, x[i]) * theta[i], t2});
  }
  std::sort(alive.begin(), alive.end(), [](const Coord& a, const Coord& b) { return a.mag > b.mag; });

  // killed[j] = sum of theta_i^2 over coordinates outside the j largest.
  std::vector<double> killed(alive.size() + 1, zero_part);
  for (std::size_t j = alive.size(); j-- > 0;) killed[j] = killed[j + 1] + alive[j].theta_sq;

  OracleLoss best{kInfinity, killed[0]};
  // For lambda in [|x|_(j+1), |x|_(j)] the j largest coordinates survive and
  // loss = sum_{i<=j} (d_i - lambda)^2 + killed[j], tracked through the running
  // mean and centred sum of squares of d.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t j = 1; j <= alive.size(); ++j) {
    const Coord& c = alive[j - 1];
    const double delta = c.shifted - mean;
    mean += delta / static_cast<double>(j);
    m2 += delta * (c.shifted - mean);

    const double hi = c.mag;
    const double lo = j < alive.size() ? alive[j].mag : 0.0;
    const double lambda = std::clamp(mean, lo, hi);
    const double loss = m2 + static_cast<double>(j) * (lambda - mean) * (lambda - mean) + killed[j];
    if (loss < best.loss) best = {lambda, loss};
  }
  return best;
}

namespace {

struct RegretSample {
  double loss = 0.0;
  double oracle = 0.0;
  double lambda_hat = 0.0;
};

}  // namespace

RegretReport regret_experiment(std::span<const double> theta, const ThresholdFamily& family,
                               const FdrConfig& config, const McOptions& options,
                               const std::string& theta_descriptor) {
  check_replicates(options);
  config.validate();
  if (!family.is_smooth()) throw ValidationError("regret_experiment: family must be smooth");
  const std::size_t n = theta.size();

  const auto samples = evaluate_indexed(options.replicates, options.execution, [&](std::size_t r) {
    Engine engine = replicate_engine(options.seed, r);
    std::vector<double> x;
    draw_observation(theta, engine, x);
    const auto report = fdr_threshold_estimate(x, family, config);
    RegretSample s;
    s.loss = squared_loss(report.estimate, theta);
    s.oracle = oracle_loss_min(x, theta).loss;
    s.lambda_hat = report.lambda_used;
    return s;
  });

  std::vector<double> losses(samples.size());
  std::vector<double> oracles(samples.size());
  double lambda_sum = 0.0;
  std::size_t finite_levels = 0;
  for (std::size_t r = 0; r < samples.size(); ++r) {
    losses[r] = samples[r].loss;
    oracles[r] = samples[r].oracle;
    if (!is_infinite(samples[r].lambda_hat)) {
      lambda_sum += samples[r].lambda_hat;
      ++finite_levels;
    }
  }

  RegretReport rep;
  rep.n = n;
  rep.theta_descriptor = theta_descriptor;
  rep.family = family.describe();
  const std::string fp = run_fingerprint(
      "regret|" + EstimatorSpec::fdr(family, config).describe(), theta, options);
  rep.adaptive_risk = summarize(losses, options.seed, fp);
  rep.oracle_loss = summarize(oracles, options.seed, fp);
  rep.mean_lambda_hat = finite_levels ? lambda_sum / static_cast<double>(finite_levels) : kInfinity;

  const EmpiricalPrior prior(std::vector<double>(theta.begin(), theta.end()));
  const double B0 = default_B0(config.alpha2p, smoothness_constant(family));
  const auto levels = optimal_levels(prior, B0);
  rep.lambda_G = levels.lambda_G;
  rep.eta_G = levels.eta_G;
  rep.lambda_G_star = levels.lambda_G_star;
  rep.eta_G_star = levels.eta_G_star;

  const double nd = static_cast<double>(n);
  rep.regret = (rep.adaptive_risk.mean - nd * rep.eta_G) / nd;
  rep.regret_se = rep.adaptive_risk.std_error / nd;
  rep.ratio_applicable = rep.eta_G >= 1e-12;
  if (rep.ratio_applicable) {
    rep.ratio = rep.adaptive_risk.mean / (nd * rep.eta_G);
    rep.ratio_se = rep.adaptive_risk.std_error / (nd * rep.eta_G);
  }

  const double oracle_mean = rep.oracle_loss.mean;
  if (oracle_mean > 0.0) {
    const double ratio = rep.adaptive_risk.mean / oracle_mean;
    const auto a = mean_var(losses);
    const auto b = mean_var(oracles);
    double cov = 0.0;
    for (std::size_t r = 0; r < losses.size(); ++r) cov += (losses[r] - a.mean) * (oracles[r] - b.mean);
    cov /= static_cast<double>(losses.size() - 1);
    const double v = (a.var - 2.0 * ratio * cov + ratio * ratio * b.var) /
                     (static_cast<double>(losses.size()) * oracle_mean * oracle_mean);
    rep.strong_ratio = ratio;
    rep.strong_ratio_se = std::sqrt(std::max(0.0, v));
  }

  if (rep.eta_G_star >= 1e-12 && n >= 3) {
    DiagnosticInputs in;
    in.n = static_cast<long long>(n);
    in.delta1 = config.delta1;
    in.delta2 = config.delta2;
    in.c1 = config.g1.c1();
    in.c2 = config.g1.c2();
    in.eta_star = rep.eta_G_star;
    in.alpha1 = config.alpha1;
    in.alpha1p = config.alpha1p;
    in.alpha2 = config.alpha2;
    in.alpha2p = config.alpha2p;
    const auto dc = diagnostic_constants(in);
    const double denom = dc.tau1 * rep.eta_G_star + dc.tau2;
    if (denom > 0.0) rep.envelope_ratio = (rep.adaptive_risk.mean / nd - rep.eta_G_star) / denom;
  }
  return rep;
}

CommonMeanReport common_mean_experiment(std::size_t n, std::span<const double> mus,
                                        const FdrConfig& config, const McOptions& options,
                                        double firm_kappa0) {
  if (n < 2) throw ValidationError("common_mean_experiment: n must be at least 2");
  config.validate();
  CommonMeanReport rep;
  rep.n = n;
  rep.firm_kappa0 = firm_kappa0;
  const auto soft_spec = EstimatorSpec::fdr(ThresholdFamily::soft(), config);
  const auto firm_spec = EstimatorSpec::fdr(ThresholdFamily::firm(firm_kappa0), config);
  const auto mean_spec = EstimatorSpec::sample_mean();
  const double B0 = default_B0(config.alpha2p, 1.0);
  for (double mu : mus) {
    const auto theta = ThetaGenerator::common_mean(n, mu).generate();
    CommonMeanRow row;
    row.mu = mu;
    row.fdr_soft = mc_risk(theta, soft_spec, options);
    row.fdr_firm = mc_risk(theta, firm_spec, options);
    row.sample_mean = mc_risk(theta, mean_spec, options);
    const EmpiricalPrior prior(std::vector<double>{mu});
    row.n_eta_G = static_cast<double>(n) * optimal_levels(prior, B0, default_lambda_max(n)).eta_G;
    rep.rows.push_back(row);
  }
  return rep;
}

MinimaxReport minimax_ball_experiment(double p, double C, std::size_t n, BallType ball,
                                      const ThresholdFamily& family, const FdrConfig& config,
                                      const McOptions& options) {
  config.validate();
  const auto generator = ThetaGenerator::least_favorable(n, p, C, ball);
  const auto theta = generator.generate();
  MinimaxReport rep;
  rep.p = p;
  rep.C = C;
  rep.n = n;
  rep.ball = ball;
  rep.nonzeros = static_cast<std::size_t>(
      std::count_if(theta.begin(), theta.end(), [](double v) { return v != 0.0; }));
  if (C > 0.0) {
    rep.level = least_favorable_level(p, C, n);
    rep.formula = minimax_formula(p, C, n, ball);
  }
  rep.risk = mc_risk(theta, EstimatorSpec::fdr(family, config), options);
  rep.ratio = rep.formula > 0.0 ? rep.risk.mean / rep.formula : 0.0;
  return rep;
}

ConcentrationReport concentration_check(std::span<const double> theta,
                                        const ThresholdFamily& family, double lambda,
                                        const McOptions& options) {
  if (!family.is_smooth()) throw ValidationError("concentration_check: family must be smooth");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ValidationError("concentration_check: lambda must be finite and >= 0");
  }
  const double root_n = std::sqrt(static_cast<double>(theta.size()));
  const auto spec = EstimatorSpec::fixed(family, lambda);
  const auto samples = mc_samples(
      theta,
      [&](std::span<const double> x) { return std::sqrt(squared_loss(spec.apply(x), theta)) / root_n; },
      options);

  const auto mv = mean_var(samples);
  double m4 = 0.0;
  for (double v : samples) m4 += std::pow(v - mv.mean, 4);
  m4 /= static_cast<double>(samples.size());

  ConcentrationReport rep;
  rep.n = theta.size();
  rep.lambda = lambda;
  rep.family = family.describe();
  rep.mean_loss = mv.mean;
  rep.variance = mv.var;
  rep.variance_se = std::sqrt(std::max(0.0, m4 - mv.var * mv.var) / static_cast<double>(samples.size()));
  rep.bound = 4.0 * family.kappa0() * family.kappa0() / static_cast<double>(theta.size());
  rep.within_bound = rep.variance <= rep.bound + 3.0 * rep.variance_se;
  rep.replicates = samples.size();
  rep.seed = options.seed;
  rep.config_fingerprint = run_fingerprint("concentration|" + spec.describe(), theta, options);
  return rep;
}

FdrControlReport fdr_control_experiment(std::span<const double> theta, const FdrConfig& config,
                                        const McOptions& options) {
  config.validate();
  const std::size_t nulls =
      static_cast<std::size_t>(std::count(theta.begin(), theta.end(), 0.0));
  check_replicates(options);
  struct Outcome {
    double fdp = 0.0;
    double rejected = 0.0;
  };
  const auto outcomes = evaluate_indexed(options.replicates, options.execution, [&](std::size_t r) {
    Engine engine = replicate_engine(options.seed, r);
    std::vector<double> x;
    draw_observation(theta, engine, x);
    const double level = step_up_level(x, config);
    std::size_t rejected = 0;
    std::size_t false_rejected = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (std::abs(x[i]) >= level) {
        ++rejected;
        if (theta[i] == 0.0) ++false_rejected;
      }
    }
    const double denom = static_cast<double>(std::max<std::size_t>(rejected, 1));
    return Outcome{static_cast<double>(false_rejected) / denom, static_cast<double>(rejected)};
  });
  std::vector<double> fdp(outcomes.size());
  double rejection_sum = 0.0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    fdp[r] = outcomes[r].fdp;
    rejection_sum += outcomes[r].rejected;
  }

  FdrControlReport rep;
  rep.n = theta.size();
  rep.nulls = nulls;
  const auto spec = EstimatorSpec::fdr(ThresholdFamily::soft(), config);
  rep.fdr = summarize(fdp, options.seed, run_fingerprint("fdr_control|" + spec.describe(), theta, options));
  rep.mean_rejections = rejection_sum / static_cast<double>(outcomes.size());
  rep.nominal = config.alpha1 * static_cast<double>(nulls) / static_cast<double>(theta.size());
  return rep;
}

SelectorTailReport selector_tail_experiment(std::span<const double> theta,
                                            const FdrConfig& config, std::size_t k_max,
                                            const McOptions& options) {
  check_replicates(options);
  config.validate();
  const std::size_t n = theta.size();
  if (k_max == 0 || k_max > n) throw ValidationError("selector_tail_experiment: need 1 <= k_max <= n");

  struct Levels {
    double xi1 = 0.0;
    double xi2 = 0.0;
  };
  const auto hats = evaluate_indexed(options.replicates, options.execution, [&](std::size_t r) {
    Engine engine = replicate_engine(options.seed, r);
    std::vector<double> x;
    draw_observation(theta, engine, x);
    return Levels{step_up_level(x, config), step_down_level(x, config)};
  });

  SelectorTailReport rep;
  rep.n = n;
  rep.replicates = options.replicates;
  rep.seed = options.seed;
  const auto rate = [](double a) { return a - 1.0 - std::log(a); };
  rep.nu1 = rate(config.alpha1 / config.alpha1p);
  rep.nu2 = rate(config.alpha2 / config.alpha2p);
  const auto star = population_fdr_levels(EmpiricalPrior(std::vector<double>(theta.begin(), theta.end())),
                                          config.alpha1p, config.alpha2p);
  rep.xi1_star = star.xi1_star;
  rep.xi2_star = star.xi2_star;

  const auto xi1 = candidate_levels(n, config.alpha1);
  const auto xi2 = candidate_levels(n, config.alpha2);
  const double reps = static_cast<double>(options.replicates);
  for (std::size_t k = 1; k <= k_max; ++k) {
    SelectorTailRow row;
    row.k = k;
    row.xi1_k = xi1[k - 1];
    row.xi2_k = xi2[k - 1];
    std::size_t up = 0;
    std::size_t down = 0;
    for (const auto& h : hats) {
      if (h.xi1 <= row.xi1_k) ++up;
      if (h.xi2 >= row.xi2_k) ++down;
    }
    row.step_up_freq = static_cast<double>(up) / reps;
    row.step_up_se = std::sqrt(row.step_up_freq * (1.0 - row.step_up_freq) / reps);
    row.step_up_bound = std::exp(-rep.nu1 * static_cast<double>(k));
    row.step_up_applies = row.xi1_k <= rep.xi1_star;
    row.step_down_freq = static_cast<double>(down) / reps;
    row.step_down_se = std::sqrt(row.step_down_freq * (1.0 - row.step_down_freq) / reps);
    row.step_down_bound = std::exp(-rep.nu2 * static_cast<double>(k));
    row.step_down_applies = row.xi2_k >= rep.xi2_star;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace fdrthresh
