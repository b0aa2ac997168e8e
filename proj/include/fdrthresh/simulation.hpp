#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fdrthresh/fdr_selector.hpp"
#include "fdrthresh/parallel.hpp"
#include "fdrthresh/rng.hpp"
#include "fdrthresh/threshold_functions.hpp"

namespace fdrthresh {

enum class BallType { Strong, Weak };

std::string to_string(BallType ball);
BallType ball_type_from_string(const std::string& name);

/// lambda_{p,C,n} = sqrt(2 log(min(n, 1 / C^{p'}))) with p' = p for p > 0, 1 for p = 0.
double least_favorable_level(double p, double C, std::size_t n);

/// M_p n C^{p'} lambda^{2-p}, with M_p = 1 (strong) or 2 / (2 - p) (weak).
double minimax_formula(double p, double C, std::size_t n, BallType ball);

/// n^{-1} sum |theta_i|^p <= C^p (p = 0: at most nC nonzeros), with relative slack tol.
bool in_strong_ball(std::span<const double> theta, double p, double C, double tol = 1e-12);
/// |theta|_(k) (k/n)^{1/p} <= C for every k.
bool in_weak_ball(std::span<const double> theta, double p, double C, double tol = 1e-12);

/// Deterministic mean-vector configurations.
class ThetaGenerator {
public:
  enum class Kind { Zero, CommonMean, Spikes, LeastFavorable };

  static ThetaGenerator zero(std::size_t n);
  static ThetaGenerator common_mean(std::size_t n, double mu);
  /// First `count` coordinates equal `magnitude`, the rest 0.
  static ThetaGenerator spikes(std::size_t n, std::size_t count, double magnitude);
  /// Coordinates stacked just below lambda_{p,C,n}. Strong balls put
  /// floor(n C^p / lambda^p) coordinates at lambda plus one remainder coordinate;
  /// weak balls use theta_(k) = min(C (n/k)^{1/p}, lambda). p = 0 uses floor(nC) spikes.
  static ThetaGenerator least_favorable(std::size_t n, double p, double C, BallType ball);

  Kind kind() const { return kind_; }
  std::size_t n() const { return n_; }
  double mu() const { return mu_; }
  std::size_t count() const { return count_; }
  double magnitude() const { return magnitude_; }
  double p() const { return p_; }
  double C() const { return C_; }
  BallType ball() const { return ball_; }

  /// Throws ConvergenceError if a least-favorable vector fails its ball check.
  std::vector<double> generate() const;
  std::string describe() const;

private:
  ThetaGenerator(Kind kind, std::size_t n) : kind_(kind), n_(n) {}

  Kind kind_;
  std::size_t n_;
  double mu_ = 0.0;
  std::size_t count_ = 0;
  double magnitude_ = 0.0;
  double p_ = 0.0;
  double C_ = 0.0;
  BallType ball_ = BallType::Strong;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  std::string config_fingerprint;
};

/// Mean and sample-sd / sqrt(count) of per-replicate values (count >= 2).
McEstimate summarize(std::span<const double> samples, std::uint64_t seed,
                     const std::string& config_fingerprint);

struct EstimatorSpec {
  enum class Kind { FdrThreshold, FixedThreshold, Universal, SampleMean };

  Kind kind = Kind::FdrThreshold;
  ThresholdFamily family = ThresholdFamily::soft();
  FdrConfig config;
  double lambda = 0.0;
  bool allow_hard = false;

  static EstimatorSpec fdr(ThresholdFamily family, FdrConfig config = {});
  static EstimatorSpec fixed(ThresholdFamily family, double lambda);
  static EstimatorSpec universal();
  static EstimatorSpec sample_mean();

  std::vector<double> apply(std::span<const double> x) const;
  std::string describe() const;
};

/// Draw X = theta + Z into x.
void draw_observation(std::span<const double> theta, Engine& engine, std::vector<double>& x);

struct McOptions {
  std::size_t replicates = 200;
  std::uint64_t seed = 1;
  Execution execution = Execution::Parallel;
  /// Each replicate averages the functional over the pair theta + Z, theta - Z.
  bool antithetic = false;
};

/// Per-replicate values of f(theta, X). Replicate r always uses the same
/// random stream regardless of execution mode.
std::vector<double> mc_samples(std::span<const double> theta,
                               const std::function<double(std::span<const double>)>& functional,
                               const McOptions& options, std::uint64_t stream_tag = 0);

/// MC estimate of E ||estimator(X) - theta||^2.
McEstimate mc_risk(std::span<const double> theta, const EstimatorSpec& estimator,
                   const McOptions& options);

double squared_loss(std::span<const double> estimate, std::span<const double> theta);

struct OracleLoss {
  double lambda_star = 0.0;
  double loss = 0.0;
};

/// Exact min over lambda >= 0 of ||s_lambda(x) - theta||^2. Between consecutive
/// ordered |x_i| the loss is quadratic in lambda, so each segment is minimised
/// in closed form. lambda_star = +inf when killing every coordinate is optimal.
OracleLoss oracle_loss_min(std::span<const double> x, std::span<const double> theta);

/// ||s_lambda(x) - theta||^2 evaluated directly.
double soft_loss(std::span<const double> x, std::span<const double> theta, double lambda);

struct RegretReport {
  std::size_t n = 0;
  std::string theta_descriptor;
  std::string family;
  McEstimate adaptive_risk;
  McEstimate oracle_loss;
  double mean_lambda_hat = 0.0;
  double lambda_G = 0.0;
  double eta_G = 0.0;
  double lambda_G_star = 0.0;
  double eta_G_star = 0.0;
  /// (adaptive_risk - n eta_G) / n.
  double regret = 0.0;
  double regret_se = 0.0;
  bool ratio_applicable = false;
  /// adaptive_risk / (n eta_G).
  double ratio = 0.0;
  double ratio_se = 0.0;
  /// adaptive_risk / E inf_lambda loss.
  double strong_ratio = 0.0;
  double strong_ratio_se = 0.0;
  /// (adaptive risk / n - eta*) / (tau1 eta* + tau2); reported only.
  double envelope_ratio = 0.0;
};

RegretReport regret_experiment(std::span<const double> theta, const ThresholdFamily& family,
                               const FdrConfig& config, const McOptions& options,
                               const std::string& theta_descriptor = "custom");

struct CommonMeanRow {
  double mu = 0.0;
  McEstimate fdr_soft;
  McEstimate fdr_firm;
  McEstimate sample_mean;
  double n_eta_G = 0.0;
};

struct CommonMeanReport {
  std::size_t n = 0;
  double firm_kappa0 = 1.5;
  std::vector<CommonMeanRow> rows;
};

CommonMeanReport common_mean_experiment(std::size_t n, std::span<const double> mus,
                                        const FdrConfig& config, const McOptions& options,
                                        double firm_kappa0 = 1.5);

struct MinimaxReport {
  double p = 0.0;
  double C = 0.0;
  std::size_t n = 0;
  BallType ball = BallType::Strong;
  double level = 0.0;
  double formula = 0.0;
  std::size_t nonzeros = 0;
  McEstimate risk;
  /// risk / formula; 0 when the formula is 0.
  double ratio = 0.0;
};

MinimaxReport minimax_ball_experiment(double p, double C, std::size_t n, BallType ball,
                                      const ThresholdFamily& family, const FdrConfig& config,
                                      const McOptions& options);

struct ConcentrationReport {
  std::size_t n = 0;
  double lambda = 0.0;
  std::string family;
  double mean_loss = 0.0;
  double variance = 0.0;
  double variance_se = 0.0;
  /// 4 kappa0^2 / n.
  double bound = 0.0;
  bool within_bound = false;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  std::string config_fingerprint;
};

/// Variance of ||t_lambda(X) - theta|| / sqrt(n); the standard error of the
/// sample variance comes from the fourth central moment.
ConcentrationReport concentration_check(std::span<const double> theta,
                                        const ThresholdFamily& family, double lambda,
                                        const McOptions& options);

struct FdrControlReport {
  std::size_t n = 0;
  std::size_t nulls = 0;
  /// Mean false discovery proportion V / max(R, 1) of the step-up rule.
  McEstimate fdr;
  double mean_rejections = 0.0;
  /// alpha1 n0 / n.
  double nominal = 0.0;
};

FdrControlReport fdr_control_experiment(std::span<const double> theta, const FdrConfig& config,
                                        const McOptions& options);

struct SelectorTailRow {
  std::size_t k = 0;
  double xi1_k = 0.0;
  double xi2_k = 0.0;
  /// Frequency of {xi1_hat <= xi_{1,k}} and its binomial standard error.
  double step_up_freq = 0.0;
  double step_up_se = 0.0;
  double step_up_bound = 0.0;
  /// xi_{1,k} <= xi_{1,*}, so the bound applies.
  bool step_up_applies = false;
  /// Frequency of {xi2_hat >= xi_{2,k}}.
  double step_down_freq = 0.0;
  double step_down_se = 0.0;
  double step_down_bound = 0.0;
  /// xi_{2,k} >= xi_{2,*}.
  bool step_down_applies = false;
};

struct SelectorTailReport {
  std::size_t n = 0;
  double nu1 = 0.0;
  double nu2 = 0.0;
  double xi1_star = 0.0;
  double xi2_star = 0.0;
  std::vector<SelectorTailRow> rows;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
};

/// Exponential tail probabilities of the step-up and step-down levels for k = 1..k_max.
SelectorTailReport selector_tail_experiment(std::span<const double> theta,
                                            const FdrConfig& config, std::size_t k_max,
                                            const McOptions& options);

}  // namespace fdrthresh
