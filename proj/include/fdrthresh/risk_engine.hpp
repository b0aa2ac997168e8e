#pragma once

#include <span>
#include <string>
#include <vector>

#include "fdrthresh/parallel.hpp"
#include "fdrthresh/threshold_functions.hpp"

namespace fdrthresh {

/// Discrete prior G on the real line. The nominal empirical prior of a mean
/// vector theta puts mass 1/n on each theta_i.
class EmpiricalPrior {
public:
  /// Uniform weights 1/n.
  explicit EmpiricalPrior(std::vector<double> atoms);
  /// Weights must be nonnegative and sum to 1 within 1e-12.
  EmpiricalPrior(std::vector<double> atoms, std::vector<double> weights);

  const std::vector<double>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return atoms_.size(); }

  /// Distinct |atom| values with aggregated mass. Every functional here is
  /// even in the atom, so evaluations loop over this compressed support.
  const std::vector<double>& abs_support() const { return abs_support_; }
  const std::vector<double>& abs_mass() const { return abs_mass_; }

  /// Sum_i w_i theta_i^2.
  double second_moment() const { return second_moment_; }
  /// True when every atom with positive weight is zero (G is the point mass at 0).
  bool is_null() const;

private:
  void build_support();

  std::vector<double> atoms_;
  std::vector<double> weights_;
  std::vector<double> abs_support_;
  std::vector<double> abs_mass_;
  double second_moment_ = 0.0;
};

/// R(mu, lambda) = E (s_lambda(mu + Z) - mu)^2 in closed form.
double risk_soft_point(double mu, double lambda);

/// E (t_lambda(mu + Z) - mu)^2 for any family, integrating its linear pieces
/// against the Gaussian exactly.
double risk_family_point(const ThresholdFamily& family, double mu, double lambda);

/// R_G(lambda) = int R(u, lambda) G(du).
double bayes_risk_soft(const EmpiricalPrior& prior, double lambda);

/// Smooth-threshold analogue int E (t_lambda(u + Z) - u)^2 G(du).
double bayes_risk_family(const EmpiricalPrior& prior, const ThresholdFamily& family,
                         double lambda);

/// rho_G(lambda) = int min(u^2, lambda^2) G(du); lambda = +inf allowed.
double rho_G(const EmpiricalPrior& prior, double lambda);

/// r_G(lambda) = rho_G(lambda) + B0 Phi(-lambda), B0 >= 4.
double r_G(const EmpiricalPrior& prior, double lambda, double B0);

/// Gbar(t) = G{|u| > t}.
double tail_mass(const EmpiricalPrior& prior, double t);

/// S_G(t) = int P{|N(u,1)| > t} G(du).
double rejection_prob(const EmpiricalPrior& prior, double t);

/// Nominal FDR curve 2 Phi(-t) / S_G(t). Identically 1 when prior.is_null().
double fdr_curve(const EmpiricalPrior& prior, double t);

struct PopulationLevels {
  double xi1_star = 0.0;
  double xi2_star = 0.0;
  bool degenerate = false;
};

/// xi_{1,*} = inf{t : fdr_curve <= alpha1p}, xi_{2,*} = sup{t : fdr_curve >= alpha2p}.
/// Both are +inf for the null prior. Requires 0 < alpha2p < alpha1p < 1.
PopulationLevels population_fdr_levels(const EmpiricalPrior& prior, double alpha1p,
                                       double alpha2p);

/// Minimizers of R_G and r_G. Levels may be +inf when the lambda -> inf limit
/// (the zero estimator) attains the minimum.
struct OptimalLevels {
  double lambda_G = 0.0;
  double eta_G = 0.0;
  double lambda_G_star = 0.0;
  double eta_G_star = 0.0;
  double B0 = 4.0;
};

/// Smallest admissible search bound sqrt(2 log n) + 4.
double default_lambda_max(std::size_t n);

/// B0 = max(8 / alpha2p, 2 C0^2), never below 4.
double default_B0(double alpha2p, double C0);

/// C0 = kappa0 / (2 - kappa0) for a smooth family.
double smoothness_constant(const ThresholdFamily& family);

/// Coarse 2048-point scan of [0, lambda_max] followed by golden-section
/// refinement, then comparison with the lambda = inf limit.
OptimalLevels optimal_levels(const EmpiricalPrior& prior, double B0, double lambda_max);
OptimalLevels optimal_levels(const EmpiricalPrior& prior, double B0);

/// Upper bound rho_G(sqrt(lambda^2 + 2)) + C0^2 R(0, lambda) on the
/// per-coordinate risk of any rule between soft and firm; C0 >= 1.
double smooth_risk_bound(const EmpiricalPrior& prior, double lambda, double C0);

struct DiagnosticInputs {
  long long n = 2;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double c1 = 2.0;
  double c2 = 0.0;
  double eta_star = 0.0;
  double alpha1 = 0.1;
  double alpha1p = 0.2;
  double alpha2 = 0.1;
  double alpha2p = 0.05;
};

struct DiagnosticConstants {
  double L2n = 0.0;
  double tau1 = 0.0;
  double tau2 = 0.0;
  double nu1 = 0.0;
  double nu2 = 0.0;
};

/// Oracle-inequality constants L_{2,n}, tau*_{1,n}, tau*_{2,n} = L_{2,n} / n^{1+delta1}
/// and the exponential-tail rates nu_{j,*} = a - 1 - log a with a = alpha_j / alpha'_j.
DiagnosticConstants diagnostic_constants(const DiagnosticInputs& in);

enum class RiskFunctional { RG, rG, SG, FdrCurve, RGsmooth };

std::string to_string(RiskFunctional functional);
RiskFunctional risk_functional_from_string(const std::string& name);

/// Sampled lambda -> value view of one functional.
struct RiskCurve {
  std::vector<double> lambdas;
  std::vector<double> values;
  RiskFunctional functional = RiskFunctional::RG;
};

struct RiskCurveOptions {
  double B0 = 4.0;
  ThresholdFamily family = ThresholdFamily::soft();
  Execution execution = Execution::Parallel;
};

/// Evaluate a functional on a strictly increasing grid of nonnegative levels.
RiskCurve evaluate_risk_curve(const EmpiricalPrior& prior, RiskFunctional functional,
                              std::span<const double> lambdas, const RiskCurveOptions& options = {});

/// n + 1 equispaced levels on [0, lambda_max].
std::vector<double> uniform_grid(double lambda_max, std::size_t intervals);

}  // namespace fdrthresh
