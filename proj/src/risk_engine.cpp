#include "fdrthresh/risk_engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include "fdrthresh/common.hpp"
#include "fdrthresh/gaussian_kernel.hpp"

namespace fdrthresh {

using gauss::Phi;
using gauss::phi;

EmpiricalPrior::EmpiricalPrior(std::vector<double> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw DomainError("EmpiricalPrior: need at least one atom");
  weights_.assign(atoms_.size(), 1.0 / static_cast<double>(atoms_.size()));
  build_support();
}

EmpiricalPrior::EmpiricalPrior(std::vector<double> atoms, std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
  if (atoms_.empty()) throw DomainError("EmpiricalPrior: need at least one atom");
  if (weights_.size() != atoms_.size()) {
    throw DomainError("EmpiricalPrior: atoms and weights differ in length");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("EmpiricalPrior: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw DomainError("EmpiricalPrior: weights must sum to 1");
  }
  build_support();
}

void EmpiricalPrior::build_support() {
  std::map<double, double> mass;
  second_moment_ = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!std::isfinite(atoms_[i])) throw DomainError("EmpiricalPrior: atoms must be finite");
    if (weights_[i] == 0.0) continue;
    mass[std::abs(atoms_[i])] += weights_[i];
    second_moment_ += weights_[i] * atoms_[i] * atoms_[i];
  }
  abs_support_.clear();
  abs_mass_.clear();
  for (const auto& [atom, w] : mass) {
    abs_support_.push_back(atom);
    abs_mass_.push_back(w);
  }
}

bool EmpiricalPrior::is_null() const {
  return abs_support_.size() == 1 && abs_support_.front() == 0.0;
}

namespace {

void require_level(double lambda, const char* who) {
  if (!(lambda >= 0.0)) throw DomainError(std::string(who) + ": lambda must be nonnegative");
}

// E[(Z - c)^2 1{Z > a}] = (1 + c^2) Phi(-a) + (a - 2c) phi(a).
double upper_square_moment(double a, double c) {
  if (std::isinf(a)) return a < 0 ? 1.0 + c * c : 0.0;
  return (1.0 + c * c) * Phi(-a) + (a - 2.0 * c) * phi(a);
}

template <typename PointFn>
double mix_over_support(const EmpiricalPrior& prior, PointFn&& point) {
  const auto& support = prior.abs_support();
  const auto& mass = prior.abs_mass();
  double total = 0.0;
  for (std::size_t j = 0; j < support.size(); ++j) total += mass[j] * point(support[j]);
  return total;
}

struct Minimum {
  double arg;
  double value;
};

// Global minimum of f on [0, upper]: coarse scan locates the bracket, golden
// section polishes it. No unimodality is assumed outside the final bracket.
template <typename Fn>
Minimum minimize_on_interval(Fn&& f, double upper) {
  constexpr std::size_t kCoarse = 2048;
  const double step = upper / static_cast<double>(kCoarse - 1);
  std::size_t best = 0;
  double best_value = f(0.0);
  for (std::size_t i = 1; i < kCoarse; ++i) {
    const double v = f(static_cast<double>(i) * step);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  Minimum result{static_cast<double>(best) * step, best_value};

  double lo = best == 0 ? 0.0 : static_cast<double>(best - 1) * step;
  double hi = std::min(upper, static_cast<double>(best + 1) * step);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int iter = 0; iter < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++iter) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = f(x2);
    }
  }
  const double mid = 0.5 * (lo + hi);
  const double fm = f(mid);
  for (const auto& [x, v] : {Minimum{x1, f1}, Minimum{x2, f2}, Minimum{mid, fm}}) {
    if (v < result.value) result = {x, v};
  }
  return result;
}

}  // namespace

double risk_soft_point(double mu, double lambda) {
  require_level(lambda, "risk_soft_point");
  if (is_infinite(lambda)) return mu * mu;
  const double m = std::abs(mu);
  // mu^2 P(|Z + mu| <= lambda) + E(Z - lambda)^2 1{Z > lambda - mu}
  //   + E(Z + lambda)^2 1{Z < -lambda - mu}
  const double dead_zone = gauss::interval_moments(-lambda - m, lambda - m).m0;
  return m * m * dead_zone + upper_square_moment(lambda - m, lambda) +
         upper_square_moment(lambda + m, lambda);
}

double risk_family_point(const ThresholdFamily& family, double mu, double lambda) {
  require_level(lambda, "risk_family_point");
  double total = 0.0;
  for (const auto& piece : linear_pieces(family, lambda)) {
    const auto mom = gauss::interval_moments(piece.lo - mu, piece.hi - mu);
    const double offset = piece.slope * mu + piece.intercept - mu;
    total += piece.slope * piece.slope * mom.m2 + 2.0 * piece.slope * offset * mom.m1 +
             offset * offset * mom.m0;
  }
  return total;
}

double bayes_risk_soft(const EmpiricalPrior& prior, double lambda) {
  require_level(lambda, "bayes_risk_soft");
  return mix_over_support(prior, [lambda](double u) { return risk_soft_point(u, lambda); });
}

double bayes_risk_family(const EmpiricalPrior& prior, const ThresholdFamily& family,
                         double lambda) {
  require_level(lambda, "bayes_risk_family");
  return mix_over_support(prior,
                          [&](double u) { return risk_family_point(family, u, lambda); });
}

double rho_G(const EmpiricalPrior& prior, double lambda) {
  require_level(lambda, "rho_G");
  if (is_infinite(lambda)) return prior.second_moment();
  const double l2 = lambda * lambda;
  return mix_over_support(prior, [l2](double u) { return std::min(u * u, l2); });
}

double r_G(const EmpiricalPrior& prior, double lambda, double B0) {
  if (!(B0 >= 4.0)) throw DomainError("r_G: B0 must be at least 4");
  require_level(lambda, "r_G");
  return rho_G(prior, lambda) + B0 * Phi(-lambda);
}

double tail_mass(const EmpiricalPrior& prior, double t) {
  return mix_over_support(prior, [t](double u) { return u > t ? 1.0 : 0.0; });
}

double rejection_prob(const EmpiricalPrior& prior, double t) {
  require_level(t, "rejection_prob");
  return std::min(1.0, mix_over_support(prior, [t](double u) { return Phi(u - t) + Phi(-u - t); }));
}

double fdr_curve(const EmpiricalPrior& prior, double t) {
  require_level(t, "fdr_curve");
  if (prior.is_null()) return 1.0;
  const double null_part = 2.0 * Phi(-t);
  const double s = rejection_prob(prior, t);
  if (s <= 0.0) return 0.0;
  return std::min(1.0, null_part / s);
}

PopulationLevels population_fdr_levels(const EmpiricalPrior& prior, double alpha1p,
                                       double alpha2p) {
  if (!(alpha2p > 0.0 && alpha2p < alpha1p && alpha1p < 1.0)) {
    throw DomainError("population_fdr_levels: need 0 < alpha2' < alpha1' < 1");
  }
  if (prior.is_null()) return {kInfinity, kInfinity, true};

  const double upper = prior.abs_support().back() + 40.0;
  // The curve is strictly decreasing, so each level is the unique crossing.
  const auto crossing = [&](double level) {
    if (fdr_curve(prior, upper) > level) return kInfinity;
    double lo = 0.0;
    double hi = upper;
    for (int iter = 0; iter < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (fdr_curve(prior, mid) > level) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };
  return {crossing(alpha1p), crossing(alpha2p), false};
}

double default_lambda_max(std::size_t n) {
  return std::sqrt(2.0 * std::log(static_cast<double>(std::max<std::size_t>(n, 1)))) + 4.0;
}

double default_B0(double alpha2p, double C0) {
  return std::max({8.0 / alpha2p, 2.0 * C0 * C0, 4.0});
}

double smoothness_constant(const ThresholdFamily& family) {
  if (!family.is_smooth()) throw DomainError("smoothness_constant: hard threshold is not smooth");
  return family.kappa0() / (2.0 - family.kappa0());
}

OptimalLevels optimal_levels(const EmpiricalPrior& prior, double B0, double lambda_max) {
  if (!(B0 >= 4.0)) throw DomainError("optimal_levels: B0 must be at least 4");
  if (!(lambda_max >= default_lambda_max(prior.size()) - 1e-12)) {
    throw DomainError("optimal_levels: lambda_max must be at least sqrt(2 log n) + 4");
  }
  const double limit = prior.second_moment();

  OptimalLevels out;
  out.B0 = B0;
  const auto bayes = minimize_on_interval(
      [&](double l) { return bayes_risk_soft(prior, l); }, lambda_max);
  if (limit <= bayes.value) {
    out.lambda_G = kInfinity;
    out.eta_G = limit;
  } else {
    out.lambda_G = bayes.arg;
    out.eta_G = bayes.value;
  }
  const auto surrogate = minimize_on_interval(
      [&](double l) { return r_G(prior, l, B0); }, lambda_max);
  if (limit <= surrogate.value) {
    out.lambda_G_star = kInfinity;
    out.eta_G_star = limit;
  } else {
    out.lambda_G_star = surrogate.arg;
    out.eta_G_star = surrogate.value;
  }
  return out;
}

OptimalLevels optimal_levels(const EmpiricalPrior& prior, double B0) {
  return optimal_levels(prior, B0, default_lambda_max(prior.size()));
}

double smooth_risk_bound(const EmpiricalPrior& prior, double lambda, double C0) {
  if (!(C0 >= 1.0)) throw DomainError("smooth_risk_bound: C0 must be at least 1");
  require_level(lambda, "smooth_risk_bound");
  return rho_G(prior, std::sqrt(lambda * lambda + 2.0)) + C0 * C0 * risk_soft_point(0.0, lambda);
}

DiagnosticConstants diagnostic_constants(const DiagnosticInputs& in) {
  if (in.n < 2) throw DomainError("diagnostic_constants: n must be at least 2");
  if (!(in.delta1 >= 0.0 && in.delta1 <= in.delta2)) {
    throw DomainError("diagnostic_constants: need 0 <= delta1 <= delta2");
  }
  if (!(in.c1 > 0.0 && in.c1 <= 2.0)) {
    throw DomainError("diagnostic_constants: c1 must lie in (0,2]");
  }
  if (in.c1 == 2.0 && in.c2 > 0.0) {
    throw DomainError("diagnostic_constants: c2 must be <= 0 when c1 = 2");
  }
  if (!(in.eta_star >= 0.0)) throw DomainError("diagnostic_constants: eta_star must be >= 0");
  const bool alphas_ok = in.alpha2p > 0.0 && in.alpha2p < in.alpha2 && in.alpha2 <= in.alpha1 &&
                         in.alpha1 < in.alpha1p && in.alpha1p < 1.0;
  if (!alphas_ok) {
    throw DomainError("diagnostic_constants: need 0 < alpha2' < alpha2 <= alpha1 < alpha1' < 1");
  }

  const double log_n = std::log(static_cast<double>(in.n));
  const double loglog_plus = std::max(std::log(log_n), 0.0);

  const double first = in.delta1 == 0.0 ? 0.0
                                        : in.delta1 * std::pow(log_n, (5.0 - in.c1) / 2.0) /
                                              std::pow(loglog_plus, in.c2);
  const double second = std::pow(log_n, (3.0 - in.c1) / 2.0) / std::pow(loglog_plus, in.c2 - 1.0);

  DiagnosticConstants out;
  out.L2n = std::pow(log_n, -1.5) * std::pow(first + second, 1.0 + in.delta1);
  out.tau2 = out.L2n / std::pow(static_cast<double>(in.n), 1.0 + in.delta1);

  const double L1 = std::max(std::numbers::e, std::log(1.0 / in.eta_star));
  double tau1 = std::log(std::max(std::numbers::e, log_n)) / std::max(1.0, log_n);
  if (std::isfinite(L1)) {
    tau1 = std::max({tau1, std::pow(std::log(L1), -in.c2) / std::pow(L1, in.c1 / 2.0), 1.0 / L1});
  }
  out.tau1 = tau1;

  const auto rate = [](double a) { return a - 1.0 - std::log(a); };
  out.nu1 = rate(in.alpha1 / in.alpha1p);
  out.nu2 = rate(in.alpha2 / in.alpha2p);
  return out;
}

std::string to_string(RiskFunctional functional) {
  switch (functional) {
    case RiskFunctional::RG: return "RG";
    case RiskFunctional::rG: return "rG";
    case RiskFunctional::SG: return "SG";
    case RiskFunctional::FdrCurve: return "FdrCurve";
    case RiskFunctional::RGsmooth: return "RGsmooth";
  }
  return "unknown";
}

RiskFunctional risk_functional_from_string(const std::string& name) {
  if (name == "RG") return RiskFunctional::RG;
  if (name == "rG") return RiskFunctional::rG;
  if (name == "SG") return RiskFunctional::SG;
  if (name == "FdrCurve") return RiskFunctional::FdrCurve;
  if (name == "RGsmooth") return RiskFunctional::RGsmooth;
  throw ValidationError("unknown risk functional '" + name + "'");
}

RiskCurve evaluate_risk_curve(const EmpiricalPrior& prior, RiskFunctional functional,
                              std::span<const double> lambdas, const RiskCurveOptions& options) {
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] >= 0.0) || !std::isfinite(lambdas[i])) {
      throw DomainError("evaluate_risk_curve: levels must be finite and nonnegative");
    }
    if (i > 0 && !(lambdas[i] > lambdas[i - 1])) {
      throw DomainError("evaluate_risk_curve: levels must be strictly increasing");
    }
  }
  const auto value_at = [&](std::size_t i) {
    const double l = lambdas[i];
    switch (functional) {
      case RiskFunctional::RG: return bayes_risk_soft(prior, l);
      case RiskFunctional::rG: return r_G(prior, l, options.B0);
      case RiskFunctional::SG: return rejection_prob(prior, l);
      case RiskFunctional::FdrCurve: return fdr_curve(prior, l);
      case RiskFunctional::RGsmooth: return bayes_risk_family(prior, options.family, l);
    }
    return 0.0;
  };
  RiskCurve curve;
  curve.functional = functional;
  curve.lambdas.assign(lambdas.begin(), lambdas.end());
  curve.values = evaluate_indexed(lambdas.size(), options.execution, value_at);
  return curve;
}

std::vector<double> uniform_grid(double lambda_max, std::size_t intervals) {
  if (intervals == 0 || !(lambda_max > 0.0)) {
    throw DomainError("uniform_grid: need a positive range and at least one interval");
  }
  std::vector<double> grid(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    grid[i] = lambda_max * static_cast<double>(i) / static_cast<double>(intervals);
  }
  return grid;
}

}  // namespace fdrthresh
