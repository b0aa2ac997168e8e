// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fdrthresh/common.hpp"
#include "fdrthresh/fdr_selector.hpp"
#include "fdrthresh/gaussian_kernel.hpp"
#include "fdrthresh/risk_engine.hpp"
#include "fdrthresh/simulation.hpp"
#include "oracles.hpp"

using namespace fdrthresh;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

McOptions mc(std::size_t replicates, std::uint64_t seed) {
  McOptions options;
  options.replicates = replicates;
  options.seed = seed;
  return options;
}

Outcome closed_form_risk() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 24; ++j) {
      const double mu = 0.5 * i;
      const double lambda = 0.25 * j;
      worst = std::max(worst, std::abs(risk_soft_point(mu, lambda) - oracle::soft_risk(mu, lambda)));
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= 1e-9 && seconds < 5.0,
          fmt("max |closed - quadrature| = %.3e over 525 points, %.2f s", worst, seconds)};
}

Outcome null_risk_sandwich() {
  int violations = 0;
  double tightest = kInfinity;
  for (int i = 1; i <= 400; ++i) {
    const double lambda = 8.0 * i / 400.0;
    const double r = risk_soft_point(0.0, lambda);
    const double tail = gauss::Phi(-lambda);
    const double lower = 4.0 * tail / (lambda * lambda + 5.0);
    const double upper = 4.0 * tail / (lambda * lambda + 2.0);
    if (!(lower <= r && r <= upper)) ++violations;
    tightest = std::min({tightest, r / lower - 1.0, upper / r - 1.0});
  }
  return {violations == 0, fmt("%d violations in 400 levels, smallest relative margin %.3e",
                               violations, tightest)};
}

Outcome selector_equivalence() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> z(0.0, 1.0);
  int mismatches = 0;
  int order_violations = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = 1 + rng() % 50;
    FdrConfig config;
    config.alpha1 = 0.01 + 0.8 * unit(rng);
    config.alpha2 = config.alpha1 * (0.05 + 0.95 * unit(rng));
    config.alpha1p = config.alpha1 + (0.99 - config.alpha1) * (0.1 + 0.9 * unit(rng));
    config.alpha2p = config.alpha2 * (0.1 + 0.8 * unit(rng));
    const double fraction = unit(rng);
    const double strength = 6.0 * unit(rng);
    std::vector<double> x(n);
    for (auto& v : x) v = (unit(rng) < fraction ? strength : 0.0) + z(rng);
    const double up = step_up_level(x, config);
    const double down = step_down_level(x, config);
    if (up != oracle::step_up(x, candidate_levels(n, config.alpha1))) ++mismatches;
    if (down != oracle::step_down(x, candidate_levels(n, config.alpha2))) ++mismatches;
    if (!(up <= down)) ++order_violations;
  }
  return {mismatches == 0 && order_violations == 0,
          fmt("%d mismatches, %d order violations in 10000 instances", mismatches, order_violations)};
}

Outcome exponential_tail() {
  const auto start = std::chrono::steady_clock::now();
  FdrConfig config;
  config.alpha1 = 0.05;
  config.alpha1p = 0.1;
  config.alpha2 = 0.05;
  config.alpha2p = 0.01;
  const std::vector<double> theta(100, 0.0);
  const auto report = selector_tail_experiment(theta, config, 10, mc(100000, 4));
  bool ok = true;
  std::string rows;
  for (const auto& row : report.rows) {
    ok &= row.step_up_freq <= row.step_up_bound + 3.0 * row.step_up_se;
    rows += fmt(" k=%zu:%.4f<=%.4f", row.k, row.step_up_freq, row.step_up_bound);
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {ok && seconds < 60.0, fmt("nu=%.4f, %.1f s;", report.nu1, seconds) + rows};
}

Outcome oracle_minimizer() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> z(0.0, 1.0);
  double worst = 0.0;
  int failures = 0;
  int zero_losses = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 100;
    const double fraction = unit(rng);
    const double scale = 5.0 * unit(rng);
    std::vector<double> theta(n), x(n);
    for (std::size_t i = 0; i < n; ++i) {
      theta[i] = unit(rng) < fraction ? scale * z(rng) : 0.0;
      x[i] = theta[i] + z(rng);
    }
    const double exact = oracle_loss_min(x, theta).loss;
    const double grid = oracle::grid_min_loss(x, theta);
    const double gap = std::abs(exact - grid);
    if (gap <= 1e-15) {
      ++zero_losses;
      continue;
    }
    const double rel = gap / grid;
    worst = std::max(worst, rel);
    if (rel > 1e-6) ++failures;
  }
  return {failures == 0,
          fmt("%d disagreements, max relative gap %.3e over 1000 instances (%d agree within 1e-15 absolute)",
              failures, worst, zero_losses)};
}

Outcome common_mean() {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = 10000;
  const std::vector<double> mus = {0.0, 0.5 / std::sqrt(static_cast<double>(n))};
  const auto report = common_mean_experiment(n, mus, FdrConfig{}, mc(500, 6));
  const auto& zero = report.rows[0];
  const auto& small = report.rows[1];
  const bool at_zero = zero.fdr_soft.mean < 0.2;
  const bool below = small.fdr_soft.mean < 0.8 &&
                     small.fdr_soft.mean + 3.0 * small.fdr_soft.std_error < small.sample_mean.mean &&
                     std::abs(small.sample_mean.mean - 1.0) <= 3.0 * small.sample_mean.std_error;
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {at_zero && below && seconds < 600.0,
          fmt("mu=0: fdr soft %.4f (se %.4f); mu=0.5/sqrt(n): fdr soft %.4f (se %.4f), "
              "sample mean %.4f (se %.4f); %.1f s",
              zero.fdr_soft.mean, zero.fdr_soft.std_error, small.fdr_soft.mean,
              small.fdr_soft.std_error, small.sample_mean.mean, small.sample_mean.std_error, seconds)};
}

RegretReport spike_regret(std::size_t n, const FdrConfig& config) {
  const auto count = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  const double magnitude = 0.8 * std::sqrt(2.0 * std::log(static_cast<double>(n)));
  const auto theta = ThetaGenerator::spikes(n, count, magnitude).generate();
  return regret_experiment(theta, ThresholdFamily::soft(), config, mc(300, 7));
}

Outcome ratio_trend() {
  // Asserted at loose selector levels; the default levels are printed for information.
  FdrConfig loose;
  loose.alpha1 = 0.8;
  loose.alpha2 = 0.8;
  loose.alpha1p = 0.9;
  loose.alpha2p = 0.5;
  const auto small = spike_regret(1024, loose);
  const auto large = spike_regret(16384, loose);
  const bool first = small.ratio <= 1.5 + 3.0 * small.ratio_se;
  const bool second = large.ratio <= 1.3 + 3.0 * large.ratio_se;
  const bool trend =
      large.ratio <= small.ratio + 3.0 * std::hypot(small.ratio_se, large.ratio_se);

  const auto default_small = spike_regret(1024, FdrConfig{});
  const auto default_large = spike_regret(16384, FdrConfig{});
  std::printf("  info: alpha1=alpha2=0.1 gives ratio %.4f (se %.4f) at n=1024 and %.4f (se %.4f) at n=16384\n",
              default_small.ratio, default_small.ratio_se, default_large.ratio, default_large.ratio_se);
  std::printf("  info: strong ratio at alpha=0.8: %.4f (n=1024), %.4f (n=16384)\n", small.strong_ratio,
              large.strong_ratio);
  return {first && second && trend,
          fmt("alpha1=alpha2=0.8: ratio %.4f (se %.4f) at n=1024, %.4f (se %.4f) at n=16384",
              small.ratio, small.ratio_se, large.ratio, large.ratio_se)};
}

Outcome concentration() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> z(0.0, 1.0);
  int failures = 0;
  double worst = 0.0;
  int checks = 0;
  for (std::size_t n : {std::size_t{100}, std::size_t{10000}}) {
    for (int config = 0; config < 10; ++config) {
      const double fraction = unit(rng);
      const double scale = 5.0 * unit(rng);
      const double lambda = 4.0 * unit(rng);
      std::vector<double> theta(n);
      for (auto& t : theta) t = unit(rng) < fraction ? scale * z(rng) : 0.0;
      const auto report = concentration_check(theta, ThresholdFamily::soft(), lambda,
                                              mc(2000, 100 + static_cast<std::uint64_t>(checks)));
      ++checks;
      if (!report.within_bound) ++failures;
      worst = std::max(worst, report.variance / report.bound);
    }
  }
  return {failures == 0,
          fmt("%d of %d configs above 4/n + 3 SE, largest variance / bound %.3f", failures, checks, worst)};
}

Outcome fdr_control() {
  std::vector<double> theta(1000, 0.0);
  std::fill_n(theta.begin(), 100, 3.0);
  const FdrConfig config;
  const auto report = fdr_control_experiment(theta, config, mc(10000, 9));
  const bool ok = report.fdr.mean <= config.alpha1 * 0.9 + 3.0 * report.fdr.std_error;
  return {ok, fmt("FDR %.5f (se %.5f) vs nominal %.4f, mean rejections %.1f", report.fdr.mean,
                  report.fdr.std_error, report.nominal, report.mean_rejections)};
}

Outcome minimax() {
  bool ok = true;
  std::string rows;
  for (std::size_t k : {std::size_t{1}, std::size_t{5}, std::size_t{20}}) {
    const double C = static_cast<double>(k) / 10000.0;
    const auto report = minimax_ball_experiment(0.0, C, 10000, BallType::Strong, ThresholdFamily::soft(),
                                                FdrConfig{}, mc(500, 10 + k));
    ok &= report.nonzeros == k && report.ratio >= 0.5 && report.ratio <= 2.0;
    rows += fmt(" k=%zu: risk %.3f / formula %.3f = %.3f;", k, report.risk.mean, report.formula,
                report.ratio);
  }
  return {ok, "factor-2 band" + rows};
}

Outcome special_functions() {
  double round_trip = 0.0;
  for (double e = -15.0; e <= -0.30103; e += 0.005) {
    const double p = std::pow(10.0, e);
    round_trip = std::max(round_trip, std::abs(gauss::Phi(gauss::inv_Phi(p)) - p) / p);
    round_trip = std::max(round_trip, std::abs(gauss::Phi(gauss::inv_Phi(1.0 - p)) - (1.0 - p)));
  }
  double residual = 0.0;
  for (double lambda = 0.25; lambda <= 20.0; lambda += 0.25) {
    for (int k = 0; k <= 1; ++k) {
      const double lhs = (k + 1) * gauss::J_k(lambda, k);
      const double rhs = gauss::J_k(lambda, k + 1) + gauss::J_k(lambda, k + 2) / (lambda * lambda);
      residual = std::max(residual, std::abs(lhs - rhs) / std::abs(lhs));
    }
  }
  bool roots_ok = true;
  for (long long n : {2LL, 3LL, 10LL, 100LL, 1000LL, 100000LL, 10000000LL, 1000000000LL}) {
    const double z = gauss::solve_z_n(n);
    roots_ok &= z * z > std::log(static_cast<double>(n));
  }
  return {round_trip <= 1e-12 && residual <= 1e-10 && roots_ok,
          fmt("round trip %.3e, recursion residual %.3e, z_n^2 > log n: %s", round_trip, residual,
              roots_ok ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 closed-form soft risk vs quadrature", closed_form_risk},
      {"AC2 null-risk sandwich", null_risk_sandwich},
      {"AC3 selector brute-force equivalence", selector_equivalence},
      {"AC4 step-up exponential tail", exponential_tail},
      {"AC5 pathwise oracle minimizer", oracle_minimizer},
      {"AC6 common-mean comparison", common_mean},
      {"AC7 adaptive ratio trend", ratio_trend},
      {"AC8 concentration bound", concentration},
      {"AC9 step-up FDR control", fdr_control},
      {"AC10 l0-ball minimax formula", minimax},
      {"AC11 special functions", special_functions},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s: %s [%.1f s]\n", outcome.pass ? "PASS" : "FAIL", name.c_str(),
                outcome.detail.c_str(), seconds);
    std::fflush(stdout);
    failed += !outcome.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
