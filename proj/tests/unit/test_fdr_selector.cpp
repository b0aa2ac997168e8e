#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fdrthresh/common.hpp"
#include "fdrthresh/fdr_selector.hpp"
#include "fdrthresh/gaussian_kernel.hpp"
#include "fdrthresh/risk_engine.hpp"
#include "oracles.hpp"

using namespace fdrthresh;

namespace {

const std::vector<double> kFourPoint = {3.0, 1.7, -1.5, 0.2};

FdrConfig four_point_config() {
  FdrConfig config;
  config.alpha1 = 0.2;
  config.alpha1p = 0.3;
  config.alpha2 = 0.1;
  config.alpha2p = 0.05;
  return config;
}

/// Random admissible (alpha1, alpha2) pair with alpha2 <= alpha1.
FdrConfig random_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  FdrConfig config;
  config.alpha1 = 0.01 + 0.8 * unit(rng);
  config.alpha2 = config.alpha1 * (0.05 + 0.95 * unit(rng));
  config.alpha1p = config.alpha1 + (0.99 - config.alpha1) * (0.1 + 0.9 * unit(rng));
  config.alpha2p = config.alpha2 * (0.1 + 0.8 * unit(rng));
  return config;
}

/// Mixture of nulls and signals of random strength.
std::vector<double> random_observation(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> z(0.0, 1.0);
  const double signal_fraction = unit(rng);
  const double strength = 6.0 * unit(rng);
  std::vector<double> x(n);
  for (auto& v : x) v = (unit(rng) < signal_fraction ? strength : 0.0) + z(rng);
  return x;
}

}  // namespace

TEST(CandidateLevels, FrozenValues) {
  const auto xi1 = candidate_levels(4, 0.2);
  ASSERT_EQ(xi1.size(), 4u);
  EXPECT_NEAR(xi1[0], 1.959963984540054, 1e-12);
  EXPECT_NEAR(xi1[1], 1.644853626951473, 1e-12);
  EXPECT_NEAR(xi1[2], 1.439531470938456, 1e-12);
  EXPECT_NEAR(xi1[3], 1.2815515655446, 1e-12);
  const auto xi2 = candidate_levels(4, 0.1);
  EXPECT_NEAR(xi2[0], 2.241402727604945, 1e-12);
  EXPECT_NEAR(xi2[1], 1.959963984540054, 1e-12);
  EXPECT_NEAR(xi2[2], 1.780464341692026, 1e-12);
  EXPECT_NEAR(xi2[3], 1.644853626951473, 1e-12);
}

TEST(CandidateLevels, DecreasingAndClampedAtHalf) {
  const auto levels = candidate_levels(10, 0.99);
  for (std::size_t k = 1; k < levels.size(); ++k) EXPECT_LE(levels[k], levels[k - 1]);
  EXPECT_EQ(candidate_level(0.5), 0.0);
  EXPECT_EQ(candidate_level(0.7), 0.0);
  EXPECT_GT(candidate_level(0.4999), 0.0);
  for (double l : levels) EXPECT_GE(l, 0.0);
  EXPECT_THROW(candidate_levels(0, 0.1), DomainError);
  EXPECT_THROW(candidate_levels(5, 1.0), DomainError);
}

TEST(CandidateLevels, StepUpAndStepDownCandidatesOrdered) {
  for (double a1 : {0.05, 0.2, 0.5}) {
    for (double a2 : {0.01, 0.05}) {
      const auto xi1 = candidate_levels(50, a1);
      const auto xi2 = candidate_levels(50, std::min(a2, a1));
      for (std::size_t k = 0; k < 50; ++k) EXPECT_LE(xi1[k], xi2[k]);
    }
  }
}

TEST(ExceedCount, CountsTiesAsExceedances) {
  const std::vector<double> x = {1.0, -2.0, 0.5, 2.0};
  EXPECT_EQ(exceed_count(x, 0.0), 4u);
  EXPECT_EQ(exceed_count(x, 2.0), 2u);
  EXPECT_EQ(exceed_count(x, 2.0000001), 0u);
  EXPECT_EQ(exceed_count(x, 1.0), 3u);
  EXPECT_THROW(exceed_count(x, -1.0), DomainError);
}

TEST(StepUp, FourPointExample) {
  EXPECT_NEAR(step_up_level(kFourPoint, four_point_config()), 1.4395314709, 1e-10);
}

TEST(StepUp, NoSignalGivesInfinity) {
  const std::vector<double> zeros(10, 0.0);
  EXPECT_TRUE(is_infinite(step_up_level(zeros, four_point_config())));
}

TEST(StepUp, HugeSignalsGiveSmallestCandidate) {
  const std::vector<double> x(8, 50.0);
  const auto config = four_point_config();
  EXPECT_DOUBLE_EQ(step_up_level(x, config), candidate_levels(8, config.alpha1).back());
}

TEST(StepDown, FourPointExample) {
  EXPECT_NEAR(step_down_level(kFourPoint, four_point_config()), 2.2414027276, 1e-10);
}

TEST(StepDown, NoSignalGivesInfinity) {
  const std::vector<double> zeros(10, 0.0);
  EXPECT_TRUE(is_infinite(step_down_level(zeros, four_point_config())));
}

TEST(StepDown, SignalsAboveEveryCandidateGiveSmallestCandidate) {
  const std::vector<double> x = {40.0, 35.0, 30.0, 25.0, 20.0};
  const auto config = four_point_config();
  EXPECT_DOUBLE_EQ(step_down_level(x, config), candidate_levels(5, config.alpha2).back());
}

TEST(Selector, MatchesBruteForceDefinitions) {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> sizes(1, 50);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto config = random_config(rng);
    const auto x = random_observation(rng, sizes(rng));
    const auto xi1 = candidate_levels(x.size(), config.alpha1);
    const auto xi2 = candidate_levels(x.size(), config.alpha2);
    EXPECT_EQ(step_up_level(x, config), oracle::step_up(x, xi1));
    EXPECT_EQ(step_down_level(x, config), oracle::step_down(x, xi2));
  }
}

TEST(Selector, StepUpNeverExceedsStepDown) {
  std::mt19937_64 rng(202);
  std::uniform_int_distribution<std::size_t> sizes(1, 200);
  for (int trial = 0; trial < 10000; ++trial) {
    const auto config = random_config(rng);
    const auto x = random_observation(rng, sizes(rng));
    const auto trace = select_lambda(x, config);
    EXPECT_LE(trace.xi1_hat, trace.xi2_hat);
    EXPECT_LE(trace.lower, trace.upper);
  }
}

TEST(Selector, AgreesWithBenjaminiHochbergPValues) {
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<std::size_t> sizes(1, 200);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto config = random_config(rng);
    const auto x = random_observation(rng, sizes(rng));
    const std::size_t n = x.size();
    std::vector<double> p(n);
    std::transform(x.begin(), x.end(), p.begin(),
                   [](double v) { return 2.0 * gauss::Phi(-std::abs(v)); });
    std::sort(p.begin(), p.end());
    std::size_t k_hat = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      if (p[k - 1] <= config.alpha1 * static_cast<double>(k) / static_cast<double>(n)) k_hat = k;
    }
    const double level = step_up_level(x, config);
    // p-values and quantiles agree up to rounding at the boundary, so skip near-ties.
    bool near_tie = false;
    const auto xi1 = candidate_levels(n, config.alpha1);
    for (double v : x) {
      for (double c : xi1) near_tie |= std::abs(std::abs(v) - c) < 1e-9;
    }
    if (near_tie) continue;
    EXPECT_EQ(std::isfinite(level), k_hat > 0);
    if (k_hat > 0) {
      EXPECT_GE(exceed_count(x, xi1[k_hat - 1]), k_hat);
      EXPECT_DOUBLE_EQ(level, xi1[k_hat - 1]);
    }
  }
}

TEST(Selector, DependsOnlyOnMagnitudeMultiset) {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 500; ++trial) {
    const auto config = random_config(rng);
    auto x = random_observation(rng, 40);
    const double up = step_up_level(x, config);
    const double down = step_down_level(x, config);
    std::shuffle(x.begin(), x.end(), rng);
    for (auto& v : x) {
      if (rng() % 2) v = -v;
    }
    EXPECT_EQ(step_up_level(x, config), up);
    EXPECT_EQ(step_down_level(x, config), down);
  }
}

TEST(SelectLambda, LowerEndpointByDefault) {
  const auto trace = select_lambda(kFourPoint, four_point_config());
  EXPECT_NEAR(trace.lambda_hat, 1.4395314709, 1e-10);
  EXPECT_DOUBLE_EQ(trace.lambda_hat, trace.xi1_hat);
  EXPECT_EQ(trace.rejections, 3u);
  EXPECT_EQ(trace.exceed_counts, (std::vector<std::size_t>{1, 2, 3, 3}));
}

TEST(SelectLambda, UpperEndpointWithFullInterpolation) {
  auto config = four_point_config();
  config.interp = 1.0;
  const auto trace = select_lambda(kFourPoint, config);
  EXPECT_NEAR(trace.lambda_hat, 2.2414027276, 1e-10);
  config.interp = 0.5;
  EXPECT_NEAR(select_lambda(kFourPoint, config).lambda_hat, 0.5 * (1.4395314709 + 2.2414027276),
              1e-10);
}

TEST(SelectLambda, InflationFactors) {
  auto config = four_point_config();
  config.delta1 = 0.21;
  config.delta2 = 0.44;
  config.interp = 1.0;
  const auto trace = select_lambda(kFourPoint, config);
  EXPECT_NEAR(trace.lower, 1.1 * trace.xi1_hat, 1e-14);
  EXPECT_NEAR(trace.upper, 1.2 * trace.xi2_hat, 1e-14);
  EXPECT_DOUBLE_EQ(trace.lambda_hat, trace.upper);
}

TEST(SelectLambda, NoExceedancesGiveInfiniteLevel) {
  const std::vector<double> zeros(5, 0.0);
  for (double interp : {0.0, 0.3, 1.0}) {
    auto config = four_point_config();
    config.interp = interp;
    const auto trace = select_lambda(zeros, config);
    EXPECT_TRUE(is_infinite(trace.lambda_hat));
    EXPECT_EQ(trace.rejections, 0u);
  }
}

TEST(SelectLambda, InfiniteUpperWithPositiveInterpolation) {
  // One moderate value: step-up finds it, step-down does not.
  const std::vector<double> x = {2.1, 0.0, 0.0, 0.0};
  auto config = four_point_config();
  config.interp = 0.5;
  const auto trace = select_lambda(x, config);
  EXPECT_TRUE(std::isfinite(trace.xi1_hat));
  EXPECT_TRUE(is_infinite(trace.xi2_hat));
  EXPECT_TRUE(is_infinite(trace.lambda_hat));
  config.interp = 0.0;
  EXPECT_DOUBLE_EQ(select_lambda(x, config).lambda_hat, trace.xi1_hat);
}

TEST(G1, IdentityValues) {
  const auto g = G1Transform::identity();
  EXPECT_DOUBLE_EQ(g1_transform(2.5, g), 2.5);
  EXPECT_TRUE(is_infinite(g1_transform(kInfinity, g)));
  EXPECT_EQ(g.c1(), 2.0);
  EXPECT_EQ(g.c2(), 0.0);
  EXPECT_EQ(g.M0(), 4.0);
  EXPECT_THROW(g1_transform(-1.0, g), DomainError);
}

TEST(G1, IdentityNullRiskBound) {
  for (double x = 0.01; x <= 8.0; x += 0.01) {
    EXPECT_LE(risk_soft_point(0.0, x), 4.0 * gauss::Phi(-x) / (x * x + 2.0) * (1 + 1e-12)) << x;
  }
}

TEST(G1, ZeroTransformRejected) {
  try {
    G1Transform::custom("zero", [](double) { return 0.0; }, 2.0, 0.0, 4.0);
    FAIL() << "expected a certificate failure";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("x = "), std::string::npos);
  }
}

TEST(G1, CustomCertificateChecksShapeConditions) {
  EXPECT_THROW(G1Transform::custom("above", [](double x) { return 1.1 * x; }, 2.0, 0.0, 4.0),
               ValidationError);
  EXPECT_THROW(G1Transform::custom("identity", [](double x) { return x; }, 2.5, 0.0, 4.0),
               ValidationError);
  EXPECT_THROW(G1Transform::custom("identity", [](double x) { return x; }, 2.0, 0.5, 4.0),
               ValidationError);
  EXPECT_THROW(G1Transform::custom("empty", {}, 2.0, 0.0, 4.0), ValidationError);
  const auto ok = G1Transform::custom("identity", [](double x) { return x; }, 2.0, 0.0, 4.0);
  EXPECT_EQ(ok.kind(), G1Transform::Kind::Custom);
  EXPECT_DOUBLE_EQ(ok(1.7), 1.7);
}

TEST(G1, LogShiftTransformIsCertifiedAndBelowIdentity) {
  const auto g = G1Transform::log_shift(1.5, 0.0, 8.0);
  for (double x = 0.0; x <= 10.0; x += 0.05) {
    EXPECT_LE(g(x), x);
    EXPECT_GE(g(x), 0.0);
  }
  EXPECT_LT(g(3.0), 3.0);
  EXPECT_DOUBLE_EQ(g(0.5), 0.5);
}

TEST(Config, Validation) {
  FdrConfig config;
  EXPECT_NO_THROW(config.validate());
  config.alpha1p = config.alpha1;
  EXPECT_THROW(config.validate(), ValidationError);
  config = {};
  config.alpha2 = 0.2;
  EXPECT_THROW(config.validate(), ValidationError);
  config = {};
  config.alpha2p = 0.1;
  EXPECT_THROW(config.validate(), ValidationError);
  config = {};
  config.delta1 = 0.3;
  config.delta2 = 0.1;
  EXPECT_THROW(config.validate(), ValidationError);
  config = {};
  config.interp = 1.5;
  EXPECT_THROW(config.validate(), ValidationError);
  config = {};
  config.delta2 = kInfinity;
  EXPECT_THROW(config.validate(), ValidationError);
  EXPECT_THROW(select_lambda(kFourPoint, FdrConfig{0.1, 0.1, 0.05}), ValidationError);
}
