#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fdrthresh/common.hpp"
#include "fdrthresh/gaussian_kernel.hpp"
#include "oracles.hpp"

using namespace fdrthresh;
using namespace fdrthresh::gauss;

// Reference values computed with 50-digit arithmetic.
TEST(NormalDensity, KnownValues) {
  EXPECT_NEAR(phi(0.0), 0.3989422804014327, 1e-16);
  EXPECT_NEAR(phi(2.0), 0.05399096651318805, 1e-16);
  EXPECT_EQ(phi(1.3), phi(-1.3));
  EXPECT_LE(phi(0.7), 1.0 / std::sqrt(2.0 * std::numbers::pi));
}

TEST(NormalCdf, KnownValuesAndLimits) {
  EXPECT_EQ(Phi(0.0), 0.5);
  EXPECT_NEAR(Phi(-2.0), 0.0227501319481792072, 1e-15 * 0.0227501319481792072);
  EXPECT_NEAR(Phi(-2.0), oracle::upper_tail(2.0), 1e-15);
  EXPECT_EQ(Phi(-kInfinity), 0.0);
  EXPECT_EQ(Phi(kInfinity), 1.0);
  // Far tail keeps relative precision: Phi(-37.5) ~ 4.6e-308.
  EXPECT_GT(Phi(-37.5), 0.0);
  EXPECT_NEAR(Phi(-37.5) / (phi(37.5) / 37.5), 1.0, 1e-3);
}

TEST(NormalCdf, SymmetryOnGrid) {
  for (double x = -8.0; x <= 8.0; x += 0.01) {
    ASSERT_NEAR(Phi(x) + Phi(-x), 1.0, 1e-15) << x;
  }
}

TEST(NormalCdf, MonotoneOnGrid) {
  double prev = 0.0;
  for (double x = -10.0; x <= 10.0; x += 0.005) {
    const double v = Phi(x);
    ASSERT_GE(v, prev);
    prev = v;
  }
}

TEST(NormalCdf, MillsRatioBounds) {
  for (double t = 0.01; t <= 30.0; t += 0.01) {
    const double tail = Phi(-t);
    ASSERT_GE(tail, phi(t) / (std::sqrt(std::numbers::pi / 2.0) + t)) << t;
    ASSERT_LE(tail, phi(t) / t) << t;
  }
}

TEST(NormalQuantile, KnownValues) {
  EXPECT_EQ(inv_Phi(0.5), 0.0);
  EXPECT_NEAR(inv_Phi(0.025), -1.9599639845400542, 1e-13);
  EXPECT_NEAR(inv_Phi(0.0025), -2.8070337683438041, 1e-13);
  EXPECT_NEAR(inv_Phi(0.975), 1.9599639845400542, 1e-13);
}

TEST(NormalQuantile, RoundTripLogGrid) {
  for (double e = -12.0; e <= -0.30103; e += 0.01) {
    const double p = std::pow(10.0, e);
    ASSERT_NEAR(Phi(inv_Phi(p)), p, 1e-12 * std::max(1.0, p)) << p;
    ASSERT_NEAR(Phi(inv_Phi(1.0 - p)), 1.0 - p, 1e-12) << p;
  }
}

TEST(NormalQuantile, StrictlyIncreasing) {
  double prev = -kInfinity;
  for (double p = 1e-6; p < 1.0; p += 1e-3) {
    const double q = inv_Phi(p);
    ASSERT_GT(q, prev);
    prev = q;
  }
}

TEST(NormalQuantile, DomainErrors) {
  EXPECT_THROW(inv_Phi(0.0), DomainError);
  EXPECT_THROW(inv_Phi(1.0), DomainError);
  EXPECT_THROW(inv_Phi(-0.1), DomainError);
  EXPECT_THROW(inv_Phi(std::nan("")), DomainError);
  EXPECT_EQ(inv_Phi_extended(0.0), -kInfinity);
  EXPECT_EQ(inv_Phi_extended(1.0), kInfinity);
}

TEST(TruncatedMoments, KnownValues) {
  const auto full = truncated_moments(-kInfinity);
  EXPECT_EQ(full.m0, 1.0);
  EXPECT_EQ(full.m1, 0.0);
  EXPECT_EQ(full.m2, 1.0);
  const auto half = truncated_moments(0.0);
  EXPECT_NEAR(half.m0, 0.5, 1e-16);
  EXPECT_NEAR(half.m1, 0.3989422804014327, 1e-16);
  EXPECT_NEAR(half.m2, 0.5, 1e-16);
  const auto one = truncated_moments(1.0);
  EXPECT_NEAR(one.m0, 0.15865525393145705, 1e-16);
  EXPECT_NEAR(one.m1, 0.24197072451914335, 1e-16);
  EXPECT_NEAR(one.m2, 0.40062597845060040, 1e-15);
  const auto none = truncated_moments(kInfinity);
  EXPECT_EQ(none.m0, 0.0);
  EXPECT_EQ(none.m2, 0.0);
}

TEST(TruncatedMoments, IntervalMatchesQuadrature) {
  const double cuts[][2] = {{-1.0, 2.0}, {-5.0, -3.0}, {3.0, 6.0}, {-kInfinity, -2.5}, {0.5, kInfinity}};
  for (const auto& c : cuts) {
    const auto m = interval_moments(c[0], c[1]);
    for (int k = 0; k < 3; ++k) {
      const double lo = std::max(c[0], -40.0), hi = std::min(c[1], 40.0);
      const double ref = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          [k](double z) { return std::pow(z, k) * oracle::density(z); }, lo, hi, 15, 1e-15);
      const double got = k == 0 ? m.m0 : k == 1 ? m.m1 : m.m2;
      EXPECT_NEAR(got, ref, 1e-14) << c[0] << "," << c[1] << " k=" << k;
    }
  }
}

TEST(ExponentialMoments, KnownValues) {
  const double table[][5] = {
      {0.5, 0.43818222822684617, 0.14045444294328846, 0.074431946320889429, 0.051619234891421871},
      {1.0, 0.65567954241879847, 0.34432045758120153, 0.31135908483759694, 0.37728183032480611},
      {2.0, 0.84273845857610895, 0.62904616569556421, 0.85476917152217893, 1.6132926394757980},
      {5.0, 0.96404052357657882, 0.89898691058552939, 1.6263403247762359, 4.2908374098705732},
      {10.0, 0.99028596471731921, 0.97140352826807860, 1.8882436449240609, 5.4563411612096280},
  };
  for (const auto& row : table) {
    for (int k = 0; k < 4; ++k) {
      EXPECT_NEAR(J_k(row[0], k), row[k + 1], 1e-13 * row[k + 1]) << "lambda=" << row[0] << " k=" << k;
    }
  }
}

TEST(ExponentialMoments, RecursionResidual) {
  for (double lambda : {0.5, 1.0, 2.0, 5.0, 10.0}) {
    for (int k = 0; k <= 1; ++k) {
      const double lhs = (k + 1) * J_k(lambda, k);
      const double rhs = J_k(lambda, k + 1) + J_k(lambda, k + 2) / (lambda * lambda);
      EXPECT_LE(std::abs(lhs - rhs), 1e-10 * std::abs(lhs)) << lambda << " " << k;
    }
  }
}

TEST(ExponentialMoments, LargeLevelLimitAndDomain) {
  EXPECT_NEAR(J_k(1e6, 0), 1.0, 1e-5);
  EXPECT_NEAR(J_k(1e6, 3), 6.0, 1e-3);
  EXPECT_THROW(J_k(0.0, 0), DomainError);
  EXPECT_THROW(J_k(-1.0, 0), DomainError);
  EXPECT_THROW(J_k(1.0, 4), DomainError);
}

TEST(TailRoot, KnownRoots) {
  EXPECT_NEAR(solve_z_n(2), 1.0683700301919481, 1e-12);
  EXPECT_NEAR(solve_z_n(7), 1.4435912691173897, 1e-12);
  EXPECT_NEAR(solve_z_n(100), 2.2400334737743592, 1e-12);
  EXPECT_NEAR(solve_z_n(1000000), 4.422042336437550, 1e-12);
  EXPECT_THROW(solve_z_n(1), DomainError);
}

TEST(TailRoot, SolvesItsEquation) {
  for (long long n : {2LL, 3LL, 10LL, 777LL, 100000LL}) {
    const double z = solve_z_n(n);
    EXPECT_NEAR(Phi(-z) / (z * z) * 4.0 * static_cast<double>(n), 1.0, 1e-12) << n;
  }
}

TEST(TailRoot, SquareExceedsLogN) {
  for (long long n = 2; n <= 1000; ++n) {
    const double z = solve_z_n(n);
    ASSERT_GT(z * z, std::log(static_cast<double>(n))) << n;
  }
  for (long long n : {10000LL, 1000000LL}) {
    const double z = solve_z_n(n);
    EXPECT_GT(z * z, std::log(static_cast<double>(n)));
  }
}

TEST(TailRoot, SecondOrderLowerBound) {
  for (long long n = 7; n <= 100000; n = n * 3 + 1) {
    const double z = solve_z_n(n);
    const double a = std::log(4.0 * static_cast<double>(n) / std::sqrt(2.0 * std::numbers::pi));
    EXPECT_GT(z * z, 2.0 * a - 3.0 * std::log(2.0 * a)) << n;
  }
}
