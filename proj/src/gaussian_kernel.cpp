#include "fdrthresh/gaussian_kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fdrthresh/common.hpp"

namespace fdrthresh::gauss {

namespace {

// Rational initial guess for the lower-half quantile (p <= 0.5), relative
// error about 1e-9 before refinement.
double quantile_guess(double p) {
  static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02,
                                           -2.759285104469687e+02, 1.383577518672690e+02,
                                           -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02,
                                           -1.556989798598866e+02, 6.680131188771972e+01,
                                           -1.328068155288572e+01};
  static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01,
                                           -2.400758277161838e+00, -2.549732539343734e+00,
                                           4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01,
                                           2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Quantile for p <= 0.5: rational guess plus two Newton steps on Phi.
double lower_quantile(double p) {
  double x = quantile_guess(p);
  for (int step = 0; step < 2; ++step) {
    const double density = phi(x);
    if (density <= 0.0) break;
    x -= (Phi(x) - p) / density;
  }
  return x;
}

// 16-point Gauss-Legendre nodes/weights on [-1, 1], computed once by Newton
// iteration on the Legendre recurrence.
struct GaussLegendre16 {
  static constexpr int kOrder = 16;
  std::array<double, kOrder> nodes{};
  std::array<double, kOrder> weights{};

  GaussLegendre16() {
    for (int i = 0; i < kOrder; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (kOrder + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= kOrder; ++k) {
          const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = pk;
        }
        dp = kOrder * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      nodes[i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

const GaussLegendre16& gauss_legendre() {
  static const GaussLegendre16 rule;
  return rule;
}

}  // namespace

double phi(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double Phi(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double inv_Phi(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("inv_Phi: probability must lie in (0,1), got " + std::to_string(p));
  }
  if (p == 0.5) return 0.0;
  if (p < 0.5) return lower_quantile(p);
  return -lower_quantile(1.0 - p);
}

double inv_Phi_extended(double p) {
  if (p == 0.0) return -kInfinity;
  if (p == 1.0) return kInfinity;
  return inv_Phi(p);
}

TruncatedMoments truncated_moments(double a) {
  if (std::isinf(a)) {
    return a < 0 ? TruncatedMoments{1.0, 0.0, 1.0} : TruncatedMoments{0.0, 0.0, 0.0};
  }
  const double tail = Phi(-a);
  const double density = phi(a);
  return {tail, density, tail + a * density};
}

TruncatedMoments interval_moments(double lo, double hi) {
  if (!(lo < hi)) return {0.0, 0.0, 0.0};
  // Intervals inside the lower half are reflected so both masses stay small.
  if (hi > 0.0) {
    const auto a = truncated_moments(lo);
    const auto b = truncated_moments(hi);
    return {a.m0 - b.m0, a.m1 - b.m1, a.m2 - b.m2};
  }
  // Reflect: E[Z^k 1{lo<Z<=hi}] = (-1)^k E[Z^k 1{-hi<=Z<-lo}].
  const auto a = truncated_moments(-hi);
  const auto b = truncated_moments(-lo);
  return {a.m0 - b.m0, -(a.m1 - b.m1), a.m2 - b.m2};
}

double J_k(double lambda, int k) {
  if (!(lambda > 0.0)) {
    throw DomainError("J_k: lambda must be positive");
  }
  if (k < 0 || k > 3) {
    throw DomainError("J_k: k must be in {0,1,2,3}");
  }
  // Integrand decays at least like exp(-u); the neglected tail beyond `upper`
  // is below exp(-upper^2 / (2 lambda^2)) * Gamma(k+1, upper).
  constexpr int kPanels = 64;
  const double upper = std::min(40.0 * lambda, 200.0);
  const double width = upper / kPanels;
  const double inv_two_l2 = 1.0 / (2.0 * lambda * lambda);
  const auto& rule = gauss_legendre();

  double total = 0.0;
  for (int panel = 0; panel < kPanels; ++panel) {
    const double mid = (panel + 0.5) * width;
    double sum = 0.0;
    for (int i = 0; i < GaussLegendre16::kOrder; ++i) {
      const double u = mid + 0.5 * width * rule.nodes[i];
      sum += rule.weights[i] * std::pow(u, k) * std::exp(-u - u * u * inv_two_l2);
    }
    total += 0.5 * width * sum;
  }
  return total;
}

double solve_z_n(long long n) {
  if (n < 2) {
    throw DomainError("solve_z_n: n must be at least 2");
  }
  const double target = 1.0 / (4.0 * static_cast<double>(n));
  const auto excess = [target](double z) { return Phi(-z) / (z * z) - target; };

  double lo = 1.0;
  double hi = std::sqrt(2.0 * std::log(4.0 * static_cast<double>(n))) + 3.0;
  if (!(excess(lo) > 0.0 && excess(hi) < 0.0)) {
    throw ConvergenceError("solve_z_n: bracket [1, sqrt(2 log 4n) + 3] does not contain a root");
  }
  // z -> z^{-2} Phi(-z) is strictly decreasing on (0, inf).
  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace fdrthresh::gauss
