#include "fdrthresh/fdr_selector.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "fdrthresh/common.hpp"
#include "fdrthresh/gaussian_kernel.hpp"
#include "fdrthresh/risk_engine.hpp"

namespace fdrthresh {

namespace {

constexpr double kCertificateMax = 10.0;
constexpr int kCertificatePoints = 4000;

void certify(const std::string& name, const std::function<double(double)>& g, double c1,
             double c2, double M0) {
  if (!(c1 > 0.0 && c1 <= 2.0)) throw ValidationError("g1 '" + name + "': c1 must lie in (0,2]");
  if (!(M0 > 0.0) || std::abs(c2) > M0) {
    throw ValidationError("g1 '" + name + "': need M0 > 0 and |c2| <= M0");
  }
  if (c1 == 2.0 && c2 > 0.0) throw ValidationError("g1 '" + name + "': c2 must be <= 0 when c1 = 2");

  const auto fail = [&](double x, const std::string& what) {
    std::ostringstream os;
    os << "g1 '" << name << "' fails its certificate at x = " << x << ": " << what;
    throw ValidationError(os.str());
  };

  const double h = kCertificateMax / kCertificatePoints;
  double previous = g(0.0);
  for (int i = 1; i <= kCertificatePoints; ++i) {
    const double x = h * i;
    const double gx = g(x);
    if (!(gx >= 0.0)) fail(x, "g(x) < 0");
    if (gx > x * (1.0 + 1e-12)) fail(x, "g(x) > x");
    const double slope = (gx - previous) / h;
    if (slope < -1e-9 || slope > M0 * (1.0 + 1e-9)) fail(x, "derivative outside [0, M0]");
    previous = gx;

    const double tail = gauss::Phi(-x);
    const double shaped = M0 * tail /
                          ((std::pow(x, c1) + 2.0) * std::pow(std::max(1.0, std::log(x)), c2));
    const double bound = std::min(4.0 * tail, shaped);
    if (risk_soft_point(0.0, gx) > bound * (1.0 + 1e-9)) fail(x, "R(0, g(x)) exceeds its bound");
  }
}

}  // namespace

G1Transform G1Transform::identity() {
  return {Kind::Identity, "identity", [](double x) { return x; }, 2.0, 0.0, 4.0};
}

G1Transform G1Transform::custom(std::string name, std::function<double(double)> g, double c1,
                                double c2, double M0) {
  if (!g) throw ValidationError("g1 '" + name + "': empty function");
  certify(name, g, c1, c2, M0);
  return {Kind::Custom, std::move(name), std::move(g), c1, c2, M0};
}

G1Transform G1Transform::log_shift(double c1, double c2, double M0) {
  const double shift = 2.0 - c1;
  std::ostringstream name;
  name << "log_shift(c1=" << c1 << ",c2=" << c2 << ",M0=" << M0 << ")";
  return custom(
      name.str(),
      [shift](double x) {
        if (x <= 1.0) return x;
        return std::max(0.0, x - shift * std::log(x) / x);
      },
      c1, c2, M0);
}

double G1Transform::operator()(double x) const {
  if (is_infinite(x)) return kInfinity;
  return g_(x);
}

double g1_transform(double x, const G1Transform& transform) {
  if (!(x >= 0.0)) throw DomainError("g1_transform: x must be nonnegative");
  return transform(x);
}

void FdrConfig::validate() const {
  const bool ordered = alpha2p > 0.0 && alpha2p < alpha2 && alpha2 <= alpha1 && alpha1 < alpha1p &&
                       alpha1p < 1.0;
  if (!ordered) {
    throw ValidationError("FDR levels must satisfy 0 < alpha2' < alpha2 <= alpha1 < alpha1' < 1");
  }
  if (!(delta1 >= 0.0 && delta1 <= delta2) || !std::isfinite(delta2)) {
    throw ValidationError("need 0 <= delta1 <= delta2 < inf");
  }
  if (!(interp >= 0.0 && interp <= 1.0)) throw ValidationError("interp must lie in [0,1]");
}

double candidate_level(double tail_probability) {
  if (tail_probability >= 0.5) return 0.0;
  return -gauss::inv_Phi(tail_probability);
}

std::vector<double> candidate_levels(std::size_t n, double alpha) {
  if (n == 0) throw DomainError("candidate_levels: n must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("candidate_levels: alpha must lie in (0,1)");
  std::vector<double> levels(n);
  const double denom = 2.0 * static_cast<double>(n);
  for (std::size_t k = 1; k <= n; ++k) {
    levels[k - 1] = candidate_level(alpha * static_cast<double>(k) / denom);
  }
  return levels;
}

std::size_t exceed_count(std::span<const double> x, double t) {
  if (!(t >= 0.0)) throw DomainError("exceed_count: t must be nonnegative");
  return static_cast<std::size_t>(
      std::count_if(x.begin(), x.end(), [t](double v) { return std::abs(v) >= t; }));
}

namespace {

std::vector<double> sorted_magnitudes(std::span<const double> x) {
  std::vector<double> mags(x.size());
  std::transform(x.begin(), x.end(), mags.begin(), [](double v) { return std::abs(v); });
  std::sort(mags.begin(), mags.end(), std::greater<>());
  return mags;
}

// With |x| sorted descending, N(t) >= k  <=>  |x|_(k) >= t.
double step_up_from_sorted(const std::vector<double>& mags, const std::vector<double>& xi1) {
  for (std::size_t k = mags.size(); k >= 1; --k) {
    if (mags[k - 1] >= xi1[k - 1]) return xi1[k - 1];
  }
  return kInfinity;
}

// Smallest k in 0..n with N(xi_{2,k+1}) < k + 1, i.e. |x|_(k+1) < xi_{2,k+1};
// k = n always qualifies through xi_{2,n+1} = 0.
double step_down_from_sorted(const std::vector<double>& mags, const std::vector<double>& xi2) {
  const std::size_t n = mags.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (mags[k] < xi2[k]) return k == 0 ? kInfinity : xi2[k - 1];
  }
  return xi2[n - 1];
}

}  // namespace

double step_up_level(std::span<const double> x, const FdrConfig& config) {
  if (x.empty()) throw DomainError("step_up_level: empty input");
  return step_up_from_sorted(sorted_magnitudes(x), candidate_levels(x.size(), config.alpha1));
}

double step_down_level(std::span<const double> x, const FdrConfig& config) {
  if (x.empty()) throw DomainError("step_down_level: empty input");
  return step_down_from_sorted(sorted_magnitudes(x), candidate_levels(x.size(), config.alpha2));
}

SelectorTrace select_lambda(std::span<const double> x, const FdrConfig& config) {
  config.validate();
  if (x.empty()) throw DomainError("select_lambda: empty input");
  const auto mags = sorted_magnitudes(x);

  SelectorTrace trace;
  trace.xi1_candidates = candidate_levels(x.size(), config.alpha1);
  trace.xi2_candidates = candidate_levels(x.size(), config.alpha2);
  trace.exceed_counts.resize(x.size());
  // mags is descending, so N(t) is the length of the prefix with |x| >= t.
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double t = trace.xi1_candidates[k];
    trace.exceed_counts[k] = static_cast<std::size_t>(
        std::upper_bound(mags.begin(), mags.end(), t, std::greater<>()) - mags.begin());
  }
  trace.xi1_hat = step_up_from_sorted(mags, trace.xi1_candidates);
  trace.xi2_hat = step_down_from_sorted(mags, trace.xi2_candidates);
  trace.rejections = is_infinite(trace.xi1_hat) ? 0 : exceed_count(x, trace.xi1_hat);

  trace.lower = std::sqrt(1.0 + config.delta1) * config.g1(trace.xi1_hat);
  trace.upper = std::sqrt(1.0 + config.delta2) * trace.xi2_hat;
  if (config.interp == 0.0 || is_infinite(trace.lower)) {
    trace.lambda_hat = trace.lower;
  } else if (is_infinite(trace.upper)) {
    trace.lambda_hat = kInfinity;
  } else {
    trace.lambda_hat = trace.lower + config.interp * (trace.upper - trace.lower);
  }
  return trace;
}

}  // namespace fdrthresh
