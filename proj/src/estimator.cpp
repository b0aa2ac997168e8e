#include "fdrthresh/estimator.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "fdrthresh/common.hpp"

namespace fdrthresh {

namespace {

void check_family(const ThresholdFamily& family, const EstimatorOptions& options) {
  if (!family.is_smooth() && !options.allow_hard) {
    throw ValidationError(
        "hard thresholding is outside the smooth-threshold theory; set allow_hard to use it");
  }
  if (!(options.noise_scale > 0.0) || !std::isfinite(options.noise_scale)) {
    throw ValidationError("noise scale must be positive and finite");
  }
}

std::vector<double> standardize(std::span<const double> x, double scale) {
  std::vector<double> z(x.begin(), x.end());
  if (scale != 1.0) {
    for (double& v : z) v /= scale;
  }
  return z;
}

void rescale(std::vector<double>& v, double scale) {
  if (scale == 1.0) return;
  for (double& e : v) e *= scale;
}

}  // namespace

EstimateReport fdr_threshold_estimate(std::span<const double> x, const ThresholdFamily& family,
                                      const FdrConfig& config, const EstimatorOptions& options) {
  check_family(family, options);
  if (x.empty()) throw ValidationError("fdr_threshold_estimate: empty input");
  const auto z = standardize(x, options.noise_scale);

  EstimateReport report;
  report.selector_trace = select_lambda(z, config);
  report.lambda_used = report.selector_trace->lambda_hat;
  report.estimate = apply_family(family, z, report.lambda_used);
  rescale(report.estimate, options.noise_scale);
  report.family = family.describe();
  return report;
}

EstimateReport fixed_threshold_estimate(std::span<const double> x, const ThresholdFamily& family,
                                        double lambda, const EstimatorOptions& options) {
  check_family(family, options);
  if (!(lambda >= 0.0)) throw DomainError("fixed_threshold_estimate: lambda must be nonnegative");
  const auto z = standardize(x, options.noise_scale);

  EstimateReport report;
  report.lambda_used = lambda;
  report.estimate = apply_family(family, z, lambda);
  rescale(report.estimate, options.noise_scale);
  report.family = family.describe();
  return report;
}

EstimateReport universal_threshold_estimate(std::span<const double> x,
                                            const EstimatorOptions& options) {
  if (x.empty()) throw ValidationError("universal_threshold_estimate: empty input");
  const double level = std::sqrt(2.0 * std::log(static_cast<double>(x.size())));
  return fixed_threshold_estimate(x, ThresholdFamily::soft(), level, options);
}

EstimateReport sample_mean_estimate(std::span<const double> x) {
  if (x.empty()) throw ValidationError("sample_mean_estimate: empty input");
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  EstimateReport report;
  report.estimate.assign(x.size(), mean);
  report.lambda_used = std::numeric_limits<double>::quiet_NaN();
  report.family = "sample_mean";
  return report;
}

}  // namespace fdrthresh
