#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fdrthresh/fdr_selector.hpp"
#include "fdrthresh/threshold_functions.hpp"

namespace fdrthresh {

struct EstimateReport {
  std::vector<double> estimate;
  /// Threshold level used; +inf means every coordinate was set to zero.
  /// NaN for estimators that do not threshold (sample mean).
  double lambda_used = 0.0;
  std::optional<SelectorTrace> selector_trace;
  std::string family;
};

struct EstimatorOptions {
  /// Hard thresholding is not covered by the smoothness conditions; it is
  /// only accepted when explicitly requested.
  bool allow_hard = false;
  /// Known noise standard deviation. Inputs are divided by it before
  /// estimation and estimates multiplied back.
  double noise_scale = 1.0;
};

/// theta-hat = t_{lambda-hat}(x) with lambda-hat from select_lambda.
EstimateReport fdr_threshold_estimate(std::span<const double> x, const ThresholdFamily& family,
                                      const FdrConfig& config, const EstimatorOptions& options = {});

/// t_lambda(x) at a supplied level (lambda = +inf allowed).
EstimateReport fixed_threshold_estimate(std::span<const double> x, const ThresholdFamily& family,
                                        double lambda, const EstimatorOptions& options = {});

/// Soft thresholding at sqrt(2 log n).
EstimateReport universal_threshold_estimate(std::span<const double> x,
                                            const EstimatorOptions& options = {});

/// Every coordinate replaced by the mean of x.
EstimateReport sample_mean_estimate(std::span<const double> x);

}  // namespace fdrthresh
