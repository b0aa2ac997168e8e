#pragma once

#include <span>
#include <string>
#include <vector>

namespace fdrthresh {

/// Soft threshold sgn(x)(|x| - lambda)_+.
double soft(double x, double lambda);

/// Hard threshold x 1{|x| > lambda}; |x| == lambda maps to 0.
double hard(double x, double lambda);

/// Firm threshold sgn(x) min(|x|, kappa0 (|x| - lambda)_+), 1 < kappa0 < 2.
double firm(double x, double lambda, double kappa0);

/// MCP penalty lambda^2 int_0^{|mu|/lambda} (1 - u/gamma)_+ du.
double mcp_penalty(double mu, double lambda, double gamma);

/// MCP concavity parameter whose penalized least-squares solution is the
/// firm rule with slope kappa0: gamma = kappa0 / (kappa0 - 1).
double mcp_gamma_for_firm(double kappa0);

enum class ThresholdKind { Soft, Hard, Firm, Interpolated };

std::string to_string(ThresholdKind kind);
ThresholdKind threshold_kind_from_string(const std::string& name);

/// A shrinkage rule t_lambda(x) together with its Lipschitz constants:
/// kappa0 bounds the slope in x, kappa1 the sensitivity to lambda.
///
/// Interpolated rules are the pointwise convex combination
/// (1 - w) soft + w firm(kappa_firm); they stay between soft and firm with
/// kappa0 = 1 + w (kappa_firm - 1) and kappa1 = max(1, kappa_firm).
/// Hard carries kappa0 = +inf and is not a smooth rule.
class ThresholdFamily {
public:
  static ThresholdFamily soft();
  static ThresholdFamily hard();
  static ThresholdFamily firm(double kappa0);
  static ThresholdFamily interpolated(double weight, double firm_kappa0);

  ThresholdKind kind() const { return kind_; }
  double kappa0() const { return kappa0_; }
  double kappa1() const { return kappa1_; }
  double interp_weight() const { return weight_; }
  /// Slope of the firm endpoint (Firm and Interpolated only; 1 otherwise).
  double firm_kappa0() const { return firm_kappa0_; }
  bool is_smooth() const { return kind_ != ThresholdKind::Hard; }

  double operator()(double x, double lambda) const;

  /// Human-readable descriptor such as "firm(kappa0=1.5)".
  std::string describe() const;

private:
  ThresholdFamily(ThresholdKind kind, double kappa0, double kappa1, double weight,
                  double firm_kappa0)
      : kind_(kind), kappa0_(kappa0), kappa1_(kappa1), weight_(weight), firm_kappa0_(firm_kappa0) {}

  ThresholdKind kind_;
  double kappa0_;
  double kappa1_;
  double weight_;
  double firm_kappa0_;
};

/// One linear piece t(y) = slope * y + intercept on lo < y <= hi.
struct LinearPiece {
  double lo;
  double hi;
  double slope;
  double intercept;
};

/// Exact piecewise-linear representation of t_lambda on the whole real line.
std::vector<LinearPiece> linear_pieces(const ThresholdFamily& family, double lambda);

/// Componentwise t_lambda(x). lambda may be +inf (all coordinates killed).
std::vector<double> apply_family(const ThresholdFamily& family, std::span<const double> x,
                                 double lambda);

/// A local minimum of the l0-penalized least squares criterion
/// ||theta - x||^2 + sum_{k <= ||theta||_0} xi_k^2: a hard-threshold fit that
/// keeps the support_size largest |x_i|.
struct PenalizedFit {
  std::vector<double> estimate;
  std::size_t support_size = 0;
  /// xi_{k} for the selected k; +inf for the empty support.
  double implied_level = 0.0;
};

/// Every k in {0..n} with X_(k)^2 >= xi_k^2 and xi_{k+1}^2 >= X_(k+1)^2 where
/// X_(1) >= ... are the ordered |x_i|. Out-of-range terms count as satisfied.
std::vector<PenalizedFit> plse_local_minima(std::span<const double> x,
                                            std::span<const double> penalty_levels);

}  // namespace fdrthresh
