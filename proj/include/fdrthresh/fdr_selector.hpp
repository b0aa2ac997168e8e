#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace fdrthresh {

/// Lower-endpoint transform g applied to the step-up level before inflation.
/// Valid transforms satisfy 0 <= g(x) <= x, 0 <= g' <= M0 and
///   R(0, g(x)) <= min{4 Phi(-x), M0 Phi(-x) / ((x^c1 + 2)(1 v log x)^c2)}
/// for x > 0; custom transforms are certified on a grid when constructed.
class G1Transform {
public:
  enum class Kind { Identity, Custom };

  /// g(x) = x, which satisfies the conditions with M0 = 4, c1 = 2, c2 = 0.
  static G1Transform identity();

  /// Arbitrary g. Throws ValidationError naming the first grid point where a
  /// condition fails.
  static G1Transform custom(std::string name, std::function<double(double)> g, double c1,
                            double c2, double M0);

  /// g(x) = (x - (2 - c1) log(1 v x) / x)_+, the parametric custom form used
  /// by configuration files.
  static G1Transform log_shift(double c1, double c2, double M0);

  Kind kind() const { return kind_; }
  double c1() const { return c1_; }
  double c2() const { return c2_; }
  double M0() const { return M0_; }
  const std::string& name() const { return name_; }

  /// g(+inf) = +inf.
  double operator()(double x) const;

private:
  G1Transform(Kind kind, std::string name, std::function<double(double)> g, double c1, double c2,
              double M0)
      : kind_(kind), name_(std::move(name)), g_(std::move(g)), c1_(c1), c2_(c2), M0_(M0) {}

  Kind kind_;
  std::string name_;
  std::function<double(double)> g_;
  double c1_;
  double c2_;
  double M0_;
};

/// Apply a g1 transform to x >= 0.
double g1_transform(double x, const G1Transform& transform);

/// Nominal levels and interval knobs for the data-driven threshold level.
struct FdrConfig {
  double alpha1 = 0.1;
  double alpha2 = 0.1;
  double alpha1p = 0.2;
  double alpha2p = 0.05;
  double delta1 = 0.0;
  double delta2 = 0.0;
  G1Transform g1 = G1Transform::identity();
  /// Position of lambda-hat inside [lower, upper]; 0 gives the lower endpoint.
  double interp = 0.0;

  /// Throws ValidationError unless 0 < alpha2' < alpha2 <= alpha1 < alpha1' < 1,
  /// 0 <= delta1 <= delta2 and interp in [0, 1].
  void validate() const;
};

/// xi_k = -Phi^{-1}(alpha k / (2n)), k = 1..n. Probabilities >= 1/2 clamp to 0.
std::vector<double> candidate_levels(std::size_t n, double alpha);

/// -Phi^{-1}(p) clamped to 0 for p >= 1/2.
double candidate_level(double tail_probability);

/// N(t) = #{i : |x_i| >= t}.
std::size_t exceed_count(std::span<const double> x, double t);

/// Step-up (Benjamini-Hochberg) level min{xi_{1,k} : N(xi_{1,k}) >= k}; +inf if empty.
double step_up_level(std::span<const double> x, const FdrConfig& config);

/// Step-down level max{xi_{2,k} : N(xi_{2,k+1}) < k + 1} over k = 0..n with
/// xi_{2,0} = +inf and xi_{2,n+1} = 0. Equals +inf only when N(xi_{2,1}) < 1.
double step_down_level(std::span<const double> x, const FdrConfig& config);

struct SelectorTrace {
  std::vector<double> xi1_candidates;
  std::vector<double> xi2_candidates;
  /// N(xi_{1,k}) for k = 1..n.
  std::vector<std::size_t> exceed_counts;
  double xi1_hat = 0.0;
  double xi2_hat = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double lambda_hat = 0.0;
  /// Number of step-up rejections #{|x_i| >= xi1_hat}.
  std::size_t rejections = 0;
};

/// lambda-hat = L + interp (U - L) with L = sqrt(1 + delta1) g1(xi1_hat) and
/// U = sqrt(1 + delta2) xi2_hat. interp = 0 always gives L; an infinite U with
/// interp > 0 gives +inf.
SelectorTrace select_lambda(std::span<const double> x, const FdrConfig& config);

}  // namespace fdrthresh
