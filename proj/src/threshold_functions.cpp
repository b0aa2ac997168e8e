#include "fdrthresh/threshold_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fdrthresh/common.hpp"

namespace fdrthresh {

namespace {

void require_level(double lambda, const char* who) {
  if (!(lambda >= 0.0)) {
    throw DomainError(std::string(who) + ": threshold level must be nonnegative");
  }
}

void require_firm_slope(double kappa0, const char* who) {
  if (!(kappa0 > 1.0 && kappa0 < 2.0)) {
    throw DomainError(std::string(who) + ": kappa0 must lie in (1,2)");
  }
}

}  // namespace

double soft(double x, double lambda) {
  require_level(lambda, "soft");
  const double mag = std::abs(x) - lambda;
  return mag > 0.0 ? std::copysign(mag, x) : 0.0;
}

double hard(double x, double lambda) {
  require_level(lambda, "hard");
  return std::abs(x) > lambda ? x : 0.0;
}

double firm(double x, double lambda, double kappa0) {
  require_level(lambda, "firm");
  require_firm_slope(kappa0, "firm");
  const double ax = std::abs(x);
  const double shrunk = ax > lambda ? kappa0 * (ax - lambda) : 0.0;
  const double mag = std::min(ax, shrunk);
  return mag > 0.0 ? std::copysign(mag, x) : 0.0;
}

double mcp_penalty(double mu, double lambda, double gamma) {
  const double a = std::abs(mu);
  if (a >= gamma * lambda) return 0.5 * gamma * lambda * lambda;
  return lambda * a - a * a / (2.0 * gamma);
}

double mcp_gamma_for_firm(double kappa0) {
  require_firm_slope(kappa0, "mcp_gamma_for_firm");
  return kappa0 / (kappa0 - 1.0);
}

std::string to_string(ThresholdKind kind) {
  switch (kind) {
    case ThresholdKind::Soft: return "soft";
    case ThresholdKind::Hard: return "hard";
    case ThresholdKind::Firm: return "firm";
    case ThresholdKind::Interpolated: return "interpolated";
  }
  return "unknown";
}

ThresholdKind threshold_kind_from_string(const std::string& name) {
  if (name == "soft") return ThresholdKind::Soft;
  if (name == "hard") return ThresholdKind::Hard;
  if (name == "firm") return ThresholdKind::Firm;
  if (name == "interpolated") return ThresholdKind::Interpolated;
  throw ValidationError("unknown threshold family '" + name + "'");
}

ThresholdFamily ThresholdFamily::soft() { return {ThresholdKind::Soft, 1.0, 1.0, 0.0, 1.0}; }

ThresholdFamily ThresholdFamily::hard() {
  return {ThresholdKind::Hard, kInfinity, kInfinity, 0.0, 1.0};
}

ThresholdFamily ThresholdFamily::firm(double kappa0) {
  require_firm_slope(kappa0, "ThresholdFamily::firm");
  return {ThresholdKind::Firm, kappa0, kappa0, 1.0, kappa0};
}

ThresholdFamily ThresholdFamily::interpolated(double weight, double firm_kappa0) {
  require_firm_slope(firm_kappa0, "ThresholdFamily::interpolated");
  if (!(weight >= 0.0 && weight <= 1.0)) {
    throw DomainError("ThresholdFamily::interpolated: weight must lie in [0,1]");
  }
  return {ThresholdKind::Interpolated, 1.0 + weight * (firm_kappa0 - 1.0),
          std::max(1.0, firm_kappa0), weight, firm_kappa0};
}

double ThresholdFamily::operator()(double x, double lambda) const {
  if (is_infinite(lambda)) return 0.0;
  switch (kind_) {
    case ThresholdKind::Soft: return fdrthresh::soft(x, lambda);
    case ThresholdKind::Hard: return fdrthresh::hard(x, lambda);
    case ThresholdKind::Firm: return fdrthresh::firm(x, lambda, firm_kappa0_);
    case ThresholdKind::Interpolated:
      return (1.0 - weight_) * fdrthresh::soft(x, lambda) +
             weight_ * fdrthresh::firm(x, lambda, firm_kappa0_);
  }
  return 0.0;
}

std::string ThresholdFamily::describe() const {
  std::ostringstream os;
  os << to_string(kind_);
  if (kind_ == ThresholdKind::Firm) {
    os << "(kappa0=" << firm_kappa0_ << ")";
  } else if (kind_ == ThresholdKind::Interpolated) {
    os << "(weight=" << weight_ << ",kappa0=" << firm_kappa0_ << ")";
  }
  return os.str();
}

std::vector<LinearPiece> linear_pieces(const ThresholdFamily& family, double lambda) {
  require_level(lambda, "linear_pieces");
  if (is_infinite(lambda)) {
    return {{-kInfinity, kInfinity, 0.0, 0.0}};
  }
  const double l = lambda;
  switch (family.kind()) {
    case ThresholdKind::Soft:
      return {{-kInfinity, -l, 1.0, l}, {-l, l, 0.0, 0.0}, {l, kInfinity, 1.0, -l}};
    case ThresholdKind::Hard:
      return {{-kInfinity, -l, 1.0, 0.0}, {-l, l, 0.0, 0.0}, {l, kInfinity, 1.0, 0.0}};
    case ThresholdKind::Firm:
    case ThresholdKind::Interpolated: {
      const double kappa = family.firm_kappa0();
      const double w = family.kind() == ThresholdKind::Firm ? 1.0 : family.interp_weight();
      const double knee = kappa * l / (kappa - 1.0);
      const double mid_slope = (1.0 - w) + w * kappa;
      // Past the knee the firm part is the identity and the soft part is y - l.
      const double outer_shift = (1.0 - w) * l;
      return {{-kInfinity, -knee, 1.0, outer_shift},
              {-knee, -l, mid_slope, mid_slope * l},
              {-l, l, 0.0, 0.0},
              {l, knee, mid_slope, -mid_slope * l},
              {knee, kInfinity, 1.0, -outer_shift}};
    }
  }
  return {};
}

std::vector<double> apply_family(const ThresholdFamily& family, std::span<const double> x,
                                 double lambda) {
  require_level(lambda, "apply_family");
  std::vector<double> out(x.size());
  std::transform(x.begin(), x.end(), out.begin(),
                 [&](double xi) { return family(xi, lambda); });
  return out;
}

std::vector<PenalizedFit> plse_local_minima(std::span<const double> x,
                                            std::span<const double> penalty_levels) {
  const std::size_t n = x.size();
  if (penalty_levels.size() != n) {
    throw DomainError("plse_local_minima: need one penalty level per observation");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!(penalty_levels[k] >= 0.0)) {
      throw DomainError("plse_local_minima: penalty levels must be nonnegative");
    }
    if (k > 0 && penalty_levels[k] > penalty_levels[k - 1]) {
      throw DomainError("plse_local_minima: penalty levels must be nonincreasing");
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(x[a]) > std::abs(x[b]);
  });

  std::vector<PenalizedFit> fits;
  for (std::size_t k = 0; k <= n; ++k) {
    const bool kept_ok =
        k == 0 || x[order[k - 1]] * x[order[k - 1]] >= penalty_levels[k - 1] * penalty_levels[k - 1];
    const bool dropped_ok =
        k == n || penalty_levels[k] * penalty_levels[k] >= x[order[k]] * x[order[k]];
    if (!(kept_ok && dropped_ok)) continue;

    PenalizedFit fit;
    fit.estimate.assign(n, 0.0);
    for (std::size_t j = 0; j < k; ++j) fit.estimate[order[j]] = x[order[j]];
    fit.support_size = k;
    fit.implied_level = k == 0 ? kInfinity : penalty_levels[k - 1];
    fits.push_back(std::move(fit));
  }
  return fits;
}

}  // namespace fdrthresh
