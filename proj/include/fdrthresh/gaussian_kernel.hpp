#pragma once

// Standard-normal primitives and truncated Gaussian integrals.

namespace fdrthresh::gauss {

inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;

/// Standard normal density.
double phi(double x);

/// Standard normal distribution function, evaluated through erfc so the
/// lower tail keeps full relative precision.
double Phi(double x);

/// Upper tail 1 - Phi(x) without cancellation.
inline double Phi_upper(double x) { return Phi(-x); }

/// Standard normal quantile. Throws DomainError unless 0 < p < 1.
double inv_Phi(double p);

/// Quantile that maps p = 0 and p = 1 to -inf / +inf instead of throwing.
double inv_Phi_extended(double p);

/// E[Z^k 1{Z > a}] for k = 0, 1, 2.
struct TruncatedMoments {
  double m0;
  double m1;
  double m2;
};

TruncatedMoments truncated_moments(double a);

/// E[Z^k 1{lo < Z <= hi}] for k = 0, 1, 2 (lo <= hi, either may be infinite).
TruncatedMoments interval_moments(double lo, double hi);

/// J_k(lambda) = int_0^inf u^k exp(-u - u^2 / (2 lambda^2)) du, k in {0,1,2,3}.
double J_k(double lambda, int k);

/// Root z > 0 of z^{-2} Phi(-z) = 1 / (4n), n >= 2.
double solve_z_n(long long n);

}  // namespace fdrthresh::gauss
