#pragma once

#include <cstddef>

// Special functions shared by the estimators: digamma, log-gamma, partial
// harmonic sums and unit-ball volumes. All pure, thread-safe.
namespace entrokit::specfn {

// Euler-Mascheroni constant; equals -digamma(1).
inline constexpr double kEulerGamma = 0.57721566490153286061;

// Digamma psi(x) = d/dx log Gamma(x) for x > 0.
// Upward recurrence below 6, then the asymptotic series in 1/x^2
// truncated at the x^-12 term. Absolute error <= 1e-10 on [1e-3, 1e6].
double digamma(double x);

// log Gamma(x) for x > 0 via the Stirling series with upward shift.
double log_gamma(double x);

// Partial harmonic sum H_k = sum_{i=1..k} 1/i, H_0 = 0.
double harmonic(std::size_t k);

// Volume of the d-dimensional Euclidean unit ball, pi^(d/2)/Gamma(d/2+1).
double unit_ball_volume(std::size_t d);

}  // namespace entrokit::specfn
