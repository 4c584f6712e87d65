#include "entrokit/specfn.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace entrokit::specfn {

namespace {

void require_positive(double x, const char* fn) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error(std::string(fn) + " requires a positive finite argument, got " +
                            std::to_string(x));
  }
}

}  // namespace

double digamma(double x) {
  require_positive(x, "digamma");
  double acc = 0.0;
  while (x < 6.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  // Asymptotic series: log x - 1/(2x) - sum B_{2k}/(2k x^{2k}), truncated
  // at the x^-12 term.
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  const double c2 = 1.0 / 12.0;
  const double c4 = -1.0 / 120.0;
  const double c6 = 1.0 / 252.0;
  const double c8 = -1.0 / 240.0;
  const double c10 = 1.0 / 132.0;
  const double c12 = -691.0 / 32760.0;
  double tail = c12;
  tail = tail * inv2 + c10;
  tail = tail * inv2 + c8;
  tail = tail * inv2 + c6;
  tail = tail * inv2 + c4;
  tail = tail * inv2 + c2;
  return acc + std::log(x) - 0.5 * inv - tail * inv2;
}

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  // Shift into the region where the Stirling series converges fast.
  double shift = 0.0;
  while (x < 10.0) {
    shift -= std::log(x);
    x += 1.0;
  }
  // Stirling: (x-1/2)log x - x + log(2 pi)/2 + sum B_{2k}/(2k(2k-1) x^{2k-1})
  const double kHalfLog2Pi = 0.91893853320467274178;
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  const double c1 = 1.0 / 12.0;
  const double c3 = -1.0 / 360.0;
  const double c5 = 1.0 / 1260.0;
  const double c7 = -1.0 / 1680.0;
  const double c9 = 1.0 / 1188.0;
  const double c11 = -691.0 / 360360.0;
  double tail = c11;
  tail = tail * inv2 + c9;
  tail = tail * inv2 + c7;
  tail = tail * inv2 + c5;
  tail = tail * inv2 + c3;
  tail = tail * inv2 + c1;
  return shift + (x - 0.5) * std::log(x) - x + kHalfLog2Pi + tail * inv;
}

double harmonic(std::size_t k) {
  double acc = 0.0;
  for (std::size_t i = 1; i <= k; ++i) {
    acc += 1.0 / static_cast<double>(i);
  }
  return acc;
}

double unit_ball_volume(std::size_t d) {
  if (d == 0) {
    throw std::domain_error("unit_ball_volume requires dimension >= 1");
  }
  const double kLogPi = 1.14472988584940017414;
  const double half_d = 0.5 * static_cast<double>(d);
  return std::exp(half_d * kLogPi - log_gamma(half_d + 1.0));
}

}  // namespace entrokit::specfn
