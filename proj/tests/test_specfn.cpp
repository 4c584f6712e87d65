#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "entrokit/specfn.hpp"

using namespace entrokit::specfn;

namespace {

// independent digamma oracle: Richardson-extrapolated central difference of
// the C library lgamma
double digamma_fd(double x) {
  const double h = std::max(1e-3, 1e-4 * x);
  const auto cd = [&](double step) {
    return (std::lgamma(x + step) - std::lgamma(x - step)) / (2.0 * step);
  };
  return (4.0 * cd(h / 2.0) - cd(h)) / 3.0;
}

}  // namespace

TEST_CASE("digamma spot values") {
  CHECK(std::fabs(digamma(1.0) + kEulerGamma) <= 1e-12);
  // recurrence from psi(1)
  CHECK(std::fabs(digamma(2.0) - (1.0 - kEulerGamma)) < 1e-10);
  CHECK(std::fabs(digamma(2.0) - 0.4227843351) < 1e-9);
  // closed form psi(1/2) = -gamma - 2 ln 2
  const double half = -kEulerGamma - 2.0 * std::log(2.0);
  CHECK(std::fabs(digamma(0.5) - half) < 1e-10);
  CHECK(std::fabs(digamma(0.5) - (-1.9635100260)) < 1e-9);
}

TEST_CASE("euler gamma constant matches -psi(1)") {
  CHECK(std::fabs(kEulerGamma + digamma(1.0)) <= 1e-12);
}

TEST_CASE("digamma recurrence psi(x+1) = psi(x) + 1/x") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(1e-6, 100.0);
  for (int t = 0; t < 1000; ++t) {
    const double x = u(rng);
    CHECK(std::fabs(digamma(x + 1.0) - digamma(x) - 1.0 / x) <= 1e-10);
  }
}

TEST_CASE("digamma against finite-difference oracle") {
  for (double x : {0.5, 1.0, 3.3, 6.0, 6.01, 25.0, 400.0, 1e4, 1e6}) {
    CHECK(std::fabs(digamma(x) - digamma_fd(x)) < 5e-9);
  }
}

TEST_CASE("log_gamma spot values") {
  CHECK(std::fabs(log_gamma(1.0)) <= 1e-12);
  CHECK(std::fabs(log_gamma(5.0) - std::log(24.0)) < 1e-10);
  CHECK(std::fabs(log_gamma(5.0) - 3.1780538303) < 1e-9);
  CHECK(std::fabs(log_gamma(0.5) - 0.5 * std::log(3.14159265358979323846)) <
        1e-10);
  CHECK(std::fabs(log_gamma(0.5) - 0.5723649429) < 1e-9);
}

TEST_CASE("log_gamma recurrence and library oracle") {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> u(1e-6, 100.0);
  for (int t = 0; t < 1000; ++t) {
    const double x = u(rng);
    CHECK(std::fabs(log_gamma(x + 1.0) - log_gamma(x) - std::log(x)) <= 1e-10);
  }
  std::uniform_real_distribution<double> exps(-3.0, 3.0);
  for (int t = 0; t < 500; ++t) {
    const double x = std::pow(10.0, exps(rng));
    CHECK(std::fabs(log_gamma(x) - std::lgamma(x)) <= 1e-10);
  }
  // absolute accuracy near the double representation limit at large x
  for (double x : {1e4, 1e5, 1e6}) {
    const double ref = std::lgamma(x);
    const double ulps = std::fabs(ref) * 2.3e-16;
    CHECK(std::fabs(log_gamma(x) - ref) <= std::max(1e-10, 4.0 * ulps));
  }
}

TEST_CASE("harmonic sums") {
  CHECK(harmonic(0) == 0.0);
  CHECK(harmonic(1) == 1.0);
  CHECK(std::fabs(harmonic(4) - 2.0833333333) < 1e-9);
  for (std::size_t k : {2ul, 10ul, 1000ul, 123456ul, 1000000ul}) {
    CHECK(std::fabs(harmonic(k) - harmonic(k - 1) - 1.0 / static_cast<double>(k)) <=
          1e-15);
  }
}

TEST_CASE("unit ball volumes") {
  const double pi = 3.14159265358979323846;
  CHECK(std::fabs(unit_ball_volume(1) - 2.0) < 1e-12);
  CHECK(std::fabs(unit_ball_volume(2) - pi) < 1e-12);
  CHECK(std::fabs(unit_ball_volume(3) - 4.0 * pi / 3.0) < 1e-10);
  CHECK(std::fabs(unit_ball_volume(3) - 4.1887902048) < 1e-9);
  for (std::size_t d = 3; d <= 30; ++d) {
    const double lhs = unit_ball_volume(d);
    const double rhs = unit_ball_volume(d - 2) * 2.0 * pi / static_cast<double>(d);
    CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::fabs(rhs));
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(digamma(0.0), std::domain_error);
  CHECK_THROWS_AS(digamma(-1.5), std::domain_error);
  CHECK_THROWS_AS(digamma(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-2.0), std::domain_error);
  CHECK_THROWS_AS(unit_ball_volume(0), std::domain_error);
}
