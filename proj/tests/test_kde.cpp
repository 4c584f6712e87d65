#include <cmath>
#include <random>

#include "doctest.h"
#include "entrokit/kde.hpp"
#include "entrokit/spacing.hpp"

using namespace entrokit;

namespace {

const std::vector<double> kS8 = {0.31, 0.77, 1.06, 1.52, 2.04, 2.75, 3.01, 3.96};

// rare sample on which the printed HAN difference form stays positive
const std::vector<double> kHanOk = {
    0.05677436239291678, 0.24657553007363875, 0.45501748315239987,
    0.8886993067083327,  0.916323934973403,   0.9953616594289969};

const PointCloud kC5({0.0, 0.0, 1.0, 0.0, 0.0, 1.5, 2.0, 2.0, 3.0, 0.5}, 5, 2);

double run1d(KdeId id, const std::vector<double>& data, int m = 0) {
  KdeParams p;
  p.m = m;
  return estimate_kde(id, OrderedSample(data), p);
}

}  // namespace

TEST_CASE("normal-scale bandwidths") {
  CHECK(std::fabs(bandwidth_1d(100, 1.0).h - 0.4219936) < 1e-7);
  // 32^(-1/5) = 1/2 exactly
  CHECK(std::fabs(bandwidth_1d(32, 2.0).h - 1.06) < 1e-12);
  CHECK(std::fabs(bandwidth_1d(8, sample_sd(kS8)).h - 0.8713420754) < 1e-9);
  CHECK_THROWS_AS(bandwidth_1d(100, 0.0), DegenerateSample);
  CHECK_THROWS_AS(bandwidth_1d(1, 1.0), DegenerateSample);
}

TEST_CASE("normal-scale bandwidth matrix") {
  const std::vector<double> eye = {1.0, 0.0, 0.0, 1.0};
  const Bandwidth bw = bandwidth_matrix(100, eye, 2);
  CHECK(std::fabs(bw.matrix[0] - 0.2154435) < 1e-7);
  CHECK(bw.matrix[1] == 0.0);
  CHECK(std::fabs(bw.matrix[3] - 0.2154435) < 1e-7);
  // direct evaluation of [4/(n(d+2))]^(2/(d+4)) at d=1, n=100
  const Bandwidth b1 = bandwidth_matrix(100, {1.0}, 1);
  CHECK(std::fabs(b1.matrix[0] - 0.1778179072) < 1e-9);
  CHECK_THROWS_AS(bandwidth_matrix(100, {0.0, 0.0, 0.0, 0.0}, 2),
                  DegenerateSample);
  CHECK_THROWS_AS(bandwidth_matrix(2, eye, 2), DegenerateSample);
}

TEST_CASE("kde_pdf point evaluations") {
  Bandwidth bw;
  bw.h = 1.0;
  const OrderedSample one({0.0});
  CHECK(std::fabs(kde_pdf(0.0, one, bw) - 0.3989423) < 1e-7);
  bw.h = 2.0;
  CHECK(std::fabs(kde_pdf(0.0, one, bw) - 0.1994711) < 1e-7);
  const OrderedSample two({-1.0, 1.0});
  const Bandwidth auto_bw = bandwidth_1d(2, sample_sd(two.values()));
  CHECK(std::fabs(auto_bw.h - 1.3050130781) < 1e-9);
  CHECK(std::fabs(kde_pdf(-1.0, two, auto_bw) - 0.2000832170) < 1e-8);
}

TEST_CASE("kde_pdf integrates to one") {
  const OrderedSample s(kS8);
  const Bandwidth bw = bandwidth_1d(s.size(), sample_sd(s.values()));
  const double lo = s.min() - 8.0 * bw.h;
  const double hi = s.max() + 8.0 * bw.h;
  const int panels = 4000;
  const double step = (hi - lo) / panels;
  double integral = 0.5 * (kde_pdf(lo, s, bw) + kde_pdf(hi, s, bw));
  for (int j = 1; j < panels; ++j) {
    integral += kde_pdf(lo + j * step, s, bw);
  }
  integral *= step;
  CHECK(std::fabs(integral - 1.0) < 1e-3);
}

TEST_CASE("frozen KDE estimator values") {
  CHECK(std::fabs(run1d(KdeId::HAL, kS8) - 1.5952666598) < 5e-8);
  CHECK(std::fabs(run1d(KdeId::HAL, {-1.0, 1.0}) - 1.6090219140) < 5e-8);
  CHECK(std::fabs(run1d(KdeId::HAN2, kS8, 2) - 1.5691005406) < 5e-8);
  CHECK(std::fabs(run1d(KdeId::HZA1, kS8, 2) - 1.5548750987) < 5e-8);
  CHECK(std::fabs(run1d(KdeId::HZA2, kS8, 2) - 1.5362544530) < 5e-8);
  CHECK(std::fabs(run1d(KdeId::HB_EPS, kS8) - 1.3947735347) < 5e-8);
  CHECK(std::fabs(run1d(KdeId::HBE, kS8) - 1.3704484353) < 5e-8);
  CHECK(std::fabs(run1d(KdeId::HAN, kHanOk, 3) - 2.679757250583) < 5e-8);
}

TEST_CASE("HAN difference form fails loudly on ordinary data") {
  CHECK_THROWS_AS(run1d(KdeId::HAN, kS8, 2), NonpositiveDensityDifference);
}

TEST_CASE("multivariate HAL") {
  KdeParams p;
  CHECK(std::fabs(estimate_kde(KdeId::HAL, kC5, p) - 2.7370057751) < 5e-8);
  CHECK_THROWS_AS(estimate_kde(KdeId::HAN2, kC5, p), DimensionUnsupported);
  // affine equivariance through the covariance-coupled bandwidth:
  // H(A x) = H(x) + log|det A| for diagonal positive A
  std::vector<double> scaled = kC5.data();
  for (std::size_t i = 0; i < kC5.size(); ++i) {
    scaled[i * 2] *= 2.0;
    scaled[i * 2 + 1] *= 3.0;
  }
  const double base = estimate_kde(KdeId::HAL, kC5, p);
  const double moved = estimate_kde(KdeId::HAL, PointCloud(scaled, 5, 2), p);
  CHECK(std::fabs(moved - base - std::log(6.0)) < 1e-6);
}

TEST_CASE("HAN2 matches vasicek once boundary terms are removed") {
  const OrderedSample s(kS8);
  const std::size_t n = s.size();
  const int m = 1;
  KdeParams kp;
  kp.m = m;
  SpacingParams sp;
  sp.m = m;
  const Bandwidth bw = bandwidth_1d(n, sample_sd(s.values()));
  // strip each estimator's own i=1 and i=n contributions
  const double han2 = estimate_kde(KdeId::HAN2, s, kp) +
                      (std::log(kde_pdf(s.order(1), s, bw)) +
                       std::log(kde_pdf(s.order(n), s, bw))) /
                          static_cast<double>(n);
  const double hv =
      estimate_spacing(SpacingId::HV, s, sp) -
      (std::log(n / 2.0 * s.spacing(1, m)) +
       std::log(n / 2.0 * s.spacing(static_cast<long>(n), m))) /
          static_cast<double>(n);
  CHECK(std::fabs(han2 - hv) < 1e-12);
}

TEST_CASE("zamanzade weights normalize") {
  for (std::size_t n : {8ul, 20ul, 51ul}) {
    for (int m : {1, 2, 4}) {
      const auto w = detail::zamanzade_weights(n, m);
      double total = 0.0;
      for (double v : w) total += v;
      CHECK(std::fabs(total - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("location and scale behaviour") {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> data(16);
  for (auto& v : data) v = u(rng);
  std::vector<double> shifted = data;
  std::vector<double> scaled = data;
  for (auto& v : shifted) v += 4.25;
  for (auto& v : scaled) v *= 2.5;
  for (KdeId id : {KdeId::HAL, KdeId::HAN2, KdeId::HZA1, KdeId::HZA2}) {
    CAPTURE(to_string(id));
    const double base = run1d(id, data, 3);
    CHECK(std::fabs(run1d(id, shifted, 3) - base) < 1e-9);
    CHECK(std::fabs(run1d(id, scaled, 3) - base - std::log(2.5)) < 1e-9);
  }
  // the quantile-density integral form is exactly scale-equivariant:
  // its log-weights 2*eps + (1 - 2*eps) total exactly one
  {
    const double base = run1d(KdeId::HB_EPS, data);
    CHECK(std::fabs(run1d(KdeId::HB_EPS, scaled) - base - std::log(2.5)) <
          1e-9);
  }
  // the summation form weights total 2*eps + count/n, so its scale shift
  // carries that mass (1.0375 at n=16, eps=0.05)
  {
    const double eps = 0.05;
    const std::size_t n = data.size();
    const std::size_t lo = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(eps * n)));
    const std::size_t hi = std::min<std::size_t>(
        n, static_cast<std::size_t>(std::floor((1.0 - eps) * n)));
    const double mass =
        2.0 * eps + static_cast<double>(hi - lo + 1) / static_cast<double>(n);
    const double base = run1d(KdeId::HBE, data);
    CHECK(std::fabs(run1d(KdeId::HBE, scaled) - base - mass * std::log(2.5)) <
          1e-9);
  }
}

TEST_CASE("KDE error paths") {
  KdeParams p;
  CHECK_THROWS_AS(run1d(KdeId::HAN, kS8, 0), MissingParam);
  CHECK_THROWS_AS(run1d(KdeId::HZA1, kS8, 0), MissingParam);
  CHECK_THROWS_AS(run1d(KdeId::HAL, {3.0, 3.0, 3.0, 3.0}), DegenerateSample);
  p.epsilon = 0.7;
  CHECK_THROWS_AS(estimate_kde(KdeId::HB_EPS, OrderedSample(kS8), p),
                  ConfigError);
  p.epsilon = 0.05;
  p.quadrature_panels = 0;
  CHECK_THROWS_AS(estimate_kde(KdeId::HB_EPS, OrderedSample(kS8), p),
                  ConfigError);
  CHECK_THROWS_AS(run1d(KdeId::HZA1, {5.0, 5.0, 6.0, 7.0}, 1),
                  DegenerateSpacing);
  Bandwidth bad;
  bad.d = 2;
  bad.matrix = {1.0, 0.0, 0.0, 1.0};
  CHECK_THROWS_AS(kde_pdf(0.0, OrderedSample(kS8), bad), DimensionUnsupported);
}
