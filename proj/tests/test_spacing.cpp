#include <cmath>
#include <random>

#include "doctest.h"
#include "entrokit/spacing.hpp"
#include "entrokit/specfn.hpp"

using namespace entrokit;

namespace {

const std::vector<double> kS8 = {0.31, 0.77, 1.06, 1.52, 2.04, 2.75, 3.01, 3.96};
const std::vector<double> kS6 = {0.2, 0.5, 0.9, 1.6, 2.8, 3.1};

double run(SpacingId id, const std::vector<double>& data, int m, int w = 3,
           bool literal = false) {
  SpacingParams p;
  p.m = m;
  p.ma_window = w;
  p.paper_literal = literal;
  return estimate_spacing(id, OrderedSample(data), p);
}

std::vector<double> random_sample(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST_CASE("vasicek on the worked three-point sample") {
  // spacings (clamped): 1, 2, 1; terms log 1.5, log 3, log 1.5
  const double hv = run(SpacingId::HV, {1.0, 2.0, 3.0}, 1);
  CHECK(std::fabs(hv - 0.6365142) < 1e-7);
  CHECK(std::fabs(hv - (std::log(1.5) + std::log(3.0) + std::log(1.5)) / 3.0) <
        1e-14);
  // exact scale equivariance: doubling shifts by log 2
  CHECK(std::fabs(run(SpacingId::HV, {2.0, 4.0, 6.0}, 1) - hv - std::log(2.0)) <
        1e-12);
  CHECK(std::fabs(run(SpacingId::HV, {2.0, 4.0, 6.0}, 1) - 1.3296613) < 1e-7);
  CHECK(std::fabs(run(SpacingId::HE1, {1.0, 2.0, 3.0}, 1) - 1.0986123) < 1e-7);
}

TEST_CASE("frozen oracle values on the eight-point sample") {
  struct Row {
    SpacingId id;
    double at_m2;
    double at_m3;
  };
  const Row rows[] = {
      {SpacingId::HV, 1.1352633678, 1.0868128799},
      {SpacingId::HD, -0.0321645128, 0.4877195056},
      {SpacingId::HE_VANES, 1.6797918877, 1.6189505619},
      {SpacingId::HE1, 1.3804706811, 1.4070463413},
      {SpacingId::HE2, 1.4631471219, 1.4612322507},
      {SpacingId::HC, 1.2457334908, 1.2070418616},
      {SpacingId::HW1, 1.6183066634, 1.5919879503},
      {SpacingId::HW2, 1.5641921342, 1.5182328153},
      {SpacingId::HP_PASHA, 1.4038398745, 1.4461222163},
      {SpacingId::HA, 1.4818369581, 1.6066732653},
      {SpacingId::HZ, 1.6551237532, 1.9826926145},
      {SpacingId::HA1, 1.2791044040, 1.3025744342},
      {SpacingId::HA2, 1.3702651824, 1.4393156018},
      {SpacingId::HA3, 1.4032608756, 1.4516307093},
      {SpacingId::HK1, 1.4960158096, 1.4911287915},
      {SpacingId::HK2, 1.7303958284, 1.6338612909},
      {SpacingId::HB1, 1.4673248534, 1.5545261775},
      {SpacingId::HB2, 1.4602469243, 1.5808067846},
      {SpacingId::HJ, 1.4880708129, 1.6134247028},
  };
  for (const Row& r : rows) {
    CAPTURE(to_string(r.id));
    CHECK(std::fabs(run(r.id, kS8, 2) - r.at_m2) < 5e-8);
    CHECK(std::fabs(run(r.id, kS8, 3) - r.at_m3) < 5e-8);
  }
  CHECK(std::fabs(run(SpacingId::HM, kS8, 3) - 1.7639756095) < 5e-8);
  CHECK(std::fabs(run(SpacingId::HM, kS6, 1) - 0.2702882477) < 5e-8);
  CHECK(std::fabs(run(SpacingId::HD, kS6, 1) - (-0.6634730613)) < 5e-8);
  // Kohansal with a wider smoothing window
  CHECK(std::fabs(run(SpacingId::HK1, kS8, 2, 5) - 1.4600358950) < 5e-8);
  CHECK(std::fabs(run(SpacingId::HK2, kS8, 2, 5) - 1.7958244147) < 5e-8);
  // printed (in-range) Pasha b_n under --paper-literal
  CHECK(std::fabs(run(SpacingId::HP_PASHA, kS8, 2, 3, true) - 1.2544213354) < 5e-8);
  CHECK(std::fabs(run(SpacingId::HP_PASHA, kS8, 3, 3, true) - 1.3256185001) < 5e-8);
}

TEST_CASE("vasicek bias term") {
  // closed forms: psi(1) = -g, psi(2) = 1-g, psi(5) = 25/12-g
  const double g = specfn::kEulerGamma;
  const double expected = std::log(4.0) - std::log(2.0) +
                          0.5 * (1.0 - g) - (25.0 / 12.0 - g) + 0.5 * (-g);
  CHECK(std::fabs(vasicek_bias_term(1, 4) - expected) < 1e-12);
  CHECK(std::fabs(vasicek_bias_term(1, 4) - (-0.8901861)) < 1e-7);
  CHECK_THROWS_AS(vasicek_bias_term(3, 4), InvalidWindow);

  // |E| shrinks as n grows at fixed m
  double prev = std::fabs(vasicek_bias_term(1, 4));
  for (std::size_t n = 8; n <= 4096; n *= 2) {
    const double cur = std::fabs(vasicek_bias_term(1, n));
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("HW1 is HV minus the bias term, bit for bit") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    const auto data = random_sample(rng, 20);
    SpacingParams p;
    p.m = 3;
    const OrderedSample s(data);
    const double hw1 = estimate_spacing(SpacingId::HW1, s, p);
    const double hv = estimate_spacing(SpacingId::HV, s, p);
    CHECK(hw1 == hv - vasicek_bias_term(3, 20));
  }
}

TEST_CASE("window rules") {
  CHECK(optimal_window(10) == 3);
  CHECK(optimal_window(50) == 7);
  CHECK(optimal_window(100) == 10);
  CHECK(window_set(10) == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(window_set(50) == std::vector<int>{5, 6, 7, 8, 9});
  CHECK(window_set(9) == std::vector<int>{1, 2, 3, 4});
}

TEST_CASE("closed-form identities on random samples") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 10 + 3 * static_cast<std::size_t>(t);
    const auto data = random_sample(rng, n);
    const OrderedSample s(data);
    for (int m : window_set(n)) {
      SpacingParams p;
      p.m = m;
      const double hv = estimate_spacing(SpacingId::HV, s, p);
      const double he1 = estimate_spacing(SpacingId::HE1, s, p);
      const double dn = static_cast<double>(n);
      CHECK(std::fabs(he1 - hv -
                      2.0 / dn * (m * std::log(2.0 * m) + specfn::log_gamma(m) -
                                  specfn::log_gamma(2.0 * m))) <= 1e-10);
      const double ha1 = estimate_spacing(SpacingId::HA1, s, p);
      CHECK(std::fabs(ha1 - hv - 2.0 * m / dn * std::log(4.0 / 3.0)) <= 1e-10);
      const double ha2 = estimate_spacing(SpacingId::HA2, s, p);
      CHECK(std::fabs(ha2 - hv - 2.0 * m / dn * std::log(8.0 / 5.0)) <= 1e-10);
      // orderings claimed for the coefficient corrections
      CHECK(he1 > hv);
      CHECK(estimate_spacing(SpacingId::HA, s, p) > hv);
    }
  }
}

TEST_CASE("park-shin coincides with vasicek under clamping") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 10; ++t) {
    const auto data = random_sample(rng, 15);
    const OrderedSample s(data);
    for (int m : {1, 3, 7}) {
      SpacingParams p;
      p.m = m;
      CHECK(std::fabs(estimate_spacing(SpacingId::HPS_PARK, s, p) -
                      estimate_spacing(SpacingId::HV, s, p)) < 1e-12);
    }
  }
}

TEST_CASE("HE2 explicit bounds") {
  SpacingParams p;
  p.m = 2;
  const OrderedSample s(kS8);
  p.bounds = auto_support_bounds(s, false);
  CHECK(estimate_spacing(SpacingId::HE2, s, p) ==
        doctest::Approx(1.4631471219).epsilon(1e-9));
  p.bounds = std::make_pair(3.0, 1.0);
  CHECK_THROWS_AS(estimate_spacing(SpacingId::HE2, s, p), ConfigError);
}

TEST_CASE("estimator error paths") {
  SpacingParams p;
  p.m = 1;
  const OrderedSample tied({5.0, 5.0, 6.0, 7.0});
  CHECK_THROWS_AS(estimate_spacing(SpacingId::HV, tied, p), DegenerateSpacing);
  CHECK_THROWS_AS(estimate_spacing(SpacingId::HB1, tied, p), InvalidWindow);
  CHECK_THROWS_AS(estimate_spacing(SpacingId::HB2, tied, p), InvalidWindow);
  p.m = 2;
  CHECK_THROWS_AS(estimate_spacing(SpacingId::HM, OrderedSample(kS8), p),
                  InvalidWindow);
  p.m = 4;
  CHECK_THROWS_AS(estimate_spacing(SpacingId::HW2, OrderedSample(kS8), p),
                  InvalidWindow);
  p.m = 0;
  CHECK_THROWS_AS(estimate_spacing(SpacingId::HV, OrderedSample(kS8), p),
                  InvalidWindow);
  p.m = 5;
  CHECK_THROWS_AS(estimate_spacing(SpacingId::HV, OrderedSample(kS8), p),
                  InvalidWindow);
  p.m = 1;
  CHECK_THROWS_AS(
      estimate_spacing(SpacingId::HC, OrderedSample({5.0, 5.0, 5.0, 5.0}), p),
      SingularSlope);
  p.ma_window = 4;
  CHECK_THROWS_AS(estimate_spacing(SpacingId::HK1, OrderedSample(kS8), p),
                  InvalidWindow);
  p.ma_window = 9;
  CHECK_THROWS_AS(estimate_spacing(SpacingId::HK2, OrderedSample(kS8), p),
                  InvalidWindow);
  p.ma_window = 3;
  CHECK_THROWS_AS(estimate_spacing(SpacingId::HV, OrderedSample({1.0}), p),
                  DegenerateSample);
}

TEST_CASE("location and scale behaviour, sampled ids") {
  std::mt19937_64 rng(44);
  const auto data = random_sample(rng, 18);
  std::vector<double> shifted = data;
  std::vector<double> scaled = data;
  for (auto& v : shifted) v += 2.75;
  for (auto& v : scaled) v *= 3.5;
  for (SpacingId id : {SpacingId::HV, SpacingId::HE2, SpacingId::HP_PASHA,
                       SpacingId::HK2, SpacingId::HB2, SpacingId::HJ}) {
    SpacingParams p;
    p.m = 3;
    CAPTURE(to_string(id));
    const double base = estimate_spacing(id, OrderedSample(data), p);
    CHECK(std::fabs(estimate_spacing(id, OrderedSample(shifted), p) - base) <
          1e-9);
    CHECK(std::fabs(estimate_spacing(id, OrderedSample(scaled), p) - base -
                    std::log(3.5)) < 1e-9);
  }
}
