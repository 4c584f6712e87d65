#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "entrokit/samples.hpp"

namespace entrokit {

// Window-size-spacing entropy estimators. All return nats.
enum class SpacingId {
  HV,        // Vasicek (1976)
  HD,        // Dudewicz & van der Meulen (1987)
  HE_VANES,  // van Es (1992)
  HE1,       // Ebrahimi et al. (1994), coefficient form
  HE2,       // Ebrahimi et al. (1994), boundary-extended form
  HC,        // Correa (1995)
  HW1,       // Wieczorkowski & Grzegorzewski (1999), analytic correction
  HW2,       // Wieczorkowski & Grzegorzewski (1999), jackknifed Correa
  HP_PASHA,  // Pasha et al. (2005)
  HPS_PARK,  // Park & Shin (2012)
  HA,        // Alizadeh Noughabi & Arghami (2010)
  HZ,        // Zamanzade & Arghami (2011)
  HA1,       // Al-Omari (2014), SRS variant
  HA2,       // Al-Omari (2015)
  HA3,       // Al-Omari (2016)
  HK1,       // Kohansal & Rezakhah (2016), Vasicek-style on MA-smoothed data
  HK2,       // Kohansal & Rezakhah (2016), van-Es-style on MA-smoothed data
  HB1,       // Bitaraf et al. (2017)
  HB2,       // Bitaraf et al. (2017), trapezoid-weighted
  HJ,        // Alizadeh Noughabi & Jarrahiferiz (2019)
  HM,        // Madukaife (2023)
};

struct SpacingParams {
  int m = 0;  // spacing half-width, 1 <= m <= n/2
  // moving-average smoothing width for HK1/HK2; odd, 1 <= w <= n
  int ma_window = 3;
  // explicit support bounds (a, b) for HE2; unset = automatic
  // a_n = X_(1) - (X_(n)-X_(1))/(n-1), b_n mirrored above X_(n)
  std::optional<std::pair<double, double>> bounds;
  // reproduce the printed (in-range) b_n for HP_PASHA / auto HE2 bounds
  bool paper_literal = false;
};

double estimate_spacing(SpacingId id, const OrderedSample& sample,
                        const SpacingParams& params);

// Asymptotic offset E_{m,n} of the Vasicek estimator,
// log n - log 2m + (1 - 2m/n) psi(2m) - psi(n+1) + (2/n) sum psi(i+m-1).
// HW1 equals HV - E_{m,n} bit for bit by construction.
double vasicek_bias_term(int m, std::size_t n);

// m* = floor(sqrt(n) + 0.5), clamped into [1, n/2].
int optimal_window(std::size_t n);

// The window set m* +- 2 intersected with [1, n/2], ascending.
std::vector<int> window_set(std::size_t n);

// Automatic support bounds used by HE2/HP_PASHA; literal=true keeps the
// printed b_n = X_(n) - (X_(n)-X_(1))/(n-1).
std::pair<double, double> auto_support_bounds(const OrderedSample& sample,
                                              bool literal);

std::string_view to_string(SpacingId id);

}  // namespace entrokit
