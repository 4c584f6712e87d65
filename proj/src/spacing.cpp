#include "entrokit/spacing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "entrokit/kernels.hpp"
#include "entrokit/specfn.hpp"

namespace entrokit {

namespace {

double mean_log(const std::vector<double>& args) {
  return kernels::ops().sum_log(args.data(), args.size()) /
         static_cast<double>(args.size());
}

void require_positive(double v, SpacingId id, long i) {
  if (!(v > 0.0)) {
    throw DegenerateSpacing(std::string(to_string(id)) +
                            ": non-positive log argument at i=" +
                            std::to_string(i) + " (tied observations?)");
  }
}

// Vasicek-style estimators that only reweight the spacing coefficient:
// (1/n) sum log{ n/(c_i m) * (X_(i+m) - X_(i-m)) }.
template <typename Coeff>
double coefficient_estimator(SpacingId id, const OrderedSample& s, int m,
                             Coeff c_of_i) {
  const long n = static_cast<long>(s.size());
  std::vector<double> args;
  args.reserve(s.size());
  for (long i = 1; i <= n; ++i) {
    const double arg =
        static_cast<double>(n) / (c_of_i(i) * m) * s.spacing(i, m);
    require_positive(arg, id, i);
    args.push_back(arg);
  }
  return mean_log(args);
}

// Local linear regression slope over the 2m+1 window centred at i, with the
// window mean used in both numerator and denominator.
double correa_slope(const OrderedSample& s, long i, int m) {
  const double n = static_cast<double>(s.size());
  const int w = 2 * m + 1;
  double mean = 0.0;
  for (long j = i - m; j <= i + m; ++j) mean += s.order(j);
  mean /= w;
  double num = 0.0;
  double den = 0.0;
  for (long j = i - m; j <= i + m; ++j) {
    const double dx = s.order(j) - mean;
    num += dx * static_cast<double>(j - i);
    den += dx * dx;
  }
  if (den == 0.0) {
    throw SingularSlope("constant window centred at i=" + std::to_string(i));
  }
  return num / (n * den);
}

double correa(const OrderedSample& s, int m) {
  const long n = static_cast<long>(s.size());
  std::vector<double> slopes;
  slopes.reserve(s.size());
  for (long i = 1; i <= n; ++i) {
    const double b = correa_slope(s, i, m);
    require_positive(b, SpacingId::HC, i);
    slopes.push_back(b);
  }
  return -mean_log(slopes);
}

double correa_jackknife(const OrderedSample& s, int m) {
  const std::size_t n = s.size();
  if (static_cast<std::size_t>(2 * m) > n - 1) {
    throw InvalidWindow("HW2: m=" + std::to_string(m) +
                        " leaves no valid window after deleting one point");
  }
  const double hc = correa(s, m);
  double star = 0.0;
  std::vector<double> loo(n - 1);
  for (std::size_t drop = 0; drop < n; ++drop) {
    loo.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != drop) loo.push_back(s.values()[j]);
    }
    star += correa(OrderedSample(loo), m);
  }
  star /= static_cast<double>(n);
  return hc - (static_cast<double>(n) - 1.0) * (star - hc);
}

double van_es(const OrderedSample& s, int m) {
  const long n = static_cast<long>(s.size());
  std::vector<double> args;
  args.reserve(s.size());
  for (long i = 1; i <= n - m; ++i) {
    const double arg = static_cast<double>(n + 1) / m *
                       (s.order(i + m) - s.order(i));
    require_positive(arg, SpacingId::HE_VANES, i);
    args.push_back(arg);
  }
  const double mean = kernels::ops().sum_log(args.data(), args.size()) /
                      static_cast<double>(n - m);
  return mean + specfn::harmonic(n) - specfn::harmonic(m - 1) + std::log(m) -
         std::log(n + 1);
}

// Boundary-extended order statistics: linear interpolation from a up to
// X_(1) below the sample and from X_(n) up to b above it.
class ExtendedOrder {
 public:
  ExtendedOrder(const OrderedSample& s, int m, double a, double b)
      : s_(s), m_(m), a_(a), b_(b) {}

  double operator()(long u) const {
    const long n = static_cast<long>(s_.size());
    if (u >= 1 && u <= n) return s_.order(u);
    if (u <= 0) {
      return a_ + static_cast<double>(u + m_ - 1) / m_ * (s_.min() - a_);
    }
    return b_ - static_cast<double>(n - u + m_) / m_ * (b_ - s_.max());
  }

 private:
  const OrderedSample& s_;
  int m_;
  double a_;
  double b_;
};

double ebrahimi2(const OrderedSample& s, const SpacingParams& p) {
  const long n = static_cast<long>(s.size());
  const int m = p.m;
  double a;
  double b;
  if (p.bounds) {
    a = p.bounds->first;
    b = p.bounds->second;
    if (!(a < b)) {
      throw ConfigError("HE2 support bounds must satisfy a < b");
    }
  } else {
    std::tie(a, b) = auto_support_bounds(s, p.paper_literal);
  }
  const ExtendedOrder z(s, m, a, b);
  std::vector<double> args;
  args.reserve(s.size());
  for (long i = 1; i <= n; ++i) {
    double d;
    if (i <= m) {
      d = 1.0 + static_cast<double>(i + 1) / m -
          static_cast<double>(i) / (static_cast<double>(m) * m);
    } else if (i <= n - m - 1) {
      d = 2.0;
    } else {
      d = 1.0 + static_cast<double>(n - i) / (m + 1);
    }
    const double arg = static_cast<double>(n) / (d * m) * (z(i + m) - z(i - m));
    require_positive(arg, SpacingId::HE2, i);
    args.push_back(arg);
  }
  return mean_log(args);
}

double pasha(const OrderedSample& s, const SpacingParams& p) {
  const long n = static_cast<long>(s.size());
  const int m = p.m;
  const auto [a, b] = auto_support_bounds(s, p.paper_literal);
  const ExtendedOrder z(s, m, a, b);
  const bool half = (2 * m == n);
  std::vector<double> args;
  args.reserve(s.size());
  for (long i = 1; i <= n; ++i) {
    double d;
    if (i <= m) {
      d = 1.0 + static_cast<double>(i) / (i - 1 + m);
    } else if (!half && i <= n - m) {
      d = 2.0;
    } else {
      d = 1.0 + static_cast<double>(n - i + 1) / (n - i + m);
    }
    const double arg = static_cast<double>(n) / (d * m) * (z(i + m) - z(i - m));
    require_positive(arg, SpacingId::HP_PASHA, i);
    args.push_back(arg);
  }
  return mean_log(args);
}

double park_shin(const OrderedSample& s, int m) {
  const long n = static_cast<long>(s.size());
  // local density average of 2m consecutive (clamped) order statistics
  const auto xi = [&](long i) {
    double acc = 0.0;
    for (long j = i - m; j <= i + m - 1; ++j) acc += s.order(j);
    return acc / (2.0 * m);
  };
  std::vector<double> args;
  args.reserve(s.size());
  for (long i = 1; i <= n; ++i) {
    const double arg = static_cast<double>(n) * (xi(i + 1) - xi(i));
    require_positive(arg, SpacingId::HPS_PARK, i);
    args.push_back(arg);
  }
  return mean_log(args);
}

// Moving-average smoothing of the order statistics; the centred branch
// takes precedence where the index ranges meet.
std::vector<double> ma_smooth(const OrderedSample& s, int w) {
  const long n = static_cast<long>(s.size());
  if (w < 1 || w % 2 == 0 || w > n) {
    throw InvalidWindow("ma_window must be odd and within [1, n], got " +
                        std::to_string(w));
  }
  const long h = (w - 1) / 2;
  const auto& x = s.values();
  std::vector<double> y(s.size());
  for (long i = 1; i <= n; ++i) {
    double acc = 0.0;
    long lo;
    long hi;
    if (i >= h + 1 && i <= n - h) {
      lo = i - h;
      hi = i + h;
    } else if (i <= h) {
      lo = 1;
      hi = i;
    } else {
      lo = i;
      hi = n;
    }
    for (long j = lo; j <= hi; ++j) acc += x[static_cast<std::size_t>(j - 1)];
    y[static_cast<std::size_t>(i - 1)] = acc / static_cast<double>(hi - lo + 1);
  }
  return y;
}

double kohansal(const OrderedSample& s, const SpacingParams& p, bool second) {
  const long n = static_cast<long>(s.size());
  const int m = p.m;
  const std::vector<double> y = ma_smooth(s, p.ma_window);
  const auto yo = [&](long i) {
    i = std::clamp<long>(i, 1, n);
    return y[static_cast<std::size_t>(i - 1)];
  };
  if (!second) {
    std::vector<double> args;
    args.reserve(s.size());
    for (long i = 1; i <= n; ++i) {
      const double arg = yo(i + m - 1) - yo(i - m - 1);
      require_positive(arg, SpacingId::HK1, i);
      args.push_back(arg);
    }
    double c = -(1.0 - 2.0 * m / n) * specfn::digamma(2.0 * m) +
               specfn::digamma(n + 1.0);
    double acc = 0.0;
    for (int i = 1; i <= m; ++i) acc += specfn::digamma(i + m - 1.0);
    c -= 2.0 / n * acc;
    return mean_log(args) + c;
  }
  // n-m smoothed spacings, i = 2 .. n-m+1, so every index stays in range
  // and the n-m divisor matches the term count
  std::vector<double> args;
  for (long i = 2; i <= n - m + 1; ++i) {
    const double arg = yo(i + m - 1) - yo(i - 1);
    require_positive(arg, SpacingId::HK2, i);
    args.push_back(arg);
  }
  const double mean = kernels::ops().sum_log(args.data(), args.size()) /
                      static_cast<double>(n - m);
  return mean + specfn::harmonic(n) - specfn::harmonic(m - 1);
}

// Half-spacing pair shared by the Bitaraf and Madukaife estimators.
// denom_shift = 1 rescales the inner spacing denominator m-j to m-2j.
double bitaraf_like(SpacingId id, const OrderedSample& s, int m,
                    double boundary_weight, bool rescaled, bool trapezoid) {
  const long n = static_cast<long>(s.size());
  if (!rescaled && m < 2) {
    throw InvalidWindow(std::string(to_string(id)) +
                        " is undefined for m=1 (j=1 half-spacing divides by "
                        "m-1=0)");
  }
  if (rescaled && m == 2) {
    throw InvalidWindow(std::string(to_string(id)) +
                        " is undefined for m=2 (j=1 half-spacing divides by "
                        "m-2j=0)");
  }
  const auto T = [&](long i, int j) {
    const double w =
        (i <= m - j || i >= n - m + j + 1) ? boundary_weight : 2.0;
    const int denom = rescaled ? (m - 2 * j) : (m - j);
    return static_cast<double>(n) * (s.order(i + m - j) - s.order(i - m + j)) /
           (w * denom);
  };
  std::vector<double> args;
  args.reserve(s.size());
  for (long i = 1; i <= n; ++i) {
    const double t = 0.5 * (T(i, 0) + T(i, 1));
    require_positive(t, id, i);
    args.push_back(t);
  }
  if (!trapezoid) {
    return mean_log(args);
  }
  // composite trapezoid across the n log-slope values; normalizing by the
  // panel count n-1 keeps the estimator exactly scale-equivariant
  double acc = std::log(args.front()) + std::log(args.back());
  for (std::size_t i = 1; i + 1 < args.size(); ++i) {
    acc += 2.0 * std::log(args[i]);
  }
  return acc / (2.0 * (n - 1));
}

double jarrahiferiz(const OrderedSample& s, int m) {
  const long n = static_cast<long>(s.size());
  std::vector<double> slopes;
  slopes.reserve(s.size());
  for (long i = 1; i <= n; ++i) {
    double slope;
    if (i <= m) {
      const double gap = s.order(i + m) - s.order(1);
      require_positive(gap, SpacingId::HJ, i);
      slope = (static_cast<double>(m) / n) / gap;
    } else if (i <= n - m) {
      slope = correa_slope(s, i, m);
      require_positive(slope, SpacingId::HJ, i);
    } else {
      const double gap = s.order(n) - s.order(i - m);
      require_positive(gap, SpacingId::HJ, i);
      slope = (static_cast<double>(m) / n) / gap;
    }
    slopes.push_back(slope);
  }
  return -mean_log(slopes);
}

double dudewicz(const OrderedSample& s, int m) {
  const long n = static_cast<long>(s.size());
  // prefix sums of reciprocal spacings 1/(X_(j+m) - X_(j-m))
  std::vector<double> pref(static_cast<std::size_t>(n) + 1, 0.0);
  for (long j = 1; j <= n; ++j) {
    const double sp = s.spacing(j, m);
    require_positive(sp, SpacingId::HD, j);
    pref[static_cast<std::size_t>(j)] =
        pref[static_cast<std::size_t>(j - 1)] + 1.0 / sp;
  }
  const auto log_arg = [&](long hi) {
    return std::log(2.0 / n * pref[static_cast<std::size_t>(hi)]);
  };
  double total = 0.0;
  for (long i = 2 - m; i <= 0; ++i) {
    const double w = s.order(i + m) - s.order(i + m - 1);
    total += w * pref[static_cast<std::size_t>(i + m - 1)] * log_arg(i + m - 1);
  }
  for (long i = 1; i <= n + 1 - m; ++i) {
    const double w =
        s.order(i) + s.order(i + m) - s.order(i - 1) - s.order(i + m - 1);
    const double inner = pref[static_cast<std::size_t>(i + m - 1)] -
                         pref[static_cast<std::size_t>(i - 1)];
    total += w * inner * log_arg(i + m - 1);
  }
  for (long i = n + 2 - m; i <= n; ++i) {
    const double w = s.order(i) - s.order(i - 1);
    total += w * pref[static_cast<std::size_t>(n)] * log_arg(n);
  }
  return -total / n;
}

}  // namespace

double vasicek_bias_term(int m, std::size_t n) {
  check_window(m, n);
  const double dn = static_cast<double>(n);
  double acc = 0.0;
  for (int i = 1; i <= m; ++i) acc += specfn::digamma(i + m - 1.0);
  return std::log(dn) - std::log(2.0 * m) +
         (1.0 - 2.0 * m / dn) * specfn::digamma(2.0 * m) -
         specfn::digamma(dn + 1.0) + 2.0 / dn * acc;
}

int optimal_window(std::size_t n) {
  const int half = static_cast<int>(n / 2);
  const int m = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n)) + 0.5));
  return std::clamp(m, 1, std::max(half, 1));
}

std::vector<int> window_set(std::size_t n) {
  const int centre = optimal_window(n);
  const int half = std::max(static_cast<int>(n / 2), 1);
  std::vector<int> ms;
  for (int m = centre - 2; m <= centre + 2; ++m) {
    if (m >= 1 && m <= half) ms.push_back(m);
  }
  return ms;
}

std::pair<double, double> auto_support_bounds(const OrderedSample& s,
                                              bool literal) {
  const double range = s.max() - s.min();
  const double pad = range / (static_cast<double>(s.size()) - 1.0);
  const double a = s.min() - pad;
  const double b = literal ? s.max() - pad : s.max() + pad;
  return {a, b};
}

double estimate_spacing(SpacingId id, const OrderedSample& sample,
                        const SpacingParams& params) {
  const std::size_t n = sample.size();
  if (n < 2) {
    throw DegenerateSample("spacing estimators require n >= 2, got " +
                           std::to_string(n));
  }
  const int m = params.m;
  check_window(m, n);
  const long ln = static_cast<long>(n);

  switch (id) {
    case SpacingId::HV:
      return coefficient_estimator(id, sample, m, [](long) { return 2.0; });
    case SpacingId::HD:
      return dudewicz(sample, m);
    case SpacingId::HE_VANES:
      return van_es(sample, m);
    case SpacingId::HE1:
      return coefficient_estimator(id, sample, m, [&](long i) {
        if (i <= m) return 1.0 + static_cast<double>(i - 1) / m;
        if (i <= ln - m) return 2.0;
        return 1.0 + static_cast<double>(ln - i) / m;
      });
    case SpacingId::HE2:
      return ebrahimi2(sample, params);
    case SpacingId::HC:
      return correa(sample, m);
    case SpacingId::HW1:
      return estimate_spacing(SpacingId::HV, sample, params) -
             vasicek_bias_term(m, n);
    case SpacingId::HW2:
      return correa_jackknife(sample, m);
    case SpacingId::HP_PASHA:
      return pasha(sample, params);
    case SpacingId::HPS_PARK:
      return park_shin(sample, m);
    case SpacingId::HA:
      return coefficient_estimator(id, sample, m, [&](long i) {
        return (i <= m || i >= ln - m + 1) ? 1.0 : 2.0;
      });
    case SpacingId::HZ:
      return coefficient_estimator(id, sample, m, [&](long i) {
        if (i <= m) return static_cast<double>(i) / m;
        if (i <= ln - m) return 2.0;
        return static_cast<double>(ln - i + 1) / m;
      });
    case SpacingId::HA1:
      return coefficient_estimator(id, sample, m, [&](long i) {
        return (i <= m || i >= ln - m + 1) ? 1.5 : 2.0;
      });
    case SpacingId::HA2:
      return coefficient_estimator(id, sample, m, [&](long i) {
        return (i <= m || i >= ln - m + 1) ? 1.25 : 2.0;
      });
    case SpacingId::HA3:
      return coefficient_estimator(id, sample, m, [&](long i) {
        if (i <= m) return 1.0 + static_cast<double>(i - 1) / m;
        if (i <= ln - m) return 2.0;
        return 1.0 + static_cast<double>(ln - i) / (2.0 * m);
      });
    case SpacingId::HK1:
      return kohansal(sample, params, /*second=*/false);
    case SpacingId::HK2:
      return kohansal(sample, params, /*second=*/true);
    case SpacingId::HB1:
      return bitaraf_like(id, sample, m, 1.0, /*rescaled=*/false,
                          /*trapezoid=*/false);
    case SpacingId::HB2:
      return bitaraf_like(id, sample, m, 1.0, /*rescaled=*/false,
                          /*trapezoid=*/true);
    case SpacingId::HJ:
      return jarrahiferiz(sample, m);
    case SpacingId::HM:
      return bitaraf_like(id, sample, m, 4.0 / 3.0, /*rescaled=*/true,
                          /*trapezoid=*/false);
  }
  throw ConfigError("unknown spacing estimator id");
}

std::string_view to_string(SpacingId id) {
  switch (id) {
    case SpacingId::HV: return "HV";
    case SpacingId::HD: return "HD";
    case SpacingId::HE_VANES: return "HE";
    case SpacingId::HE1: return "HE1";
    case SpacingId::HE2: return "HE2";
    case SpacingId::HC: return "HC";
    case SpacingId::HW1: return "HW1";
    case SpacingId::HW2: return "HW2";
    case SpacingId::HP_PASHA: return "HP";
    case SpacingId::HPS_PARK: return "HPS";
    case SpacingId::HA: return "HA";
    case SpacingId::HZ: return "HZ";
    case SpacingId::HA1: return "HA1";
    case SpacingId::HA2: return "HA2";
    case SpacingId::HA3: return "HA3";
    case SpacingId::HK1: return "HK1";
    case SpacingId::HK2: return "HK2";
    case SpacingId::HB1: return "HB1";
    case SpacingId::HB2: return "HB2";
    case SpacingId::HJ: return "HJ";
    case SpacingId::HM: return "HM";
  }
  return "?";
}

}  // namespace entrokit
