#include "entrokit/kde.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "entrokit/kernels.hpp"

namespace entrokit {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310005024;
constexpr double kLog2Pi = 1.8378770664093454836;

double std_normal_pdf(double u) { return std::exp(-0.5 * u * u) / kSqrt2Pi; }

// Fitted univariate Gaussian KDE; coordinates prescaled by 1/h so each
// evaluation is a single kernel sum.
class Kde1d {
 public:
  Kde1d(const std::vector<double>& xs, double h)
      : h_(h), n_(xs.size()), scaled_(xs.size()) {
    for (std::size_t i = 0; i < xs.size(); ++i) scaled_[i] = xs[i] / h;
    norm_ = 1.0 / (static_cast<double>(n_) * h_ * kSqrt2Pi);
  }

  double operator()(double x) const {
    const double q = x / h_;
    return norm_ * kernels::ops().gauss_sum(&q, scaled_.data(), n_, 1);
  }

 private:
  double h_;
  std::size_t n_;
  std::vector<double> scaled_;
  double norm_;
};

// Lower-triangular Cholesky factor of a small SPD matrix; throws
// DegenerateSample when the matrix is not positive definite.
std::vector<double> cholesky_lower(const std::vector<double>& a,
                                   std::size_t d) {
  std::vector<double> l(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < j; ++k) sum += l[i * d + k] * l[j * d + k];
      if (i == j) {
        const double diag = a[i * d + i] - sum;
        if (!(diag > 0.0)) {
          throw DegenerateSample(
              "bandwidth matrix is not positive definite (degenerate sample)");
        }
        l[i * d + j] = std::sqrt(diag);
      } else {
        l[i * d + j] = (a[i * d + j] - sum) / l[j * d + j];
      }
    }
  }
  return l;
}

// Multivariate Gaussian KDE with squared-bandwidth matrix H: points are
// whitened once through the Cholesky factor of H, after which every
// evaluation is a Euclidean kernel sum.
class KdeNd {
 public:
  KdeNd(const PointCloud& cloud, const Bandwidth& bw)
      : n_(cloud.size()), d_(cloud.dim()), chol_(cholesky_lower(bw.matrix, d_)) {
    double log_det_sqrt = 0.0;
    for (std::size_t k = 0; k < d_; ++k) log_det_sqrt += std::log(chol_[k * d_ + k]);
    norm_ = std::exp(-0.5 * static_cast<double>(d_) * kLog2Pi - log_det_sqrt) /
            static_cast<double>(n_);
    coords_.resize(n_ * d_);
    std::vector<double> y(d_);
    for (std::size_t i = 0; i < n_; ++i) {
      whiten(cloud.row(i), y.data());
      for (std::size_t k = 0; k < d_; ++k) coords_[k * n_ + i] = y[k];
    }
  }

  double operator()(const double* x) const {
    std::vector<double> q(d_);
    whiten(x, q.data());
    return norm_ * kernels::ops().gauss_sum(q.data(), coords_.data(), n_, d_);
  }

  double at_index(std::size_t i) const {
    std::vector<double> q(d_);
    for (std::size_t k = 0; k < d_; ++k) q[k] = coords_[k * n_ + i];
    return norm_ * kernels::ops().gauss_sum(q.data(), coords_.data(), n_, d_);
  }

 private:
  // forward substitution: y = L^-1 x
  void whiten(const double* x, double* y) const {
    for (std::size_t i = 0; i < d_; ++i) {
      double acc = x[i];
      for (std::size_t k = 0; k < i; ++k) acc -= chol_[i * d_ + k] * y[k];
      y[i] = acc / chol_[i * d_ + i];
    }
  }

  std::size_t n_;
  std::size_t d_;
  std::vector<double> chol_;
  std::vector<double> coords_;  // whitened, column-major
  double norm_;
};

double mean_log(const std::vector<double>& args) {
  return kernels::ops().sum_log(args.data(), args.size()) /
         static_cast<double>(args.size());
}

Kde1d fitted_kde(const OrderedSample& s) {
  const double sd = sample_sd(s.values());
  const Bandwidth bw = bandwidth_1d(s.size(), sd);
  return Kde1d(s.values(), bw.h);
}

double ahmad_lin_1d(const OrderedSample& s) {
  const Kde1d f = fitted_kde(s);
  std::vector<double> dens;
  dens.reserve(s.size());
  for (double x : s.values()) dens.push_back(f(x));
  return -mean_log(dens);
}

double ahmad_lin_nd(const PointCloud& cloud) {
  const Bandwidth bw = bandwidth_matrix(cloud.size(), sample_covariance(cloud),
                                        cloud.dim());
  const KdeNd f(cloud, bw);
  std::vector<double> dens;
  dens.reserve(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) dens.push_back(f.at_index(i));
  return -mean_log(dens);
}

double alizadeh_difference(const OrderedSample& s, int m) {
  const long n = static_cast<long>(s.size());
  const Kde1d f = fitted_kde(s);
  std::vector<double> fx(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) fx[i] = f(s.values()[i]);
  const auto f_at = [&](long i) {
    i = std::clamp<long>(i, 1, n);
    return fx[static_cast<std::size_t>(i - 1)];
  };
  std::vector<double> args;
  args.reserve(s.size());
  std::size_t bad = 0;
  long first_bad = 0;
  for (long i = 1; i <= n; ++i) {
    const double arg = 0.5 * (f_at(i + m) - f_at(i - m));
    if (!(arg > 0.0)) {
      if (bad == 0) first_bad = i;
      ++bad;
      continue;
    }
    args.push_back(arg);
  }
  if (bad > 0) {
    throw NonpositiveDensityDifference(
        "HAN: " + std::to_string(bad) + " of " + std::to_string(n) +
        " log arguments non-positive (first at i=" + std::to_string(first_bad) +
        ")");
  }
  return -mean_log(args);
}

double alizadeh_slope_hybrid(const OrderedSample& s, int m) {
  const long n = static_cast<long>(s.size());
  const Kde1d f = fitted_kde(s);
  std::vector<double> slopes;
  slopes.reserve(s.size());
  for (long i = 1; i <= n; ++i) {
    double v;
    if (i <= m || i >= n - m + 1) {
      v = f(s.order(i));
    } else {
      const double sp = s.spacing(i, m);
      if (!(sp > 0.0)) {
        throw DegenerateSpacing("HAN2: zero spacing at i=" + std::to_string(i));
      }
      v = (2.0 * m / static_cast<double>(n)) / sp;
    }
    slopes.push_back(v);
  }
  return -mean_log(slopes);
}

std::vector<double> zamanzade_ratios(const OrderedSample& s, int m) {
  const long n = static_cast<long>(s.size());
  const Kde1d f = fitted_kde(s);
  const auto& x = s.values();
  std::vector<double> fx(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) fx[i] = f(x[i]);
  // trapezoid masses between consecutive order statistics
  std::vector<double> panel(s.size() - 1);
  for (std::size_t j = 0; j + 1 < s.size(); ++j) {
    panel[j] = 0.5 * (fx[j + 1] + fx[j]) * (x[j + 1] - x[j]);
  }
  std::vector<double> ratios;
  ratios.reserve(s.size());
  for (long i = 1; i <= n; ++i) {
    const long k1 = (i <= m) ? 1 : i - m;
    const long k2 = (i <= n - m) ? i + m : n;
    double mass = 0.0;
    for (long j = k1; j <= k2 - 1; ++j) {
      mass += panel[static_cast<std::size_t>(j - 1)];
    }
    const double num = s.spacing(i, m);
    if (!(mass > 0.0) || !(num > 0.0)) {
      throw DegenerateSpacing("HZA: degenerate mass at i=" + std::to_string(i));
    }
    ratios.push_back(num / mass);
  }
  return ratios;
}

double zamanzade(const OrderedSample& s, int m, bool weighted) {
  const std::vector<double> ratios = zamanzade_ratios(s, m);
  if (!weighted) {
    return mean_log(ratios);
  }
  const std::vector<double> w = detail::zamanzade_weights(s.size(), m);
  double acc = 0.0;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    acc += w[i] * std::log(ratios[i]);
  }
  return acc;
}

// Boundary-corrected kernel quantile-density estimator on (0,1).
class QuantileDensity {
 public:
  explicit QuantileDensity(const OrderedSample& s) : x_(s.values()) {
    const std::size_t n = x_.size();
    // bandwidth on the probability scale: normal-scale rule applied to the
    // kernel centres i/n, making the estimator exactly scale-equivariant
    std::vector<double> pos(n - 1);
    for (std::size_t i = 1; i < n; ++i) pos[i - 1] = static_cast<double>(i) / n;
    h_ = bandwidth_1d(n, sample_sd(pos)).h;
  }

  double operator()(double t) const {
    const std::size_t n = x_.size();
    double acc = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
      acc += std_normal_pdf((t - static_cast<double>(i) / n) / h_) *
             (x_[i] - x_[i - 1]);
    }
    acc += std_normal_pdf((t - 1.0) / h_) * x_.back() -
           std_normal_pdf(t / h_) * x_.front();
    return acc / h_;
  }

  double log_at(double t) const {
    const double q = (*this)(t);
    if (!(q > 0.0)) {
      throw NonpositiveDensityDifference(
          "quantile density estimate non-positive at t=" + std::to_string(t));
    }
    return std::log(q);
  }

 private:
  std::vector<double> x_;
  double h_ = 0.0;
};

double bouzebda_integral(const OrderedSample& s, const KdeParams& p) {
  const double eps = p.epsilon;
  if (!(eps > 0.0 && eps < 0.5)) {
    throw ConfigError("epsilon must lie in (0, 1/2)");
  }
  if (p.quadrature_panels < 1) {
    throw ConfigError("quadrature_panels must be >= 1");
  }
  const QuantileDensity q(s);
  const int panels = p.quadrature_panels;
  const double step = (1.0 - 2.0 * eps) / panels;
  double integral = 0.5 * (q.log_at(eps) + q.log_at(1.0 - eps));
  for (int j = 1; j < panels; ++j) {
    integral += q.log_at(eps + step * j);
  }
  integral *= step;
  return eps * q.log_at(eps) + eps * q.log_at(1.0 - eps) + integral;
}

double bouzebda_sum(const OrderedSample& s, const KdeParams& p) {
  const double eps = p.epsilon;
  if (!(eps > 0.0 && eps < 0.5)) {
    throw ConfigError("epsilon must lie in (0, 1/2)");
  }
  const QuantileDensity q(s);
  const long n = static_cast<long>(s.size());
  const long lo = std::max<long>(1, static_cast<long>(std::floor(eps * n)));
  const long hi = std::min<long>(n, static_cast<long>(std::floor((1.0 - eps) * n)));
  double acc = 0.0;
  for (long i = lo; i <= hi; ++i) {
    acc += q.log_at(static_cast<double>(i) / n);
  }
  return eps * q.log_at(eps) + eps * q.log_at(1.0 - eps) + acc / n;
}

void require_m(const KdeParams& p, std::size_t n, KdeId id) {
  if (p.m == 0) {
    throw MissingParam(std::string(to_string(id)) +
                       " requires a window size m");
  }
  check_window(p.m, n);
}

}  // namespace

Bandwidth bandwidth_1d(std::size_t n, double sigma_hat) {
  if (n < 2) {
    throw DegenerateSample("bandwidth_1d requires n >= 2");
  }
  if (!(sigma_hat > 0.0)) {
    throw DegenerateSample("zero sample standard deviation: constant sample");
  }
  Bandwidth bw;
  bw.h = 1.06 * sigma_hat * std::pow(static_cast<double>(n), -0.2);
  bw.d = 1;
  return bw;
}

Bandwidth bandwidth_matrix(std::size_t n, const std::vector<double>& cov_hat,
                           std::size_t d) {
  if (cov_hat.size() != d * d) {
    throw ConfigError("covariance matrix size does not match d*d");
  }
  if (n < d + 1) {
    throw DegenerateSample("bandwidth_matrix requires n >= d+1");
  }
  const double factor =
      std::pow(4.0 / (static_cast<double>(n) * (static_cast<double>(d) + 2.0)),
               2.0 / (static_cast<double>(d) + 4.0));
  Bandwidth bw;
  bw.d = d;
  bw.matrix.resize(d * d);
  for (std::size_t i = 0; i < d * d; ++i) bw.matrix[i] = factor * cov_hat[i];
  cholesky_lower(bw.matrix, d);  // SPD validation
  return bw;
}

double kde_pdf(double x, const OrderedSample& sample, const Bandwidth& bw) {
  if (!bw.univariate()) {
    throw DimensionUnsupported("matrix bandwidth with univariate data");
  }
  return Kde1d(sample.values(), bw.h)(x);
}

double kde_pdf(const double* x, const PointCloud& cloud, const Bandwidth& bw) {
  if (bw.univariate()) {
    if (cloud.dim() != 1) {
      throw DimensionUnsupported("scalar bandwidth with d>1 data");
    }
    return Kde1d(cloud.data(), bw.h)(x[0]);
  }
  if (bw.d != cloud.dim()) {
    throw DimensionUnsupported("bandwidth dimension does not match data");
  }
  return KdeNd(cloud, bw)(x);
}

double estimate_kde(KdeId id, const OrderedSample& sample,
                    const KdeParams& params) {
  const std::size_t n = sample.size();
  if (n < 2) {
    throw DegenerateSample("KDE estimators require n >= 2");
  }
  switch (id) {
    case KdeId::HAL:
      return ahmad_lin_1d(sample);
    case KdeId::HAN:
      require_m(params, n, id);
      return alizadeh_difference(sample, params.m);
    case KdeId::HZA1:
      require_m(params, n, id);
      return zamanzade(sample, params.m, /*weighted=*/false);
    case KdeId::HZA2:
      require_m(params, n, id);
      return zamanzade(sample, params.m, /*weighted=*/true);
    case KdeId::HAN2:
      require_m(params, n, id);
      return alizadeh_slope_hybrid(sample, params.m);
    case KdeId::HB_EPS:
      return bouzebda_integral(sample, params);
    case KdeId::HBE:
      return bouzebda_sum(sample, params);
  }
  throw ConfigError("unknown KDE estimator id");
}

double estimate_kde(KdeId id, const PointCloud& cloud, const KdeParams& params) {
  if (cloud.dim() == 1) {
    return estimate_kde(id, OrderedSample(cloud.data()), params);
  }
  if (id != KdeId::HAL) {
    throw DimensionUnsupported(std::string(to_string(id)) +
                               " is defined for univariate data only");
  }
  if (cloud.size() < 2) {
    throw DegenerateSample("KDE estimators require n >= 2");
  }
  return ahmad_lin_nd(cloud);
}

double sample_sd(const std::vector<double>& xs) {
  if (xs.size() < 2) {
    throw DegenerateSample("standard deviation requires n >= 2");
  }
  double mean = 0.0;
  for (double v : xs) mean += v;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double v : xs) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / (static_cast<double>(xs.size()) - 1.0));
}

std::vector<double> sample_covariance(const PointCloud& cloud) {
  const std::size_t n = cloud.size();
  const std::size_t d = cloud.dim();
  if (n < 2) {
    throw DegenerateSample("covariance requires n >= 2");
  }
  std::vector<double> mean(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) mean[k] += cloud.row(i)[k];
  }
  for (double& v : mean) v /= static_cast<double>(n);
  std::vector<double> cov(d * d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* r = cloud.row(i);
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b <= a; ++b) {
        cov[a * d + b] += (r[a] - mean[a]) * (r[b] - mean[b]);
      }
    }
  }
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      cov[a * d + b] /= (static_cast<double>(n) - 1.0);
      cov[b * d + a] = cov[a * d + b];
    }
  }
  return cov;
}

std::string_view to_string(KdeId id) {
  switch (id) {
    case KdeId::HAL: return "HAL";
    case KdeId::HAN: return "HAN";
    case KdeId::HZA1: return "HZA1";
    case KdeId::HZA2: return "HZA2";
    case KdeId::HAN2: return "HAN2";
    case KdeId::HB_EPS: return "HB_EPS";
    case KdeId::HBE: return "HBE";
  }
  return "?";
}

namespace detail {

std::vector<double> zamanzade_weights(std::size_t n, int m) {
  const long ln = static_cast<long>(n);
  std::vector<double> w(n);
  double total = 0.0;
  for (long i = 1; i <= ln; ++i) {
    double raw;
    if (i <= m) {
      raw = static_cast<double>(m + i - 1);
    } else if (i <= ln - m) {
      raw = 2.0 * m;
    } else {
      raw = static_cast<double>(ln - i + m);
    }
    w[static_cast<std::size_t>(i - 1)] = raw;
    total += raw;
  }
  for (double& v : w) v /= total;
  return w;
}

}  // namespace detail

}  // namespace entrokit
