#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "entrokit/samples.hpp"

namespace entrokit {

// Kernel-density based entropy estimators (Gaussian kernel throughout).
// All return nats. HAL is the only id defined for d > 1.
enum class KdeId {
  HAL,     // Ahmad & Lin (1976) plug-in resubstitution
  HAN,     // Alizadeh Noughabi (2010), printed density-difference form
  HZA1,    // Zamanzade & Arghami (2012), plain average
  HZA2,    // Zamanzade & Arghami (2012), boundary-weighted average
  HAN2,    // Alizadeh Noughabi & Alizadeh Noughabi (2013) slope hybrid
  HB_EPS,  // Bouzebda et al. (2013) quantile-density integral
  HBE,     // Bouzebda & Elhattab (2014) summation form
};

struct KdeParams {
  int m = 0;                   // spacing half-width (HAN/HZA1/HZA2/HAN2)
  double epsilon = 0.05;       // boundary trim for HB_EPS/HBE, in (0, 1/2)
  int quadrature_panels = 512; // composite-trapezoid panels for HB_EPS
};

// Univariate bandwidth h, or a d x d squared-bandwidth matrix H for d > 1.
struct Bandwidth {
  double h = 0.0;
  std::size_t d = 1;
  std::vector<double> matrix;  // row-major d*d; empty means univariate
  bool univariate() const { return matrix.empty(); }
};

// Normal-scale rule h = 1.06 * sigma_hat * n^(-1/5).
Bandwidth bandwidth_1d(std::size_t n, double sigma_hat);

// Normal-scale matrix H = [4 / (n (d+2))]^(2/(d+4)) * cov_hat.
Bandwidth bandwidth_matrix(std::size_t n, const std::vector<double>& cov_hat,
                           std::size_t d);

// Gaussian-kernel density estimate at a point.
double kde_pdf(double x, const OrderedSample& sample, const Bandwidth& bw);
double kde_pdf(const double* x, const PointCloud& cloud, const Bandwidth& bw);

double estimate_kde(KdeId id, const OrderedSample& sample,
                    const KdeParams& params);
double estimate_kde(KdeId id, const PointCloud& cloud, const KdeParams& params);

// (n-1)-denominator standard deviation / covariance.
double sample_sd(const std::vector<double>& xs);
std::vector<double> sample_covariance(const PointCloud& cloud);

std::string_view to_string(KdeId id);

namespace detail {
// HZA2 boundary weights, normalized to sum to one.
std::vector<double> zamanzade_weights(std::size_t n, int m);
}  // namespace detail

}  // namespace entrokit
