#include <cmath>
#include <cstddef>

#include "entrokit/kernels.hpp"

namespace entrokit::kernels::scalar {

double sum_log(const double* v, std::size_t n) {
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    acc += std::log(v[j]);
  }
  return acc;
}

double gauss_sum(const double* q, const double* coords, std::size_t n,
                 std::size_t d) {
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double diff = q[k] - coords[k * n + j];
      s += diff * diff;
    }
    acc += std::exp(-0.5 * s);
  }
  return acc;
}

void sqdist(const double* q, const double* coords, std::size_t n,
            std::size_t d, double* out) {
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double diff = q[k] - coords[k * n + j];
      s += diff * diff;
    }
    out[j] = s;
  }
}

}  // namespace entrokit::kernels::scalar
