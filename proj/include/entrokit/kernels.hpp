#pragma once

#include <cstddef>

// Data-parallel inner loops behind every estimator: log reductions for the
// spacing family, Gaussian kernel sums for the KDE family and batched squared
// distances for the kNN family. A scalar reference implementation always
// exists; an AVX2 variant is selected at runtime when the CPU supports it
// (override with ENTROKIT_SIMD=scalar|avx2). The two are equivalence-tested
// against each other.
//
// Multivariate point arguments use a column-major (structure-of-arrays)
// layout: coords[k*n + j] is coordinate k of point j.
namespace entrokit::kernels {

struct Ops {
  // sum_j log v[j]; all v[j] must be > 0 (callers validate).
  double (*sum_log)(const double* v, std::size_t n);
  // sum_j exp(-0.5 * ||q - p_j||^2)
  double (*gauss_sum)(const double* q, const double* coords, std::size_t n,
                      std::size_t d);
  // out[j] = ||q - p_j||^2, accumulated in dimension order so the result is
  // bit-identical between backends and with any per-point scalar evaluation.
  void (*sqdist)(const double* q, const double* coords, std::size_t n,
                 std::size_t d, double* out);
  const char* name;
};

// The runtime-selected backend.
const Ops& ops();

bool avx2_available();

namespace scalar {
double sum_log(const double* v, std::size_t n);
double gauss_sum(const double* q, const double* coords, std::size_t n,
                 std::size_t d);
void sqdist(const double* q, const double* coords, std::size_t n,
            std::size_t d, double* out);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
// Call only when avx2_available() reports true.
double sum_log(const double* v, std::size_t n);
double gauss_sum(const double* q, const double* coords, std::size_t n,
                 std::size_t d);
void sqdist(const double* q, const double* coords, std::size_t n,
            std::size_t d, double* out);
}  // namespace avx2
#endif

}  // namespace entrokit::kernels
