#include "entrokit/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace entrokit::kernels {

namespace {

constexpr Ops kScalarOps{&scalar::sum_log, &scalar::gauss_sum, &scalar::sqdist,
                         "scalar"};

#if defined(__x86_64__) || defined(_M_X64)
constexpr Ops kAvx2Ops{&avx2::sum_log, &avx2::gauss_sum, &avx2::sqdist,
                       "avx2"};
#endif

Ops select_ops() {
  const char* forced = std::getenv("ENTROKIT_SIMD");
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) {
    return kScalarOps;
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2_available()) {
    return kAvx2Ops;
  }
#endif
  return kScalarOps;
}

}  // namespace

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Ops& ops() {
  static const Ops selected = select_ops();
  return selected;
}

}  // namespace entrokit::kernels
