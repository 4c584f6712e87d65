#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "entrokit/samples.hpp"

namespace entrokit {

// k-nearest-neighbour entropy estimators for any d >= 1. HKL, HS, HK and HL
// return nats; HVIC and HN are defined in bits (base-2 logs).
enum class KnnId {
  HKL,   // Kozachenko & Leonenko (1987), k = 1
  HVIC,  // Victor (2002), k = 1, bits
  HS,    // Singh et al. (2003)
  HN,    // Nilsson & Kleijn (2004), k = 1, bits
  HK,    // Kraskov et al. (2004)
  HL,    // Leonenko et al. (2008) / Goria et al. (2005)
};

struct NeighborResult {
  std::size_t index;
  double distance;  // Euclidean
};

// Exact axis-aligned space-partitioning tree. Distances are computed with
// the same per-point operation order as the brute-force kernel, so both
// paths return identical floats with identical tie winners (ties break by
// ascending point index).
class KnnIndex {
 public:
  explicit KnnIndex(const PointCloud& cloud);

  // k nearest neighbours of point i, i itself excluded, ascending by
  // (distance, index). Throws KTooLarge unless 1 <= k <= n-1.
  std::vector<NeighborResult> query(std::size_t i, std::size_t k) const;

 private:
  struct Node {
    int axis = -1;       // -1 marks a leaf
    double split = 0.0;
    std::size_t lo = 0;  // leaf range into order_
    std::size_t hi = 0;
    int left = -1;
    int right = -1;
  };

  int build(std::size_t lo, std::size_t hi);

  const PointCloud& cloud_;
  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

// O(n^2) reference path over the batched distance kernel.
std::vector<NeighborResult> brute_force_knn(const PointCloud& cloud,
                                            std::size_t i, std::size_t k);

// Distance from point i to its k-th nearest neighbour. Throws DuplicatePoint
// when that distance is exactly zero.
double knn_distance(const PointCloud& cloud, std::size_t i, std::size_t k);

double estimate_knn(KnnId id, const PointCloud& cloud, std::size_t k,
                    bool paper_literal = false);

// True when the id is defined in bits rather than nats.
bool knn_reports_bits(KnnId id);

// True when the id ignores the supplied k and always uses k = 1.
bool knn_fixes_k(KnnId id);

std::string_view to_string(KnnId id);

}  // namespace entrokit
