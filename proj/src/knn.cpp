#include "entrokit/knn.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "entrokit/kernels.hpp"
#include "entrokit/specfn.hpp"

namespace entrokit {

namespace {

constexpr std::size_t kLeafSize = 16;
constexpr std::size_t kBruteForceBelow = 32;
constexpr double kLn2 = 0.69314718055994530942;

// Same operation order as the batched kernel: per-point, dimension-major.
double point_sqdist(const double* a, const double* b, std::size_t d) {
  double s = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double diff = a[k] - b[k];
    s += diff * diff;
  }
  return s;
}

struct Cand {
  double d2;
  std::size_t idx;
};

// priority_queue top = lexicographically largest (worst) candidate
struct WorseFirst {
  bool operator()(const Cand& a, const Cand& b) const {
    if (a.d2 != b.d2) return a.d2 < b.d2;
    return a.idx < b.idx;
  }
};

using CandHeap = std::priority_queue<Cand, std::vector<Cand>, WorseFirst>;

void check_k(std::size_t k, std::size_t n) {
  if (k < 1 || k > n - 1) {
    throw KTooLarge("k=" + std::to_string(k) + " outside [1, " +
                    std::to_string(n - 1) + "]");
  }
}

std::vector<NeighborResult> heap_to_results(CandHeap& heap) {
  std::vector<NeighborResult> out(heap.size());
  for (std::size_t pos = heap.size(); pos-- > 0;) {
    out[pos] = {heap.top().idx, std::sqrt(heap.top().d2)};
    heap.pop();
  }
  return out;
}

}  // namespace

KnnIndex::KnnIndex(const PointCloud& cloud) : cloud_(cloud) {
  order_.resize(cloud.size());
  for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
  nodes_.reserve(2 * cloud.size() / kLeafSize + 2);
  root_ = build(0, cloud.size());
}

int KnnIndex::build(std::size_t lo, std::size_t hi) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  if (hi - lo <= kLeafSize) {
    nodes_[id].lo = lo;
    nodes_[id].hi = hi;
    return id;
  }
  // split on the axis with the widest extent
  const std::size_t d = cloud_.dim();
  int axis = 0;
  double best_spread = -1.0;
  for (std::size_t k = 0; k < d; ++k) {
    double mn = cloud_.row(order_[lo])[k];
    double mx = mn;
    for (std::size_t t = lo + 1; t < hi; ++t) {
      const double v = cloud_.row(order_[t])[k];
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
    if (mx - mn > best_spread) {
      best_spread = mx - mn;
      axis = static_cast<int>(k);
    }
  }
  const std::size_t mid = (lo + hi) / 2;
  std::nth_element(order_.begin() + lo, order_.begin() + mid,
                   order_.begin() + hi, [&](std::size_t a, std::size_t b) {
                     const double va = cloud_.row(a)[axis];
                     const double vb = cloud_.row(b)[axis];
                     if (va != vb) return va < vb;
                     return a < b;
                   });
  const double split = cloud_.row(order_[mid])[axis];
  nodes_[id].axis = axis;
  nodes_[id].split = split;
  const int left = build(lo, mid);
  const int right = build(mid, hi);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

std::vector<NeighborResult> KnnIndex::query(std::size_t i,
                                            std::size_t k) const {
  const std::size_t n = cloud_.size();
  check_k(k, n);
  const double* q = cloud_.row(i);
  const std::size_t d = cloud_.dim();
  CandHeap heap;

  const auto consider = [&](std::size_t idx) {
    if (idx == i) return;
    const double d2 = point_sqdist(q, cloud_.row(idx), d);
    if (heap.size() < k) {
      heap.push({d2, idx});
      return;
    }
    const Cand& top = heap.top();
    if (d2 < top.d2 || (d2 == top.d2 && idx < top.idx)) {
      heap.pop();
      heap.push({d2, idx});
    }
  };

  // recursive descent, near child first; a subtree is skipped only when the
  // axis gap strictly exceeds the current worst candidate (equality must be
  // visited so index ties resolve identically to brute force)
  const auto visit = [&](auto&& self, int node_id) -> void {
    const Node& node = nodes_[static_cast<std::size_t>(node_id)];
    if (node.axis < 0) {
      for (std::size_t t = node.lo; t < node.hi; ++t) consider(order_[t]);
      return;
    }
    const double delta = q[node.axis] - node.split;
    const int near = delta <= 0.0 ? node.left : node.right;
    const int far = delta <= 0.0 ? node.right : node.left;
    self(self, near);
    if (heap.size() < k || delta * delta <= heap.top().d2) {
      self(self, far);
    }
  };
  visit(visit, root_);
  return heap_to_results(heap);
}

std::vector<NeighborResult> brute_force_knn(const PointCloud& cloud,
                                            std::size_t i, std::size_t k) {
  const std::size_t n = cloud.size();
  check_k(k, n);
  const std::vector<double> cols = cloud.column_major();
  std::vector<double> d2(n);
  kernels::ops().sqdist(cloud.row(i), cols.data(), n, cloud.dim(), d2.data());
  CandHeap heap;
  for (std::size_t idx = 0; idx < n; ++idx) {
    if (idx == i) continue;
    if (heap.size() < k) {
      heap.push({d2[idx], idx});
      continue;
    }
    const Cand& top = heap.top();
    if (d2[idx] < top.d2 || (d2[idx] == top.d2 && idx < top.idx)) {
      heap.pop();
      heap.push({d2[idx], idx});
    }
  }
  return heap_to_results(heap);
}

double knn_distance(const PointCloud& cloud, std::size_t i, std::size_t k) {
  const auto nn = brute_force_knn(cloud, i, k);
  const double dist = nn.back().distance;
  if (dist == 0.0) {
    throw DuplicatePoint("point " + std::to_string(i) +
                         " has a duplicate within its k nearest neighbours");
  }
  return dist;
}

double estimate_knn(KnnId id, const PointCloud& cloud, std::size_t k,
                    bool paper_literal) {
  const std::size_t n = cloud.size();
  const std::size_t d = cloud.dim();
  if (knn_fixes_k(id)) k = 1;
  check_k(k, n);

  std::vector<double> deltas(n);
  if (n < kBruteForceBelow) {
    for (std::size_t i = 0; i < n; ++i) {
      deltas[i] = brute_force_knn(cloud, i, k).back().distance;
    }
  } else {
    const KnnIndex index(cloud);
    for (std::size_t i = 0; i < n; ++i) {
      deltas[i] = index.query(i, k).back().distance;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (deltas[i] == 0.0) {
      throw DuplicatePoint("duplicate points: zero k-th neighbour distance at index " +
                           std::to_string(i));
    }
  }

  const double mean_log_delta =
      kernels::ops().sum_log(deltas.data(), n) / static_cast<double>(n);
  const double dd = static_cast<double>(d);
  const double dn = static_cast<double>(n);
  const double cd = specfn::unit_ball_volume(d);
  const double gamma = specfn::kEulerGamma;

  switch (id) {
    case KnnId::HKL: {
      // density convention: f_n = [(n-1) c_d delta^d]^-1; the literal mode
      // keeps the distance unpowered as printed
      const double power = paper_literal ? 1.0 : dd;
      return std::log(dn - 1.0) + std::log(cd) + power * mean_log_delta + gamma;
    }
    case KnnId::HVIC: {
      const double v = dd * cd;  // printed volume carries an extra factor d
      return dd * mean_log_delta / kLn2 + std::log2(v * (dn - 1.0)) +
             gamma / kLn2;
    }
    case KnnId::HS:
      return dd * mean_log_delta + std::log(dn) + std::log(cd) + gamma -
             specfn::harmonic(k - 1);
    case KnnId::HN:
      return dd * mean_log_delta / kLn2 + std::log2(dn) + gamma / kLn2 +
             0.5 * std::log2(2.0 * 2.71828182845904523536);
    case KnnId::HK: {
      // printed volume 2^d c_d combined with the doubled distance
      const double v = std::pow(2.0, dd) * cd;
      return -specfn::digamma(static_cast<double>(k)) + specfn::digamma(dn) +
             std::log(v) + dd * (kLn2 + mean_log_delta);
    }
    case KnnId::HL:
      return -specfn::digamma(static_cast<double>(k)) + std::log(dn - 1.0) +
             std::log(cd) + dd * mean_log_delta;
  }
  throw ConfigError("unknown kNN estimator id");
}

bool knn_reports_bits(KnnId id) {
  return id == KnnId::HVIC || id == KnnId::HN;
}

bool knn_fixes_k(KnnId id) {
  return id == KnnId::HKL || id == KnnId::HVIC || id == KnnId::HN;
}

std::string_view to_string(KnnId id) {
  switch (id) {
    case KnnId::HKL: return "HKL";
    case KnnId::HVIC: return "HVIC";
    case KnnId::HS: return "HS";
    case KnnId::HN: return "HN";
    case KnnId::HK: return "HK";
    case KnnId::HL: return "HL";
  }
  return "?";
}

}  // namespace entrokit
