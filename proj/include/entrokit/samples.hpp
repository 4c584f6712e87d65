#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "entrokit/errors.hpp"

namespace entrokit {

// A univariate sample held as order statistics X_(1) <= ... <= X_(n).
// Out-of-range order-statistic indices clamp to the extremes:
// X_(i) = X_(1) for i < 1 and X_(i) = X_(n) for i > n.
class OrderedSample {
 public:
  // Sorts once; the original observation order is not retained.
  // Rejects empty input and non-finite values.
  explicit OrderedSample(std::vector<double> values);

  std::size_t size() const { return values_.size(); }

  // 1-based clamped order statistic.
  double order(long i) const {
    const long n = static_cast<long>(values_.size());
    if (i < 1) i = 1;
    if (i > n) i = n;
    return values_[static_cast<std::size_t>(i - 1)];
  }

  // m-spacing at index i: X_(i+m) - X_(i-m), clamped. Always >= 0; zero
  // only for tied observations.
  double spacing(long i, int m) const { return order(i + m) - order(i + (-m)); }

  double min() const { return values_.front(); }
  double max() const { return values_.back(); }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

// An n x d multivariate sample, row-major.
class PointCloud {
 public:
  PointCloud(std::vector<double> row_major, std::size_t n, std::size_t d);
  static PointCloud from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return n_; }
  std::size_t dim() const { return d_; }
  const double* row(std::size_t i) const { return data_.data() + i * d_; }
  const std::vector<double>& data() const { return data_; }

  // Column-major copy (coords[k*n + j]) for the batched kernels.
  std::vector<double> column_major() const;

 private:
  std::vector<double> data_;
  std::size_t n_;
  std::size_t d_;
};

// Throws InvalidWindow unless 1 <= m <= floor(n/2).
void check_window(int m, std::size_t n);

// Text ingestion: one observation per line (univariate) or one
// whitespace/comma-separated row per line; lines starting with '#' and
// blank lines are ignored. Throws DataError with the offending line number.
std::vector<std::vector<double>> read_rows(std::istream& in);
OrderedSample read_univariate(std::istream& in);
PointCloud read_cloud(std::istream& in);

}  // namespace entrokit
