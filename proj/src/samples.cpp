#include "entrokit/samples.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <string>

namespace entrokit {

OrderedSample::OrderedSample(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) {
    throw DataError("sample must contain at least one observation");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw DataError("sample contains a non-finite observation");
    }
  }
  std::sort(values_.begin(), values_.end());
}

PointCloud::PointCloud(std::vector<double> row_major, std::size_t n,
                       std::size_t d)
    : data_(std::move(row_major)), n_(n), d_(d) {
  if (n_ == 0 || d_ == 0) {
    throw DataError("point cloud must have n >= 1 and d >= 1");
  }
  if (data_.size() != n_ * d_) {
    throw DataError("point cloud storage does not match n*d");
  }
  for (double v : data_) {
    if (!std::isfinite(v)) {
      throw DataError("point cloud contains a non-finite coordinate");
    }
  }
}

PointCloud PointCloud::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) {
    throw DataError("point cloud must have n >= 1");
  }
  const std::size_t d = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * d);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != d) {
      throw DataError("row " + std::to_string(i + 1) + " has " +
                      std::to_string(rows[i].size()) + " columns, expected " +
                      std::to_string(d));
    }
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return PointCloud(std::move(flat), rows.size(), d);
}

std::vector<double> PointCloud::column_major() const {
  std::vector<double> cols(n_ * d_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < d_; ++k) {
      cols[k * n_ + i] = data_[i * d_ + k];
    }
  }
  return cols;
}

void check_window(int m, std::size_t n) {
  if (m < 1 || static_cast<std::size_t>(2 * m) > n) {
    throw InvalidWindow("window size m=" + std::to_string(m) +
                        " outside [1, " + std::to_string(n / 2) +
                        "] for n=" + std::to_string(n));
  }
}

std::vector<std::vector<double>> read_rows(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // comma separators become whitespace before tokenizing
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    std::vector<double> row;
    std::string tok;
    bool comment = false;
    while (ls >> tok) {
      if (tok.front() == '#') {
        comment = true;
        break;
      }
      try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) {
          throw std::invalid_argument(tok);
        }
        row.push_back(v);
      } catch (const std::exception&) {
        throw DataError("line " + std::to_string(lineno) +
                        ": cannot parse '" + tok + "' as a number");
      }
    }
    if (comment && row.empty()) continue;
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw DataError("line " + std::to_string(lineno) + ": expected " +
                      std::to_string(rows.front().size()) +
                      " columns, found " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw DataError("no observations found in input");
  }
  return rows;
}

OrderedSample read_univariate(std::istream& in) {
  const auto rows = read_rows(in);
  if (rows.front().size() != 1) {
    throw DataError("expected univariate data (one column), found " +
                    std::to_string(rows.front().size()) + " columns");
  }
  std::vector<double> values;
  values.reserve(rows.size());
  for (const auto& r : rows) values.push_back(r[0]);
  return OrderedSample(std::move(values));
}

PointCloud read_cloud(std::istream& in) {
  return PointCloud::from_rows(read_rows(in));
}

}  // namespace entrokit
