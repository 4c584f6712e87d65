#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "entrokit/simlab.hpp"

namespace entrokit {

// Declarative benchmark grid. Parsed from line-oriented `key = value` text;
// repeated keys (or space/comma separated values) form lists.
struct RunConfig {
  std::vector<DistKind> distributions;
  std::vector<int> dims;
  std::vector<std::size_t> sizes;
  std::vector<std::string> estimators;
  enum class MPolicy { WindowSet, Explicit };
  MPolicy m_policy = MPolicy::WindowSet;
  std::vector<int> explicit_m;
  std::vector<std::size_t> k_list = {1};
  std::size_t replicates = 10000;
  std::uint64_t seed = 1;
  double epsilon = 0.05;
  int ma_window = 3;
  int quadrature_panels = 512;
  bool paper_literal = false;
  std::string format = "csv";  // csv | md
  std::string out;             // empty = stdout
};

RunConfig parse_config(std::istream& in);

// Expands and validates the full grid before anything runs; throws
// ConfigError naming the offending cell.
std::vector<GridCell> expand_grid(const RunConfig& config);

std::string csv_header();

std::vector<MetricRow> run_grid(const RunConfig& config, unsigned threads = 0);

void write_csv(std::ostream& out, const std::vector<MetricRow>& rows);
void write_markdown(std::ostream& out, const std::vector<MetricRow>& rows);

// Full pipeline: expand, run, emit in the configured format.
void run_bench(const RunConfig& config, std::ostream& out,
               unsigned threads = 0);

}  // namespace entrokit
