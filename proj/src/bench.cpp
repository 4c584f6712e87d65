#include "entrokit/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "entrokit/registry.hpp"

namespace entrokit {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_values(std::string v) {
  std::replace(v.begin(), v.end(), ',', ' ');
  std::istringstream ss(v);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

DistKind parse_dist(const std::string& name) {
  if (name == "uniform") return DistKind::Uniform01;
  if (name == "normal") return DistKind::StdNormal;
  if (name == "exponential") return DistKind::StdExponential;
  throw ConfigError("unknown distribution '" + name +
                    "' (expected uniform|normal|exponential)");
}

long parse_long(const std::string& tok, const std::string& key) {
  try {
    std::size_t used = 0;
    const long v = std::stol(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': cannot parse '" + tok +
                      "' as an integer");
  }
}

double parse_double(const std::string& tok, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': cannot parse '" + tok +
                      "' as a number");
  }
}

bool parse_bool(const std::string& tok, const std::string& key) {
  if (tok == "true" || tok == "1" || tok == "yes") return true;
  if (tok == "false" || tok == "0" || tok == "no") return false;
  throw ConfigError("key '" + key + "': expected true|false, got '" + tok + "'");
}

std::string cell_label(const std::string& est, DistKind dist, int d,
                       std::size_t n) {
  return est + " x " + std::string(to_string(dist)) + " d=" +
         std::to_string(d) + " n=" + std::to_string(n);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

MetricRow failed_row(const GridCell& cell) {
  MetricRow row;
  row.distribution = std::string(to_string(cell.dist.kind));
  row.d = cell.dist.d;
  row.n = cell.n;
  row.estimator = estimator_name(cell.est);
  std::tie(row.param_name, row.param_value) = estimator_param(cell.est);
  row.n_reps = cell.replicates;
  row.failures = cell.replicates;
  row.seed = cell.seed;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  row.rmse = row.abs_bias = row.mean = nan;
  row.qmin = row.q1 = row.median = row.q3 = row.qmax = nan;
  return row;
}

}  // namespace

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  bool k_seen = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty value for key '" + key + "'");
    }
    const auto values = split_values(value);
    if (key == "distribution") {
      for (const auto& v : values) cfg.distributions.push_back(parse_dist(v));
    } else if (key == "d") {
      for (const auto& v : values)
        cfg.dims.push_back(static_cast<int>(parse_long(v, key)));
    } else if (key == "n") {
      for (const auto& v : values)
        cfg.sizes.push_back(static_cast<std::size_t>(parse_long(v, key)));
    } else if (key == "estimator") {
      for (const auto& v : values) cfg.estimators.push_back(v);
    } else if (key == "m_policy") {
      if (value == "window_set") {
        cfg.m_policy = RunConfig::MPolicy::WindowSet;
      } else if (value == "explicit") {
        cfg.m_policy = RunConfig::MPolicy::Explicit;
      } else {
        throw ConfigError("m_policy must be window_set or explicit");
      }
    } else if (key == "m") {
      for (const auto& v : values)
        cfg.explicit_m.push_back(static_cast<int>(parse_long(v, key)));
    } else if (key == "k") {
      if (!k_seen) {
        cfg.k_list.clear();
        k_seen = true;
      }
      for (const auto& v : values)
        cfg.k_list.push_back(static_cast<std::size_t>(parse_long(v, key)));
    } else if (key == "reps") {
      cfg.replicates = static_cast<std::size_t>(parse_long(value, key));
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_long(value, key));
    } else if (key == "epsilon") {
      cfg.epsilon = parse_double(value, key);
    } else if (key == "ma_window") {
      cfg.ma_window = static_cast<int>(parse_long(value, key));
    } else if (key == "panels") {
      cfg.quadrature_panels = static_cast<int>(parse_long(value, key));
    } else if (key == "paper_literal") {
      cfg.paper_literal = parse_bool(value, key);
    } else if (key == "format") {
      if (value != "csv" && value != "md") {
        throw ConfigError("format must be csv or md");
      }
      cfg.format = value;
    } else if (key == "out") {
      cfg.out = value;
    } else {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

std::vector<GridCell> expand_grid(const RunConfig& cfg) {
  if (cfg.distributions.empty()) throw ConfigError("no distribution given");
  if (cfg.sizes.empty()) throw ConfigError("no sample size n given");
  if (cfg.estimators.empty()) throw ConfigError("no estimator given");
  if (cfg.replicates < 1) throw ConfigError("reps must be >= 1");
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 0.5)) {
    throw ConfigError("epsilon must lie in (0, 1/2)");
  }
  if (cfg.m_policy == RunConfig::MPolicy::Explicit && cfg.explicit_m.empty()) {
    throw ConfigError("m_policy = explicit requires at least one m");
  }
  std::vector<int> dims = cfg.dims;
  if (dims.empty()) dims.push_back(1);

  std::vector<const EstimatorInfo*> infos;
  for (const auto& name : cfg.estimators) {
    const EstimatorInfo* info = find_estimator(name);
    if (info == nullptr) {
      throw ConfigError("unknown estimator '" + name + "'");
    }
    infos.push_back(info);
  }

  std::vector<GridCell> cells;
  std::size_t counter = 0;
  const auto push_cell = [&](TestDistribution dist, std::size_t n,
                             EstimatorSpec est) {
    GridCell cell;
    cell.dist = dist;
    cell.n = n;
    cell.est = std::move(est);
    cell.replicates = cfg.replicates;
    cell.seed = derive_seed(cfg.seed, counter++);
    cells.push_back(std::move(cell));
  };

  for (const DistKind kind : cfg.distributions) {
    for (const int d : dims) {
      if (d < 1) throw ConfigError("dimension d must be >= 1");
      const TestDistribution dist{kind, d};
      for (const std::size_t n : cfg.sizes) {
        for (const EstimatorInfo* info : infos) {
          const std::string label =
              cell_label(std::string(info->name), kind, d, n);
          if (d > 1 && !info->multivariate) {
            throw ConfigError(label + ": estimator is univariate only");
          }
          if (info->family != Family::Knn && n < 4) {
            throw ConfigError(label + ": requires n >= 4");
          }
          // window sizes for m-parameterized estimators
          std::vector<int> ms;
          if (info->takes_m) {
            if (cfg.m_policy == RunConfig::MPolicy::WindowSet) {
              ms = window_set(n);
            } else {
              for (const int m : cfg.explicit_m) {
                if (m < 1 || static_cast<std::size_t>(2 * m) > n) {
                  throw ConfigError(label + ": m=" + std::to_string(m) +
                                    " outside [1, " + std::to_string(n / 2) +
                                    "]");
                }
                ms.push_back(m);
              }
            }
          }
          if (info->family == Family::Spacing) {
            if (info->spacing == SpacingId::HK1 ||
                info->spacing == SpacingId::HK2) {
              if (cfg.ma_window < 1 || cfg.ma_window % 2 == 0 ||
                  static_cast<std::size_t>(cfg.ma_window) > n) {
                throw ConfigError(label + ": ma_window must be odd and <= n");
              }
            }
            for (const int m : ms) {
              SpacingParams p;
              p.m = m;
              p.ma_window = cfg.ma_window;
              p.paper_literal = cfg.paper_literal;
              push_cell(dist, n, SpacingSpec{info->spacing, p});
            }
          } else if (info->family == Family::Kde) {
            KdeParams p;
            p.epsilon = cfg.epsilon;
            p.quadrature_panels = cfg.quadrature_panels;
            if (info->takes_m) {
              for (const int m : ms) {
                p.m = m;
                push_cell(dist, n, KdeSpec{info->kde, p});
              }
            } else {
              push_cell(dist, n, KdeSpec{info->kde, p});
            }
          } else {
            std::vector<std::size_t> ks = info->takes_k
                                              ? cfg.k_list
                                              : std::vector<std::size_t>{1};
            for (const std::size_t k : ks) {
              if (k < 1 || k > n - 1) {
                throw ConfigError(label + ": k=" + std::to_string(k) +
                                  " outside [1, n-1]");
              }
              push_cell(dist, n,
                        KnnSpec{info->knn, k, cfg.paper_literal});
            }
          }
        }
      }
    }
  }
  return cells;
}

std::string csv_header() {
  return "distribution,d,n,estimator,param_name,param_value,n_reps,failures,"
         "rmse,abs_bias,mean,min,q1,median,q3,max,seed";
}

std::vector<MetricRow> run_grid(const RunConfig& cfg, unsigned threads) {
  const std::vector<GridCell> cells = expand_grid(cfg);
  std::vector<MetricRow> rows;
  rows.reserve(cells.size());
  for (const GridCell& cell : cells) {
    try {
      rows.push_back(run_cell(cell, threads));
    } catch (const AllReplicatesFailed&) {
      rows.push_back(failed_row(cell));
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<MetricRow>& rows) {
  out << csv_header() << "\n";
  for (const MetricRow& r : rows) {
    out << r.distribution << ',' << r.d << ',' << r.n << ',' << r.estimator
        << ',' << r.param_name << ',' << format_double(r.param_value) << ','
        << r.n_reps << ',' << r.failures << ',' << format_double(r.rmse) << ','
        << format_double(r.abs_bias) << ',' << format_double(r.mean) << ','
        << format_double(r.qmin) << ',' << format_double(r.q1) << ','
        << format_double(r.median) << ',' << format_double(r.q3) << ','
        << format_double(r.qmax) << ',' << r.seed << "\n";
  }
}

void write_markdown(std::ostream& out, const std::vector<MetricRow>& rows) {
  // one table per (distribution, d, n) block, estimator shown on its first
  // parameter sub-row to mirror the grouped table layout
  std::string block;
  std::string last_estimator;
  const auto cell = [](double v) {
    return std::isnan(v) ? std::string("-") : format_double(v);
  };
  for (const MetricRow& r : rows) {
    const std::string key = r.distribution + " d=" + std::to_string(r.d) +
                            " n=" + std::to_string(r.n);
    if (key != block) {
      block = key;
      last_estimator.clear();
      out << "\n### " << key << "  (N=" << r.n_reps << ")\n\n";
      out << "| estimator | param | value | rmse | abs_bias | mean | median "
             "| failures |\n";
      out << "|---|---|---|---|---|---|---|---|\n";
    }
    const bool repeat = r.estimator == last_estimator;
    last_estimator = r.estimator;
    out << "| " << (repeat ? "" : r.estimator) << " | " << r.param_name
        << " | " << format_double(r.param_value) << " | " << cell(r.rmse)
        << " | " << cell(r.abs_bias) << " | " << cell(r.mean) << " | "
        << cell(r.median) << " | " << r.failures << " |\n";
  }
}

void run_bench(const RunConfig& cfg, std::ostream& out, unsigned threads) {
  const std::vector<MetricRow> rows = run_grid(cfg, threads);
  if (cfg.format == "md") {
    write_markdown(out, rows);
  } else {
    write_csv(out, rows);
  }
}

}  // namespace entrokit
