#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "entrokit/bench.hpp"
#include "entrokit/kernels.hpp"
#include "entrokit/registry.hpp"

namespace {

using namespace entrokit;

constexpr double kLn2 = 0.69314718055994530942;

struct EstimateArgs {
  std::string data_path;
  std::string estimator;
  int m = 0;  // 0 = automatic
  std::size_t k = 1;
  int ma_window = 3;
  double epsilon = 0.05;
  int panels = 512;
  std::vector<double> bounds;
  bool paper_literal = false;
};

struct BenchArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> reps;
  std::optional<std::string> out;
  std::optional<std::string> format;
  bool paper_literal = false;
  unsigned threads = 0;
};

int cmd_estimate(const EstimateArgs& args) {
  std::ifstream in(args.data_path);
  if (!in) {
    throw DataError("cannot open data file '" + args.data_path + "'");
  }
  const auto rows = read_rows(in);
  const std::size_t n = rows.size();
  const int d = static_cast<int>(rows.front().size());
  std::vector<double> flat;
  flat.reserve(n * static_cast<std::size_t>(d));
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());

  const EstimatorInfo* info = find_estimator(args.estimator);
  if (info == nullptr) {
    throw ConfigError("unknown estimator '" + args.estimator +
                      "' (see `entrokit list-estimators`)");
  }

  EstimatorSpec spec;
  bool auto_m = false;
  int m = args.m;
  if (info->takes_m && m == 0) {
    m = optimal_window(n);
    auto_m = true;
  }
  if (info->family == Family::Spacing) {
    SpacingParams p;
    p.m = m;
    p.ma_window = args.ma_window;
    p.paper_literal = args.paper_literal;
    if (!args.bounds.empty()) {
      p.bounds = std::make_pair(args.bounds[0], args.bounds[1]);
    }
    spec = SpacingSpec{info->spacing, p};
  } else if (info->family == Family::Kde) {
    KdeParams p;
    p.m = m;
    p.epsilon = args.epsilon;
    p.quadrature_panels = args.panels;
    spec = KdeSpec{info->kde, p};
  } else {
    spec = KnnSpec{info->knn, args.k, args.paper_literal};
  }

  const double nats = evaluate_nats(spec, flat, d);

  std::printf("estimator: %s  (%s)\n", std::string(info->name).c_str(),
              std::string(info->citation).c_str());
  std::printf("n: %zu  d: %d\n", n, d);
  if (info->takes_m) {
    std::printf("m: %d%s\n", m, auto_m ? " (auto)" : "");
  }
  if (info->family == Family::Spacing &&
      (info->spacing == SpacingId::HK1 || info->spacing == SpacingId::HK2)) {
    std::printf("ma_window: %d\n", args.ma_window);
  }
  if (info->family == Family::Spacing &&
      (info->spacing == SpacingId::HE2 || info->spacing == SpacingId::HP_PASHA)) {
    double a;
    double b;
    if (!args.bounds.empty() && info->spacing == SpacingId::HE2) {
      a = args.bounds[0];
      b = args.bounds[1];
    } else {
      std::tie(a, b) = auto_support_bounds(OrderedSample(flat),
                                           args.paper_literal);
    }
    std::printf("support_bounds: [%.7g, %.7g]\n", a, b);
  }
  if (info->family == Family::Kde && d == 1) {
    if (info->kde == KdeId::HB_EPS || info->kde == KdeId::HBE) {
      std::printf("epsilon: %g\n", args.epsilon);
    } else {
      std::printf("bandwidth: %.7g\n", bandwidth_1d(n, sample_sd(flat)).h);
    }
  }
  if (info->family == Family::Knn) {
    std::printf("k: %zu%s\n", knn_fixes_k(info->knn) ? std::size_t{1} : args.k,
                knn_fixes_k(info->knn) ? " (fixed)" : "");
  }
  std::printf("entropy_nats: %.7f\n", nats);
  if (info->family == Family::Knn && knn_reports_bits(info->knn)) {
    std::printf("entropy_bits: %.7f\n", nats / kLn2);
  }
  return 0;
}

int cmd_bench(const BenchArgs& args) {
  std::ifstream in(args.config_path);
  if (!in) {
    throw ConfigError("cannot open config file '" + args.config_path + "'");
  }
  RunConfig cfg = parse_config(in);
  if (args.seed) cfg.seed = *args.seed;
  if (args.reps) cfg.replicates = *args.reps;
  if (args.out) cfg.out = *args.out;
  if (args.format) {
    if (*args.format != "csv" && *args.format != "md") {
      throw ConfigError("format must be csv or md");
    }
    cfg.format = *args.format;
  }
  if (args.paper_literal) cfg.paper_literal = true;

  if (cfg.out.empty()) {
    run_bench(cfg, std::cout, args.threads);
  } else {
    std::ofstream out(cfg.out);
    if (!out) {
      throw ConfigError("cannot open output file '" + cfg.out + "'");
    }
    run_bench(cfg, out, args.threads);
  }
  return 0;
}

int cmd_list() {
  std::printf("%-8s %-8s %-6s %-52s %s\n", "ID", "FAMILY", "DIMS", "PARAMS",
              "SOURCE");
  for (const auto& info : estimator_registry()) {
    const char* family = info.family == Family::Spacing ? "spacing"
                         : info.family == Family::Kde   ? "kde"
                                                        : "knn";
    const char* dims = info.multivariate ? "d>=1" : "d=1";
    std::printf("%-8s %-8s %-6s %-52s %s\n", std::string(info.name).c_str(),
                family, dims, std::string(info.params).c_str(),
                std::string(info.citation).c_str());
  }
  std::printf("\nsimd backend: %s\n", kernels::ops().name);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entrokit: nonparametric differential entropy estimation"};
  app.require_subcommand(1);

  EstimateArgs est_args;
  CLI::App* est = app.add_subcommand(
      "estimate", "Estimate the entropy of a data file (nats)");
  est->add_option("--data", est_args.data_path,
                  "data file: one observation per line, or one row of d "
                  "coordinates per line; '#' starts a comment")
      ->required();
  est->add_option("--estimator", est_args.estimator, "estimator id")
      ->required();
  est->add_option("--m", est_args.m, "spacing window (default: floor(sqrt(n)+0.5))");
  est->add_option("--k", est_args.k, "number of nearest neighbours");
  est->add_option("--w", est_args.ma_window, "HK1/HK2 moving-average width (odd)");
  est->add_option("--epsilon", est_args.epsilon, "HB_EPS/HBE boundary trim");
  est->add_option("--panels", est_args.panels, "HB_EPS quadrature panels");
  est->add_option("--bounds", est_args.bounds, "HE2 support bounds a b")
      ->expected(2);
  est->add_flag("--paper-literal", est_args.paper_literal,
                "use the printed Pasha b_n and unpowered HKL distance");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand(
      "bench", "Run a seeded Monte Carlo benchmark grid (RMSE / |bias|)");
  bench->add_option("--config", bench_args.config_path, "grid config file")
      ->required();
  bench->add_option("--seed", bench_args.seed, "override config seed");
  bench->add_option("--reps", bench_args.reps, "override replicate count");
  bench->add_option("--out", bench_args.out, "output path (default stdout)");
  bench->add_option("--format", bench_args.format, "csv or md");
  bench->add_option("--threads", bench_args.threads,
                    "worker threads (default: ENTROKIT_THREADS or all cores)");
  bench->add_flag("--paper-literal", bench_args.paper_literal,
                  "use the printed Pasha b_n and unpowered HKL distance");

  CLI::App* list = app.add_subcommand(
      "list-estimators", "Print the estimator registry with sources");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (est->parsed()) return cmd_estimate(est_args);
    if (bench->parsed()) return cmd_bench(bench_args);
    if (list->parsed()) return cmd_list();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const EstimatorError& e) {
    std::cerr << "estimator error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
