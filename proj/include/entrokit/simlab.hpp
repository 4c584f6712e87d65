#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "entrokit/kde.hpp"
#include "entrokit/knn.hpp"
#include "entrokit/spacing.hpp"

namespace entrokit {

enum class DistKind { Uniform01, StdNormal, StdExponential };

// d independent identical components.
struct TestDistribution {
  DistKind kind = DistKind::Uniform01;
  int d = 1;
};

// Analytic entropy in nats: 0 for U(0,1)^d, d/2 log(2 pi e) for N(0,I_d),
// d for Exp(1)^d.
double true_entropy(TestDistribution dist);

std::string_view to_string(DistKind kind);

// xoshiro256++ seeded through splitmix64. Streams are deterministic for a
// fixed seed within one build of the artifact.
class Prng {
 public:
  explicit Prng(std::uint64_t seed);
  std::uint64_t next_u64();
  double next_unit();         // uniform on (0, 1]
  double next_normal();       // Box-Muller, pair cached
  double next_exponential();  // rate 1

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

// Per-replicate seed, independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// n i.i.d. draws, row-major n x d.
std::vector<double> draw_sample(TestDistribution dist, std::size_t n,
                                Prng& rng);

// One estimator plus its parameters, family-tagged.
struct SpacingSpec {
  SpacingId id;
  SpacingParams params;
};
struct KdeSpec {
  KdeId id;
  KdeParams params;
};
struct KnnSpec {
  KnnId id;
  std::size_t k = 1;
  bool paper_literal = false;
};
using EstimatorSpec = std::variant<SpacingSpec, KdeSpec, KnnSpec>;

// Evaluate on row-major data; HVIC/HN bits are converted to nats here.
double evaluate_nats(const EstimatorSpec& spec, const std::vector<double>& data,
                     int d);

std::string estimator_name(const EstimatorSpec& spec);
// ("m", m) / ("k", k) / ("eps", eps) / ("none", 0)
std::pair<std::string, double> estimator_param(const EstimatorSpec& spec);

// sqrt(mean squared deviation from truth); |mean - truth|.
double rmse(const std::vector<double>& estimates, double truth);
double abs_bias(const std::vector<double>& estimates, double truth);

// Linear-interpolation quantile of sorted data (R type 7).
double quantile_sorted(const std::vector<double>& sorted, double p);

struct GridCell {
  TestDistribution dist;
  std::size_t n = 0;
  EstimatorSpec est;
  std::size_t replicates = 1;
  std::uint64_t seed = 0;
};

struct MetricRow {
  std::string distribution;
  int d = 1;
  std::size_t n = 0;
  std::string estimator;
  std::string param_name;
  double param_value = 0.0;
  std::size_t n_reps = 0;
  std::size_t failures = 0;
  double rmse = 0.0;
  double abs_bias = 0.0;
  double mean = 0.0;
  double qmin = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, qmax = 0.0;
  std::uint64_t seed = 0;
};

// Thread count resolution: explicit value, else ENTROKIT_THREADS, else
// hardware concurrency.
unsigned resolve_threads(unsigned requested);

// Runs N replicates with per-replicate seeds derived from `seed`. Results
// are stored by replicate index and reduced in index order afterwards, so
// the outcome is bit-identical for any thread count. Replicates throwing
// EstimatorError are marked in `failed`.
std::vector<double> run_replicates(std::size_t n_reps, std::uint64_t seed,
                                   unsigned threads,
                                   const std::function<double(Prng&)>& replicate,
                                   std::vector<std::uint8_t>& failed);

// Evaluates one benchmark cell. Throws AllReplicatesFailed when no replicate
// succeeds.
MetricRow run_cell(const GridCell& cell, unsigned threads = 0);

}  // namespace entrokit
