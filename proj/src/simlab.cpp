#include "entrokit/simlab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>

namespace entrokit {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kLog2PiE = 2.8378770664093454836;  // log(2 pi e)

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

double true_entropy(TestDistribution dist) {
  const double d = static_cast<double>(dist.d);
  switch (dist.kind) {
    case DistKind::Uniform01: return 0.0;
    case DistKind::StdNormal: return d * 0.5 * kLog2PiE;
    case DistKind::StdExponential: return d;
  }
  throw ConfigError("unknown distribution kind");
}

std::string_view to_string(DistKind kind) {
  switch (kind) {
    case DistKind::Uniform01: return "uniform";
    case DistKind::StdNormal: return "normal";
    case DistKind::StdExponential: return "exponential";
  }
  return "?";
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(splitmix64(base) ^ splitmix64(index * 0xA24BAED4963EE407ULL + 1));
}

Prng::Prng(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& lane : s_) {
    x = splitmix64(x);
    lane = x;
  }
}

std::uint64_t Prng::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Prng::next_unit() {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double Prng::next_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = next_unit();
  const double u2 = next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * 3.14159265358979323846 * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

double Prng::next_exponential() { return -std::log(next_unit()); }

std::vector<double> draw_sample(TestDistribution dist, std::size_t n,
                                Prng& rng) {
  const std::size_t total = n * static_cast<std::size_t>(dist.d);
  std::vector<double> data(total);
  switch (dist.kind) {
    case DistKind::Uniform01:
      for (auto& v : data) v = rng.next_unit();
      break;
    case DistKind::StdNormal:
      for (auto& v : data) v = rng.next_normal();
      break;
    case DistKind::StdExponential:
      for (auto& v : data) v = rng.next_exponential();
      break;
  }
  return data;
}

double evaluate_nats(const EstimatorSpec& spec, const std::vector<double>& data,
                     int d) {
  if (const auto* sp = std::get_if<SpacingSpec>(&spec)) {
    if (d != 1) {
      throw DimensionUnsupported("spacing estimators require d=1");
    }
    return estimate_spacing(sp->id, OrderedSample(data), sp->params);
  }
  if (const auto* kd = std::get_if<KdeSpec>(&spec)) {
    if (d == 1) {
      return estimate_kde(kd->id, OrderedSample(data), kd->params);
    }
    return estimate_kde(kd->id,
                        PointCloud(data, data.size() / d, static_cast<std::size_t>(d)),
                        kd->params);
  }
  const auto& kn = std::get<KnnSpec>(spec);
  const PointCloud cloud(data, data.size() / d, static_cast<std::size_t>(d));
  const double value = estimate_knn(kn.id, cloud, kn.k, kn.paper_literal);
  return knn_reports_bits(kn.id) ? value * kLn2 : value;
}

std::string estimator_name(const EstimatorSpec& spec) {
  if (const auto* sp = std::get_if<SpacingSpec>(&spec)) {
    return std::string(to_string(sp->id));
  }
  if (const auto* kd = std::get_if<KdeSpec>(&spec)) {
    return std::string(to_string(kd->id));
  }
  return std::string(to_string(std::get<KnnSpec>(spec).id));
}

std::pair<std::string, double> estimator_param(const EstimatorSpec& spec) {
  if (const auto* sp = std::get_if<SpacingSpec>(&spec)) {
    return {"m", static_cast<double>(sp->params.m)};
  }
  if (const auto* kd = std::get_if<KdeSpec>(&spec)) {
    switch (kd->id) {
      case KdeId::HAL: return {"none", 0.0};
      case KdeId::HB_EPS:
      case KdeId::HBE: return {"eps", kd->params.epsilon};
      default: return {"m", static_cast<double>(kd->params.m)};
    }
  }
  return {"k", static_cast<double>(std::get<KnnSpec>(spec).k)};
}

double rmse(const std::vector<double>& estimates, double truth) {
  if (estimates.empty()) {
    throw DataError("rmse of an empty estimate list");
  }
  double acc = 0.0;
  for (double e : estimates) acc += (e - truth) * (e - truth);
  return std::sqrt(acc / static_cast<double>(estimates.size()));
}

double abs_bias(const std::vector<double>& estimates, double truth) {
  if (estimates.empty()) {
    throw DataError("abs_bias of an empty estimate list");
  }
  double acc = 0.0;
  for (double e : estimates) acc += e;
  return std::fabs(acc / static_cast<double>(estimates.size()) - truth);
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) {
    throw DataError("quantile of an empty list");
  }
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ENTROKIT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

std::vector<double> run_replicates(std::size_t n_reps, std::uint64_t seed,
                                   unsigned threads,
                                   const std::function<double(Prng&)>& replicate,
                                   std::vector<std::uint8_t>& failed) {
  std::vector<double> results(n_reps, 0.0);
  failed.assign(n_reps, 0);
  const unsigned t = std::min<unsigned>(resolve_threads(threads),
                                        std::max<std::size_t>(n_reps, 1));

  const auto worker = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      Prng rng(derive_seed(seed, r));
      try {
        results[r] = replicate(rng);
      } catch (const EstimatorError&) {
        failed[r] = 1;
      }
    }
  };

  if (t <= 1 || n_reps < 2) {
    worker(0, n_reps);
    return results;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(t);
  const std::size_t chunk = (n_reps + t - 1) / t;
  for (unsigned w = 0; w < t; ++w) {
    const std::size_t begin = std::min<std::size_t>(w * chunk, n_reps);
    const std::size_t end = std::min<std::size_t>(begin + chunk, n_reps);
    pool.emplace_back([&, w, begin, end] {
      try {
        worker(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return results;
}

MetricRow run_cell(const GridCell& cell, unsigned threads) {
  const double truth = true_entropy(cell.dist);
  const auto replicate = [&](Prng& rng) {
    const std::vector<double> data = draw_sample(cell.dist, cell.n, rng);
    return evaluate_nats(cell.est, data, cell.dist.d);
  };
  std::vector<std::uint8_t> failed;
  const std::vector<double> raw =
      run_replicates(cell.replicates, cell.seed, threads, replicate, failed);

  std::vector<double> ok;
  ok.reserve(raw.size());
  for (std::size_t r = 0; r < raw.size(); ++r) {
    if (!failed[r]) ok.push_back(raw[r]);
  }

  MetricRow row;
  row.distribution = std::string(to_string(cell.dist.kind));
  row.d = cell.dist.d;
  row.n = cell.n;
  row.estimator = estimator_name(cell.est);
  std::tie(row.param_name, row.param_value) = estimator_param(cell.est);
  row.n_reps = cell.replicates;
  row.failures = cell.replicates - ok.size();
  row.seed = cell.seed;
  if (ok.empty()) {
    throw AllReplicatesFailed("all " + std::to_string(cell.replicates) +
                              " replicates failed for estimator " +
                              row.estimator);
  }
  row.rmse = rmse(ok, truth);
  row.abs_bias = abs_bias(ok, truth);
  double mean = 0.0;
  for (double v : ok) mean += v;
  row.mean = mean / static_cast<double>(ok.size());
  std::vector<double> sorted = ok;
  std::sort(sorted.begin(), sorted.end());
  row.qmin = sorted.front();
  row.q1 = quantile_sorted(sorted, 0.25);
  row.median = quantile_sorted(sorted, 0.5);
  row.q3 = quantile_sorted(sorted, 0.75);
  row.qmax = sorted.back();
  return row;
}

}  // namespace entrokit
