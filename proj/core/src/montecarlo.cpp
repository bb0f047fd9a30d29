#include "qad/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "qad/constants.hpp"
#include "qad/dispersion.hpp"
#include "qad/distributions.hpp"
#include "qad/specfun.hpp"

namespace robust {

void RunningMoments::add(double x) {
  ++count_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
}

void RunningMoments::merge(const RunningMoments& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double delta = other.mean_ - mean_;
  mean_ += delta * nb / (na + nb);
  m2_ += other.m2_ + delta * delta * na * nb / (na + nb);
  count_ += other.count_;
}

double RunningMoments::mean() const {
  if (count_ == 0) throw std::logic_error("RunningMoments: empty accumulator");
  return mean_;
}

double RunningMoments::variance() const {
  if (count_ < 2) throw std::logic_error("RunningMoments: variance needs two observations");
  return m2_ / static_cast<double>(count_ - 1);
}

double unbiased_sd(const Sample& x) {
  const auto values = x.values();
  const auto n = static_cast<std::int64_t>(values.size());
  if (n < 2) {
    throw std::domain_error("unbiased_sd: at least two observations required");
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(n - 1)) / c4(n);
}

double standardized_variance(std::span<const double> values, std::int64_t n) {
  if (values.empty()) {
    throw std::invalid_argument("standardized_variance: empty input");
  }
  RunningMoments acc;
  for (double v : values) acc.add(v);
  if (acc.mean() == 0.0) {
    throw std::domain_error("standardized_variance: zero mean");
  }
  return static_cast<double>(n) * acc.variance() / (acc.mean() * acc.mean());
}

namespace {

void validate(const SimulationConfig& cfg) {
  if (cfg.sample_sizes.empty()) {
    throw std::invalid_argument("SimulationConfig: sample_sizes must be nonempty");
  }
  for (int n : cfg.sample_sizes) {
    if (n < 2) throw std::invalid_argument("SimulationConfig: sample sizes must be >= 2");
  }
  if (cfg.repetitions < 1) {
    throw std::invalid_argument("SimulationConfig: repetitions must be positive");
  }
  if (cfg.workers < 1) {
    throw std::invalid_argument("SimulationConfig: workers must be positive");
  }
}

// Runs `fn(rng, reps, accumulators)` once per block and merges the per-block
// accumulators in block order.
std::vector<RunningMoments> run_blocks(
    const SimulationConfig& cfg, std::size_t accumulators,
    const std::function<void(RngStream&, std::int64_t, std::vector<RunningMoments>&)>& fn) {
  const int workers = cfg.workers;
  std::vector<std::vector<RunningMoments>> partial(
      workers, std::vector<RunningMoments>(accumulators));
  const std::int64_t base = cfg.repetitions / workers;
  const std::int64_t extra = cfg.repetitions % workers;
  const auto block_reps = [&](int i) { return base + (i < extra ? 1 : 0); };

  if (workers == 1) {
    RngStream rng(cfg.master_seed, 0);
    fn(rng, cfg.repetitions, partial[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) {
      pool.emplace_back([&, i] {
        RngStream rng(cfg.master_seed, static_cast<std::uint64_t>(i));
        fn(rng, block_reps(i), partial[i]);
      });
    }
    for (auto& t : pool) t.join();
  }

  std::vector<RunningMoments> merged(accumulators);
  for (int i = 0; i < workers; ++i) {
    for (std::size_t a = 0; a < accumulators; ++a) {
      merged[a].merge(partial[i][a]);
    }
  }
  return merged;
}

// Median of the scratch buffer, then absolute deviations, sorted ascending.
void sorted_abs_deviations(std::vector<double>& x, std::vector<double>& dev) {
  const double med = median_inplace(x);
  dev.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) dev[i] = std::fabs(x[i] - med);
  std::sort(dev.begin(), dev.end());
}

}  // namespace

std::vector<ConstantRecord> simulate_constants(const SimulationConfig& cfg) {
  validate(cfg);
  const Distribution normal = Distribution::normal(0.0, 1.0);
  std::vector<ConstantRecord> records;
  records.reserve(cfg.sample_sizes.size());
  for (int n : cfg.sample_sizes) {
    auto acc = run_blocks(cfg, 2, [&](RngStream& rng, std::int64_t reps,
                                      std::vector<RunningMoments>& out) {
      std::vector<double> x(n), dev(n);
      for (std::int64_t r = 0; r < reps; ++r) {
        sample_into(normal, rng, x);
        sorted_abs_deviations(x, dev);
        out[0].add(hf7_sorted(dev, kRhoS));
        out[1].add(hf7_sorted(dev, kRhoO));
      }
    });
    records.push_back({n, 1.0 / acc[0].mean(), 1.0 / acc[1].mean(), cfg.repetitions});
  }
  return records;
}

std::vector<EfficiencyRecord> simulate_scale_efficiency(const SimulationConfig& cfg) {
  validate(cfg);
  const Distribution normal = Distribution::normal(0.0, 1.0);
  std::vector<EfficiencyRecord> records;
  records.reserve(cfg.sample_sizes.size());
  for (int n : cfg.sample_sizes) {
    const double c4n = c4(n);
    const double k_sqad = consistency_constant(DispersionEstimator::kSqad, n);
    const double k_oqad = consistency_constant(DispersionEstimator::kOqad, n);
    auto acc = run_blocks(cfg, 4, [&](RngStream& rng, std::int64_t reps,
                                      std::vector<RunningMoments>& out) {
      std::vector<double> x(n), dev(n);
      for (std::int64_t r = 0; r < reps; ++r) {
        sample_into(normal, rng, x);
        double mean = 0.0;
        for (double v : x) mean += v;
        mean /= n;
        double ss = 0.0;
        for (double v : x) ss += (v - mean) * (v - mean);
        out[0].add(std::sqrt(ss / (n - 1)) / c4n);
        sorted_abs_deviations(x, dev);
        out[1].add(kMadConstant * hf7_sorted(dev, 0.5));
        out[2].add(k_sqad * hf7_sorted(dev, kRhoS));
        out[3].add(k_oqad * hf7_sorted(dev, kRhoO));
      }
    });
    const auto vs = [&](const RunningMoments& m) {
      return static_cast<double>(n) * m.variance() / (m.mean() * m.mean());
    };
    const double vs_sd = vs(acc[0]);
    EfficiencyRecord rec;
    rec.n = n;
    rec.baseline = "sd";
    rec.values = {{"mad", vs_sd / vs(acc[1])},
                  {"sqad", vs_sd / vs(acc[2])},
                  {"oqad", vs_sd / vs(acc[3])}};
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<EfficiencyRecord> simulate_location_efficiency(const SimulationConfig& cfg) {
  validate(cfg);
  const Distribution normal = Distribution::normal(0.0, 1.0);
  std::vector<EfficiencyRecord> records;
  records.reserve(cfg.sample_sizes.size());
  for (int n : cfg.sample_sizes) {
    const ThdWeights ws = thd_median_weights(n, kRhoS);
    const ThdWeights wo = thd_median_weights(n, kRhoO);
    auto acc = run_blocks(cfg, 4, [&](RngStream& rng, std::int64_t reps,
                                      std::vector<RunningMoments>& out) {
      std::vector<double> x(n);
      const auto weighted = [&](const ThdWeights& w) {
        double s = 0.0;
        for (std::size_t j = 0; j < w.weights.size(); ++j) s += w.weights[j] * x[w.first + j];
        return s;
      };
      for (std::int64_t r = 0; r < reps; ++r) {
        sample_into(normal, rng, x);
        double mean = 0.0;
        for (double v : x) mean += v;
        out[0].add(mean / n);
        std::sort(x.begin(), x.end());
        out[1].add(hf7_sorted(x, 0.5));
        out[2].add(weighted(ws));
        out[3].add(weighted(wo));
      }
    });
    EfficiencyRecord rec;
    rec.n = n;
    rec.baseline = "mean";
    rec.values = {{"sm", acc[0].variance() / acc[1].variance()},
                  {"sthdme", acc[0].variance() / acc[2].variance()},
                  {"othdme", acc[0].variance() / acc[3].variance()}};
    records.push_back(std::move(rec));
  }
  return records;
}

FitResult fit_constant_model(const std::vector<std::pair<int, double>>& records,
                             double k_infinity, int n_min, int n_max) {
  if (!(k_infinity > 0.0)) {
    throw std::invalid_argument("fit_constant_model: k_infinity must be positive");
  }
  std::vector<std::pair<int, double>> rows;
  for (const auto& [n, k] : records) {
    if (n >= n_min && n <= n_max) rows.emplace_back(n, k);
  }
  if (rows.size() < 3) {
    throw std::invalid_argument("fit_constant_model: need at least three records in range");
  }
  long double suu = 0, suv = 0, svv = 0, ru = 0, rv = 0;
  for (const auto& [n, k] : rows) {
    const long double u = 1.0L / n;
    const long double v = u * u;
    const long double y = static_cast<long double>(k) / k_infinity - 1.0L;
    suu += u * u;
    suv += u * v;
    svv += v * v;
    ru += u * y;
    rv += v * y;
  }
  const long double det = suu * svv - suv * suv;
  if (static_cast<double>(det) <= 1e-20 * static_cast<double>(suu * svv)) {
    throw std::invalid_argument("fit_constant_model: rank-deficient design");
  }
  FitResult result;
  result.k_infinity = k_infinity;
  result.alpha = static_cast<double>((ru * svv - rv * suv) / det);
  result.beta = static_cast<double>((rv * suu - ru * suv) / det);
  double max_residual = 0.0;
  for (const auto& [n, k] : rows) {
    const double nn = n;
    const double predicted = k_infinity * (1.0 + result.alpha / nn + result.beta / (nn * nn));
    max_residual = std::max(max_residual, std::fabs(k - predicted));
  }
  result.max_residual = max_residual;
  return result;
}

}  // namespace robust
