#include "omin/bench.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <thread>

#include <fmt/format.h>

namespace omin {

std::uint64_t PermutationRng::below(std::uint64_t bound) {
  if (bound == 0) throw InputError("empty range");
  // 2^64 mod bound; draws below it would bias the low residues.
  const std::uint64_t threshold = (std::uint64_t{0} - bound) % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x < threshold);
  return x % bound;
}

MessageSet random_permutation(std::uint32_t size, std::uint64_t seed) {
  const auto cfg = NetworkConfig::from_size(size);
  std::vector<std::uint32_t> dests(size);
  std::iota(dests.begin(), dests.end(), 0u);
  PermutationRng rng(seed);
  for (std::uint32_t i = size - 1; i > 0; --i) {
    std::swap(dests[i], dests[rng.below(std::uint64_t{i} + 1)]);
  }
  return MessageSet::from_destinations(cfg, dests);
}

// ---------------------------------------------------------------------------

namespace {

std::size_t max_of(const std::vector<std::size_t>& v) {
  return v.empty() ? 0 : *std::max_element(v.begin(), v.end());
}

std::size_t sum_of(const std::vector<std::size_t>& v) {
  return std::accumulate(v.begin(), v.end(), std::size_t{0});
}

}  // namespace

std::size_t RunMetrics::total_switch() const { return sum_of(switch_occurrences); }
std::size_t RunMetrics::total_link() const { return sum_of(link_occurrences); }
std::size_t RunMetrics::max_pass_switch() const { return max_of(switch_occurrences); }
std::size_t RunMetrics::max_pass_link() const { return max_of(link_occurrences); }

RunMetrics evaluate(const Schedule& s) {
  RunMetrics m;
  m.algorithm = s.algorithm;
  m.size = s.messages.config().size();
  m.pass_count = s.passes.size();
  for (const auto& r : s.reports) {
    m.switch_occurrences.push_back(r.switch_occurrences.size());
    m.link_occurrences.push_back(r.link_occurrences.size());
    m.switch_pairs.push_back(r.switch_pairs().size());
    m.link_pairs.push_back(r.link_pairs().size());
  }
  return m;
}

void BenchmarkConfig::validate() const {
  if (sizes.empty()) throw InputError("benchmark needs at least one size");
  for (auto n : sizes) {
    if (n < 8 || !is_power_of_two(n)) {
      throw InputError(fmt::format("benchmark size {} is not a power of two >= 8", n));
    }
    NetworkConfig::from_size(n);
  }
  if (trials == 0) throw InputError("benchmark needs trials >= 1");
  if (algorithms.empty()) throw InputError("benchmark needs at least one algorithm");
}

std::uint64_t trial_seed(const BenchmarkConfig& cfg, std::uint64_t trial) {
  return cfg.seed + trial;
}

namespace {

std::vector<RunMetrics> run_trial(const BenchmarkConfig& cfg,
                                  std::uint32_t size, std::uint64_t trial) {
  std::vector<RunMetrics> rows;
  const auto seed = trial_seed(cfg, trial);
  const auto ms = random_permutation(size, seed);
  for (auto algo : cfg.algorithms) {
    RunMetrics row;
    const auto start = std::chrono::steady_clock::now();
    try {
      row = evaluate(run_algorithm(ms, algo, cfg.mode));
    } catch (const std::exception& e) {
      row = RunMetrics{};
      row.error = e.what();
    }
    const auto elapsed = std::chrono::steady_clock::now() - start;
    row.algorithm = algorithm_name(algo);
    row.size = size;
    row.seed = seed;
    row.trial = trial;
    if (cfg.record_timing) {
      row.micros = static_cast<std::uint64_t>(
          std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<RunMetrics> run_suite(const BenchmarkConfig& cfg) {
  cfg.validate();
  struct Job {
    std::uint32_t size;
    std::uint64_t trial;
  };
  std::vector<Job> jobs;
  for (auto size : cfg.sizes) {
    for (std::uint64_t t = 0; t < cfg.trials; ++t) jobs.push_back({size, t});
  }

  std::vector<std::vector<RunMetrics>> slots(jobs.size());
  const unsigned workers =
      std::clamp<unsigned>(cfg.threads, 1, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));
  if (workers == 1) {
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      slots[j] = run_trial(cfg, jobs[j].size, jobs[j].trial);
    }
  } else {
    // Strided split; each slot is written by exactly one worker.
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t j = w; j < jobs.size(); j += workers) {
          slots[j] = run_trial(cfg, jobs[j].size, jobs[j].trial);
        }
      });
    }
  }

  std::vector<RunMetrics> rows;
  rows.reserve(jobs.size() * cfg.algorithms.size());
  for (auto& s : slots) {
    for (auto& r : s) rows.push_back(std::move(r));
  }
  return rows;
}

std::string csv_row(const RunMetrics& m) {
  if (m.error) {
    return fmt::format("{},{},{},{},failed,,,,,{}", m.algorithm, m.size, m.seed,
                       m.trial, m.micros);
  }
  return fmt::format("{},{},{},{},{},{},{},{},{},{}", m.algorithm, m.size,
                     m.seed, m.trial, m.pass_count, m.total_switch(),
                     m.total_link(), m.max_pass_switch(), m.max_pass_link(),
                     m.micros);
}

std::string to_csv(const std::vector<RunMetrics>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += csv_row(r);
    out += '\n';
  }
  return out;
}

}  // namespace omin
