#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "omin/sched.hpp"

namespace omin {

/// Deterministic bounded draws for reproducible permutations.
///
/// Engine: std::mt19937_64, whose output sequence is fixed by the standard.
/// Bounded values reject raw 64-bit draws below 2^64 mod bound, then reduce
/// modulo bound. std::uniform_int_distribution is avoided because its
/// algorithm varies between standard libraries; a seed therefore yields the
/// same permutation on every platform.
class PermutationRng {
 public:
  explicit PermutationRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

/// Uniform full permutation by Fisher-Yates (i from N-1 down to 1, swap with
/// below(i+1)).
MessageSet random_permutation(std::uint32_t size, std::uint64_t seed);

struct RunMetrics {
  std::string algorithm;
  std::uint32_t size = 0;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::size_t pass_count = 0;
  std::vector<std::size_t> switch_occurrences;  // per pass
  std::vector<std::size_t> link_occurrences;    // per pass
  std::vector<std::size_t> switch_pairs;        // distinct, per pass
  std::vector<std::size_t> link_pairs;          // distinct, per pass
  std::uint64_t micros = 0;
  std::optional<std::string> error;

  std::size_t total_switch() const;
  std::size_t total_link() const;
  std::size_t max_pass_switch() const;
  std::size_t max_pass_link() const;
};

RunMetrics evaluate(const Schedule& s);

struct BenchmarkConfig {
  std::vector<std::uint32_t> sizes{8};
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::vector<Algorithm> algorithms{kAllAlgorithms.begin(), kAllAlgorithms.end()};
  ResolutionMode mode = ResolutionMode::paper;
  /// When false the micros column is written as 0, making the CSV a pure
  /// function of the config.
  bool record_timing = true;
  unsigned threads = 1;

  /// Throws InputError on sizes that are not powers of two >= 8 or on
  /// zero trials.
  void validate() const;
};

/// Trial t at any size uses seed + t.
std::uint64_t trial_seed(const BenchmarkConfig& cfg, std::uint64_t trial);

/// One row per (size, trial, algorithm), in that order. A failing run is
/// recorded in RunMetrics::error instead of aborting the suite.
std::vector<RunMetrics> run_suite(const BenchmarkConfig& cfg);

inline constexpr const char* kCsvHeader =
    "algorithm,N,seed,trial,passes,total_switch_occurrences,"
    "total_link_occurrences,max_pass_switch,max_pass_link,micros";

std::string csv_row(const RunMetrics& m);
std::string to_csv(const std::vector<RunMetrics>& rows);

}  // namespace omin
