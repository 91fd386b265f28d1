// Percentile benchmark for the complete equivalence check on random
// automata, shaped like the evaluation tables: one row per state count,
// percentile columns, time-outs counted separately.

#ifndef WCA_BENCH_HPP
#define WCA_BENCH_HPP

#include "wca/semiring.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace wca {

struct BenchConfig {
  std::vector<std::size_t> state_counts = {10, 15, 20};
  std::size_t alphabet_size = 2;
  double transition_probability = 0.5;
  std::size_t runs = 100;
  std::vector<int> percentiles = {50, 90, 95};
  double timeout_ms = 0;  // 0 = unlimited
  std::uint64_t seed = 1;
  std::uint64_t budget = 10000000;
};

struct BenchRow {
  std::size_t states = 0;
  std::vector<double> times_ms;  // completed runs only, sorted ascending
  std::size_t timeouts = 0;      // timed-out or budget-exhausted runs

  // p-th percentile = ceiling(p/100 * n)-th order statistic, 1-based, over
  // all n runs with non-completions sorted last; +infinity means the order
  // statistic fell on a time-out.
  double percentile(int p) const;
};

struct BenchReport {
  std::string semiring_name;
  BenchConfig config;
  std::vector<BenchRow> rows;
};

// Wall-clock times cover the equivalence run only, not model generation.
BenchReport bench(SemiringPtr sr, const std::string& semiring_name,
                  const BenchConfig& config);

std::string format_bench_table(const BenchReport& report);

}  // namespace wca

#endif
