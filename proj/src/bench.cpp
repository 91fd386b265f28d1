#include "wca/bench.hpp"

#include "wca/errors.hpp"
#include "wca/random_gen.hpp"
#include "wca/rng.hpp"
#include "wca/wa.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace wca {

namespace {

// Arms a deadline on a separate thread; disarm() is safe to call whether or
// not the deadline fired. Cooperative: the algorithm polls the flag.
class Watchdog {
public:
  Watchdog(std::atomic<bool>& flag, double timeout_ms) {
    thread_ = std::thread([this, &flag, timeout_ms] {
      std::unique_lock<std::mutex> lock(mu_);
      if (!cv_.wait_for(lock, std::chrono::duration<double, std::milli>(
                                  timeout_ms),
                        [this] { return stopped_; }))
        flag.store(true, std::memory_order_relaxed);
    });
  }
  ~Watchdog() {
    {
      std::lock_guard<std::mutex> lock(mu_);
      stopped_ = true;
    }
    cv_.notify_one();
    thread_.join();
  }

private:
  std::mutex mu_;
  std::condition_variable cv_;
  bool stopped_ = false;
  std::thread thread_;
};

}  // namespace

double BenchRow::percentile(int p) const {
  std::size_t n = times_ms.size() + timeouts;
  if (n == 0 || p <= 0) return 0.0;
  std::size_t k = static_cast<std::size_t>(
      std::ceil(static_cast<double>(p) * static_cast<double>(n) / 100.0));
  if (k < 1) k = 1;
  if (k > n) k = n;
  if (k > times_ms.size()) return std::numeric_limits<double>::infinity();
  return times_ms[k - 1];
}

BenchReport bench(SemiringPtr sr, const std::string& semiring_name,
                  const BenchConfig& config) {
  if (sr->solver_kind() == SolverKind::None)
    throw CapabilityMismatch("no linear solver for " + sr->name() +
                             "; the equivalence check cannot run");
  BenchReport report;
  report.semiring_name = semiring_name;
  report.config = config;
  Rng seeds(config.seed);
  for (std::size_t n : config.state_counts) {
    BenchRow row;
    row.states = n;
    for (std::size_t run = 0; run < config.runs; ++run) {
      RandomSpec spec;
      spec.states = n;
      spec.alphabet_size = config.alphabet_size;
      spec.transition_probability = config.transition_probability;
      spec.seed = seeds.next();
      WeightedAutomaton wa = gen_random(spec, sr);

      std::atomic<bool> cancel{false};
      Budget budget;
      budget.limit = config.budget;
      budget.cancel = &cancel;
      EquivalenceReport result;
      auto started = std::chrono::steady_clock::now();
      if (config.timeout_ms > 0) {
        Watchdog dog(cancel, config.timeout_ms);
        result = equiv_complete(wa, budget);
      } else {
        result = equiv_complete(wa, budget);
      }
      auto stopped = std::chrono::steady_clock::now();
      if (result.status == EquivalenceReport::Status::Completed)
        row.times_ms.push_back(
            std::chrono::duration<double, std::milli>(stopped - started)
                .count());
      else
        ++row.timeouts;
    }
    std::sort(row.times_ms.begin(), row.times_ms.end());
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string format_bench_table(const BenchReport& report) {
  std::ostringstream out;
  char buf[64];
  out << "(|X|,p_Tr)\tsemiring";
  for (int p : report.config.percentiles) out << "\t" << p << "%";
  out << "\ttime-outs\n";
  for (const auto& row : report.rows) {
    std::snprintf(buf, sizeof buf, "(%zu,%g)", row.states,
                  report.config.transition_probability);
    out << buf << "\t" << report.semiring_name;
    for (int p : report.config.percentiles) {
      double v = row.percentile(p);
      if (std::isinf(v)) {
        out << "\ttime-out";
      } else {
        std::snprintf(buf, sizeof buf, "%.1f", v);
        out << "\t" << buf;
      }
    }
    out << "\t" << row.timeouts << "\n";
  }
  return out.str();
}

}  // namespace wca
