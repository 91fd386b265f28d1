// Step budgets and cooperative cancellation for semi-decision procedures.

#ifndef WCA_BUDGET_HPP
#define WCA_BUDGET_HPP

#include <atomic>
#include <cstdint>

namespace wca {

// One unit is spent per algorithm step (dequeued word, processed pair, ...).
// spend() returning false means the caller must stop and report a partial
// result; it never throws so partial state stays usable.
struct Budget {
  std::uint64_t limit = 100000;
  const std::atomic<bool>* cancel = nullptr;
  std::uint64_t used = 0;

  bool spend() {
    if (cancel && cancel->load(std::memory_order_relaxed)) return false;
    if (used >= limit) return false;
    ++used;
    return true;
  }
};

// Separate budget for the modular solver's free-variable enumeration.
struct SolveLimits {
  std::uint64_t assignment_budget = 1000000;
  const std::atomic<bool>* cancel = nullptr;
};

}  // namespace wca

#endif
