// Conditional transition systems over a finite condition poset, and
// conditional bisimilarity computed for all conditions at once by a
// lattice-valued refinement. Entries of the result are downward-closed
// condition sets; the computation runs either on explicit downsets or on
// monotone BDDs over a feature model.

#ifndef WCA_CTS_HPP
#define WCA_CTS_HPP

#include "wca/bdd.hpp"
#include "wca/poset.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wca {

enum class CtsBackend { Downset, Bdd };

struct Cts {
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  std::shared_ptr<const Poset> conditions;
  // Present when the conditions come from a feature model; required by the
  // BDD backend. Condition index = assignment mask.
  std::optional<FeatureModel> features;
  // Dense guard table, index ((x * |A|) + a) * |X| + y; empty set = no edge.
  std::vector<DenseBitset> guards;

  static Cts over_poset(std::vector<std::string> states,
                        std::vector<std::string> alphabet, Poset conditions);
  static Cts over_features(std::vector<std::string> states,
                           std::vector<std::string> alphabet,
                           FeatureModel features);

  std::size_t state_count() const { return states.size(); }
  std::size_t condition_count() const { return conditions->size(); }

  const DenseBitset& guard(std::size_t x, std::size_t a,
                           std::size_t y) const {
    return guards[(x * alphabet.size() + a) * states.size() + y];
  }
  // Throws GuardNotDownclosed instead of silently closing: a guard that is
  // not downward-closed is a modeling mistake.
  void set_guard(std::size_t x, std::size_t a, std::size_t y,
                 DenseBitset set);

  std::size_t state_index(const std::string& name) const;
  std::size_t symbol_index(const std::string& name) const;
};

struct BisimReport {
  std::size_t state_count = 0;
  // Row-major |X|x|X| downward-closed condition sets; entry (x,y) holds the
  // conditions under which x and y are conditionally bisimilar.
  std::vector<DenseBitset> matrix;
  std::uint64_t iterations = 0;
  std::size_t bdd_nodes = 0;  // unique-table size after the run, BDD backend

  const DenseBitset& entry(std::size_t x, std::size_t y) const {
    return matrix[x * state_count + y];
  }
};

// Greatest fixpoint of
//   R(x,y) <- R(x,y) ⊓ ⨅_{a,x'} guard(x,a,x') → ⨆_{y'} guard(y,a,y') ⊓ R(x',y')
//             ⊓ (the same with x and y swapped)
// from R = ⊤, with simultaneous (Jacobi) updates per iteration.
BisimReport cts_bisimilarity(const Cts& cts,
                             CtsBackend backend = CtsBackend::Downset);

// Testing oracle: classical partition refinement on the labelled transition
// system with states (x, ψ), action moves under the current condition, and
// explicit upgrade moves labelled by their target condition so both players
// upgrade in lockstep. Returns the |X|x|X| relation at condition φ.
std::vector<std::uint8_t> per_condition_bisim(const Cts& cts,
                                              std::size_t condition);

}  // namespace wca

#endif
