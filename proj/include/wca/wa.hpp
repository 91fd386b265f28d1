// Weighted automata over a semiring instance and the analyses on them:
// word weights, two language equivalence procedures and the threshold
// universality check for the tropical instance.
//
// Transitions are one matrix per alphabet symbol. Words extend on the left
// in the complete procedure (column vectors M_a * v) and on the right in the
// up-to procedure (row vectors u * M_a); both compose to the same word
// weight.

#ifndef WCA_WA_HPP
#define WCA_WA_HPP

#include "wca/budget.hpp"
#include "wca/linear.hpp"
#include "wca/semiring.hpp"

#include <cstdint>
#include <deque>
#include <string>
#include <utility>
#include <vector>

namespace wca {

using Word = std::vector<std::size_t>;  // indices into the alphabet

struct WeightedAutomaton {
  SemiringPtr sr;
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  std::vector<Matrix> transitions;  // one |X| x |X| matrix per symbol
  std::vector<Value> termination;   // weight of stopping in each state

  std::size_t state_count() const { return states.size(); }
  std::size_t symbol_count() const { return alphabet.size(); }
};

// Throws Error when dimensions or names are inconsistent.
void validate(const WeightedAutomaton& wa);

std::string render_word(const WeightedAutomaton& wa, const Word& w);

// Column vector of word weights per starting state:
// L(eps) = termination, L(a w) = M_a * L(w).
std::vector<Value> language_vector(const WeightedAutomaton& wa, const Word& w);
Value language_weight(const WeightedAutomaton& wa, std::size_t state,
                      const Word& w);

// --------------------------------------------------------------------------
// Complete procedure: generates language vectors breadth-first, keeps the
// ones outside the span of the vectors kept so far, and reads the state
// partition off the kept vectors. Works over any instance with a solver;
// termination is guaranteed for fields and finite chains of submodules,
// otherwise the budget stops the run.

struct BasisEntry {
  Word word;                // provenance: vec = language_vector(word)
  std::vector<Value> vec;
};

struct EquivalenceReport {
  enum class Status { Completed, BudgetExhausted };
  Status status = Status::Completed;
  std::vector<BasisEntry> basis;
  // Blocks of state indices, ordered by least member. Sound in both
  // directions when Completed; separations stay sound on budget exhaustion
  // because every basis vector is a genuine language vector.
  std::vector<std::vector<std::size_t>> partition;
  std::uint64_t words_explored = 0;
  bool solver_budget_hit = false;
};

EquivalenceReport equiv_complete(const WeightedAutomaton& wa, Budget& budget,
                                 const SolveLimits& limits = {});

// --------------------------------------------------------------------------
// Congruence closure membership test used by the up-to procedure.
//
// Ring instances: (u1,u2) is in the congruence closure of R iff u1 - u2 lies
// in the span of the pairwise differences of R.
// l-monoid instances: both vectors are rewritten to joint normal forms,
// u -> u join c*q for (p,q) in R and its transpose, c the greatest
// coefficient with c*p below u. Exceeding the iteration cap counts as "not
// in closure", which is the sound direction.

using VectorPair = std::pair<std::vector<Value>, std::vector<Value>>;

bool congruence_check(const std::vector<VectorPair>& relation,
                      const std::vector<Value>& u1,
                      const std::vector<Value>& u2, const Semiring& sr,
                      const SolveLimits& limits = {},
                      std::uint64_t iteration_cap = 1000);

// --------------------------------------------------------------------------
// Up-to procedure: compares the languages of two weighted initial vectors,
// pruning pairs already in the congruence closure of the processed relation
// plus the worklist. Returns the shortest separating word in breadth-first
// order when the languages differ.

struct EquivUptoResult {
  enum class Status { Equivalent, NotEquivalent, BudgetExhausted };
  Status status = Status::Equivalent;
  Word witness;              // NotEquivalent only
  Value left_weight, right_weight;
  std::uint64_t pairs_processed = 0;
  std::uint64_t pairs_pruned = 0;
};

EquivUptoResult equiv_upto(const WeightedAutomaton& wa,
                           const std::vector<Value>& left,
                           const std::vector<Value>& right, Budget& budget,
                           const SolveLimits& limits = {});

// --------------------------------------------------------------------------
// Threshold universality for tropical-nat: does every word have weight at
// most the threshold from the given initial row vector? Vector entries are
// capped at threshold+1 and the explored set is kept as an antichain of
// pointwise-maximal vectors: anything below a stored vector can only reach
// violations the stored vector also reaches.

struct UniversalityResult {
  enum class Status { Universal, NotUniversal, BudgetExhausted };
  Status status = Status::Universal;
  Word witness;  // NotUniversal only; the empty word is a legal witness
  std::uint64_t vectors_explored = 0;
  std::uint64_t vectors_kept = 0;
};

UniversalityResult universality(const WeightedAutomaton& wa,
                                const std::vector<Value>& initial,
                                std::uint64_t threshold, Budget& budget);

}  // namespace wca

#endif
