// Finite poset over named elements, stored as per-element principal
// downsets. Built from an arbitrary relation: the constructor takes the
// reflexive-transitive closure and rejects cycles between distinct
// elements, so 'le' is always a partial order afterwards.

#ifndef WCA_POSET_HPP
#define WCA_POSET_HPP

#include "wca/value.hpp"

#include <string>
#include <utility>
#include <vector>

namespace wca {

class Poset {
public:
  Poset(std::vector<std::string> elements,
        const std::vector<std::pair<std::string, std::string>>& le_pairs);

  // Builds directly from precomputed principal downsets. The caller must
  // supply a reflexive-transitive relation; antisymmetry is still checked.
  static Poset from_closure(std::vector<std::string> elements,
                            std::vector<DenseBitset> down);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  // Throws Error when the name is unknown.
  std::size_t index_of(const std::string& name) const;

  bool le(std::size_t a, std::size_t b) const { return down_[b].test(a); }

  // Principal downset {j : j <= i}.
  const DenseBitset& down(std::size_t i) const { return down_[i]; }

  DenseBitset downward_close(const DenseBitset& s) const;
  bool is_downclosed(const DenseBitset& s) const;

  DenseBitset empty_set() const { return DenseBitset(size()); }
  DenseBitset full_set() const;

private:
  Poset() = default;

  std::vector<std::string> names_;
  std::vector<DenseBitset> down_;
};

// Greatest downward-closed c with c ∩ a ⊆ b, i.e. the elements whose whole
// principal downset avoids a outside b.
DenseBitset heyting_implication(const Poset& p, const DenseBitset& a,
                                const DenseBitset& b);

}  // namespace wca

#endif
