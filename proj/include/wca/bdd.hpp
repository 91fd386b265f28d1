// Reduced ordered BDDs with hash-consing, plus the feature-model view of
// conditions: a condition is one full assignment to base and upgrade
// features, and a set of conditions is a boolean function over those
// variables. Downward-closed sets are exactly the functions closed under
// switching upgrade variables on.

#ifndef WCA_BDD_HPP
#define WCA_BDD_HPP

#include "wca/poset.hpp"
#include "wca/value.hpp"

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace wca {

class BddManager {
public:
  using Ref = std::uint32_t;
  static constexpr Ref kFalse = 0;
  static constexpr Ref kTrue = 1;

  explicit BddManager(std::size_t var_count);

  std::size_t var_count() const { return var_count_; }
  // Live unique-table size, terminals excluded; a compactness measure.
  std::size_t node_count() const { return nodes_.size() - 2; }

  Ref var(std::size_t index);

  Ref bdd_and(Ref a, Ref b);
  Ref bdd_or(Ref a, Ref b);
  Ref bdd_not(Ref a);
  Ref restrict_var(Ref f, std::size_t index, bool value);

  // Bit i of 'assignment' is the value of variable i.
  bool eval(Ref f, std::uint32_t assignment) const;

private:
  struct Node {
    std::uint32_t var;
    Ref lo;
    Ref hi;
  };

  Ref make(std::uint32_t v, Ref lo, Ref hi);
  static std::uint64_t pack(std::uint64_t op, Ref a, Ref b) {
    return (op << 52) | (std::uint64_t{a} << 26) | b;
  }

  std::size_t var_count_;
  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, Ref> unique_;
  std::unordered_map<std::uint64_t, Ref> cache_;
};

// Conditions are full assignments to base + upgrade features. Variable and
// bit order: base features first, then upgrade features, declaration order.
// p <= q ("p is an upgrade of q") iff both agree on base features and p's
// upgrade set contains q's.
struct FeatureModel {
  std::vector<std::string> base;
  std::vector<std::string> upgrade;

  FeatureModel(std::vector<std::string> base_features,
               std::vector<std::string> upgrade_features);

  std::size_t feature_count() const { return base.size() + upgrade.size(); }
  std::size_t condition_count() const {
    return std::size_t{1} << feature_count();
  }

  // Canonical token: '+'-joined present feature names in declaration order,
  // "0" when no feature is present.
  std::string condition_name(std::uint32_t mask) const;
  // Accepts features in any order; rejects unknown and repeated names.
  std::uint32_t condition_mask(const std::string& token) const;

  bool le(std::uint32_t p, std::uint32_t q) const;

  // Explicit poset of all conditions, element index = assignment mask.
  Poset as_poset() const;
};

// Greatest downward-closed subset of f (closure under adding upgrades).
BddManager::Ref monotone_closure(BddManager& mgr, const FeatureModel& fm,
                                 BddManager::Ref f);
bool is_monotone(BddManager& mgr, const FeatureModel& fm, BddManager::Ref f);

// Heyting arrow of the downset lattice computed on BDDs: the monotone
// closure of the boolean implication.
BddManager::Ref monotone_implication(BddManager& mgr, const FeatureModel& fm,
                                     BddManager::Ref a, BddManager::Ref b);

// Conversions between explicit condition sets (bit i = condition mask i)
// and their BDD form.
BddManager::Ref downset_to_bdd(BddManager& mgr, const FeatureModel& fm,
                               const DenseBitset& set);
DenseBitset bdd_to_downset(const BddManager& mgr, const FeatureModel& fm,
                           BddManager::Ref f);

}  // namespace wca

#endif
