#include "wca/bdd.hpp"

#include "wca/errors.hpp"
#include "wca/tokens.hpp"

#include <algorithm>
#include <map>

namespace wca {

namespace {

// Operation tags for the apply cache. Restriction gets two slots per
// variable, after the three binary/unary ops.
constexpr std::uint64_t kOpAnd = 0;
constexpr std::uint64_t kOpOr = 1;
constexpr std::uint64_t kOpNot = 2;
std::uint64_t restrict_op(std::size_t var, bool value) {
  return 3 + 2 * static_cast<std::uint64_t>(var) + (value ? 1 : 0);
}

}  // namespace

BddManager::BddManager(std::size_t var_count) : var_count_(var_count) {
  if (var_count >= (1u << 12))
    throw Error("bdd: variable count limit is 4095");
  // Terminals carry a sentinel variable index past every real one, so the
  // top-variable computation needs no special cases.
  nodes_.push_back({static_cast<std::uint32_t>(var_count_), kFalse, kFalse});
  nodes_.push_back({static_cast<std::uint32_t>(var_count_), kTrue, kTrue});
}

BddManager::Ref BddManager::make(std::uint32_t v, Ref lo, Ref hi) {
  if (lo == hi) return lo;
  std::uint64_t key = pack(v, lo, hi);
  auto it = unique_.find(key);
  if (it != unique_.end()) return it->second;
  if (nodes_.size() >= (1u << 26)) throw Error("bdd: node limit exceeded");
  Ref r = static_cast<Ref>(nodes_.size());
  nodes_.push_back({v, lo, hi});
  unique_.emplace(key, r);
  return r;
}

BddManager::Ref BddManager::var(std::size_t index) {
  if (index >= var_count_) throw Error("bdd: variable index out of range");
  return make(static_cast<std::uint32_t>(index), kFalse, kTrue);
}

BddManager::Ref BddManager::bdd_and(Ref a, Ref b) {
  if (a == kFalse || b == kFalse) return kFalse;
  if (a == kTrue) return b;
  if (b == kTrue) return a;
  if (a == b) return a;
  if (a > b) std::swap(a, b);
  std::uint64_t key = pack(kOpAnd, a, b);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  const Node na = nodes_[a], nb = nodes_[b];
  std::uint32_t v = std::min(na.var, nb.var);
  Ref a0 = na.var == v ? na.lo : a, a1 = na.var == v ? na.hi : a;
  Ref b0 = nb.var == v ? nb.lo : b, b1 = nb.var == v ? nb.hi : b;
  Ref r = make(v, bdd_and(a0, b0), bdd_and(a1, b1));
  cache_.emplace(key, r);
  return r;
}

BddManager::Ref BddManager::bdd_or(Ref a, Ref b) {
  if (a == kTrue || b == kTrue) return kTrue;
  if (a == kFalse) return b;
  if (b == kFalse) return a;
  if (a == b) return a;
  if (a > b) std::swap(a, b);
  std::uint64_t key = pack(kOpOr, a, b);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  const Node na = nodes_[a], nb = nodes_[b];
  std::uint32_t v = std::min(na.var, nb.var);
  Ref a0 = na.var == v ? na.lo : a, a1 = na.var == v ? na.hi : a;
  Ref b0 = nb.var == v ? nb.lo : b, b1 = nb.var == v ? nb.hi : b;
  Ref r = make(v, bdd_or(a0, b0), bdd_or(a1, b1));
  cache_.emplace(key, r);
  return r;
}

BddManager::Ref BddManager::bdd_not(Ref a) {
  if (a == kFalse) return kTrue;
  if (a == kTrue) return kFalse;
  std::uint64_t key = pack(kOpNot, a, 0);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  const Node n = nodes_[a];
  Ref r = make(n.var, bdd_not(n.lo), bdd_not(n.hi));
  cache_.emplace(key, r);
  return r;
}

BddManager::Ref BddManager::restrict_var(Ref f, std::size_t index,
                                         bool value) {
  if (f <= kTrue) return f;
  const Node n = nodes_[f];
  // Ordered: variables only grow along paths, so a root past 'index'
  // cannot mention it anywhere below.
  if (n.var > index) return f;
  if (n.var == index) return value ? n.hi : n.lo;
  std::uint64_t key = pack(restrict_op(index, value), f, 0);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  Ref r = make(n.var, restrict_var(n.lo, index, value),
               restrict_var(n.hi, index, value));
  cache_.emplace(key, r);
  return r;
}

bool BddManager::eval(Ref f, std::uint32_t assignment) const {
  while (f > kTrue) {
    const Node& n = nodes_[f];
    f = (assignment >> n.var) & 1u ? n.hi : n.lo;
  }
  return f == kTrue;
}

FeatureModel::FeatureModel(std::vector<std::string> base_features,
                           std::vector<std::string> upgrade_features)
    : base(std::move(base_features)), upgrade(std::move(upgrade_features)) {
  if (feature_count() > 20)
    throw Error("feature model: at most 20 features supported");
  std::map<std::string, int> seen;
  for (const auto& lists : {&base, &upgrade})
    for (const auto& f : *lists) {
      if (f.empty() || f == "0")
        throw Error("feature model: invalid feature name '" + f + "'");
      if (f.find('+') != std::string::npos)
        throw Error("feature model: feature name may not contain '+'");
      if (!seen.emplace(f, 0).second)
        throw DuplicateName("feature model: duplicate feature '" + f + "'");
    }
}

std::string FeatureModel::condition_name(std::uint32_t mask) const {
  std::string out;
  for (std::size_t i = 0; i < feature_count(); ++i) {
    if (!((mask >> i) & 1u)) continue;
    if (!out.empty()) out += '+';
    out += i < base.size() ? base[i] : upgrade[i - base.size()];
  }
  return out.empty() ? "0" : out;
}

std::uint32_t FeatureModel::condition_mask(const std::string& token) const {
  if (token == "0") return 0;
  std::uint32_t mask = 0;
  for (const auto& part : split_top_level(token, '+')) {
    std::string name{trim(part)};
    std::size_t idx = feature_count();
    for (std::size_t i = 0; i < base.size(); ++i)
      if (base[i] == name) idx = i;
    for (std::size_t i = 0; i < upgrade.size(); ++i)
      if (upgrade[i] == name) idx = base.size() + i;
    if (idx == feature_count())
      throw MalformedElement("unknown feature '" + name + "'");
    if ((mask >> idx) & 1u)
      throw MalformedElement("repeated feature '" + name + "'");
    mask |= 1u << idx;
  }
  return mask;
}

bool FeatureModel::le(std::uint32_t p, std::uint32_t q) const {
  std::uint32_t base_bits = (1u << base.size()) - 1;
  if ((p & base_bits) != (q & base_bits)) return false;
  // More upgrades = smaller condition; q's upgrades must all be in p.
  return (q & ~p & ~base_bits) == 0;
}

Poset FeatureModel::as_poset() const {
  if (feature_count() > 12)
    throw Error("feature model: explicit condition poset limited to 12 "
                "features");
  std::size_t n = condition_count();
  std::vector<std::string> names(n);
  std::vector<DenseBitset> down(n, DenseBitset(n));
  for (std::size_t q = 0; q < n; ++q) {
    names[q] = condition_name(static_cast<std::uint32_t>(q));
    for (std::size_t p = 0; p < n; ++p)
      if (le(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(q)))
        down[q].set(p);
  }
  return Poset::from_closure(std::move(names), std::move(down));
}

BddManager::Ref monotone_closure(BddManager& mgr, const FeatureModel& fm,
                                 BddManager::Ref f) {
  // One pass per upgrade variable u: keep an assignment with u off only if
  // it also survives with u on. Each pass preserves closure under the
  // variables already handled, so the result is closed under adding any
  // set of upgrades.
  BddManager::Ref r = f;
  for (std::size_t u = fm.base.size(); u < fm.feature_count(); ++u) {
    BddManager::Ref on = mgr.restrict_var(r, u, true);
    BddManager::Ref off = mgr.restrict_var(r, u, false);
    r = mgr.bdd_or(mgr.bdd_and(mgr.var(u), r),
                   mgr.bdd_and(mgr.bdd_not(mgr.var(u)),
                               mgr.bdd_and(off, on)));
  }
  return r;
}

bool is_monotone(BddManager& mgr, const FeatureModel& fm,
                 BddManager::Ref f) {
  return monotone_closure(mgr, fm, f) == f;
}

BddManager::Ref monotone_implication(BddManager& mgr, const FeatureModel& fm,
                                     BddManager::Ref a, BddManager::Ref b) {
  return monotone_closure(mgr, fm, mgr.bdd_or(mgr.bdd_not(a), b));
}

BddManager::Ref downset_to_bdd(BddManager& mgr, const FeatureModel& fm,
                               const DenseBitset& set) {
  if (set.universe() != fm.condition_count())
    throw Error("downset universe does not match the feature model");
  BddManager::Ref out = BddManager::kFalse;
  for (std::size_t m = 0; m < set.universe(); ++m) {
    if (!set.test(m)) continue;
    // Minterm built bottom-up keeps every intermediate node canonical.
    BddManager::Ref term = BddManager::kTrue;
    for (std::size_t v = fm.feature_count(); v-- > 0;) {
      bool bit = (m >> v) & 1u;
      term = bit ? mgr.bdd_and(mgr.var(v), term)
                 : mgr.bdd_and(mgr.bdd_not(mgr.var(v)), term);
    }
    out = mgr.bdd_or(out, term);
  }
  return out;
}

DenseBitset bdd_to_downset(const BddManager& mgr, const FeatureModel& fm,
                           BddManager::Ref f) {
  DenseBitset out(fm.condition_count());
  for (std::size_t m = 0; m < fm.condition_count(); ++m)
    if (mgr.eval(f, static_cast<std::uint32_t>(m))) out.set(m);
  return out;
}

}  // namespace wca
