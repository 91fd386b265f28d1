#include "wca/poset.hpp"

#include "wca/errors.hpp"

#include <map>

namespace wca {

Poset::Poset(std::vector<std::string> elements,
             const std::vector<std::pair<std::string, std::string>>& le_pairs)
    : names_(std::move(elements)) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!index.emplace(names_[i], i).second)
      throw DuplicateName("poset: duplicate element '" + names_[i] + "'");
  }

  down_.assign(names_.size(), DenseBitset(names_.size()));
  for (std::size_t i = 0; i < names_.size(); ++i) down_[i].set(i);
  for (const auto& [lo, hi] : le_pairs) {
    auto a = index.find(lo);
    auto b = index.find(hi);
    if (a == index.end() || b == index.end())
      throw Error("poset: unknown element in order pair (" + lo + "," + hi + ")");
    down_[b->second].set(a->second);
  }

  // Transitive closure; n passes suffice because each pass propagates one
  // more step along any chain and chains have length at most n.
  for (std::size_t pass = 0; pass < names_.size(); ++pass) {
    bool changed = false;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      DenseBitset next = down_[i];
      for (std::size_t j = 0; j < names_.size(); ++j)
        if (down_[i].test(j)) next |= down_[j];
      if (!(next == down_[i])) {
        down_[i] = next;
        changed = true;
      }
    }
    if (!changed) break;
  }

  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (down_[i].test(j) && down_[j].test(i))
        throw NotAPoset("cycle between '" + names_[i] + "' and '" + names_[j] +
                        "'");
}

Poset Poset::from_closure(std::vector<std::string> elements,
                          std::vector<DenseBitset> down) {
  Poset p;
  p.names_ = std::move(elements);
  p.down_ = std::move(down);
  if (p.down_.size() != p.names_.size())
    throw Error("poset: closure size does not match element count");
  for (std::size_t i = 0; i < p.names_.size(); ++i) {
    if (p.down_[i].universe() != p.names_.size() || !p.down_[i].test(i))
      throw Error("poset: closure row " + p.names_[i] + " is not reflexive");
    for (std::size_t j = i + 1; j < p.names_.size(); ++j)
      if (p.down_[i].test(j) && p.down_[j].test(i))
        throw NotAPoset("cycle between '" + p.names_[i] + "' and '" +
                        p.names_[j] + "'");
  }
  return p;
}

std::size_t Poset::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  throw Error("poset: unknown element '" + name + "'");
}

DenseBitset Poset::downward_close(const DenseBitset& s) const {
  DenseBitset out(size());
  for (std::size_t i = 0; i < size(); ++i)
    if (s.test(i)) out |= down_[i];
  return out;
}

bool Poset::is_downclosed(const DenseBitset& s) const {
  for (std::size_t i = 0; i < size(); ++i)
    if (s.test(i) && !down_[i].subset_of(s)) return false;
  return true;
}

DenseBitset Poset::full_set() const {
  DenseBitset out(size());
  for (std::size_t i = 0; i < size(); ++i) out.set(i);
  return out;
}

DenseBitset heyting_implication(const Poset& p, const DenseBitset& a,
                                const DenseBitset& b) {
  DenseBitset out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    if ((p.down(i) & a).subset_of(b)) out.set(i);
  return out;
}

}  // namespace wca
