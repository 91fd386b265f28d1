#include "wca/cts.hpp"

#include "wca/errors.hpp"

#include <algorithm>

namespace wca {

namespace {

struct DownsetBackend {
  using Elem = DenseBitset;
  const Poset& p;

  Elem top() const { return p.full_set(); }
  Elem bot() const { return p.empty_set(); }
  Elem meet(const Elem& a, const Elem& b) const { return a & b; }
  Elem join(const Elem& a, const Elem& b) const { return a | b; }
  Elem implication(const Elem& a, const Elem& b) const {
    return heyting_implication(p, a, b);
  }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  bool is_bot(const Elem& a) const { return a.empty(); }
  Elem lift(const DenseBitset& s) const { return s; }
  DenseBitset lower(const Elem& a) const { return a; }
};

struct BddBackend {
  using Elem = BddManager::Ref;
  BddManager& mgr;
  const FeatureModel& fm;

  Elem top() const { return BddManager::kTrue; }
  Elem bot() const { return BddManager::kFalse; }
  Elem meet(Elem a, Elem b) const { return mgr.bdd_and(a, b); }
  Elem join(Elem a, Elem b) const { return mgr.bdd_or(a, b); }
  Elem implication(Elem a, Elem b) const {
    return monotone_implication(mgr, fm, a, b);
  }
  bool equal(Elem a, Elem b) const { return a == b; }
  bool is_bot(Elem a) const { return a == BddManager::kFalse; }
  Elem lift(const DenseBitset& s) const { return downset_to_bdd(mgr, fm, s); }
  DenseBitset lower(Elem a) const { return bdd_to_downset(mgr, fm, a); }
};

// Jacobi refinement: every iteration reads the previous matrix only, so
// the iterate sequence is deterministic regardless of entry order. The
// matrix stays symmetric because both transfer directions are conjoined.
template <class B>
void bisim_fixpoint(const Cts& cts, B& bk, BisimReport& report) {
  std::size_t n = cts.state_count();
  std::size_t na = cts.alphabet.size();
  std::vector<typename B::Elem> g;
  g.reserve(cts.guards.size());
  for (const auto& s : cts.guards) g.push_back(bk.lift(s));
  auto gd = [&](std::size_t x, std::size_t a,
                std::size_t y) -> const typename B::Elem& {
    return g[(x * na + a) * n + y];
  };

  std::vector<typename B::Elem> r(n * n, bk.top());
  std::vector<typename B::Elem> next = r;

  // One transfer direction: x's moves must be answered from y.
  auto step = [&](std::size_t x, std::size_t y) {
    typename B::Elem acc = bk.top();
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t xp = 0; xp < n; ++xp) {
        const auto& gx = gd(x, a, xp);
        if (bk.is_bot(gx)) continue;
        typename B::Elem answers = bk.bot();
        for (std::size_t yp = 0; yp < n; ++yp) {
          const auto& gy = gd(y, a, yp);
          if (bk.is_bot(gy)) continue;
          answers = bk.join(answers, bk.meet(gy, r[xp * n + yp]));
        }
        acc = bk.meet(acc, bk.implication(gx, answers));
      }
    return acc;
  };

  for (;;) {
    bool changed = false;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x; y < n; ++y) {
        typename B::Elem e = bk.meet(r[x * n + y], step(x, y));
        if (x != y) e = bk.meet(e, step(y, x));
        next[x * n + y] = e;
        next[y * n + x] = e;
        if (!bk.equal(e, r[x * n + y])) changed = true;
      }
    if (!changed) break;
    std::swap(r, next);
    ++report.iterations;
  }

  report.matrix.clear();
  report.matrix.reserve(n * n);
  for (const auto& e : r) report.matrix.push_back(bk.lower(e));
}

}  // namespace

Cts Cts::over_poset(std::vector<std::string> states,
                    std::vector<std::string> alphabet, Poset conditions) {
  Cts c;
  c.states = std::move(states);
  c.alphabet = std::move(alphabet);
  c.conditions = std::make_shared<Poset>(std::move(conditions));
  if (c.states.empty()) throw Error("cts: no states");
  for (std::size_t i = 0; i < c.states.size(); ++i)
    for (std::size_t j = i + 1; j < c.states.size(); ++j)
      if (c.states[i] == c.states[j])
        throw DuplicateName("cts: duplicate state '" + c.states[i] + "'");
  for (std::size_t i = 0; i < c.alphabet.size(); ++i)
    for (std::size_t j = i + 1; j < c.alphabet.size(); ++j)
      if (c.alphabet[i] == c.alphabet[j])
        throw DuplicateName("cts: duplicate symbol '" + c.alphabet[i] + "'");
  c.guards.assign(c.states.size() * c.alphabet.size() * c.states.size(),
                  DenseBitset(c.conditions->size()));
  return c;
}

Cts Cts::over_features(std::vector<std::string> states,
                       std::vector<std::string> alphabet,
                       FeatureModel features) {
  Cts c = over_poset(std::move(states), std::move(alphabet),
                     features.as_poset());
  c.features = std::move(features);
  return c;
}

void Cts::set_guard(std::size_t x, std::size_t a, std::size_t y,
                    DenseBitset set) {
  if (!conditions->is_downclosed(set))
    throw GuardNotDownclosed("guard on " + states[x] + " --" + alphabet[a] +
                             "--> " + states[y] +
                             " is not downward-closed");
  guards[(x * alphabet.size() + a) * states.size() + y] = std::move(set);
}

std::size_t Cts::state_index(const std::string& name) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == name) return i;
  throw Error("cts: unknown state '" + name + "'");
}

std::size_t Cts::symbol_index(const std::string& name) const {
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    if (alphabet[i] == name) return i;
  throw Error("cts: unknown symbol '" + name + "'");
}

BisimReport cts_bisimilarity(const Cts& cts, CtsBackend backend) {
  BisimReport report;
  report.state_count = cts.state_count();
  if (backend == CtsBackend::Downset) {
    DownsetBackend bk{*cts.conditions};
    bisim_fixpoint(cts, bk, report);
  } else {
    if (!cts.features)
      throw CapabilityMismatch(
          "the BDD backend needs a feature-model condition poset");
    BddManager mgr(cts.features->feature_count());
    BddBackend bk{mgr, *cts.features};
    bisim_fixpoint(cts, bk, report);
    report.bdd_nodes = mgr.node_count();
  }
  return report;
}

std::vector<std::uint8_t> per_condition_bisim(const Cts& cts,
                                              std::size_t condition) {
  std::size_t n = cts.state_count();
  std::size_t nc = cts.condition_count();
  std::size_t na = cts.alphabet.size();
  if (condition >= nc) throw Error("cts: condition index out of range");

  // States of the expanded system are pairs (x, ψ); labels are the action
  // symbols (which keep ψ) plus one upgrade label per target condition
  // (which both sides must take together). Bisimilarity here captures that
  // the environment may upgrade at any point and play continues under the
  // new condition.
  auto id = [&](std::size_t x, std::size_t c) { return x * nc + c; };
  std::size_t m = n * nc;
  std::vector<std::vector<std::vector<std::size_t>>> moves(
      m, std::vector<std::vector<std::size_t>>(na + nc));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t a = 0; a < na; ++a)
        for (std::size_t y = 0; y < n; ++y)
          if (cts.guard(x, a, y).test(c)) moves[id(x, c)][a].push_back(id(y, c));
      for (std::size_t c2 = 0; c2 < nc; ++c2)
        if (cts.conditions->le(c2, c))
          moves[id(x, c)][na + c2].push_back(id(x, c2));
    }

  std::vector<std::uint8_t> rel(m * m, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t s = 0; s < m; ++s)
      for (std::size_t t = 0; t < m; ++t) {
        if (!rel[s * m + t]) continue;
        bool ok = true;
        for (std::size_t l = 0; l < na + nc && ok; ++l) {
          for (std::size_t sp : moves[s][l]) {
            bool answered = false;
            for (std::size_t tp : moves[t][l])
              if (rel[sp * m + tp]) {
                answered = true;
                break;
              }
            if (!answered) {
              ok = false;
              break;
            }
          }
          if (!ok) break;
          for (std::size_t tp : moves[t][l]) {
            bool answered = false;
            for (std::size_t sp : moves[s][l])
              if (rel[sp * m + tp]) {
                answered = true;
                break;
              }
            if (!answered) {
              ok = false;
              break;
            }
          }
        }
        if (!ok) {
          rel[s * m + t] = 0;
          changed = true;
        }
      }
  }

  std::vector<std::uint8_t> out(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      out[x * n + y] = rel[id(x, condition) * m + id(y, condition)];
  return out;
}

}  // namespace wca
