#include "wca/wa.hpp"

#include "wca/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace wca {

namespace {

std::vector<Value> mat_vec(const Semiring& sr, const Matrix& m,
                           const std::vector<Value>& v) {
  std::vector<Value> out(m.rows(), sr.zero());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Value acc = sr.zero();
    for (std::size_t j = 0; j < m.cols(); ++j)
      acc = sr.add(acc, sr.mul(m.at(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

std::vector<Value> vec_mat(const Semiring& sr, const std::vector<Value>& u,
                           const Matrix& m) {
  std::vector<Value> out(m.cols(), sr.zero());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Value acc = sr.zero();
    for (std::size_t i = 0; i < m.rows(); ++i)
      acc = sr.add(acc, sr.mul(u[i], m.at(i, j)));
    out[j] = acc;
  }
  return out;
}

Value dot(const Semiring& sr, const std::vector<Value>& u,
          const std::vector<Value>& v) {
  Value acc = sr.zero();
  for (std::size_t i = 0; i < u.size(); ++i)
    acc = sr.add(acc, sr.mul(u[i], v[i]));
  return acc;
}

bool vectors_equal(const Semiring& sr, const std::vector<Value>& a,
                   const std::vector<Value>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!sr.equal(a[i], b[i])) return false;
  return true;
}

}  // namespace

void validate(const WeightedAutomaton& wa) {
  if (!wa.sr) throw Error("automaton has no semiring instance");
  if (wa.states.empty()) throw Error("automaton has no states");
  std::set<std::string> seen(wa.states.begin(), wa.states.end());
  if (seen.size() != wa.states.size())
    throw Error("duplicate state names");
  std::set<std::string> sym(wa.alphabet.begin(), wa.alphabet.end());
  if (sym.size() != wa.alphabet.size())
    throw Error("duplicate alphabet symbols");
  if (wa.transitions.size() != wa.alphabet.size())
    throw Error("one transition matrix per symbol required");
  for (const auto& m : wa.transitions)
    if (m.rows() != wa.state_count() || m.cols() != wa.state_count())
      throw Error("transition matrix dimensions do not match state count");
  if (wa.termination.size() != wa.state_count())
    throw Error("termination vector length does not match state count");
}

std::string render_word(const WeightedAutomaton& wa, const Word& w) {
  if (w.empty()) return "\xce\xb5";  // epsilon
  bool compact = true;
  for (const auto& s : wa.alphabet)
    if (s.size() != 1) compact = false;
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i) out += " ";
    out += wa.alphabet[w[i]];
  }
  return out;
}

std::vector<Value> language_vector(const WeightedAutomaton& wa, const Word& w) {
  std::vector<Value> v = wa.termination;
  for (std::size_t i = w.size(); i-- > 0;)
    v = mat_vec(*wa.sr, wa.transitions[w[i]], v);
  return v;
}

Value language_weight(const WeightedAutomaton& wa, std::size_t state,
                      const Word& w) {
  return language_vector(wa, w)[state];
}

EquivalenceReport equiv_complete(const WeightedAutomaton& wa, Budget& budget,
                                 const SolveLimits& limits) {
  validate(wa);
  const Semiring& sr = *wa.sr;
  if (sr.solver_kind() == SolverKind::None)
    throw CapabilityMismatch("equiv_complete: instance '" + sr.name() +
                             "' has no linear solver");

  EquivalenceReport rep;
  std::deque<std::pair<Word, std::vector<Value>>> queue;
  queue.push_back({Word{}, wa.termination});

  std::vector<std::vector<Value>> basis_vecs;
  while (!queue.empty()) {
    if (!budget.spend()) {
      rep.status = EquivalenceReport::Status::BudgetExhausted;
      break;
    }
    auto [word, vec] = std::move(queue.front());
    queue.pop_front();
    ++rep.words_explored;

    SolveOutcome span = in_span(basis_vecs, vec, sr, limits);
    if (span.status == SolveOutcome::Status::Solution) continue;
    // An undecided span check (solver budget) is treated as independent:
    // the vector is a genuine language vector either way, so separations
    // derived from it stay correct.
    if (span.status == SolveOutcome::Status::BudgetExhausted)
      rep.solver_budget_hit = true;

    basis_vecs.push_back(vec);
    rep.basis.push_back({word, vec});
    for (std::size_t a = 0; a < wa.symbol_count(); ++a) {
      Word next = word;
      next.insert(next.begin(), a);  // column form: words grow on the left
      queue.push_back({std::move(next), mat_vec(sr, wa.transitions[a], vec)});
    }
  }

  // Partition states by agreement on every kept vector. Left-linear
  // combinations preserve agreement, so dropped vectors cannot separate
  // states the basis does not.
  std::vector<long> block_of(wa.state_count(), -1);
  std::vector<std::size_t> representative;
  for (std::size_t x = 0; x < wa.state_count(); ++x) {
    for (std::size_t bidx = 0; bidx < representative.size(); ++bidx) {
      std::size_t y = representative[bidx];
      bool same = true;
      for (const auto& entry : rep.basis)
        if (!sr.equal(entry.vec[x], entry.vec[y])) {
          same = false;
          break;
        }
      if (same) {
        block_of[x] = static_cast<long>(bidx);
        break;
      }
    }
    if (block_of[x] < 0) {
      block_of[x] = static_cast<long>(representative.size());
      representative.push_back(x);
    }
  }
  rep.partition.assign(representative.size(), {});
  for (std::size_t x = 0; x < wa.state_count(); ++x)
    rep.partition[static_cast<std::size_t>(block_of[x])].push_back(x);
  return rep;
}

bool congruence_check(const std::vector<VectorPair>& relation,
                      const std::vector<Value>& u1,
                      const std::vector<Value>& u2, const Semiring& sr,
                      const SolveLimits& limits,
                      std::uint64_t iteration_cap) {
  if (sr.caps().is_ring) {
    std::vector<std::vector<Value>> diffs;
    diffs.reserve(relation.size());
    for (const auto& [r1, r2] : relation) {
      std::vector<Value> d(r1.size());
      for (std::size_t i = 0; i < r1.size(); ++i)
        d[i] = sr.add(r1[i], *sr.negate(r2[i]));
      diffs.push_back(std::move(d));
    }
    std::vector<Value> target(u1.size());
    for (std::size_t i = 0; i < u1.size(); ++i)
      target[i] = sr.add(u1[i], *sr.negate(u2[i]));
    SolveOutcome out = in_span(diffs, target, sr, limits);
    // Budget exhaustion is treated as "not in closure": the caller then
    // keeps the pair, which is the sound direction.
    return out.status == SolveOutcome::Status::Solution;
  }

  if (!sr.caps().is_l_monoid)
    throw CapabilityMismatch("congruence_check: instance '" + sr.name() +
                             "' is neither a ring nor an l-monoid");

  // Rewriting normal form: saturate u with c*q for every oriented pair.
  auto normal_form = [&](std::vector<Value> u) -> std::optional<std::vector<Value>> {
    for (std::uint64_t pass = 0; pass < iteration_cap; ++pass) {
      bool changed = false;
      auto apply = [&](const std::vector<Value>& p, const std::vector<Value>& q) {
        std::optional<Value> c;
        for (std::size_t i = 0; i < u.size(); ++i) {
          auto r = sr.residuum(p[i], u[i]);
          if (!r)
            throw CapabilityMismatch("congruence_check: residuum unavailable");
          if (!c) {
            c = *r;
          } else {
            auto met = sr.meet(*c, *r);
            if (!met)
              throw CapabilityMismatch("congruence_check: meet unavailable");
            c = *met;
          }
        }
        if (!c) return;
        for (std::size_t i = 0; i < u.size(); ++i) {
          Value next = sr.add(u[i], sr.mul(*c, q[i]));
          if (!sr.equal(next, u[i])) {
            u[i] = next;
            changed = true;
          }
        }
      };
      for (const auto& [r1, r2] : relation) {
        apply(r1, r2);
        apply(r2, r1);
      }
      if (!changed) return u;
    }
    return std::nullopt;  // cap exceeded
  };

  auto n1 = normal_form(u1);
  auto n2 = normal_form(u2);
  if (!n1 || !n2) return false;
  return vectors_equal(sr, *n1, *n2);
}

EquivUptoResult equiv_upto(const WeightedAutomaton& wa,
                           const std::vector<Value>& left,
                           const std::vector<Value>& right, Budget& budget,
                           const SolveLimits& limits) {
  validate(wa);
  const Semiring& sr = *wa.sr;
  if (!sr.caps().is_ring && !sr.caps().is_l_monoid)
    throw CapabilityMismatch("equiv_upto: instance '" + sr.name() +
                             "' is neither a ring nor an l-monoid");
  if (left.size() != wa.state_count() || right.size() != wa.state_count())
    throw Error("initial vector length does not match state count");

  EquivUptoResult res;
  struct Item {
    std::vector<Value> u1, u2;
    Word word;
  };
  std::deque<Item> worklist;
  worklist.push_back({left, right, {}});
  std::vector<VectorPair> relation;

  while (!worklist.empty()) {
    if (!budget.spend()) {
      res.status = EquivUptoResult::Status::BudgetExhausted;
      return res;
    }
    Item it = std::move(worklist.front());
    worklist.pop_front();
    ++res.pairs_processed;

    Value w1 = dot(sr, it.u1, wa.termination);
    Value w2 = dot(sr, it.u2, wa.termination);
    if (!sr.equal(w1, w2)) {
      res.status = EquivUptoResult::Status::NotEquivalent;
      res.witness = it.word;
      res.left_weight = w1;
      res.right_weight = w2;
      return res;
    }

    // Prune against the processed relation plus everything still queued.
    std::vector<VectorPair> context = relation;
    for (const auto& q : worklist) context.push_back({q.u1, q.u2});
    if (congruence_check(context, it.u1, it.u2, sr, limits)) {
      ++res.pairs_pruned;
      continue;
    }

    relation.push_back({it.u1, it.u2});
    for (std::size_t a = 0; a < wa.symbol_count(); ++a) {
      Word next = it.word;
      next.push_back(a);  // row form: words grow on the right
      worklist.push_back({vec_mat(sr, it.u1, wa.transitions[a]),
                          vec_mat(sr, it.u2, wa.transitions[a]),
                          std::move(next)});
    }
  }
  res.status = EquivUptoResult::Status::Equivalent;
  return res;
}

UniversalityResult universality(const WeightedAutomaton& wa,
                                const std::vector<Value>& initial,
                                std::uint64_t threshold, Budget& budget) {
  validate(wa);
  const Semiring& sr = *wa.sr;
  if (!sr.caps().is_tropical_nat)
    throw CapabilityMismatch("universality: instance '" + sr.name() +
                             "' is not tropical-nat");
  if (initial.size() != wa.state_count())
    throw Error("initial vector length does not match state count");
  if (threshold > (1ULL << 31))
    throw Error("threshold too large");

  const std::uint64_t cap = threshold + 1;  // cap value, also stands for inf
  auto capped = [&](const Value& v) -> std::uint64_t {
    if (v.is_inf()) return cap;
    BigInt n = v.as_int();
    return n > cap ? cap : n.convert_to<std::uint64_t>();
  };

  std::size_t nstates = wa.state_count();
  std::vector<std::vector<std::uint64_t>> tmat(
      wa.symbol_count(), std::vector<std::uint64_t>(nstates * nstates));
  for (std::size_t a = 0; a < wa.symbol_count(); ++a)
    for (std::size_t i = 0; i < nstates; ++i)
      for (std::size_t j = 0; j < nstates; ++j)
        tmat[a][i * nstates + j] = capped(wa.transitions[a].at(i, j));
  std::vector<std::uint64_t> term(nstates);
  for (std::size_t i = 0; i < nstates; ++i) term[i] = capped(wa.termination[i]);

  struct Entry {
    std::vector<std::uint64_t> vec;
    Word word;
    bool alive = true;
  };
  std::vector<Entry> store;
  std::deque<std::size_t> queue;

  auto dominated = [](const std::vector<std::uint64_t>& small,
                      const std::vector<std::uint64_t>& big) {
    for (std::size_t i = 0; i < small.size(); ++i)
      if (small[i] > big[i]) return false;
    return true;
  };

  auto try_store = [&](std::vector<std::uint64_t> vec, Word word) {
    for (const auto& e : store)
      if (e.alive && dominated(vec, e.vec)) return;  // covered by a bigger one
    for (auto& e : store)
      if (e.alive && dominated(e.vec, vec)) e.alive = false;
    store.push_back({std::move(vec), std::move(word), true});
    queue.push_back(store.size() - 1);
  };

  {
    std::vector<std::uint64_t> v0(nstates);
    for (std::size_t i = 0; i < nstates; ++i) v0[i] = capped(initial[i]);
    try_store(std::move(v0), {});
  }

  UniversalityResult res;
  while (!queue.empty()) {
    std::size_t idx = queue.front();
    queue.pop_front();
    if (!store[idx].alive) continue;
    if (!budget.spend()) {
      res.status = UniversalityResult::Status::BudgetExhausted;
      return res;
    }
    ++res.vectors_explored;
    const auto vec = store[idx].vec;    // copy: store may reallocate below
    const Word word = store[idx].word;

    std::uint64_t weight = ~0ULL;
    for (std::size_t i = 0; i < nstates; ++i)
      weight = std::min(weight, vec[i] + term[i]);
    if (weight > threshold) {
      res.status = UniversalityResult::Status::NotUniversal;
      res.witness = word;
      for (const auto& e : store) res.vectors_kept += e.alive ? 1 : 0;
      return res;
    }

    for (std::size_t a = 0; a < wa.symbol_count(); ++a) {
      std::vector<std::uint64_t> next(nstates, cap);
      for (std::size_t j = 0; j < nstates; ++j) {
        std::uint64_t best = cap;
        for (std::size_t i = 0; i < nstates; ++i)
          best = std::min(best, vec[i] + tmat[a][i * nstates + j]);
        next[j] = std::min(best, cap);
      }
      Word nw = word;
      nw.push_back(a);
      try_store(std::move(next), std::move(nw));
    }
  }
  res.status = UniversalityResult::Status::Universal;
  for (const auto& e : store) res.vectors_kept += e.alive ? 1 : 0;
  return res;
}

}  // namespace wca
