// Acceptance checklist: one test case per shipped guarantee, each printing a
// single pass/fail line so a run of this binary reads as a report. Oracles
// are reimplemented here (word-level enumeration, union-find congruence
// closure, odometer solvers, unpruned vector search) rather than borrowed
// from the library under test.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "wca/bench.hpp"
#include "wca/builtins.hpp"
#include "wca/construct.hpp"
#include "wca/cts.hpp"
#include "wca/law_check.hpp"
#include "wca/linear.hpp"
#include "wca/random_gen.hpp"
#include "wca/wa.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <initializer_list>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

using namespace wca;

namespace {

struct Criterion {
  int num;
  const char* label;
  bool ok = true;
  std::uint64_t checks = 0;

  void expect(bool c) {
    ok = ok && c;
    ++checks;
  }
  bool finish() const {
    std::printf("criterion %2d: %s  %s  (%llu checks)\n", num,
                ok ? "PASS" : "FAIL", label,
                static_cast<unsigned long long>(checks));
    std::fflush(stdout);
    return ok;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::vector<Value> unit_row(const Semiring& sr, std::size_t n, std::size_t i) {
  std::vector<Value> v(n, sr.zero());
  v[i] = sr.one();
  return v;
}

// Language vectors of every word of length <= maxlen, level by level:
// L(eps) = termination, L(a w) = M_a * L(w).
std::vector<std::vector<Value>> all_language_vectors(
    const WeightedAutomaton& wa, std::size_t maxlen) {
  const Semiring& sr = *wa.sr;
  std::size_t n = wa.state_count();
  std::vector<std::vector<Value>> level = {wa.termination};
  std::vector<std::vector<Value>> all = level;
  for (std::size_t len = 1; len <= maxlen; ++len) {
    std::vector<std::vector<Value>> next;
    for (const auto& v : level)
      for (const auto& m : wa.transitions) {
        std::vector<Value> u(n, sr.zero());
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            u[i] = sr.add(u[i], sr.mul(m.at(i, j), v[j]));
        next.push_back(std::move(u));
      }
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return all;
}

std::vector<std::size_t> block_of(const EquivalenceReport& rep,
                                  std::size_t n) {
  std::vector<std::size_t> b(n, 0);
  for (std::size_t k = 0; k < rep.partition.size(); ++k)
    for (std::size_t s : rep.partition[k]) b[s] = k;
  return b;
}

std::vector<std::pair<std::string, SemiringPtr>> corpus_semirings() {
  return {{"rational", rational_semiring()},
          {"zmod(4)", modulo_ring(4)},
          {"zmod(6)", modulo_ring(6)},
          {"zmod(9)", modulo_ring(9)},
          {"boolean", boolean_semiring()}};
}

// The shared random corpus for the complete/up-to agreement criteria: the
// seed fixes the shape, the instance sampler fixes the weights.
WeightedAutomaton corpus_automaton(SemiringPtr sr, int i) {
  RandomSpec spec;
  spec.states = 2 + static_cast<std::size_t>(i % 4);
  spec.alphabet_size = 2;
  spec.transition_probability = 0.5;
  spec.seed = 1000 + static_cast<std::uint64_t>(i);
  return gen_random(spec, std::move(sr));
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

// Conditions phi2 <= phi; B and C are conditionally bisimilar exactly under
// phi2, A is bisimilar to neither.
Cts chain_cts() {
  auto cts = Cts::over_poset({"A", "B", "C"}, {"a", "b"},
                             Poset({"phi2", "phi"}, {{"phi2", "phi"}}));
  auto set = [&](const char* x, const char* sym, const char* y,
                 std::initializer_list<int> conds) {
    DenseBitset g(2);
    for (int c : conds) g.set(static_cast<std::size_t>(c));
    cts.set_guard(cts.state_index(x), cts.symbol_index(sym),
                  cts.state_index(y), g);
  };
  set("A", "a", "B", {0});
  set("A", "a", "C", {0, 1});
  set("B", "b", "B", {0, 1});
  set("C", "b", "C", {0});
  return cts;
}

}  // namespace

TEST_CASE("1: worked-example word weight") {
  Criterion c{1, "weight of ab on the three-state example is 14, under 1 ms"};
  auto wa = testutil::two_branch();
  Word ab = {0, 1};
  (void)language_weight(wa, 0, ab);  // warm-up outside the timed window
  auto t0 = std::chrono::steady_clock::now();
  Value w = language_weight(wa, 0, ab);
  double ms = seconds_since(t0) * 1000.0;
  c.expect(wa.sr->format(w) == "14");
  c.expect(ms < 1.0);
  CHECK(c.finish());
}

TEST_CASE("2: complete procedure vs brute-force word oracle") {
  Criterion c{2,
              "complete-procedure partitions match word weights to length 8 "
              "on 200 automata x 5 instances"};
  auto t0 = std::chrono::steady_clock::now();
  for (const auto& [name, sr] : corpus_semirings()) {
    for (int i = 0; i < 200; ++i) {
      auto wa = corpus_automaton(sr, i);
      Budget budget{200000};
      auto rep = equiv_complete(wa, budget);
      c.expect(rep.status == EquivalenceReport::Status::Completed);
      if (rep.status != EquivalenceReport::Status::Completed) continue;
      auto vecs = all_language_vectors(wa, 8);
      auto blocks = block_of(rep, wa.state_count());
      for (std::size_t u = 0; u < wa.state_count(); ++u)
        for (std::size_t v = u + 1; v < wa.state_count(); ++v) {
          if (blocks[u] == blocks[v]) {
            bool same = true;
            for (const auto& vec : vecs)
              same = same && sr->equal(vec[u], vec[v]);
            c.expect(same);
          } else {
            // Some basis word must witness the separation, and recomputing
            // its weight from scratch must confirm it.
            bool found = false;
            for (const auto& e : rep.basis)
              if (!sr->equal(e.vec[u], e.vec[v])) {
                found = true;
                c.expect(!sr->equal(language_weight(wa, u, e.word),
                                    language_weight(wa, v, e.word)));
                break;
              }
            c.expect(found);
          }
        }
    }
  }
  c.expect(seconds_since(t0) < 300.0);
  CHECK(c.finish());
}

TEST_CASE("3: field basis bound") {
  Criterion c{3, "field runs keep basis size <= |X| on 500 random automata"};
  std::vector<SemiringPtr> fields = {rational_semiring(), modulo_ring(2),
                                     modulo_ring(3), modulo_ring(5),
                                     modulo_ring(7)};
  for (std::size_t f = 0; f < fields.size(); ++f)
    for (int i = 0; i < 100; ++i) {
      RandomSpec spec;
      spec.states = 2 + static_cast<std::size_t>(i % 7);  // 2..8
      spec.alphabet_size = 2;
      spec.transition_probability = 0.5;
      spec.seed = 7000 + static_cast<std::uint64_t>(i) + 100 * f;
      auto wa = gen_random(spec, fields[f]);
      Budget budget{200000};
      auto rep = equiv_complete(wa, budget);
      c.expect(rep.status == EquivalenceReport::Status::Completed);
      c.expect(rep.basis.size() <= wa.state_count());
    }
  CHECK(c.finish());
}

TEST_CASE("4: up-to procedure agrees with the complete procedure") {
  Criterion c{4,
              "up-to verdicts on unit-vector pairs match the complete "
              "partition, witnesses verified"};
  for (const auto& [name, sr] : corpus_semirings()) {
    for (int i = 0; i < 200; ++i) {
      auto wa = corpus_automaton(sr, i);
      Budget budget{200000};
      auto rep = equiv_complete(wa, budget);
      if (rep.status != EquivalenceReport::Status::Completed) continue;
      auto blocks = block_of(rep, wa.state_count());
      for (std::size_t u = 0; u < wa.state_count(); ++u)
        for (std::size_t v = u + 1; v < wa.state_count(); ++v) {
          Budget b2{200000};
          auto res = equiv_upto(wa, unit_row(*sr, wa.state_count(), u),
                                unit_row(*sr, wa.state_count(), v), b2);
          if (res.status == EquivUptoResult::Status::BudgetExhausted)
            continue;  // agreement is only required when both complete
          bool same = blocks[u] == blocks[v];
          c.expect((res.status == EquivUptoResult::Status::Equivalent) ==
                   same);
          if (res.status == EquivUptoResult::Status::NotEquivalent) {
            Value lw = language_weight(wa, u, res.witness);
            Value rw = language_weight(wa, v, res.witness);
            c.expect(!sr->equal(lw, rw));
            c.expect(sr->equal(lw, res.left_weight));
            c.expect(sr->equal(rw, res.right_weight));
          }
        }
    }
  }
  CHECK(c.finish());
}

TEST_CASE("5: congruence closure oracles") {
  Criterion c{5,
              "rewriting closure matches exhaustive enumeration, ring "
              "closure matches span membership"};

  // Lattice part: boolean vectors of length 1..3 are bitmasks, the closure
  // of a relation is the least equivalence closed under joining any vector
  // onto both sides. Every relation of at most two pairs is covered.
  auto boolean_sr = boolean_semiring();
  for (std::size_t n = 1; n <= 3; ++n) {
    std::size_t count = std::size_t{1} << n;
    auto vec_of = [&](std::size_t mask) {
      std::vector<Value> v;
      for (std::size_t bit = 0; bit < n; ++bit)
        v.push_back((mask >> bit) & 1 ? boolean_sr->one()
                                      : boolean_sr->zero());
      return v;
    };
    std::size_t pair_count = count * count;
    std::vector<std::vector<std::size_t>> relations;
    relations.push_back({});
    for (std::size_t p = 0; p < pair_count; ++p) relations.push_back({p});
    for (std::size_t p = 0; p < pair_count; ++p)
      for (std::size_t q = p + 1; q < pair_count; ++q)
        relations.push_back({p, q});
    for (const auto& rel : relations) {
      std::vector<VectorPair> lib_rel;
      for (std::size_t p : rel)
        lib_rel.emplace_back(vec_of(p / count), vec_of(p % count));
      UnionFind uf(count);
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t a = 0; a < count; ++a)
          for (std::size_t b = a + 1; b < count; ++b) {
            if (uf.find(a) != uf.find(b)) continue;
            for (std::size_t w = 0; w < count; ++w)
              changed = uf.unite(a | w, b | w) || changed;
          }
        for (std::size_t p : rel)
          changed = uf.unite(p / count, p % count) || changed;
      }
      for (std::size_t u1 = 0; u1 < count; ++u1)
        for (std::size_t u2 = 0; u2 < count; ++u2) {
          bool got = congruence_check(lib_rel, vec_of(u1), vec_of(u2),
                                      *boolean_sr);
          c.expect(got == (uf.find(u1) == uf.find(u2)));
        }
    }
  }

  // Ring part: over the rationals the closure test is span membership of
  // the difference, checked against a row reduction written out here.
  auto sr = rational_semiring();
  Rng rng(99);
  auto rand_vec = [&](std::size_t n) {
    std::vector<Value> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(sr->sample(rng));
    return v;
  };
  auto vneg = [&](const std::vector<Value>& a) {
    std::vector<Value> r;
    for (const auto& x : a) r.push_back(*sr->negate(x));
    return r;
  };
  auto vsub = [&](const std::vector<Value>& a, const std::vector<Value>& b) {
    std::vector<Value> r;
    for (std::size_t i = 0; i < a.size(); ++i)
      r.push_back(sr->add(a[i], *sr->negate(b[i])));
    return r;
  };
  struct EchRow {
    std::size_t pivot;
    std::vector<Value> row;
  };
  // v minus its components along the reduced echelon rows; rows carry a unit
  // pivot and zeros at every other pivot, so one pass suffices.
  auto reduce = [&](std::vector<Value> v, const std::vector<EchRow>& ech) {
    for (const auto& e : ech) {
      Value coeff = v[e.pivot];
      if (sr->is_zero(coeff)) continue;
      Value neg = *sr->negate(coeff);
      for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = sr->add(v[i], sr->mul(neg, e.row[i]));
    }
    return v;
  };
  auto in_rational_span = [&](const std::vector<std::vector<Value>>& gens,
                              const std::vector<Value>& target) {
    std::vector<EchRow> ech;
    for (const auto& g : gens) {
      auto r = reduce(g, ech);
      std::size_t pivot = r.size();
      for (std::size_t i = 0; i < r.size(); ++i)
        if (!sr->is_zero(r[i])) {
          pivot = i;
          break;
        }
      if (pivot == r.size()) continue;
      Value inv = *sr->inverse(r[pivot]);
      for (auto& x : r) x = sr->mul(inv, x);
      for (auto& e : ech) {
        Value coeff = e.row[pivot];
        if (sr->is_zero(coeff)) continue;
        Value neg = *sr->negate(coeff);
        for (std::size_t i = 0; i < e.row.size(); ++i)
          e.row[i] = sr->add(e.row[i], sr->mul(neg, r[i]));
      }
      ech.push_back({pivot, std::move(r)});
    }
    auto rest = reduce(target, ech);
    for (const auto& x : rest)
      if (!sr->is_zero(x)) return false;
    return true;
  };
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 2 + static_cast<std::size_t>(t % 3);
    std::size_t pairs = static_cast<std::size_t>(t % 4);
    std::vector<VectorPair> rel;
    std::vector<std::vector<Value>> diffs;
    for (std::size_t k = 0; k < pairs; ++k) {
      auto p = rand_vec(n);
      auto q = rand_vec(n);
      diffs.push_back(vsub(p, q));
      rel.emplace_back(std::move(p), std::move(q));
    }
    auto u1 = rand_vec(n);
    std::vector<Value> u2;
    if (t % 2 == 0 && !diffs.empty()) {
      // Construct a vector genuinely congruent to u1.
      u2 = u1;
      for (const auto& d : diffs) {
        Value coeff = sr->parse(std::to_string(rng.range(-2, 2)));
        for (std::size_t i = 0; i < n; ++i)
          u2[i] = sr->add(u2[i], sr->mul(coeff, d[i]));
      }
    } else {
      u2 = rand_vec(n);
    }
    bool got = congruence_check(rel, u1, u2, *sr);
    bool want = in_rational_span(diffs, vsub(u1, u2));
    c.expect(got == want);
    (void)vneg;
  }
  CHECK(c.finish());
}

TEST_CASE("6: modular solver vs exhaustive enumeration") {
  Criterion c{6,
              "modular solver verdicts match the full assignment sweep on "
              "1000 systems, witnesses substituted"};
  Rng rng(4242);
  for (std::uint64_t q : {4ULL, 6ULL, 8ULL, 9ULL, 12ULL}) {
    auto sr = modulo_ring(q);
    for (int t = 0; t < 200; ++t) {
      std::size_t n = 1 + static_cast<std::size_t>(t % 3);
      std::size_t m = 1 + static_cast<std::size_t>((t / 3) % 3);
      std::vector<std::vector<std::uint64_t>> a(
          n, std::vector<std::uint64_t>(m));
      std::vector<std::uint64_t> b(m);
      LinearSystem sys;
      sys.sr = sr.get();
      sys.coeff = Matrix(n, m, sr->zero());
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          a[i][j] = rng.below(q);
          sys.coeff.at(i, j) = sr->parse(std::to_string(a[i][j]));
        }
      for (std::size_t j = 0; j < m; ++j) {
        b[j] = rng.below(q);
        sys.target.push_back(sr->parse(std::to_string(b[j])));
      }
      auto out = solve_zq(sys, q, {});
      c.expect(out.status != SolveOutcome::Status::BudgetExhausted);

      bool any = false;
      std::vector<std::uint64_t> x(n, 0);
      while (true) {
        bool sat = true;
        for (std::size_t j = 0; j < m && sat; ++j) {
          std::uint64_t acc = 0;
          for (std::size_t i = 0; i < n; ++i) acc += x[i] * a[i][j];
          sat = acc % q == b[j];
        }
        if (sat) {
          any = true;
          break;
        }
        bool advanced = false;
        for (std::size_t idx = n; idx-- > 0;) {
          if (++x[idx] < q) {
            advanced = true;
            break;
          }
          x[idx] = 0;
        }
        if (!advanced) break;
      }
      c.expect((out.status == SolveOutcome::Status::Solution) == any);
      if (out.status == SolveOutcome::Status::Solution) {
        for (std::size_t j = 0; j < m; ++j) {
          Value acc = sr->zero();
          for (std::size_t i = 0; i < n; ++i)
            acc = sr->add(acc, sr->mul(out.witness[i], sys.coeff.at(i, j)));
          c.expect(sr->equal(acc, sys.target[j]));
        }
      }
    }
  }
  CHECK(c.finish());
}

TEST_CASE("7: threshold universality vs unpruned search") {
  Criterion c{7,
              "pruned universality matches the unpruned capped search on "
              "300 tropical automata"};
  auto sr = tropical_nat_semiring();
  for (int t = 0; t < 300; ++t) {
    RandomSpec spec;
    spec.states = 1 + static_cast<std::size_t>(t % 4);
    spec.alphabet_size = 2;
    spec.transition_probability = 0.6;
    spec.seed = 30000 + static_cast<std::uint64_t>(t);
    auto wa = gen_random(spec, sr);
    std::uint64_t threshold = static_cast<std::uint64_t>(t % 6);
    std::size_t n = wa.state_count();

    Budget budget{1000000};
    auto res = universality(wa, unit_row(*sr, n, 0), threshold, budget);

    // Unpruned oracle: exhaust every distinct capped vector reachable from
    // the initial one; the cap value stands for anything past the
    // threshold, infinity included.
    std::uint64_t cap = threshold + 1;
    auto capped = [&](const Value& v) -> std::uint64_t {
      if (v.is_inf()) return cap;
      BigInt x = v.as_int();
      return x > cap ? cap : x.convert_to<std::uint64_t>();
    };
    std::vector<std::vector<std::uint64_t>> tmat(
        wa.symbol_count(), std::vector<std::uint64_t>(n * n));
    for (std::size_t s = 0; s < wa.symbol_count(); ++s)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          tmat[s][i * n + j] = capped(wa.transitions[s].at(i, j));
    std::vector<std::uint64_t> term(n);
    for (std::size_t i = 0; i < n; ++i) term[i] = capped(wa.termination[i]);

    std::vector<std::uint64_t> v0(n, cap);
    v0[0] = 0;
    std::set<std::vector<std::uint64_t>> seen = {v0};
    std::vector<std::vector<std::uint64_t>> queue = {v0};
    bool violation = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      auto vec = queue[head];
      std::uint64_t weight = ~0ULL;
      for (std::size_t i = 0; i < n; ++i)
        weight = std::min(weight, vec[i] + term[i]);
      violation = violation || weight > threshold;
      for (std::size_t s = 0; s < wa.symbol_count(); ++s) {
        std::vector<std::uint64_t> next(n, cap);
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t i = 0; i < n; ++i)
            next[j] =
                std::min(next[j], std::min(cap, vec[i] + tmat[s][i * n + j]));
        if (seen.insert(next).second) queue.push_back(next);
      }
    }

    c.expect(res.status != UniversalityResult::Status::BudgetExhausted);
    c.expect((res.status == UniversalityResult::Status::NotUniversal) ==
             violation);
    c.expect(res.vectors_explored <= seen.size());
    if (res.status == UniversalityResult::Status::NotUniversal) {
      // Replay the witness; capping preserves the "exceeds threshold" test.
      std::vector<std::uint64_t> vec = v0;
      for (std::size_t s : res.witness) {
        std::vector<std::uint64_t> next(n, cap);
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t i = 0; i < n; ++i)
            next[j] =
                std::min(next[j], std::min(cap, vec[i] + tmat[s][i * n + j]));
        vec = std::move(next);
      }
      std::uint64_t weight = ~0ULL;
      for (std::size_t i = 0; i < n; ++i)
        weight = std::min(weight, vec[i] + term[i]);
      c.expect(weight > threshold);
    }
  }
  CHECK(c.finish());
}

TEST_CASE("8: conditional bisimilarity cuts") {
  Criterion c{8,
              "every condition cut matches per-condition bisimilarity on 200 "
              "systems, entries downward closed"};
  Rng rng(888);
  for (int t = 0; t < 200; ++t) {
    auto cts = testutil::random_cts(6, 8, rng);
    auto rep = cts_bisimilarity(cts);
    std::size_t n = cts.state_count();
    for (std::size_t phi = 0; phi < cts.condition_count(); ++phi) {
      auto oracle = per_condition_bisim(cts, phi);
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          c.expect(rep.entry(x, y).test(phi) == (oracle[x * n + y] != 0));
    }
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        c.expect(cts.conditions->is_downclosed(rep.entry(x, y)));
  }
  auto chain = chain_cts();
  auto rep = cts_bisimilarity(chain);
  DenseBitset only_low(2);
  only_low.set(0);
  c.expect(rep.entry(1, 2) == only_low);
  CHECK(c.finish());
}

TEST_CASE("9: downset and BDD backends coincide") {
  Criterion c{9,
              "both backends produce identical matrices on 100 feature "
              "systems; the two implications agree"};
  Rng rng(999);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::string> base, upgrade;
    for (int i = 0; i <= t % 3; ++i) base.push_back("b" + std::to_string(i));
    for (int i = 0; i <= t % 4; ++i)
      upgrade.push_back("u" + std::to_string(i));
    FeatureModel fm(base, upgrade);
    std::vector<std::string> states;
    for (int i = 0; i < 2 + t % 3; ++i)
      states.push_back("s" + std::to_string(i));
    auto cts = Cts::over_features(states, {"a", "b"}, fm);
    std::size_t n = cts.state_count();
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t y = 0; y < n; ++y)
          if (rng.chance(0.4))
            cts.set_guard(x, a, y,
                          testutil::random_downset(*cts.conditions, rng, 0.1));
    auto down = cts_bisimilarity(cts, CtsBackend::Downset);
    auto bdd = cts_bisimilarity(cts, CtsBackend::Bdd);
    c.expect(down.matrix == bdd.matrix);
  }
  FeatureModel fm({"b1", "b2", "b3"}, {"u1", "u2", "u3", "u4"});
  Poset poset = fm.as_poset();
  BddManager mgr(fm.feature_count());
  for (int t = 0; t < 200; ++t) {
    DenseBitset a = testutil::random_downset(poset, rng, 0.05);
    DenseBitset b = testutil::random_downset(poset, rng, 0.05);
    auto got = bdd_to_downset(
        mgr, fm,
        monotone_implication(mgr, fm, downset_to_bdd(mgr, fm, a),
                             downset_to_bdd(mgr, fm, b)));
    c.expect(got == heyting_implication(poset, a, b));
  }
  CHECK(c.finish());
}

TEST_CASE("10: benchmark trend and spread") {
  Criterion c{10,
              "median runtime grows with the state count and the 95th "
              "percentile stays within twice the median"};
  BenchConfig cfg;  // defaults: |X| in {10,15,20}, density 0.5, 100 runs
  cfg.seed = 11;
  auto rep = bench(rational_semiring(), "rational", cfg);
  std::printf("%s", format_bench_table(rep).c_str());
  c.expect(rep.rows.size() == 3);
  if (rep.rows.size() == 3) {
    double m10 = rep.rows[0].percentile(50);
    double m15 = rep.rows[1].percentile(50);
    double m20 = rep.rows[2].percentile(50);
    c.expect(m10 < m15);
    c.expect(m15 < m20);
    for (const auto& row : rep.rows) {
      c.expect(row.timeouts == 0);
      c.expect(row.percentile(95) <= 2.0 * row.percentile(50));
    }
  }
  CHECK(c.finish());
}

TEST_CASE("11: law suites over all shipped and constructed instances") {
  Criterion c{11, "1000-sample law check passes on every instance the tests "
                  "touch"};
  Poset diamond({"bot", "l", "r", "top"},
                {{"bot", "l"}, {"bot", "r"}, {"l", "top"}, {"r", "top"}});
  std::vector<std::pair<std::string, SemiringPtr>> instances = {
      {"boolean", boolean_semiring()},
      {"rational", rational_semiring()},
      {"tropical-nat", tropical_nat_semiring()},
      {"integer", integer_semiring()},
      {"latticez(0,3)", latticez(0, 3)},
      {"latticez(-1,1)", latticez(-1, 1)},
      {"zmod(2)", modulo_ring(2)},
      {"zmod(3)", modulo_ring(3)},
      {"zmod(4)", modulo_ring(4)},
      {"zmod(5)", modulo_ring(5)},
      {"zmod(6)", modulo_ring(6)},
      {"zmod(7)", modulo_ring(7)},
      {"zmod(8)", modulo_ring(8)},
      {"zmod(9)", modulo_ring(9)},
      {"zmod(12)", modulo_ring(12)},
      {"product(rational,zmod(4))",
       direct_product(rational_semiring(), modulo_ring(4))},
      {"product(tropical,tropical)",
       direct_product(tropical_nat_semiring(), tropical_nat_semiring())},
      {"product(zmod(6),boolean)",
       direct_product(modulo_ring(6), boolean_semiring())},
      {"product(zmod(4),product(boolean,boolean))",
       direct_product(modulo_ring(4),
                      direct_product(boolean_semiring(), boolean_semiring()))},
      {"fraction-field(integer)", fraction_field(integers_domain())},
      {"downsets(diamond)", lattice_from_poset("diamond", diamond)},
      {"downsets(features)",
       lattice_from_poset("fmlat",
                          FeatureModel({"b"}, {"u1", "u2"}).as_poset())},
      {"wrapped min-plus chain", l_monoid_wrap(testutil::bounded_min_plus(7))},
  };
  std::uint64_t seed = 501;
  for (const auto& [label, sr] : instances) {
    LawReport rep = check_laws(*sr, 1000, seed++);
    if (!rep.ok)
      std::printf("  law failure in %s: %s at (%s, %s, %s)\n", label.c_str(),
                  rep.law.c_str(), rep.witness[0].c_str(),
                  rep.witness[1].c_str(), rep.witness[2].c_str());
    c.expect(rep.ok);
  }
  CHECK(c.finish());
}

TEST_CASE("12: semi-decision budget exit") {
  Criterion c{12,
              "the equivalence command on the documented looping instance "
              "exits with the budget code"};
  const char* cli = std::getenv("WCA_CLI");
  const char* models = std::getenv("WCA_MODELS");
  c.expect(cli != nullptr);
  c.expect(models != nullptr);
  if (cli && models) {
    std::string cmd = std::string("\"") + cli + "\" equiv-complete \"" +
                      models + "/tropical-loop.model\" --budget 5000 " +
                      "> /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    c.expect(rc != -1);
    c.expect(WIFEXITED(rc));
    if (WIFEXITED(rc)) c.expect(WEXITSTATUS(rc) == 3);
  }
  CHECK(c.finish());
}
