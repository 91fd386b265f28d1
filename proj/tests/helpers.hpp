// Shared fixtures for the test binaries: the three-state worked example,
// random condition posets and downward-closed guard sets.

#ifndef TESTS_HELPERS_HPP
#define TESTS_HELPERS_HPP

#include "wca/builtins.hpp"
#include "wca/construct.hpp"
#include "wca/cts.hpp"
#include "wca/rng.hpp"
#include "wca/wa.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace testutil {

// Finite min-plus chain 0..cap with saturating addition. A genuine l-monoid
// whose mul is not the meet.
inline wca::LMonoidSpec bounded_min_plus(long long cap) {
  using wca::BigInt;
  using wca::Value;
  wca::LMonoidSpec spec;
  spec.name = "minplus" + std::to_string(cap);
  auto clamp = [cap](BigInt v) { return v > cap ? BigInt(cap) : v; };
  spec.join = [](const Value& a, const Value& b) {
    return a.as_int() < b.as_int() ? a : b;
  };
  spec.mul = [clamp](const Value& a, const Value& b) {
    return Value(clamp(a.as_int() + b.as_int()));
  };
  spec.residuum = [](const Value& a, const Value& b) {
    BigInt d = b.as_int() - a.as_int();
    if (d < 0) d = 0;
    return Value(d);
  };
  spec.bot = Value(BigInt(cap));
  spec.unit = Value(BigInt(0));
  // join = numeric min, so the meet of the chain is the numeric max.
  spec.meet = [](const Value& a, const Value& b) {
    return a.as_int() > b.as_int() ? a : b;
  };
  spec.sample = [cap](wca::Rng& rng) {
    return Value(BigInt(rng.range(0, cap)));
  };
  spec.format = [](const Value& v) { return v.as_int().str(); };
  spec.parse = [cap](std::string_view s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos)
      throw wca::MalformedElement("not a chain element: " + std::string(s));
    BigInt v{std::string(s)};
    if (v > cap) throw wca::MalformedElement("beyond the chain cap");
    return Value(v);
  };
  for (long long i = 0; i <= cap; ++i)
    spec.carrier.push_back(Value(BigInt(i)));
  return spec;
}

// A --a,2--> B, A --a,3--> C, B --b,2--> B, C --b,2--> C, finals (1,2,1).
// Weight of "ab" from A is 2*2*2 + 3*2*1 = 14.
inline wca::WeightedAutomaton two_branch() {
  wca::WeightedAutomaton wa;
  wa.sr = wca::rational_semiring();
  wa.states = {"A", "B", "C"};
  wa.alphabet = {"a", "b"};
  auto q = [&](long long n) { return wa.sr->parse(std::to_string(n)); };
  wa.transitions.assign(2, wca::Matrix(3, 3, wa.sr->zero()));
  wa.transitions[0].at(0, 1) = q(2);
  wa.transitions[0].at(0, 2) = q(3);
  wa.transitions[1].at(1, 1) = q(2);
  wa.transitions[1].at(2, 2) = q(2);
  wa.termination = {q(1), q(2), q(1)};
  validate(wa);
  return wa;
}

// Random poset on n elements: edges only from lower to higher index, then
// reflexive-transitive closure, so acyclicity is by construction.
inline wca::Poset random_poset(std::size_t n, wca::Rng& rng) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("c" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> le;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.chance(0.3)) le.emplace_back(names[i], names[j]);
  return wca::Poset(std::move(names), le);
}

// Union of principal downsets of random picks: downward-closed by
// construction, possibly empty.
inline wca::DenseBitset random_downset(const wca::Poset& p, wca::Rng& rng,
                                       double element_chance = 0.3) {
  wca::DenseBitset s(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    if (rng.chance(element_chance)) s |= p.down(i);
  return s;
}

inline wca::Cts random_cts(std::size_t max_states, std::size_t max_conditions,
                           wca::Rng& rng) {
  std::size_t n = 1 + rng.below(max_states);
  std::size_t nc = 1 + rng.below(max_conditions);
  std::vector<std::string> states, alphabet = {"a", "b"};
  for (std::size_t i = 0; i < n; ++i) states.push_back("s" + std::to_string(i));
  auto cts = wca::Cts::over_poset(std::move(states), std::move(alphabet),
                                  random_poset(nc, rng));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t y = 0; y < n; ++y)
        if (rng.chance(0.4))
          cts.set_guard(x, a, y, random_downset(*cts.conditions, rng));
  return cts;
}

}  // namespace testutil

#endif
