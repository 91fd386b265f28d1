// Seeded random weighted automata: each transition exists independently
// with a fixed probability and draws its weight from the semiring sampler.

#ifndef WCA_RANDOM_GEN_HPP
#define WCA_RANDOM_GEN_HPP

#include "wca/wa.hpp"

#include <cstdint>

namespace wca {

struct RandomSpec {
  std::size_t states = 3;
  std::size_t alphabet_size = 2;
  double transition_probability = 0.5;
  std::uint64_t seed = 1;
};

// States q0..q{n-1}, symbols a,b,.. (at most 26). Transition weights are
// resampled until nonzero so the existence coin is the only source of
// sparsity; termination weights are sampled as-is (zero allowed).
WeightedAutomaton gen_random(const RandomSpec& spec, SemiringPtr sr);

}  // namespace wca

#endif
