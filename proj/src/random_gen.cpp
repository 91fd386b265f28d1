#include "wca/random_gen.hpp"

#include "wca/errors.hpp"
#include "wca/rng.hpp"

namespace wca {

WeightedAutomaton gen_random(const RandomSpec& spec, SemiringPtr sr) {
  if (spec.states == 0) throw Error("gen_random: at least one state");
  if (spec.alphabet_size == 0 || spec.alphabet_size > 26)
    throw Error("gen_random: alphabet size must be in 1..26");
  WeightedAutomaton wa;
  wa.sr = sr;
  for (std::size_t i = 0; i < spec.states; ++i)
    wa.states.push_back("q" + std::to_string(i));
  for (std::size_t a = 0; a < spec.alphabet_size; ++a)
    wa.alphabet.push_back(std::string(1, static_cast<char>('a' + a)));

  Rng rng(spec.seed);
  auto nonzero = [&]() {
    for (int tries = 0; tries < 64; ++tries) {
      Value v = sr->sample(rng);
      if (!sr->equal(v, sr->zero())) return v;
    }
    throw Error("gen_random: sampler for " + sr->name() +
                " cannot produce a nonzero weight");
  };

  wa.transitions.assign(spec.alphabet_size,
                        Matrix(spec.states, spec.states, sr->zero()));
  for (std::size_t x = 0; x < spec.states; ++x)
    for (std::size_t a = 0; a < spec.alphabet_size; ++a)
      for (std::size_t y = 0; y < spec.states; ++y)
        if (rng.chance(spec.transition_probability))
          wa.transitions[a].at(x, y) = nonzero();
  for (std::size_t x = 0; x < spec.states; ++x)
    wa.termination.push_back(sr->sample(rng));
  validate(wa);
  return wa;
}

}  // namespace wca
