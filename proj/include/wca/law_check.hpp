// Sampled semiring law checking. Runs the axioms on random triples and
// reports the first violation; a pass is evidence, not proof.

#ifndef WCA_LAW_CHECK_HPP
#define WCA_LAW_CHECK_HPP

#include "wca/semiring.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace wca {

struct LawReport {
  bool ok = true;
  std::string law;                      // first violated law, empty when ok
  std::array<std::string, 3> witness;   // formatted triple for the violation
  std::uint64_t samples_run = 0;
};

// Checks the semiring axioms plus whatever the capability flags promise:
// additive inverses for rings, idempotence/absorption for lattices, the
// residuation adjunction for l-monoids.
LawReport check_laws(const Semiring& sr, std::uint64_t samples,
                     std::uint64_t seed);

}  // namespace wca

#endif
