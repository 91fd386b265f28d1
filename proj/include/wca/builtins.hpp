// Built-in semiring instances.
//
//   boolean       ({0,1}, or, and, 0, 1)            lattice
//   rational      exact fractions                    field
//   tropical-nat  (N + {inf}, min, +, inf, 0)        l-monoid
//   latticez      finite chain [lo,hi], min/max      lattice, zero = hi
//   integers      (Z, +, *, 0, 1)                    ring, fraction domain
//
// latticez orders the chain by the join: a below b iff b <= a numerically,
// so the numeric bounds appear swapped against the lattice top and bottom.

#ifndef WCA_BUILTINS_HPP
#define WCA_BUILTINS_HPP

#include "wca/semiring.hpp"

namespace wca {

SemiringPtr boolean_semiring();
SemiringPtr rational_semiring();
SemiringPtr tropical_nat_semiring();
SemiringPtr integer_semiring();
SemiringPtr latticez(long long lo, long long hi);

}  // namespace wca

#endif
