#include "wca/law_check.hpp"

#include "wca/rng.hpp"

namespace wca {

LawReport check_laws(const Semiring& sr, std::uint64_t samples,
                     std::uint64_t seed) {
  Rng rng(seed);
  LawReport rep;
  const Value z = sr.zero();
  const Value e = sr.one();
  for (std::uint64_t i = 0; i < samples; ++i) {
    Value a = sr.sample(rng), b = sr.sample(rng), c = sr.sample(rng);
    auto fail = [&](const char* law) {
      rep.ok = false;
      rep.law = law;
      rep.witness = {sr.format(a), sr.format(b), sr.format(c)};
      rep.samples_run = i + 1;
      return rep;
    };

    if (!sr.equal(sr.add(a, b), sr.add(b, a))) return fail("add-commutative");
    if (!sr.equal(sr.add(sr.add(a, b), c), sr.add(a, sr.add(b, c))))
      return fail("add-associative");
    if (!sr.equal(sr.add(a, z), a)) return fail("add-zero-unit");
    if (!sr.equal(sr.mul(sr.mul(a, b), c), sr.mul(a, sr.mul(b, c))))
      return fail("mul-associative");
    if (!sr.equal(sr.mul(a, e), a)) return fail("mul-one-right");
    if (!sr.equal(sr.mul(e, a), a)) return fail("mul-one-left");
    if (!sr.equal(sr.mul(a, z), z)) return fail("zero-annihilates-right");
    if (!sr.equal(sr.mul(z, a), z)) return fail("zero-annihilates-left");
    if (!sr.equal(sr.mul(a, sr.add(b, c)), sr.add(sr.mul(a, b), sr.mul(a, c))))
      return fail("distributes-left");
    if (!sr.equal(sr.mul(sr.add(a, b), c), sr.add(sr.mul(a, c), sr.mul(b, c))))
      return fail("distributes-right");

    if (sr.caps().is_ring) {
      auto na = sr.negate(a);
      if (!na || !sr.equal(sr.add(a, *na), z)) return fail("add-inverse");
    }
    if (sr.caps().is_field && !sr.is_zero(a)) {
      auto ia = sr.inverse(a);
      if (!ia || !sr.equal(sr.mul(a, *ia), e)) return fail("mul-inverse");
    }
    if (sr.caps().is_lattice) {
      if (!sr.equal(sr.add(a, a), a)) return fail("join-idempotent");
      if (!sr.equal(sr.mul(a, a), a)) return fail("meet-idempotent");
      if (!sr.equal(sr.add(a, sr.mul(a, b)), a)) return fail("absorption-join");
      if (!sr.equal(sr.mul(a, sr.add(a, b)), a)) return fail("absorption-meet");
    }
    if (sr.caps().has_residuation) {
      auto r = sr.residuum(a, b);
      if (!r) return fail("residuum-missing");
      if (!sr.leq(sr.mul(a, *r), b)) return fail("residuum-sound");
      if (sr.leq(c, *r) != sr.leq(sr.mul(a, c), b))
        return fail("residuum-adjoint");
    }
  }
  rep.samples_run = samples;
  return rep;
}

}  // namespace wca
