// Instance constructors: products, modular rings, fields of fractions,
// downset lattices over a finite poset, and a wrapper that turns
// user-supplied l-monoid operations into a full instance.

#ifndef WCA_CONSTRUCT_HPP
#define WCA_CONSTRUCT_HPP

#include "wca/poset.hpp"
#include "wca/semiring.hpp"

#include <functional>
#include <optional>
#include <string>

namespace wca {

// Componentwise product. Algebraic capability flags are conjoined; the
// tropical representation tag is cleared because pair values do not carry
// the natural-number shape the universality check needs.
SemiringPtr direct_product(SemiringPtr left, SemiringPtr right);

// Z_q with canonical representatives 0..q-1. Throws InvalidModulus for
// q < 2. is_field is set exactly when q is prime.
SemiringPtr modulo_ring(std::uint64_t q);

// Integral domain description for fraction_field. The hooks beyond the ring
// are optional; with gcd/div_exact present fractions are kept reduced and
// with sign_negative present denominators are normalized positive.
// Commutativity and absence of zero divisors are checked on samples.
struct IntegralDomain {
  SemiringPtr ring;
  std::function<Value(const Value&, const Value&)> gcd;
  std::function<Value(const Value&, const Value&)> div_exact;
  std::function<bool(const Value&)> sign_negative;
};

IntegralDomain integers_domain();

SemiringPtr fraction_field(const IntegralDomain& domain);

// Downset lattice over a finite poset (union/intersection, empty set as
// zero, all of the poset as one). Exposed as a class so analyses that need
// the underlying poset can recover it.
class DownsetLatticeSemiring final : public Semiring {
public:
  DownsetLatticeSemiring(std::string name, Poset poset);

  const Poset& poset() const { return poset_; }

  Value add(const Value& a, const Value& b) const override;
  Value mul(const Value& a, const Value& b) const override;
  Value zero() const override;
  Value one() const override;
  Value parse(std::string_view text) const override;
  std::string format(const Value& v) const override;
  Value sample(Rng& rng) const override;
  std::optional<Value> residuum(const Value& a, const Value& b) const override;
  std::optional<Value> meet(const Value& a, const Value& b) const override;
  SolverKind solver_kind() const override { return SolverKind::Residuation; }
  std::vector<Value> enumerate() const override;

private:
  Poset poset_;
};

std::shared_ptr<const DownsetLatticeSemiring> lattice_from_poset(
    std::string name, Poset poset);

// User-supplied l-monoid. Laws (join semilattice, monoid, distributivity,
// residuation adjunction) are checked on samples at construction and a
// violation throws LawViolation. meet may be omitted when mul is the meet,
// i.e. for lattices; this is verified on samples too.
struct LMonoidSpec {
  std::string name;
  std::function<Value(const Value&, const Value&)> join;
  std::function<Value(const Value&, const Value&)> mul;
  std::function<Value(const Value&, const Value&)> residuum;
  Value bot;
  Value unit;
  std::function<Value(Rng&)> sample;
  std::function<Value(const Value&, const Value&)> meet;      // optional
  std::function<std::string(const Value&)> format;            // required
  std::function<Value(std::string_view)> parse;               // optional
  std::vector<Value> carrier;  // optional enumeration, marks the instance finite
  std::uint64_t law_samples = 300;
};

SemiringPtr l_monoid_wrap(const LMonoidSpec& spec);

}  // namespace wca

#endif
