// Semiring instance interface.
//
// Instances are selected at run time (by name, from files, or built by the
// constructor functions), so the operations are virtual over the shared
// Value representation. Optional structure (additive inverse, residuation,
// lattice order) is exposed through optional-returning hooks gated by the
// capability flags; algorithms check flags before relying on a hook.

#ifndef WCA_SEMIRING_HPP
#define WCA_SEMIRING_HPP

#include "wca/budget.hpp"
#include "wca/errors.hpp"
#include "wca/rng.hpp"
#include "wca/value.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wca {

struct Capabilities {
  bool is_ring = false;        // additive inverses available
  bool is_field = false;       // implies is_ring; nonzero elements invertible
  bool is_lattice = false;     // add = join, mul = meet; implies is_l_monoid
  bool is_l_monoid = false;    // add = complete join, mul monotone monoid op
  bool has_residuation = false;  // a\b defined; implied by is_l_monoid
  bool is_tropical_nat = false;  // min-plus over naturals with infinity
  bool is_finite = false;        // carrier enumerable
};

// Which linear solver the instance routes systems to.
enum class SolverKind {
  None,
  Field,         // Gaussian elimination, needs is_field
  Zq,            // Hensel lifting + CRT over Z_q
  Residuation,   // greatest-solution candidate via residuum
  Componentwise  // split per product component
};

struct LinearSystem;
struct SolveOutcome;

class Semiring {
public:
  Semiring(std::string name, Capabilities caps)
      : name_(std::move(name)), caps_(caps) {}
  virtual ~Semiring() = default;

  const std::string& name() const { return name_; }
  const Capabilities& caps() const { return caps_; }

  virtual Value add(const Value& a, const Value& b) const = 0;
  virtual Value mul(const Value& a, const Value& b) const = 0;
  virtual Value zero() const = 0;
  virtual Value one() const = 0;

  // Elements are kept canonical, so structural comparison is the default.
  virtual bool equal(const Value& a, const Value& b) const { return a == b; }
  bool is_zero(const Value& a) const { return equal(a, zero()); }

  // Grammar and rendering are instance-specific; parse throws
  // MalformedElement and format(parse(s)) round-trips.
  virtual Value parse(std::string_view text) const = 0;
  virtual std::string format(const Value& v) const = 0;

  virtual Value sample(Rng& rng) const = 0;

  // Rings only.
  virtual std::optional<Value> negate(const Value&) const { return std::nullopt; }
  // Fields only; argument must be nonzero.
  virtual std::optional<Value> inverse(const Value&) const { return std::nullopt; }

  // l-monoids: greatest c with mul(a, c) below b in the lattice order.
  virtual std::optional<Value> residuum(const Value&, const Value&) const {
    return std::nullopt;
  }
  // l-monoids: lattice meet (for lattices this coincides with mul).
  virtual std::optional<Value> meet(const Value&, const Value&) const {
    return std::nullopt;
  }
  // Lattice order derived from the join: a below b iff add(a,b) = b.
  bool leq(const Value& a, const Value& b) const { return equal(add(a, b), b); }

  virtual SolverKind solver_kind() const { return SolverKind::None; }
  // Z_q instances report their modulus.
  virtual std::optional<std::uint64_t> modulus() const { return std::nullopt; }

  // Full carrier, ascending in some fixed instance order. Finite only.
  virtual std::vector<Value> enumerate() const {
    throw CapabilityMismatch("instance '" + name_ + "' is not enumerable");
  }

  // Routes the system to the solver this instance declares. Defined in the
  // linear-solve translation unit; product instances override it to split
  // the system per component.
  virtual SolveOutcome solve_system(const LinearSystem& sys,
                                    const SolveLimits& limits) const;

private:
  std::string name_;
  Capabilities caps_;
};

using SemiringPtr = std::shared_ptr<const Semiring>;

}  // namespace wca

#endif
