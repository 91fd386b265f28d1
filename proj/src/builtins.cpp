#include "wca/builtins.hpp"

#include "wca/errors.hpp"
#include "wca/tokens.hpp"

#include <string>

namespace wca {

namespace {

BigInt parse_bigint(std::string_view s, const std::string& who) {
  if (!is_signed_digits(s))
    throw MalformedElement(who + ": bad integer token '" + std::string(s) + "'");
  return BigInt(std::string(s));
}

class BooleanSemiring final : public Semiring {
public:
  BooleanSemiring()
      : Semiring("boolean", [] {
          Capabilities c;
          c.is_lattice = c.is_l_monoid = c.has_residuation = c.is_finite = true;
          return c;
        }()) {}

  Value add(const Value& a, const Value& b) const override {
    return Value(BigInt(a.as_int() != 0 || b.as_int() != 0 ? 1 : 0));
  }
  Value mul(const Value& a, const Value& b) const override {
    return Value(BigInt(a.as_int() != 0 && b.as_int() != 0 ? 1 : 0));
  }
  Value zero() const override { return Value(BigInt(0)); }
  Value one() const override { return Value(BigInt(1)); }

  Value parse(std::string_view text) const override {
    if (text == "0") return zero();
    if (text == "1") return one();
    throw MalformedElement("boolean: expected 0 or 1, got '" +
                           std::string(text) + "'");
  }
  std::string format(const Value& v) const override { return v.as_int().str(); }

  Value sample(Rng& rng) const override { return Value(BigInt(rng.below(2))); }

  std::optional<Value> residuum(const Value& a, const Value& b) const override {
    // Heyting arrow on the two-point chain: a -> b = not a or b.
    return Value(BigInt(a.as_int() == 0 || b.as_int() != 0 ? 1 : 0));
  }
  std::optional<Value> meet(const Value& a, const Value& b) const override {
    return mul(a, b);
  }

  SolverKind solver_kind() const override { return SolverKind::Residuation; }

  std::vector<Value> enumerate() const override { return {zero(), one()}; }
};

class RationalSemiring final : public Semiring {
public:
  RationalSemiring()
      : Semiring("rational", [] {
          Capabilities c;
          c.is_ring = c.is_field = true;
          return c;
        }()) {}

  Value add(const Value& a, const Value& b) const override {
    return Value(BigRat(a.as_rat() + b.as_rat()));
  }
  Value mul(const Value& a, const Value& b) const override {
    return Value(BigRat(a.as_rat() * b.as_rat()));
  }
  Value zero() const override { return Value(BigRat(0)); }
  Value one() const override { return Value(BigRat(1)); }

  Value parse(std::string_view text) const override {
    auto parts = split_top_level(text, '/');
    if (parts.size() == 1) {
      if (!is_signed_digits(parts[0]))
        throw MalformedElement("rational: bad token '" + std::string(text) + "'");
      return Value(BigRat(BigInt(std::string(parts[0]))));
    }
    if (parts.size() != 2 || !is_signed_digits(parts[0]) || !is_digits(parts[1]))
      throw MalformedElement("rational: bad token '" + std::string(text) + "'");
    BigInt den{std::string(parts[1])};
    if (den == 0)
      throw MalformedElement("rational: zero denominator in '" +
                             std::string(text) + "'");
    return Value(BigRat(BigRat(BigInt{std::string(parts[0])}) / BigRat(den)));
  }
  std::string format(const Value& v) const override {
    const BigRat& r = v.as_rat();
    if (boost::multiprecision::denominator(r) == 1)
      return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
  }

  Value sample(Rng& rng) const override {
    BigRat num(rng.range(-9, 9));
    BigRat den(rng.range(1, 3));
    return Value(BigRat(num / den));
  }

  std::optional<Value> negate(const Value& a) const override {
    return Value(BigRat(-a.as_rat()));
  }
  std::optional<Value> inverse(const Value& a) const override {
    if (a.as_rat() == 0) return std::nullopt;
    return Value(BigRat(1 / a.as_rat()));
  }

  SolverKind solver_kind() const override { return SolverKind::Field; }
};

class TropicalNatSemiring final : public Semiring {
public:
  TropicalNatSemiring()
      : Semiring("tropical-nat", [] {
          Capabilities c;
          c.is_l_monoid = c.has_residuation = c.is_tropical_nat = true;
          return c;
        }()) {}

  Value add(const Value& a, const Value& b) const override {
    if (a.is_inf()) return b;
    if (b.is_inf()) return a;
    return Value(a.as_int() < b.as_int() ? a.as_int() : b.as_int());
  }
  Value mul(const Value& a, const Value& b) const override {
    if (a.is_inf() || b.is_inf()) return Value(TropInf{});
    return Value(BigInt(a.as_int() + b.as_int()));
  }
  Value zero() const override { return Value(TropInf{}); }
  Value one() const override { return Value(BigInt(0)); }

  Value parse(std::string_view text) const override {
    if (text == "inf") return zero();
    if (!is_digits(text))
      throw MalformedElement("tropical-nat: bad token '" + std::string(text) +
                             "'");
    return Value(BigInt(std::string(text)));
  }
  std::string format(const Value& v) const override {
    return v.is_inf() ? "inf" : v.as_int().str();
  }

  Value sample(Rng& rng) const override {
    std::uint64_t k = rng.below(11);
    if (k == 10) return zero();
    return Value(BigInt(k));
  }

  // Order is reversed-numeric (join = min), so the greatest c with
  // a + c above-or-equal b numerically is the truncated difference.
  std::optional<Value> residuum(const Value& a, const Value& b) const override {
    if (a.is_inf()) return one();                   // inf + c >= b always
    if (b.is_inf()) return zero();                  // only inf reaches inf
    BigInt d = b.as_int() - a.as_int();
    return Value(d > 0 ? d : BigInt(0));
  }
  std::optional<Value> meet(const Value& a, const Value& b) const override {
    if (a.is_inf() || b.is_inf()) return Value(TropInf{});
    return Value(a.as_int() > b.as_int() ? a.as_int() : b.as_int());
  }

  SolverKind solver_kind() const override { return SolverKind::Residuation; }
};

class LatticeZSemiring final : public Semiring {
public:
  LatticeZSemiring(long long lo, long long hi)
      : Semiring("latticez(" + std::to_string(lo) + "," + std::to_string(hi) + ")",
                 [] {
                   Capabilities c;
                   c.is_lattice = c.is_l_monoid = c.has_residuation =
                       c.is_finite = true;
                   return c;
                 }()),
        lo_(lo), hi_(hi) {
    if (lo > hi) throw Error("latticez: empty range");
  }

  Value add(const Value& a, const Value& b) const override {
    return Value(a.as_int() < b.as_int() ? a.as_int() : b.as_int());
  }
  Value mul(const Value& a, const Value& b) const override {
    return Value(a.as_int() > b.as_int() ? a.as_int() : b.as_int());
  }
  Value zero() const override { return Value(BigInt(hi_)); }
  Value one() const override { return Value(BigInt(lo_)); }

  Value parse(std::string_view text) const override {
    BigInt n = parse_bigint(text, name());
    if (n < lo_ || n > hi_)
      throw MalformedElement(name() + ": value " + n.str() + " out of range");
    return Value(n);
  }
  std::string format(const Value& v) const override { return v.as_int().str(); }

  Value sample(Rng& rng) const override {
    return Value(BigInt(rng.range(lo_, hi_)));
  }

  // Join is min, so the order is reversed-numeric; the greatest c with
  // max(a,c) above-or-equal b numerically is lo when a already reaches b.
  std::optional<Value> residuum(const Value& a, const Value& b) const override {
    if (a.as_int() >= b.as_int()) return one();
    return b;
  }
  std::optional<Value> meet(const Value& a, const Value& b) const override {
    return mul(a, b);
  }

  SolverKind solver_kind() const override { return SolverKind::Residuation; }

  std::vector<Value> enumerate() const override {
    std::vector<Value> out;
    for (long long v = lo_; v <= hi_; ++v) out.push_back(Value(BigInt(v)));
    return out;
  }

private:
  long long lo_, hi_;
};

class IntegerSemiring final : public Semiring {
public:
  IntegerSemiring()
      : Semiring("integers", [] {
          Capabilities c;
          c.is_ring = true;
          return c;
        }()) {}

  Value add(const Value& a, const Value& b) const override {
    return Value(BigInt(a.as_int() + b.as_int()));
  }
  Value mul(const Value& a, const Value& b) const override {
    return Value(BigInt(a.as_int() * b.as_int()));
  }
  Value zero() const override { return Value(BigInt(0)); }
  Value one() const override { return Value(BigInt(1)); }

  Value parse(std::string_view text) const override {
    return Value(parse_bigint(text, "integers"));
  }
  std::string format(const Value& v) const override { return v.as_int().str(); }

  Value sample(Rng& rng) const override {
    return Value(BigInt(rng.range(-9, 9)));
  }

  std::optional<Value> negate(const Value& a) const override {
    return Value(BigInt(-a.as_int()));
  }
};

}  // namespace

SemiringPtr boolean_semiring() {
  static SemiringPtr s = std::make_shared<BooleanSemiring>();
  return s;
}

SemiringPtr rational_semiring() {
  static SemiringPtr s = std::make_shared<RationalSemiring>();
  return s;
}

SemiringPtr tropical_nat_semiring() {
  static SemiringPtr s = std::make_shared<TropicalNatSemiring>();
  return s;
}

SemiringPtr integer_semiring() {
  static SemiringPtr s = std::make_shared<IntegerSemiring>();
  return s;
}

SemiringPtr latticez(long long lo, long long hi) {
  return std::make_shared<LatticeZSemiring>(lo, hi);
}

}  // namespace wca
