#include "wca/construct.hpp"

#include "wca/builtins.hpp"
#include "wca/errors.hpp"
#include "wca/linear.hpp"
#include "wca/tokens.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace wca {

namespace {

// Deterministic Miller-Rabin, valid for every 64-bit modulus.
bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % n);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t acc = 1;
    while (e) {
      if (e & 1) acc = mulmod(acc, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return acc;
  };
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a % n, d);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

class ProductSemiring final : public Semiring {
public:
  ProductSemiring(SemiringPtr left, SemiringPtr right)
      : Semiring("product(" + left->name() + "," + right->name() + ")",
                 conjoin(left->caps(), right->caps())),
        l_(std::move(left)), r_(std::move(right)) {}

  static Capabilities conjoin(const Capabilities& a, const Capabilities& b) {
    Capabilities c;
    c.is_ring = a.is_ring && b.is_ring;
    c.is_field = a.is_field && b.is_field;
    c.is_lattice = a.is_lattice && b.is_lattice;
    c.is_l_monoid = a.is_l_monoid && b.is_l_monoid;
    c.has_residuation = a.has_residuation && b.has_residuation;
    c.is_finite = a.is_finite && b.is_finite;
    // Deliberately not conjoined: pair values lack the natural-number
    // representation the tropical universality check operates on.
    c.is_tropical_nat = false;
    return c;
  }

  Value add(const Value& a, const Value& b) const override {
    return Value::pair(l_->add(a.as_pair().first, b.as_pair().first),
                       r_->add(a.as_pair().second, b.as_pair().second));
  }
  Value mul(const Value& a, const Value& b) const override {
    return Value::pair(l_->mul(a.as_pair().first, b.as_pair().first),
                       r_->mul(a.as_pair().second, b.as_pair().second));
  }
  Value zero() const override { return Value::pair(l_->zero(), r_->zero()); }
  Value one() const override { return Value::pair(l_->one(), r_->one()); }

  bool equal(const Value& a, const Value& b) const override {
    return l_->equal(a.as_pair().first, b.as_pair().first) &&
           r_->equal(a.as_pair().second, b.as_pair().second);
  }

  Value parse(std::string_view text) const override {
    text = trim(text);
    if (text.size() < 2 || text.front() != '(' || text.back() != ')')
      throw MalformedElement(name() + ": expected (left,right), got '" +
                             std::string(text) + "'");
    auto inner = text.substr(1, text.size() - 2);
    auto parts = split_top_level(inner, ',');
    if (parts.size() != 2)
      throw MalformedElement(name() + ": expected exactly two components in '" +
                             std::string(text) + "'");
    return Value::pair(l_->parse(trim(parts[0])), r_->parse(trim(parts[1])));
  }
  std::string format(const Value& v) const override {
    return "(" + l_->format(v.as_pair().first) + "," +
           r_->format(v.as_pair().second) + ")";
  }

  Value sample(Rng& rng) const override {
    Value a = l_->sample(rng);
    Value b = r_->sample(rng);
    return Value::pair(std::move(a), std::move(b));
  }

  std::optional<Value> negate(const Value& a) const override {
    auto x = l_->negate(a.as_pair().first);
    auto y = r_->negate(a.as_pair().second);
    if (!x || !y) return std::nullopt;
    return Value::pair(std::move(*x), std::move(*y));
  }
  std::optional<Value> inverse(const Value& a) const override {
    auto x = l_->inverse(a.as_pair().first);
    auto y = r_->inverse(a.as_pair().second);
    if (!x || !y) return std::nullopt;
    return Value::pair(std::move(*x), std::move(*y));
  }
  std::optional<Value> residuum(const Value& a, const Value& b) const override {
    auto x = l_->residuum(a.as_pair().first, b.as_pair().first);
    auto y = r_->residuum(a.as_pair().second, b.as_pair().second);
    if (!x || !y) return std::nullopt;
    return Value::pair(std::move(*x), std::move(*y));
  }
  std::optional<Value> meet(const Value& a, const Value& b) const override {
    auto x = l_->meet(a.as_pair().first, b.as_pair().first);
    auto y = r_->meet(a.as_pair().second, b.as_pair().second);
    if (!x || !y) return std::nullopt;
    return Value::pair(std::move(*x), std::move(*y));
  }

  SolverKind solver_kind() const override {
    if (l_->solver_kind() == SolverKind::None ||
        r_->solver_kind() == SolverKind::None)
      return SolverKind::None;
    return SolverKind::Componentwise;
  }

  SolveOutcome solve_system(const LinearSystem& sys,
                            const SolveLimits& limits) const override {
    LinearSystem ls, rs;
    ls.sr = l_.get();
    rs.sr = r_.get();
    ls.coeff = Matrix(sys.coeff.rows(), sys.coeff.cols(), l_->zero());
    rs.coeff = Matrix(sys.coeff.rows(), sys.coeff.cols(), r_->zero());
    for (std::size_t i = 0; i < sys.coeff.rows(); ++i)
      for (std::size_t j = 0; j < sys.coeff.cols(); ++j) {
        ls.coeff.at(i, j) = sys.coeff.at(i, j).as_pair().first;
        rs.coeff.at(i, j) = sys.coeff.at(i, j).as_pair().second;
      }
    for (const auto& t : sys.target) {
      ls.target.push_back(t.as_pair().first);
      rs.target.push_back(t.as_pair().second);
    }
    SolveOutcome a = l_->solve_system(ls, limits);
    SolveOutcome b = r_->solve_system(rs, limits);
    SolveStats stats{a.stats.eliminations + b.stats.eliminations,
                     a.stats.lift_steps + b.stats.lift_steps,
                     a.stats.assignments + b.stats.assignments};
    if (a.status == SolveOutcome::Status::BudgetExhausted ||
        b.status == SolveOutcome::Status::BudgetExhausted)
      return SolveOutcome::budget(stats);
    if (a.status != SolveOutcome::Status::Solution ||
        b.status != SolveOutcome::Status::Solution)
      return SolveOutcome::none(stats);
    std::vector<Value> w;
    for (std::size_t i = 0; i < a.witness.size(); ++i)
      w.push_back(Value::pair(a.witness[i], b.witness[i]));
    return SolveOutcome::solution(std::move(w), stats);
  }

  std::vector<Value> enumerate() const override {
    auto xs = l_->enumerate();
    auto ys = r_->enumerate();
    std::vector<Value> out;
    out.reserve(xs.size() * ys.size());
    for (const auto& x : xs)
      for (const auto& y : ys) out.push_back(Value::pair(x, y));
    return out;
  }

private:
  SemiringPtr l_, r_;
};

class ZmodSemiring final : public Semiring {
public:
  explicit ZmodSemiring(std::uint64_t q)
      : Semiring("zmod(" + std::to_string(q) + ")", make_caps(q)), q_(q) {}

  static Capabilities make_caps(std::uint64_t q) {
    if (q < 2) throw InvalidModulus("modulus must be at least 2");
    if (q >= (1ULL << 63))
      throw InvalidModulus("modulus must be below 2^63");
    Capabilities c;
    c.is_ring = true;
    c.is_field = is_prime_u64(q);
    c.is_finite = true;
    return c;
  }

  Value add(const Value& a, const Value& b) const override {
    return Value(BigInt((a.as_int() + b.as_int()) % q_));
  }
  Value mul(const Value& a, const Value& b) const override {
    return Value(BigInt((a.as_int() * b.as_int()) % q_));
  }
  Value zero() const override { return Value(BigInt(0)); }
  Value one() const override { return Value(BigInt(1 % q_)); }

  Value parse(std::string_view text) const override {
    if (!is_digits(text))
      throw MalformedElement(name() + ": bad token '" + std::string(text) + "'");
    return Value(BigInt(BigInt(std::string(text)) % q_));
  }
  std::string format(const Value& v) const override { return v.as_int().str(); }

  Value sample(Rng& rng) const override {
    return Value(BigInt(rng.below(q_)));
  }

  std::optional<Value> negate(const Value& a) const override {
    return Value(BigInt((q_ - a.as_int()) % q_));
  }
  std::optional<Value> inverse(const Value& a) const override {
    std::uint64_t x = a.as_int().convert_to<std::uint64_t>();
    // Extended Euclid; inverse exists exactly when gcd(x, q) = 1.
    long long old_r = static_cast<long long>(x), r = static_cast<long long>(q_);
    long long old_s = 1, s = 0;
    while (r != 0) {
      long long d = old_r / r;
      long long tmp = old_r - d * r;
      old_r = r; r = tmp;
      tmp = old_s - d * s;
      old_s = s; s = tmp;
    }
    if (old_r != 1) return std::nullopt;
    long long inv = old_s % static_cast<long long>(q_);
    if (inv < 0) inv += static_cast<long long>(q_);
    return Value(BigInt(inv));
  }

  SolverKind solver_kind() const override { return SolverKind::Zq; }
  std::optional<std::uint64_t> modulus() const override { return q_; }

  std::vector<Value> enumerate() const override {
    if (q_ > 1000000)
      throw CapabilityMismatch(name() + ": carrier too large to enumerate");
    std::vector<Value> out;
    out.reserve(q_);
    for (std::uint64_t v = 0; v < q_; ++v) out.push_back(Value(BigInt(v)));
    return out;
  }

private:
  std::uint64_t q_;
};

class FractionFieldSemiring final : public Semiring {
public:
  explicit FractionFieldSemiring(IntegralDomain dom)
      : Semiring("fraction_field(" + dom.ring->name() + ")", [] {
          Capabilities c;
          c.is_ring = c.is_field = true;
          return c;
        }()),
        d_(std::move(dom)) {
    if (!d_.ring->caps().is_ring)
      throw CapabilityMismatch("fraction_field: domain must be a ring");
    check_domain();
  }

  Value add(const Value& a, const Value& b) const override {
    const auto& [an, ad] = a.as_pair();
    const auto& [bn, bd] = b.as_pair();
    return make(d_.ring->add(d_.ring->mul(an, bd), d_.ring->mul(bn, ad)),
                d_.ring->mul(ad, bd));
  }
  Value mul(const Value& a, const Value& b) const override {
    const auto& [an, ad] = a.as_pair();
    const auto& [bn, bd] = b.as_pair();
    return make(d_.ring->mul(an, bn), d_.ring->mul(ad, bd));
  }
  Value zero() const override {
    return Value::pair(d_.ring->zero(), d_.ring->one());
  }
  Value one() const override {
    return Value::pair(d_.ring->one(), d_.ring->one());
  }

  bool equal(const Value& a, const Value& b) const override {
    // Cross multiplication works with or without canonical reduction.
    const auto& [an, ad] = a.as_pair();
    const auto& [bn, bd] = b.as_pair();
    return d_.ring->equal(d_.ring->mul(an, bd), d_.ring->mul(bn, ad));
  }

  Value parse(std::string_view text) const override {
    auto parts = split_top_level(text, '/');
    if (parts.size() == 1) return make(d_.ring->parse(trim(parts[0])), d_.ring->one());
    if (parts.size() != 2)
      throw MalformedElement(name() + ": bad token '" + std::string(text) + "'");
    Value den = d_.ring->parse(trim(parts[1]));
    if (d_.ring->is_zero(den))
      throw ZeroDenominator(name() + ": zero denominator in '" +
                            std::string(text) + "'");
    return make(d_.ring->parse(trim(parts[0])), std::move(den));
  }
  std::string format(const Value& v) const override {
    const auto& [n, d] = v.as_pair();
    if (d_.ring->equal(d, d_.ring->one())) return d_.ring->format(n);
    return d_.ring->format(n) + "/" + d_.ring->format(d);
  }

  Value sample(Rng& rng) const override {
    Value num = d_.ring->sample(rng);
    Value den = d_.ring->sample(rng);
    for (int tries = 0; d_.ring->is_zero(den) && tries < 32; ++tries)
      den = d_.ring->sample(rng);
    if (d_.ring->is_zero(den)) den = d_.ring->one();
    return make(std::move(num), std::move(den));
  }

  std::optional<Value> negate(const Value& a) const override {
    const auto& [n, d] = a.as_pair();
    auto nn = d_.ring->negate(n);
    if (!nn) return std::nullopt;
    return Value::pair(std::move(*nn), d);
  }
  std::optional<Value> inverse(const Value& a) const override {
    const auto& [n, d] = a.as_pair();
    if (d_.ring->is_zero(n)) return std::nullopt;
    return make(d, n);
  }

  SolverKind solver_kind() const override { return SolverKind::Field; }

private:
  Value make(Value num, Value den) const {
    if (d_.ring->is_zero(den))
      throw ZeroDenominator(name() + ": zero denominator produced");
    if (d_.ring->is_zero(num)) return Value::pair(d_.ring->zero(), d_.ring->one());
    if (d_.gcd && d_.div_exact) {
      Value g = d_.gcd(num, den);
      if (!d_.ring->is_zero(g) && !d_.ring->equal(g, d_.ring->one())) {
        num = d_.div_exact(num, g);
        den = d_.div_exact(den, g);
      }
    }
    if (d_.sign_negative && d_.sign_negative(den)) {
      auto nn = d_.ring->negate(num);
      auto nd = d_.ring->negate(den);
      if (nn && nd) {
        num = std::move(*nn);
        den = std::move(*nd);
      }
    }
    return Value::pair(std::move(num), std::move(den));
  }

  void check_domain() const {
    Rng rng(0x5eed0001);
    for (int i = 0; i < 200; ++i) {
      Value a = d_.ring->sample(rng);
      Value b = d_.ring->sample(rng);
      if (!d_.ring->equal(d_.ring->mul(a, b), d_.ring->mul(b, a)))
        throw LawViolation("mul-commutative", d_.ring->format(a) + ", " +
                                                  d_.ring->format(b));
      if (!d_.ring->is_zero(a) && !d_.ring->is_zero(b) &&
          d_.ring->is_zero(d_.ring->mul(a, b)))
        throw LawViolation("no-zero-divisors", d_.ring->format(a) + ", " +
                                                   d_.ring->format(b));
    }
  }

  IntegralDomain d_;
};

class LMonoidWrapSemiring final : public Semiring {
public:
  explicit LMonoidWrapSemiring(LMonoidSpec spec)
      : Semiring(spec.name, make_caps(spec)), s_(std::move(spec)) {}

  static Capabilities make_caps(const LMonoidSpec& spec) {
    Capabilities c;
    c.is_l_monoid = c.has_residuation = true;
    c.is_lattice = !spec.meet;  // without a separate meet, mul must be it
    c.is_finite = !spec.carrier.empty();
    return c;
  }

  Value add(const Value& a, const Value& b) const override { return s_.join(a, b); }
  Value mul(const Value& a, const Value& b) const override { return s_.mul(a, b); }
  Value zero() const override { return s_.bot; }
  Value one() const override { return s_.unit; }

  Value parse(std::string_view text) const override {
    if (!s_.parse)
      throw MalformedElement(name() + ": instance has no element grammar");
    return s_.parse(text);
  }
  std::string format(const Value& v) const override { return s_.format(v); }

  Value sample(Rng& rng) const override { return s_.sample(rng); }

  std::optional<Value> residuum(const Value& a, const Value& b) const override {
    return s_.residuum(a, b);
  }
  std::optional<Value> meet(const Value& a, const Value& b) const override {
    return s_.meet ? s_.meet(a, b) : s_.mul(a, b);
  }

  SolverKind solver_kind() const override { return SolverKind::Residuation; }

  std::vector<Value> enumerate() const override {
    if (s_.carrier.empty())
      throw CapabilityMismatch(name() + ": instance is not enumerable");
    return s_.carrier;
  }

private:
  LMonoidSpec s_;
};

void check_l_monoid_laws(const Semiring& sr, std::uint64_t samples) {
  Rng rng(0x5eed0002);
  auto fmt3 = [&](const Value& a, const Value& b, const Value& c) {
    return sr.format(a) + ", " + sr.format(b) + ", " + sr.format(c);
  };
  for (std::uint64_t i = 0; i < samples; ++i) {
    Value a = sr.sample(rng), b = sr.sample(rng), c = sr.sample(rng);
    auto req = [&](bool ok, const char* law) {
      if (!ok) throw LawViolation(law, fmt3(a, b, c));
    };
    req(sr.equal(sr.add(a, b), sr.add(b, a)), "join-commutative");
    req(sr.equal(sr.add(sr.add(a, b), c), sr.add(a, sr.add(b, c))),
        "join-associative");
    req(sr.equal(sr.add(a, a), a), "join-idempotent");
    req(sr.equal(sr.add(a, sr.zero()), a), "join-bot-unit");
    req(sr.equal(sr.mul(sr.mul(a, b), c), sr.mul(a, sr.mul(b, c))),
        "mul-associative");
    req(sr.equal(sr.mul(a, sr.one()), a), "mul-unit-right");
    req(sr.equal(sr.mul(sr.one(), a), a), "mul-unit-left");
    req(sr.equal(sr.mul(a, sr.zero()), sr.zero()), "bot-absorbing-right");
    req(sr.equal(sr.mul(sr.zero(), a), sr.zero()), "bot-absorbing-left");
    req(sr.equal(sr.mul(a, sr.add(b, c)), sr.add(sr.mul(a, b), sr.mul(a, c))),
        "mul-distributes-left");
    req(sr.equal(sr.mul(sr.add(a, b), c), sr.add(sr.mul(a, c), sr.mul(b, c))),
        "mul-distributes-right");
    Value r = *sr.residuum(a, b);
    req(sr.leq(sr.mul(a, r), b), "residuum-sound");
    req(sr.leq(c, r) == sr.leq(sr.mul(a, c), b), "residuum-adjoint");
    Value m = *sr.meet(a, b);
    req(sr.equal(sr.add(a, m), a), "meet-below-join-absorb");
    req(sr.leq(m, a) && sr.leq(m, b), "meet-lower-bound");
    // Greatest lower bound, not just any: this is what catches an omitted
    // meet whose mul fallback sits strictly below the true meet.
    req(!(sr.leq(c, a) && sr.leq(c, b)) || sr.leq(c, m), "meet-greatest");
  }
}

}  // namespace

SemiringPtr direct_product(SemiringPtr left, SemiringPtr right) {
  return std::make_shared<ProductSemiring>(std::move(left), std::move(right));
}

SemiringPtr modulo_ring(std::uint64_t q) {
  return std::make_shared<ZmodSemiring>(q);
}

IntegralDomain integers_domain() {
  IntegralDomain d;
  d.ring = integer_semiring();
  d.gcd = [](const Value& a, const Value& b) {
    return Value(boost::multiprecision::gcd(a.as_int(), b.as_int()));
  };
  d.div_exact = [](const Value& a, const Value& b) {
    return Value(BigInt(a.as_int() / b.as_int()));
  };
  d.sign_negative = [](const Value& a) { return a.as_int() < 0; };
  return d;
}

SemiringPtr fraction_field(const IntegralDomain& domain) {
  return std::make_shared<FractionFieldSemiring>(domain);
}

DownsetLatticeSemiring::DownsetLatticeSemiring(std::string name, Poset poset)
    : Semiring(std::move(name), [] {
        Capabilities c;
        c.is_lattice = c.is_l_monoid = c.has_residuation = c.is_finite = true;
        return c;
      }()),
      poset_(std::move(poset)) {}

Value DownsetLatticeSemiring::add(const Value& a, const Value& b) const {
  return Value(a.as_bitset() | b.as_bitset());
}
Value DownsetLatticeSemiring::mul(const Value& a, const Value& b) const {
  return Value(a.as_bitset() & b.as_bitset());
}
Value DownsetLatticeSemiring::zero() const { return Value(poset_.empty_set()); }
Value DownsetLatticeSemiring::one() const { return Value(poset_.full_set()); }

Value DownsetLatticeSemiring::parse(std::string_view text) const {
  text = trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw MalformedElement(name() + ": expected {..}, got '" +
                           std::string(text) + "'");
  DenseBitset set(poset_.size());
  auto inner = trim(text.substr(1, text.size() - 2));
  if (!inner.empty()) {
    for (auto tok : split_top_level(inner, ',')) {
      tok = trim(tok);
      if (tok.empty())
        throw MalformedElement(name() + ": empty condition name in '" +
                               std::string(text) + "'");
      try {
        set.set(poset_.index_of(std::string(tok)));
      } catch (const Error&) {
        throw MalformedElement(name() + ": unknown condition '" +
                               std::string(tok) + "'");
      }
    }
  }
  if (!poset_.is_downclosed(set))
    throw MalformedElement(name() + ": set '" + std::string(text) +
                           "' is not downward-closed");
  return Value(set);
}

std::string DownsetLatticeSemiring::format(const Value& v) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < poset_.size(); ++i) {
    if (!v.as_bitset().test(i)) continue;
    if (!first) out += ",";
    out += poset_.names()[i];
    first = false;
  }
  return out + "}";
}

Value DownsetLatticeSemiring::sample(Rng& rng) const {
  DenseBitset set(poset_.size());
  for (std::size_t i = 0; i < poset_.size(); ++i)
    if (rng.below(2)) set.set(i);
  return Value(poset_.downward_close(set));
}

std::optional<Value> DownsetLatticeSemiring::residuum(const Value& a,
                                                      const Value& b) const {
  return Value(heyting_implication(poset_, a.as_bitset(), b.as_bitset()));
}

std::optional<Value> DownsetLatticeSemiring::meet(const Value& a,
                                                  const Value& b) const {
  return mul(a, b);
}

std::vector<Value> DownsetLatticeSemiring::enumerate() const {
  if (poset_.size() > 16)
    throw CapabilityMismatch(name() + ": carrier too large to enumerate");
  std::vector<Value> out;
  for (std::uint64_t mask = 0; mask < (1ULL << poset_.size()); ++mask) {
    DenseBitset set(poset_.size());
    for (std::size_t i = 0; i < poset_.size(); ++i)
      if ((mask >> i) & 1) set.set(i);
    if (poset_.is_downclosed(set)) out.push_back(Value(set));
  }
  return out;
}

std::shared_ptr<const DownsetLatticeSemiring> lattice_from_poset(
    std::string name, Poset poset) {
  return std::make_shared<DownsetLatticeSemiring>(std::move(name),
                                                  std::move(poset));
}

SemiringPtr l_monoid_wrap(const LMonoidSpec& spec) {
  if (!spec.join || !spec.mul || !spec.residuum || !spec.sample || !spec.format)
    throw Error("l_monoid_wrap: join, mul, residuum, sample and format are required");
  auto sr = std::make_shared<LMonoidWrapSemiring>(spec);
  check_l_monoid_laws(*sr, spec.law_samples);
  return sr;
}

}  // namespace wca
