#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wca/builtins.hpp"
#include "wca/errors.hpp"
#include "wca/law_check.hpp"
#include "wca/semiring.hpp"

#include <set>
#include <string>

using namespace wca;

TEST_CASE("boolean semiring is the two-element lattice") {
  auto sr = boolean_semiring();
  CHECK(sr->caps().is_lattice);
  CHECK(sr->caps().is_l_monoid);
  CHECK(sr->caps().is_finite);
  CHECK(sr->format(sr->zero()) == "0");
  CHECK(sr->format(sr->one()) == "1");
  CHECK(sr->equal(sr->add(sr->zero(), sr->one()), sr->one()));
  CHECK(sr->equal(sr->mul(sr->zero(), sr->one()), sr->zero()));
  CHECK(sr->enumerate().size() == 2);
  CHECK_THROWS_AS((void)sr->parse("2"), MalformedElement);
  CHECK_THROWS_AS((void)sr->parse("true"), MalformedElement);
}

TEST_CASE("rational parsing keeps fractions reduced and rejects junk") {
  auto sr = rational_semiring();
  CHECK(sr->caps().is_field);
  CHECK(sr->format(sr->parse("2/4")) == "1/2");
  CHECK(sr->format(sr->parse("-6/3")) == "-2");
  CHECK(sr->format(sr->parse("14")) == "14");
  CHECK(sr->format(sr->parse("0/5")) == "0");
  CHECK_THROWS_AS((void)sr->parse("1/0"), wca::Error);
  CHECK_THROWS_AS((void)sr->parse("1.5"), MalformedElement);
  CHECK_THROWS_AS((void)sr->parse("a"), MalformedElement);
  CHECK_THROWS_AS((void)sr->parse(""), MalformedElement);
  CHECK_THROWS_AS((void)sr->parse("1/-2"), MalformedElement);
}

TEST_CASE("rational arithmetic is exact") {
  auto sr = rational_semiring();
  Value a = sr->parse("1/3"), b = sr->parse("1/6");
  CHECK(sr->format(sr->add(a, b)) == "1/2");
  CHECK(sr->format(sr->mul(a, b)) == "1/18");
  CHECK(sr->format(*sr->negate(a)) == "-1/3");
  CHECK(sr->format(*sr->inverse(sr->parse("-2/7"))) == "-7/2");
}

TEST_CASE("rational sampler stays inside the documented grammar") {
  auto sr = rational_semiring();
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    Value v = sr->sample(rng);
    std::string s = sr->format(v);
    CHECK(sr->equal(sr->parse(s), v));
    // Numerators in [-9,9], denominators in {1,2,3}: |value| never exceeds 9.
    BigRat r = v.as_rat();
    CHECK(r <= BigRat(9));
    CHECK(r >= BigRat(-9));
    CHECK(boost::multiprecision::denominator(r) <= 3);
  }
}

TEST_CASE("tropical-nat is min-plus with infinity as zero") {
  auto sr = tropical_nat_semiring();
  CHECK(sr->caps().is_l_monoid);
  CHECK(sr->caps().is_tropical_nat);
  CHECK(sr->caps().has_residuation);
  CHECK(sr->format(sr->zero()) == "inf");
  CHECK(sr->format(sr->one()) == "0");
  Value two = sr->parse("2"), five = sr->parse("5");
  CHECK(sr->format(sr->add(two, five)) == "2");
  CHECK(sr->format(sr->mul(two, five)) == "7");
  CHECK(sr->format(sr->mul(two, sr->zero())) == "inf");
  CHECK_THROWS_AS((void)sr->parse("-1"), MalformedElement);
  CHECK_THROWS_AS((void)sr->parse("infinity"), MalformedElement);
}

TEST_CASE("tropical residuum satisfies the adjunction on samples") {
  auto sr = tropical_nat_semiring();
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    Value a = sr->sample(rng), b = sr->sample(rng), c = sr->sample(rng);
    Value r = *sr->residuum(a, b);
    // c below a\b  iff  a*c below b, in the join-induced order.
    CHECK(sr->leq(c, r) == sr->leq(sr->mul(a, c), b));
  }
}

TEST_CASE("latticez is the bounded chain with numeric min as join") {
  auto sr = latticez(0, 3);
  CHECK(sr->caps().is_lattice);
  CHECK(sr->caps().is_finite);
  // zero must be join-neutral, so it sits at the numeric top.
  CHECK(sr->format(sr->zero()) == "3");
  CHECK(sr->format(sr->one()) == "0");
  CHECK(sr->format(sr->add(sr->parse("1"), sr->parse("2"))) == "1");
  CHECK(sr->format(sr->mul(sr->parse("1"), sr->parse("2"))) == "2");
  CHECK(sr->enumerate().size() == 4);
  CHECK_THROWS_AS((void)sr->parse("4"), MalformedElement);
  CHECK_THROWS_AS((void)sr->parse("-1"), MalformedElement);
}

TEST_CASE("integer ring has inverses for addition only") {
  auto sr = integer_semiring();
  CHECK(sr->caps().is_ring);
  CHECK_FALSE(sr->caps().is_field);
  CHECK(sr->format(*sr->negate(sr->parse("7"))) == "-7");
  CHECK_FALSE(sr->inverse(sr->parse("2")).has_value());
}

TEST_CASE("law checker passes every builtin") {
  for (auto sr : {boolean_semiring(), rational_semiring(),
                  tropical_nat_semiring(), integer_semiring(),
                  latticez(-2, 2)}) {
    LawReport rep = check_laws(*sr, 1000, 42);
    INFO(sr->name(), " violated ", rep.law);
    CHECK(rep.ok);
    CHECK(rep.samples_run >= 1000);
  }
}

namespace {

// Deliberately broken instance: addition is not commutative.
class Lopsided final : public Semiring {
public:
  Lopsided() : Semiring("lopsided", Capabilities{}) {}
  Value add(const Value& a, const Value&) const override { return a; }
  Value mul(const Value& a, const Value& b) const override {
    return Value(a.as_int() * b.as_int());
  }
  Value zero() const override { return Value(BigInt(0)); }
  Value one() const override { return Value(BigInt(1)); }
  Value parse(std::string_view text) const override {
    return Value(BigInt(std::string(text)));
  }
  std::string format(const Value& v) const override {
    return v.as_int().str();
  }
  Value sample(Rng& rng) const override {
    return Value(BigInt(rng.range(-3, 3)));
  }
};

}  // namespace

TEST_CASE("law checker reports the violated law with a witness") {
  Lopsided bad;
  LawReport rep = check_laws(bad, 200, 1);
  CHECK_FALSE(rep.ok);
  CHECK_FALSE(rep.law.empty());
  CHECK_FALSE(rep.witness[0].empty());
}

TEST_CASE("order helper leq is the join-induced order") {
  auto sr = boolean_semiring();
  CHECK(sr->leq(sr->zero(), sr->one()));
  CHECK_FALSE(sr->leq(sr->one(), sr->zero()));
  auto tr = tropical_nat_semiring();
  // min-plus: joins pick the smaller number, so 5 is below 2.
  CHECK(tr->leq(tr->parse("5"), tr->parse("2")));
  CHECK(tr->leq(tr->zero(), tr->parse("7")));
}
