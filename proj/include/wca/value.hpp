// Runtime element representation shared by all semiring instances.
//
// A Value is an immutable tagged payload; only the semiring instance that
// produced it knows how to interpret it. Structural equality is well defined
// because every instance keeps its elements in a canonical form.

#ifndef WCA_VALUE_HPP
#define WCA_VALUE_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <utility>
#include <variant>
#include <vector>

namespace wca {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Additive unit of the tropical semiring; finite values use the BigInt arm.
struct TropInf {
  friend bool operator==(TropInf, TropInf) { return true; }
};

// Fixed-size bitset indexing the elements of some finite carrier (poset
// elements for downset lattices). Universe size is set at construction.
class DenseBitset {
public:
  DenseBitset() = default;
  explicit DenseBitset(std::size_t universe)
      : size_(universe), bits_((universe + 63) / 64, 0) {}

  std::size_t universe() const { return size_; }

  bool test(std::size_t i) const {
    return (bits_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i) { bits_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { bits_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : bits_) n += static_cast<std::size_t>(__builtin_popcountll(w));
    return n;
  }
  bool empty() const {
    for (auto w : bits_)
      if (w) return false;
    return true;
  }

  DenseBitset& operator|=(const DenseBitset& o) {
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
    return *this;
  }
  DenseBitset& operator&=(const DenseBitset& o) {
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
    return *this;
  }

  bool subset_of(const DenseBitset& o) const {
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] & ~o.bits_[i]) return false;
    return true;
  }

  friend DenseBitset operator|(DenseBitset a, const DenseBitset& b) {
    a |= b;
    return a;
  }
  friend DenseBitset operator&(DenseBitset a, const DenseBitset& b) {
    a &= b;
    return a;
  }
  friend bool operator==(const DenseBitset& a, const DenseBitset& b) {
    return a.size_ == b.size_ && a.bits_ == b.bits_;
  }

private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> bits_;
};

class Value;
// Boxed pair payload: direct products and field-of-fraction elements.
using PairBox = std::shared_ptr<const std::pair<Value, Value>>;

class Value {
public:
  using Storage = std::variant<BigInt, BigRat, TropInf, PairBox, DenseBitset>;

  Value() : v_(BigInt(0)) {}
  explicit Value(BigInt i) : v_(std::move(i)) {}
  explicit Value(BigRat r) : v_(std::move(r)) {}
  explicit Value(TropInf t) : v_(t) {}
  explicit Value(DenseBitset b) : v_(std::move(b)) {}

  static Value integer(long long n) { return Value(BigInt(n)); }
  static Value pair(Value first, Value second) {
    Value v;
    v.v_ = std::make_shared<const std::pair<Value, Value>>(std::move(first),
                                                           std::move(second));
    return v;
  }

  bool is_int() const { return std::holds_alternative<BigInt>(v_); }
  bool is_rat() const { return std::holds_alternative<BigRat>(v_); }
  bool is_inf() const { return std::holds_alternative<TropInf>(v_); }
  bool is_pair() const { return std::holds_alternative<PairBox>(v_); }
  bool is_bitset() const { return std::holds_alternative<DenseBitset>(v_); }

  const BigInt& as_int() const { return std::get<BigInt>(v_); }
  const BigRat& as_rat() const { return std::get<BigRat>(v_); }
  const std::pair<Value, Value>& as_pair() const { return *std::get<PairBox>(v_); }
  const DenseBitset& as_bitset() const { return std::get<DenseBitset>(v_); }

  friend bool operator==(const Value& a, const Value& b) {
    if (a.v_.index() != b.v_.index()) return false;
    if (a.is_pair()) {
      const auto& p = a.as_pair();
      const auto& q = b.as_pair();
      return p.first == q.first && p.second == q.second;
    }
    return a.v_ == b.v_;
  }
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }

private:
  Storage v_;
};

}  // namespace wca

#endif
