#pragma once

// Exact arithmetic on the naturals. Nat wraps an arbitrary-precision integer
// and never goes negative: operator- is truncated subtraction (monus), the
// only subtraction the rest of the library ever wants. Division by zero
// follows the usual recursion-theory convention: x / 0 == 0, x % 0 == x.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include "primrec/errors.hpp"

namespace primrec {

using BigInt = boost::multiprecision::cpp_int;

// Dense results above this many bits throw ValueTooLarge. Large enough for
// every code this library prints or round-trips densely (the biggest is about
// 3 Mbit); small enough to fail fast instead of eating the machine.
inline constexpr std::uint64_t kDenseBitGuard = std::uint64_t(1) << 26;  // 64 Mbit

class Nat {
 public:
  Nat() : v_(0) {}
  Nat(int x) : v_(x) {
    if (x < 0) throw Error("Nat from negative int");
  }
  Nat(unsigned x) : v_(x) {}
  Nat(long x) : v_(x) {
    if (x < 0) throw Error("Nat from negative long");
  }
  Nat(unsigned long x) : v_(x) {}
  Nat(long long x) : v_(x) {
    if (x < 0) throw Error("Nat from negative long long");
  }
  Nat(unsigned long long x) : v_(x) {}
  explicit Nat(BigInt v) : v_(std::move(v)) {
    if (v_ < 0) throw Error("Nat from negative BigInt");
  }

  static Nat from_string(const std::string& s) { return Nat(BigInt(s)); }

  const BigInt& big() const { return v_; }
  std::string str() const { return v_.str(); }

  bool is_zero() const { return v_.is_zero(); }
  bool odd() const { return boost::multiprecision::bit_test(v_, 0); }
  bool even() const { return !odd(); }

  // Number of binary digits; 0 for 0.
  std::uint64_t bits() const {
    if (v_.is_zero()) return 0;
    return boost::multiprecision::msb(v_) + 1;
  }

  // Index of lowest set bit (2-adic valuation); error on 0.
  std::uint64_t two_adic() const {
    if (v_.is_zero()) throw ZeroInput("two_adic of 0");
    return boost::multiprecision::lsb(v_);
  }

  bool fits_u64() const { return v_ <= BigInt(UINT64_MAX); }
  std::uint64_t u64() const {
    if (!fits_u64()) throw ValueTooLarge("value does not fit 64 bits");
    return v_.convert_to<std::uint64_t>();
  }

  Nat& operator+=(const Nat& o) {
    v_ += o.v_;
    return *this;
  }
  Nat& operator*=(const Nat& o) {
    v_ *= o.v_;
    return *this;
  }
  Nat& operator-=(const Nat& o) {  // truncated
    if (v_ <= o.v_)
      v_ = 0;
    else
      v_ -= o.v_;
    return *this;
  }
  Nat& operator++() {
    ++v_;
    return *this;
  }

  friend Nat operator+(Nat a, const Nat& b) { return a += b; }
  friend Nat operator*(Nat a, const Nat& b) { return a *= b; }
  friend Nat operator-(Nat a, const Nat& b) { return a -= b; }
  friend Nat operator/(const Nat& a, const Nat& b) {
    if (b.v_.is_zero()) return Nat();
    return Nat(BigInt(a.v_ / b.v_));
  }
  friend Nat operator%(const Nat& a, const Nat& b) {
    if (b.v_.is_zero()) return a;
    return Nat(BigInt(a.v_ % b.v_));
  }
  friend Nat operator<<(Nat a, std::uint64_t k) {
    a.v_ <<= static_cast<unsigned>(k);
    return a;
  }
  friend Nat operator>>(Nat a, std::uint64_t k) {
    a.v_ >>= static_cast<unsigned>(k);
    return a;
  }

  friend bool operator==(const Nat& a, const Nat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Nat& a, const Nat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Nat& a, const Nat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Nat& a, const Nat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Nat& a, const Nat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Nat& a, const Nat& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Nat& n) { return os << n.v_; }

 private:
  BigInt v_;
};

inline Nat trunc_sub(const Nat& a, const Nat& b) { return a - b; }

inline std::pair<Nat, Nat> divmod(const Nat& a, const Nat& b) { return {a / b, a % b}; }

// base^exp with a materialization guard. Exact; throws ValueTooLarge when the
// result would not fit `guard_bits` of binary.
inline Nat pow(const Nat& base, const Nat& exp, std::uint64_t guard_bits = kDenseBitGuard) {
  if (exp.is_zero()) return Nat(1);
  if (base.is_zero()) return Nat(0);
  if (base == Nat(1)) return Nat(1);
  if (base == Nat(2)) {
    if (!exp.fits_u64() || exp.u64() + 1 > guard_bits)
      throw ValueTooLarge("2^" + exp.str() + " exceeds dense guard");
    return Nat(1) << exp.u64();
  }
  if (!exp.fits_u64()) throw ValueTooLarge("pow exponent does not fit 64 bits");
  std::uint64_t e = exp.u64();
  std::uint64_t base_bits = base.bits();
  if (e > guard_bits / base_bits + 1)
    throw ValueTooLarge("pow result exceeds dense guard");
  BigInt r = boost::multiprecision::pow(base.big(), static_cast<unsigned>(e));
  Nat out{r};
  if (out.bits() > guard_bits) throw ValueTooLarge("pow result exceeds dense guard");
  return out;
}

}  // namespace primrec
