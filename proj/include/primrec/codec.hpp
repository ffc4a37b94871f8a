#pragma once

// Shared encoding primitives: the prime sequence (zero-based: prime(0) == 2),
// p-adic valuations, and the sigma pairing functions
//
//   sigma2(x, y) = 2^x * (2y + 1) - 1        (a bijection N^2 -> N)
//   sigma3(x, y, z) = sigma2(sigma2(x, y), z)
//
// Inverses are computed arithmetically from the factorization of z + 1,
// never by search.

#include <cstdint>
#include <mutex>
#include <tuple>
#include <utility>
#include <vector>

#include "primrec/errors.hpp"
#include "primrec/nat.hpp"

namespace primrec {

namespace detail {

// Growable sieve; doubles its limit until at least `count` primes are known.
inline std::vector<std::uint64_t>& prime_cache(std::size_t count) {
  static std::vector<std::uint64_t> primes{2, 3, 5, 7, 11, 13};
  static std::uint64_t limit = 13;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (primes.size() < count) {
    std::uint64_t new_limit = limit * 2 + 16;
    std::vector<bool> composite(new_limit + 1, false);
    primes.clear();
    for (std::uint64_t p = 2; p <= new_limit; ++p) {
      if (composite[p]) continue;
      primes.push_back(p);
      for (std::uint64_t q = p * p; q <= new_limit; q += p) composite[q] = true;
    }
    limit = new_limit;
  }
  return primes;
}

}  // namespace detail

// The i-th prime, zero-based: 2, 3, 5, 7, ...
inline std::uint64_t prime_u64(std::uint64_t i) {
  auto& primes = detail::prime_cache(static_cast<std::size_t>(i) + 1);
  return primes[static_cast<std::size_t>(i)];
}

inline Nat prime(const Nat& i) {
  if (!i.fits_u64()) throw ValueTooLarge("prime index does not fit 64 bits");
  return Nat(prime_u64(i.u64()));
}

// Exponent of prime(i) in n's factorization. n == 0 has no factorization.
// Uses power-doubling so huge valuations cost O(log e) big divisions.
inline Nat exponent_of(const Nat& n, const Nat& i) {
  if (n.is_zero()) throw ZeroInput("exponent_of of 0");
  if (!i.fits_u64()) throw ValueTooLarge("prime index does not fit 64 bits");
  const BigInt p(prime_u64(i.u64()));
  BigInt rest = n.big();
  BigInt q, r;
  Nat e(0);
  // Climb: divide out p^(2^k) while possible, squaring the power each round.
  std::vector<std::pair<BigInt, Nat>> ladder;  // (p^(2^k), 2^k)
  BigInt pk = p;
  Nat ek(1);
  while (true) {
    boost::multiprecision::divide_qr(rest, pk, q, r);
    if (!r.is_zero()) break;
    rest = q;
    e += ek;
    ladder.emplace_back(pk, ek);
    // Once p^(2^k) has at least as many bits as what's left, its square
    // cannot divide; stop growing.
    if (msb(pk) + 1 >= msb(rest) + 1) break;
    pk *= pk;
    ek += ek;
  }
  // The remaining valuation is < 2^(ladder size); peel it off descending.
  for (auto it = ladder.rbegin(); it != ladder.rend(); ++it) {
    boost::multiprecision::divide_qr(rest, it->first, q, r);
    if (r.is_zero()) {
      rest = q;
      e += it->second;
    }
  }
  return e;
}

inline Nat sigma2(const Nat& x, const Nat& y, std::uint64_t guard_bits = kDenseBitGuard) {
  // 2^x * (2y + 1) - 1; bit length is about x + bits(y) + 1.
  if (!x.fits_u64() || x.u64() + y.bits() + 2 > guard_bits)
    throw ValueTooLarge("sigma2 result exceeds dense guard");
  Nat odd = y + y + Nat(1);
  return (odd << x.u64()) - Nat(1);
}

inline std::pair<Nat, Nat> sigma2_inv(const Nat& z) {
  Nat w = z + Nat(1);
  std::uint64_t x = w.two_adic();
  Nat odd = w >> x;
  return {Nat(x), (odd - Nat(1)) >> 1};
}

inline Nat sigma3(const Nat& x, const Nat& y, const Nat& z,
                  std::uint64_t guard_bits = kDenseBitGuard) {
  return sigma2(sigma2(x, y, guard_bits), z, guard_bits);
}

inline std::tuple<Nat, Nat, Nat> sigma3_inv(const Nat& w) {
  auto [xy, z] = sigma2_inv(w);
  auto [x, y] = sigma2_inv(xy);
  return {x, y, z};
}

}  // namespace primrec
