#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>
#include <vector>

#include "primrec/errors.hpp"
#include "primrec/nat.hpp"
#include "primrec/sparse_nat.hpp"

using namespace primrec;

namespace {

Nat random_nat(std::mt19937_64& rng, unsigned max_bits) {
  std::uniform_int_distribution<unsigned> nbits(0, max_bits);
  unsigned k = nbits(rng);
  Nat out(0);
  for (unsigned i = 0; i < k; i += 32) {
    out = (out << 32) + Nat(static_cast<std::uint64_t>(rng() & 0xffffffffu));
  }
  return k == 0 ? Nat(0) : out % (Nat(1) << k);
}

void check_canonical(const SparseNat& s) {
  const auto& ts = s.terms();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    BigInt c = ts[i].coeff;
    REQUIRE(c != 0);
    BigInt a = c < 0 ? BigInt(-c) : c;
    CHECK(a % 2 == 1);  // coefficients always odd
    if (i == 0) CHECK(c > 0);  // sign of the value = sign of the leading term
    if (i + 1 < ts.size()) {
      // separation: gaps too narrow to merge never survive normalization
      BigInt an = ts[i + 1].coeff < 0 ? BigInt(-ts[i + 1].coeff) : ts[i + 1].coeff;
      Nat need = ts[i + 1].shift + Nat(BigInt(msb(an) + 1)) + Nat(2);
      CHECK(ts[i].shift >= need);
    }
  }
}

}  // namespace

TEST_CASE("sparse construction round trips through dense") {
  std::vector<std::uint64_t> vals{0, 1, 2, 3, 7, 8, 87, 255, 256, 1023, 43778, 999999937};
  for (auto v : vals) {
    SparseNat s{Nat(v)};
    CHECK(s.dense() == Nat(v));
    CHECK(s.bit_length() == Nat(Nat(v).bits()));
    check_canonical(s);
  }
  std::mt19937_64 rng(42);
  for (int i = 0; i < 500; ++i) {
    Nat v = random_nat(rng, 96);
    SparseNat s{v};
    CHECK(s.dense() == v);
    CHECK(s.bit_length() == Nat(v.bits()));
    check_canonical(s);
  }
}

TEST_CASE("sparse arithmetic agrees with dense arithmetic") {
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 800; ++i) {
    Nat a = random_nat(rng, 80), b = random_nat(rng, 80);
    SparseNat sa{a}, sb{b};
    CHECK(sa.plus(sb).dense() == a + b);
    if (a >= b)
      CHECK(sa.minus(sb).dense() == a - b);
    else
      CHECK_THROWS_AS(sa.minus(sb), Error);
    Nat m(static_cast<std::uint64_t>(rng() % 1000));
    CHECK(sa.times(m).dense() == a * m);
    check_canonical(sa.plus(sb));
    int c = SparseNat::cmp(sa, sb);
    CHECK(c == (a < b ? -1 : a == b ? 0 : 1));
  }
  SparseNat x{Nat(10)};
  CHECK(x.minus(Nat(10)).is_zero());
  CHECK_THROWS_AS(x.minus(Nat(11)), Error);
}

TEST_CASE("shifts and 2-adic valuation") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    Nat v = random_nat(rng, 60);
    Nat e(static_cast<std::uint64_t>(rng() % 50));
    SparseNat s{v};
    CHECK(s.shl(e).dense() == (v << static_cast<unsigned>(e.u64())));
    CHECK(s.shl(e).shr_exact(e).dense() == v);
    if (!v.is_zero()) CHECK(SparseNat(v).two_adic() == v.two_adic());
  }
}

TEST_CASE("terms with explicit structure") {
  SparseNat a = SparseNat::from_terms({{Nat(10), BigInt(1)}, {Nat(0), BigInt(-1)}});
  CHECK(a.dense() == Nat(1023));
  CHECK(a.bit_length() == Nat(10));  // borrow from the leading power of two
  SparseNat b = SparseNat::from_terms({{Nat(10), BigInt(1)}});
  CHECK(b.bit_length() == Nat(11));
  // overlapping raw terms must merge
  SparseNat c = SparseNat::from_terms({{Nat(3), BigInt(1)}, {Nat(2), BigInt(1)}, {Nat(0), BigInt(5)}});
  CHECK(c.dense() == Nat(8 + 4 + 5));
  check_canonical(c);
  // even coefficients fold into the shift
  SparseNat d = SparseNat::from_terms({{Nat(5), BigInt(12)}});
  CHECK(d.dense() == Nat(384));
  check_canonical(d);
  CHECK(d.two_adic() == Nat(7));  // 384 = 2^7 * 3
}

TEST_CASE("pairing at sparse scale") {
  SparseNat small = SparseNat::sigma2(Nat(3), SparseNat(Nat(5)));
  CHECK(small.dense() == Nat(87));
  CHECK(small.describe() == "2^3 * 11 - 1");
  auto [x, y] = small.sigma2_parts();
  CHECK(x == Nat(3));
  CHECK(y.dense() == Nat(5));

  // 2^100000 * 9 - 1: far beyond dense range, still exact structurally.
  SparseNat big = SparseNat::sigma2(Nat(100000), SparseNat(Nat(4)));
  CHECK(big.bit_length() == Nat(100004));
  CHECK_FALSE(big.dense_ok(50000));
  CHECK(big.two_adic() == Nat(0));  // value is odd
  auto [bx, by] = big.sigma2_parts();
  CHECK(bx == Nat(100000));
  CHECK(by.dense() == Nat(4));
  CHECK(big.describe() == "2^100003 + 2^100000 - 1");

  SparseNat bigger = SparseNat::sigma2(Nat(50), big);
  auto [cx, cy] = bigger.sigma2_parts();
  CHECK(cx == Nat(50));
  CHECK(SparseNat::cmp(cy, big) == 0);

  // dense cross-check of the sparse pairing on small values
  for (std::uint64_t px = 0; px < 8; ++px)
    for (std::uint64_t py = 0; py < 8; ++py) {
      SparseNat s = SparseNat::sigma2(Nat(px), SparseNat(Nat(py)));
      CHECK(s.dense() == sigma2(Nat(px), Nat(py)));
      auto [qx, qy] = s.sigma2_parts();
      CHECK(qx == Nat(px));
      CHECK(qy.dense() == Nat(py));
    }
}

TEST_CASE("comparisons at sparse scale") {
  SparseNat big = SparseNat::sigma2(Nat(100000), SparseNat(Nat(4)));
  CHECK(big.minus(Nat(1)) < big);
  CHECK(big.plus(Nat(1)) > big);
  CHECK(big == big);
  SparseNat near = SparseNat::sigma2(Nat(100000), SparseNat(Nat(5)));
  CHECK(big < near);
  // 17 * 2^99999 = 8.5 * 2^100000 < 9 * 2^100000
  CHECK(SparseNat::sigma2(Nat(99999), SparseNat(Nat(8))) < big);
  CHECK(SparseNat::sigma2(Nat(99999), SparseNat(Nat(9))) > big);
}
