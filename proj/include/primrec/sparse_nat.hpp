#pragma once

// Exact naturals in sparse binary form: a sum of signed odd chunks scaled by
// powers of two,
//
//     value = sum_i coeff_i * 2^shift_i
//
// with bignum shifts. Configuration and witness codes in this library look
// like 2^E*(2c+1)-1 where E itself can run to 10^14 and beyond, so they have
// no dense representation; this form keeps them exact and cheap.
//
// Canonical invariant (maintained by every operation):
//   * terms sorted by shift descending, coefficients odd and nonzero,
//   * separation: shift_i >= shift_{i+1} + bits(coeff_{i+1}) + 2,
//   * leading coefficient positive (the value is a natural), empty == 0.
// Separation makes the tail below any term smaller than half that term, so
// the sign of a sum is the sign of its leading chunk and comparisons reduce
// to normalizing a difference.

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "primrec/codec.hpp"
#include "primrec/errors.hpp"
#include "primrec/nat.hpp"

namespace primrec {

class SparseNat {
 public:
  struct Term {
    Nat shift;
    BigInt coeff;  // odd, nonzero; negative allowed below the leading term
  };

  SparseNat() = default;

  explicit SparseNat(const Nat& v) {
    if (!v.is_zero()) {
      terms_.push_back({Nat(0), v.big()});
      canonicalize();
    }
  }

  static SparseNat from_terms(std::vector<Term> raw) {
    SparseNat out;
    out.terms_ = std::move(raw);
    out.canonicalize();
    return out;
  }

  bool is_zero() const { return terms_.empty(); }

  // Exact number of binary digits.
  Nat bit_length() const {
    if (terms_.empty()) return Nat(0);
    const Term& top = terms_.front();
    Nat n = top.shift + Nat(BigInt(msb(top.coeff) + 1));
    if (top.coeff == 1 && terms_.size() > 1 && terms_[1].coeff < 0) n -= Nat(1);
    return n;
  }

  bool dense_ok(std::uint64_t guard_bits = kDenseBitGuard) const {
    return bit_length() <= Nat(BigInt(guard_bits));
  }

  Nat dense(std::uint64_t guard_bits = kDenseBitGuard) const {
    if (!dense_ok(guard_bits)) throw ValueTooLarge("sparse value exceeds dense guard");
    BigInt acc = 0;
    for (const Term& t : terms_) acc += t.coeff << t.shift.u64();
    return Nat(acc);
  }

  SparseNat plus(const SparseNat& o) const {
    SparseNat out;
    out.terms_ = terms_;
    out.terms_.insert(out.terms_.end(), o.terms_.begin(), o.terms_.end());
    out.canonicalize();
    return out;
  }

  SparseNat minus(const SparseNat& o) const {
    SparseNat out;
    out.terms_ = terms_;
    for (const Term& t : o.terms_) out.terms_.push_back({t.shift, -t.coeff});
    out.canonicalize();
    return out;
  }

  SparseNat plus(const Nat& n) const { return plus(SparseNat(n)); }
  SparseNat minus(const Nat& n) const { return minus(SparseNat(n)); }

  // Multiply by a dense factor (chunk-sized, not a second sparse value).
  SparseNat times(const Nat& m) const {
    if (m.is_zero()) return SparseNat();
    SparseNat out;
    out.terms_ = terms_;
    for (Term& t : out.terms_) t.coeff *= m.big();
    out.canonicalize();
    return out;
  }

  SparseNat shl(const Nat& e) const {
    SparseNat out;
    out.terms_ = terms_;
    for (Term& t : out.terms_) t.shift += e;
    return out;  // still canonical
  }

  // Exact division by 2^e; the value must be divisible.
  SparseNat shr_exact(const Nat& e) const {
    if (e.is_zero()) return *this;
    if (terms_.empty()) return *this;
    if (terms_.back().shift < e) throw Error("shr_exact: value not divisible");
    SparseNat out;
    out.terms_ = terms_;
    for (Term& t : out.terms_) t.shift -= e;
    return out;
  }

  // 2-adic valuation; with odd chunks this is just the lowest shift.
  Nat two_adic() const {
    if (terms_.empty()) throw ZeroInput("two_adic of 0");
    return terms_.back().shift;
  }

  static int cmp(const SparseNat& a, const SparseNat& b) {
    std::vector<Term> diff = a.terms_;
    for (const Term& t : b.terms_) diff.push_back({t.shift, -t.coeff});
    int sign = 0;
    normalize(diff, sign);
    return sign;
  }

  friend bool operator==(const SparseNat& a, const SparseNat& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const SparseNat& a, const SparseNat& b) { return cmp(a, b) != 0; }
  friend bool operator<(const SparseNat& a, const SparseNat& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const SparseNat& a, const SparseNat& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const SparseNat& a, const SparseNat& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const SparseNat& a, const SparseNat& b) { return cmp(a, b) >= 0; }

  // sigma2 with a dense first component: 2^x * (2y + 1) - 1.
  static SparseNat sigma2(const Nat& x, const SparseNat& y) {
    std::vector<Term> raw = y.shl(x + Nat(1)).terms_;
    raw.push_back({x, 1});
    raw.push_back({Nat(0), -1});
    return from_terms(std::move(raw));
  }

  // Inverse: z -> (x, y) with z == sigma2(x, y).
  std::pair<Nat, SparseNat> sigma2_parts() const {
    SparseNat w = plus(Nat(1));
    Nat x = w.two_adic();
    SparseNat odd = w.shr_exact(x);
    SparseNat y = odd.minus(Nat(1)).shr_exact(Nat(1));
    return {x, y};
  }

  const std::vector<Term>& terms() const { return terms_; }

  // Structural rendering, e.g. "2^43775 * 9 - 1".
  std::string describe() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const Term& t : terms_) {
      BigInt c = t.coeff;
      bool neg = c < 0;
      if (neg) c = -c;
      if (first) {
        if (neg) os << "-";
        first = false;
      } else {
        os << (neg ? " - " : " + ");
      }
      if (t.shift.is_zero()) {
        os << c.str();
      } else {
        os << "2^" << t.shift.str();
        if (c != 1) os << " * " << c.str();
      }
    }
    return os.str();
  }

 private:
  std::vector<Term> terms_;  // descending by shift

  static std::uint64_t coeff_bits(const BigInt& c) {
    BigInt a = c < 0 ? BigInt(-c) : c;
    return msb(a) + 1;
  }

  // Merge raw terms into canonical separated form; sign reports the value's
  // overall sign (for cmp). Terms end up descending.
  static void normalize(std::vector<Term>& ts, int& sign) {
    // Fold even coefficients into shifts, drop zeros.
    std::vector<Term> work;
    work.reserve(ts.size());
    for (Term& t : ts) {
      if (t.coeff.is_zero()) continue;
      std::uint64_t v = lsb(t.coeff < 0 ? BigInt(-t.coeff) : t.coeff);
      if (v) {
        t.coeff >>= v;
        t.shift += Nat(v);
      }
      work.push_back(std::move(t));
    }
    bool changed = true;
    while (changed) {
      changed = false;
      std::sort(work.begin(), work.end(),
                [](const Term& a, const Term& b) { return a.shift < b.shift; });
      std::vector<Term> out;
      for (Term& t : work) {
        if (!out.empty()) {
          Term& low = out.back();
          // Not separated from the chunk below: fold together densely.
          if (t.shift - low.shift <= Nat(coeff_bits(low.coeff) + 1)) {
            std::uint64_t diff = (t.shift - low.shift).u64();
            low.coeff += t.coeff << diff;
            changed = true;
            if (low.coeff.is_zero()) {
              out.pop_back();
            } else {
              std::uint64_t v = lsb(low.coeff < 0 ? BigInt(-low.coeff) : low.coeff);
              if (v) {
                low.coeff >>= v;
                low.shift += Nat(v);
              }
            }
            continue;
          }
        }
        out.push_back(std::move(t));
      }
      work = std::move(out);
    }
    std::reverse(work.begin(), work.end());
    sign = work.empty() ? 0 : (work.front().coeff < 0 ? -1 : 1);
    ts = std::move(work);
  }

  void canonicalize() {
    int sign = 0;
    normalize(terms_, sign);
    if (sign < 0) throw Error("sparse natural went negative");
  }
};

}  // namespace primrec
