#pragma once

// The standard definition environment: classical arithmetic built up from the
// schemas, one definition per name, in dependency order. Every entry has a
// native intrinsic twin with identical semantics so the fast evaluator can
// short-circuit references.
//
// Conventions baked into both sides:
//   x / 0 == 0, x % 0 == x, pow(0,0) == 1,
//   divides(d, n) == 1 iff n % d == 0 (so divides(0, n) iff n == 0),
//   cond(t, a, b) == a if t != 0 else b.

#include <cstdint>
#include <vector>

#include "primrec/codec.hpp"
#include "primrec/eval.hpp"
#include "primrec/term.hpp"

namespace primrec {

namespace detail {

inline bool is_prime_u64(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

inline void build_stdlib(DefEnv& env, IntrinsicTable& tab) {
  using T = Term;
  auto P = [](std::uint32_t n, std::uint32_t i) { return T::proj(n, i); };
  auto C = [](T g, std::vector<T> hs) { return T::comp(std::move(g), std::move(hs)); };
  auto ref = [](const char* s) { return T::ref(s); };

  auto def = [&](const char* name, T body, Intrinsic native) {
    env.define(name, body);
    tab[name] = std::move(native);
  };

  // Unary constants.
  def("one", C(T::succ(), {T::zero()}), [](const std::vector<Nat>&) { return Nat(1); });
  def("two", C(T::succ(), {ref("one")}), [](const std::vector<Nat>&) { return Nat(2); });

  def("add", T::rec(P(1, 1), C(T::succ(), {P(3, 3)})),
      [](const std::vector<Nat>& a) { return a[0] + a[1]; });

  def("mul", T::rec(T::zero(), C(ref("add"), {P(3, 1), P(3, 3)})),
      [](const std::vector<Nat>& a) { return a[0] * a[1]; });

  def("pow", T::rec(ref("one"), C(ref("mul"), {P(3, 1), P(3, 3)})),
      [](const std::vector<Nat>& a) { return pow(a[0], a[1]); });

  // pred(x) = x-1 via a dummy-argument recursion: d(x, y+1) = y, pred(x) = d(x, x).
  def("pred", C(T::rec(T::zero(), P(3, 2)), {P(1, 1), P(1, 1)}),
      [](const std::vector<Nat>& a) { return a[0] - Nat(1); });

  def("sub", T::rec(P(1, 1), C(ref("pred"), {P(3, 3)})),
      [](const std::vector<Nat>& a) { return a[0] - a[1]; });

  def("sign", C(ref("sub"), {ref("one"), C(ref("sub"), {ref("one"), P(1, 1)})}),
      [](const std::vector<Nat>& a) { return Nat(a[0].is_zero() ? 0 : 1); });

  def("nsign", C(ref("sub"), {ref("one"), P(1, 1)}),
      [](const std::vector<Nat>& a) { return Nat(a[0].is_zero() ? 1 : 0); });

  def("eq",
      C(ref("nsign"), {C(ref("add"), {C(ref("sub"), {P(2, 1), P(2, 2)}),
                                      C(ref("sub"), {P(2, 2), P(2, 1)})})}),
      [](const std::vector<Nat>& a) { return Nat(a[0] == a[1] ? 1 : 0); });

  def("le", C(ref("nsign"), {C(ref("sub"), {P(2, 1), P(2, 2)})}),
      [](const std::vector<Nat>& a) { return Nat(a[0] <= a[1] ? 1 : 0); });

  def("lt", C(ref("le"), {C(T::succ(), {P(2, 1)}), P(2, 2)}),
      [](const std::vector<Nat>& a) { return Nat(a[0] < a[1] ? 1 : 0); });

  def("cond",
      C(ref("add"), {C(ref("mul"), {P(3, 2), C(ref("sign"), {P(3, 1)})}),
                     C(ref("mul"), {P(3, 3), C(ref("nsign"), {P(3, 1)})})}),
      [](const std::vector<Nat>& a) { return a[0].is_zero() ? a[2] : a[1]; });

  // div(x, y) = least q <= x with (q+1)*y > x, and 0 when y == 0.
  def("div",
      T::bounded_mu(C(ref("sign"), {C(ref("sub"), {C(ref("mul"), {C(T::succ(), {P(3, 3)}), P(3, 2)}),
                                                   P(3, 1)})}),
                    P(2, 1)),
      [](const std::vector<Nat>& a) { return a[0] / a[1]; });

  def("mod", C(ref("sub"), {P(2, 1), C(ref("mul"), {P(2, 2), C(ref("div"), {P(2, 1), P(2, 2)})})}),
      [](const std::vector<Nat>& a) { return a[0] % a[1]; });

  def("divides", C(ref("eq"), {C(ref("mod"), {P(2, 2), P(2, 1)}), C(T::zero(), {P(2, 1)})}),
      [](const std::vector<Nat>& a) { return Nat((a[1] % a[0]).is_zero() ? 1 : 0); });

  // is_prime(x): x >= 2 and no proper divisor d with 2 <= d < x.
  {
    T proper_divisor = C(ref("mul"), {C(ref("le"), {C(ref("two"), {P(2, 1)}), P(2, 2)}),
                                      C(ref("mul"), {C(ref("lt"), {P(2, 2), P(2, 1)}),
                                                     C(ref("divides"), {P(2, 2), P(2, 1)})})});
    T has_divisor = T::bounded_mu(proper_divisor, P(1, 1));
    def("is_prime",
        C(ref("mul"), {C(ref("le"), {ref("two"), P(1, 1)}), C(ref("nsign"), {has_divisor})}),
        [](const std::vector<Nat>& a) {
          return Nat(is_prime_u64(a[0].u64()) ? 1 : 0);
        });
  }

  // next_prime(q): least prime > q, searched up to 2q + 2 (Bertrand).
  def("next_prime",
      T::bounded_mu(C(ref("mul"), {C(ref("lt"), {P(2, 1), P(2, 2)}),
                                   C(ref("is_prime"), {P(2, 2)})}),
                    C(T::succ(), {C(T::succ(), {C(ref("mul"), {ref("two"), P(1, 1)})})})),
      [](const std::vector<Nat>& a) {
        std::uint64_t q = a[0].u64();
        std::uint64_t p = q + 1;
        while (!is_prime_u64(p)) ++p;
        return Nat(p);
      });

  // prime(i): the (i+1)-st prime, prime(0) = 2; dummy argument as in pred.
  def("prime",
      C(T::rec(ref("two"), C(ref("next_prime"), {P(3, 3)})), {P(1, 1), P(1, 1)}),
      [](const std::vector<Nat>& a) { return prime(a[0]); });

  def("prime_pow", C(ref("pow"), {C(ref("prime"), {P(2, 1)}), P(2, 2)}),
      [](const std::vector<Nat>& a) { return pow(prime(a[0]), a[1]); });

  // exponent_of(n, i): largest e with prime(i)^e | n, via least e with
  // prime(i)^(e+1) not dividing n. The intrinsic twin rejects n == 0; the
  // schema side is total and yields 0 there.
  def("exponent_of",
      T::bounded_mu(C(ref("nsign"),
                      {C(ref("divides"),
                         {C(ref("prime_pow"), {P(3, 2), C(T::succ(), {P(3, 3)})}), P(3, 1)})}),
                    P(2, 1)),
      [](const std::vector<Nat>& a) { return exponent_of(a[0], a[1]); });

  def("sigma2",
      C(ref("pred"),
        {C(ref("mul"), {C(ref("pow"), {C(ref("two"), {P(2, 1)}), P(2, 1)}),
                        C(T::succ(), {C(ref("mul"), {C(ref("two"), {P(2, 1)}), P(2, 2)})})})}),
      [](const std::vector<Nat>& a) { return sigma2(a[0], a[1]); });

  def("sigma2_x", C(ref("exponent_of"), {C(T::succ(), {P(1, 1)}), T::zero()}),
      [](const std::vector<Nat>& a) { return sigma2_inv(a[0]).first; });

  def("sigma2_y",
      C(ref("div"),
        {C(ref("pred"), {C(ref("div"), {C(T::succ(), {P(1, 1)}),
                                        C(ref("pow"), {ref("two"), ref("sigma2_x")})})}),
         ref("two")}),
      [](const std::vector<Nat>& a) { return sigma2_inv(a[0]).second; });

  def("sigma3", C(ref("sigma2"), {C(ref("sigma2"), {P(3, 1), P(3, 2)}), P(3, 3)}),
      [](const std::vector<Nat>& a) { return sigma3(a[0], a[1], a[2]); });

  def("sigma3_x", C(ref("sigma2_x"), {ref("sigma2_x")}),
      [](const std::vector<Nat>& a) { return std::get<0>(sigma3_inv(a[0])); });

  def("sigma3_y", C(ref("sigma2_y"), {ref("sigma2_x")}),
      [](const std::vector<Nat>& a) { return std::get<1>(sigma3_inv(a[0])); });

  def("sigma3_z", C(ref("sigma2_y"), {P(1, 1)}),
      [](const std::vector<Nat>& a) { return std::get<2>(sigma3_inv(a[0])); });
}

struct StdlibState {
  DefEnv env;
  IntrinsicTable intrinsics;
  StdlibState() { build_stdlib(env, intrinsics); }
};

inline const StdlibState& stdlib_state() {
  static StdlibState s;
  return s;
}

}  // namespace detail

inline const DefEnv& stdlib_env() { return detail::stdlib_state().env; }
inline const IntrinsicTable& stdlib_intrinsics() { return detail::stdlib_state().intrinsics; }

// A mutable copy of the stdlib for callers that add their own definitions.
inline DefEnv stdlib_copy() { return detail::stdlib_state().env; }

}  // namespace primrec
