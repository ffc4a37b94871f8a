#pragma once

// Gödel encodings of tapes, configurations and machine tables.
//
//   tape           b = prod_j prime(j)^beta(j) over occupied cells
//   configuration  sigma3(a, b, c) = sigma2(sigma2(a, b), c)
//   machine        entries sorted by (state, symbol); entry code
//                  e = sigma2(sigma2(q-1, sym), sigma2(act, q'-1)) with
//                  act = j for Write(j), N+1 for left, N+2 for right;
//                  t = sigma3(M, N, prod_k prime(k)^(1 + e_k))
//
// The outer sigma2 places a whole inner code in the binary exponent, so
// configuration and machine numbers outgrow every positional representation
// almost immediately. Both therefore have an exact structural form next to
// the dense one: configurations encode to SparseNat, machines to a
// MachineCode holding the entry exponents as SparseNat. Dense conversions
// go through the usual bit-length guard and throw ValueTooLarge beyond it.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "primrec/codec.hpp"
#include "primrec/errors.hpp"
#include "primrec/nat.hpp"
#include "primrec/sparse_nat.hpp"
#include "primrec/tm.hpp"

namespace primrec {

inline Nat encode_tape(const Configuration& cfg) {
  Nat b(1);
  for (const auto& [idx, sym] : cfg.beta) b = b * pow(prime(idx), Nat(sym));
  return b;
}

inline SparseNat encode_config(const Configuration& cfg) {
  Nat w = sigma2(cfg.a, encode_tape(cfg));  // head index rides in the exponent
  return SparseNat::sigma2(w, SparseNat(Nat(cfg.c)));
}

inline Nat encode_config_dense(const Configuration& cfg,
                               std::uint64_t guard_bits = kDenseBitGuard) {
  return encode_config(cfg).dense(guard_bits);
}

// Cells beyond this index never occur in honest runs; a tape code with a
// prime factor past it is treated as malformed rather than factored forever.
inline constexpr std::uint64_t kMaxTapeCell = 200000;

// Structural inverse without machine context: splits the pairing and
// factors the tape code, but checks nothing against an alphabet or state
// count. Used directly by the output extractor, which never needs M or N.
inline Configuration decode_config_loose(const SparseNat& s) {
  auto [w, c_part] = s.sigma2_parts();
  if (!c_part.dense_ok(40)) throw MalformedConfig("state component out of range");
  Nat c = c_part.dense(40);
  if (!c.fits_u64() || c.u64() > 0xffffffffull)
    throw MalformedConfig("state component out of range");
  auto [a, b] = sigma2_inv(w);
  if (b.is_zero()) throw MalformedConfig("tape code must be positive");
  Configuration cfg;
  cfg.a = a;
  cfg.c = static_cast<std::uint32_t>(c.u64());
  Nat rest = b;
  for (std::uint64_t j = 0; rest != Nat(1); ++j) {
    if (j >= kMaxTapeCell)
      throw MalformedConfig("tape code has a prime factor beyond the supported cell range");
    Nat p = prime(Nat(j));
    std::uint32_t e = 0;
    while ((rest % p).is_zero()) {
      rest = rest / p;
      ++e;
    }
    if (e > 0) cfg.beta[Nat(j)] = e;
  }
  return cfg;
}

inline Configuration decode_config(const SparseNat& s, const TmSpec& spec) {
  Configuration cfg = decode_config_loose(s);
  if (cfg.c == 0 || cfg.c > spec.M) throw MalformedConfig("state outside 1..M");
  for (const auto& [idx, sym] : cfg.beta) {
    (void)idx;
    if (sym > spec.N) throw MalformedConfig("tape symbol index exceeds the alphabet");
  }
  return cfg;
}

inline Configuration decode_config(const Nat& s, const TmSpec& spec) {
  return decode_config(SparseNat(s), spec);
}

// ---- machine numbering ---------------------------------------------------

struct MachineCode {
  std::uint32_t M = 0;
  std::uint32_t N = 1;
  std::vector<SparseNat> exps;  // e_k in canonical (state, symbol) order

  friend bool operator==(const MachineCode& a, const MachineCode& b) {
    return a.M == b.M && a.N == b.N && a.exps == b.exps;
  }
};

inline MachineCode machine_code(const TmSpec& spec) {
  spec.validate();
  MachineCode code;
  code.M = spec.M;
  code.N = spec.N;
  for (const auto& [key, val] : spec.delta) {  // std::map iterates in canonical order
    auto [q, sym] = key;
    auto [act, q2] = val;
    std::uint32_t act_code = 0;
    switch (act.kind) {
      case Action::Write: act_code = act.sym; break;
      case Action::MoveLeft: act_code = spec.N + 1; break;
      case Action::MoveRight: act_code = spec.N + 2; break;
    }
    Nat head = sigma2(Nat(q - 1), Nat(sym));
    Nat tail = sigma2(Nat(act_code), Nat(q2 - 1));
    code.exps.push_back(SparseNat::sigma2(head, SparseNat(tail)));
  }
  return code;
}

inline TmSpec decode_machine(const MachineCode& code) {
  TmSpec m;
  m.M = code.M;
  m.N = code.N;
  std::pair<std::uint32_t, std::uint32_t> prev{0, 0};
  bool first = true;
  for (const SparseNat& e : code.exps) {
    auto [head, tail_part] = e.sigma2_parts();
    if (!tail_part.dense_ok(40)) throw MalformedMachine("entry action component out of range");
    auto [act_code, q2m1] = sigma2_inv(tail_part.dense(40));
    auto [qm1, symn] = sigma2_inv(head);
    if (Nat(m.M) <= qm1) throw MalformedMachine("entry state outside 1..M");
    if (Nat(m.N) < symn) throw MalformedMachine("entry symbol outside 0..N");
    if (Nat(m.N + 2) < act_code) throw MalformedMachine("entry action out of range");
    if (Nat(m.M) <= q2m1) throw MalformedMachine("entry target outside 1..M");
    std::uint32_t q = static_cast<std::uint32_t>(qm1.u64()) + 1;
    std::uint32_t sym = static_cast<std::uint32_t>(symn.u64());
    std::uint32_t q2 = static_cast<std::uint32_t>(q2m1.u64()) + 1;
    std::uint32_t ac = static_cast<std::uint32_t>(act_code.u64());
    Action act{};
    if (ac <= m.N) {
      act = write_sym(ac);
    } else if (ac == m.N + 1) {
      act = move_l();
    } else {
      act = move_r();
    }
    if (!first && !(prev < std::pair{q, sym}))
      throw MalformedMachine("entries out of canonical (state, symbol) order");
    prev = {q, sym};
    first = false;
    m.delta[{q, sym}] = {act, q2};
  }
  m.validate();
  return m;
}

inline Nat code_to_nat(const MachineCode& code, std::uint64_t guard_bits = kDenseBitGuard) {
  Nat body(1);
  for (std::size_t k = 0; k < code.exps.size(); ++k) {
    Nat e = code.exps[k].dense(guard_bits);
    body = body * pow(prime(Nat(k)), e + Nat(1), guard_bits);
    if (body.bits() > guard_bits) throw ValueTooLarge("machine number exceeds dense guard");
  }
  return sigma3(Nat(code.M), Nat(code.N), body, guard_bits);
}

inline Nat godel_number(const TmSpec& spec, std::uint64_t guard_bits = kDenseBitGuard) {
  return code_to_nat(machine_code(spec), guard_bits);
}

inline TmSpec decode_machine(const Nat& t) {
  auto [mm, nn, body] = sigma3_inv(t);
  if (mm.is_zero() || Nat(1u << 20) < mm) throw MalformedMachine("state count out of range");
  if (Nat(1u << 20) < nn) throw MalformedMachine("alphabet size out of range");
  MachineCode code;
  code.M = static_cast<std::uint32_t>(mm.u64());
  code.N = static_cast<std::uint32_t>(nn.u64());
  Nat rest = body;
  for (std::uint64_t k = 0; rest != Nat(1); ++k) {
    if (k >= kMaxTapeCell) throw MalformedMachine("entry list does not terminate");
    Nat f = exponent_of(rest, Nat(k));  // power ladder, not repeated division
    if (f.is_zero()) throw MalformedMachine("gap in the entry sequence");
    rest = rest / pow(prime(Nat(k)), f, 2 * rest.bits() + 64);
    code.exps.push_back(SparseNat(f - Nat(1)));
  }
  return decode_machine(code);
}

}  // namespace primrec
