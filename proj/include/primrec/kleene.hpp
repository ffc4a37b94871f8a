#pragma once

// Arithmetization of halting computations, end to end:
//
//   kfun        z-th configuration code of a run, frozen once terminal
//   t_pred      1 iff y = sigma2(r, s) pairs a step index with the code of
//               that step's configuration and the configuration is terminal
//   u_extract   output numeral of the configuration inside a witness pair
//   mu_search   least y with t_pred = 1, found either by a literal scan
//               (Linear) or by simulation plus adversarial re-checking
//               (WitnessChecked)
//   prop1       per-run numeric envelopes for head position, occupied
//               cells, tape code and state
//   y-bound     a primitive-recursive term dominating sigma2(r, s) for any
//               run whose step count a given PR term bounds
//   compile     a closed primitive-recursive term computing the machine's
//               function, shaped U(bounded-mu_y T(x, y))
//
// Witness codes grow as 2^2^(linear in the run), so everything value-level
// runs on SparseNat; dense Nat appears only where magnitudes provably fit.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "primrec/errors.hpp"
#include "primrec/eval.hpp"
#include "primrec/nat.hpp"
#include "primrec/sparse_nat.hpp"
#include "primrec/stdlib_env.hpp"
#include "primrec/term.hpp"
#include "primrec/tm.hpp"
#include "primrec/tm_codec.hpp"

namespace primrec {

inline constexpr std::uint64_t kDefaultMaxSteps = 1'000'000;

struct Witness {
  Nat r;        // first terminal step index
  SparseNat s;  // code of that configuration
  SparseNat y;  // sigma2(r, s)
};

// One machine run with memoized configurations and their codes.
class RunContext {
 public:
  RunContext(TmSpec spec, std::vector<Nat> args, std::uint64_t max_steps = kDefaultMaxSteps)
      : spec_(std::move(spec)), max_steps_(max_steps) {
    spec_.validate();
    cfgs_.push_back(encode_args(args));
  }

  const TmSpec& spec() const { return spec_; }

  // index of the first terminal configuration; simulates on demand
  std::uint64_t halting_step() {
    while (!terminal_) advance();
    return cfgs_.size() - 1;
  }

  // the configuration after z steps, frozen at the terminal one
  const Configuration& config(const Nat& z) {
    std::uint64_t want = z.fits_u64() ? z.u64() : max_steps_ + 1;
    while (!terminal_ && cfgs_.size() <= want) advance();
    std::uint64_t idx = std::min<std::uint64_t>(want, cfgs_.size() - 1);
    return cfgs_[idx];
  }

  // code of the configuration after z steps
  const SparseNat& encoded(const Nat& z) {
    config(z);  // ensure simulated
    std::uint64_t want = z.fits_u64() ? z.u64() : max_steps_ + 1;
    std::uint64_t idx = std::min<std::uint64_t>(want, cfgs_.size() - 1);
    if (codes_.size() < cfgs_.size()) codes_.resize(cfgs_.size());
    if (!codes_[idx]) codes_[idx] = encode_config(cfgs_[idx]);
    return *codes_[idx];
  }

 private:
  void advance() {
    if (auto next = step(spec_, cfgs_.back())) {
      if (cfgs_.size() > max_steps_)
        throw NonTermination("no terminal configuration within " + std::to_string(max_steps_) +
                             " steps");
      cfgs_.push_back(std::move(*next));
    } else {
      terminal_ = true;
    }
  }

  TmSpec spec_;
  std::uint64_t max_steps_;
  std::vector<Configuration> cfgs_;
  std::vector<std::optional<SparseNat>> codes_;
  bool terminal_ = false;
};

inline SparseNat kfun(RunContext& ctx, const Nat& z) { return ctx.encoded(z); }

inline SparseNat kfun(const TmSpec& spec, const std::vector<Nat>& xs, const Nat& z,
                      std::uint64_t max_steps = kDefaultMaxSteps) {
  RunContext ctx(spec, xs, max_steps);
  return ctx.encoded(z);
}

inline SparseNat kfun(const Nat& t, const std::vector<Nat>& xs, const Nat& z,
                      std::uint64_t max_steps = kDefaultMaxSteps) {
  return kfun(decode_machine(t), xs, z, max_steps);
}

// T(y) = [y pairs (r, code of step r) and step r is terminal]. A y whose
// second component matches no configuration code simply compares unequal,
// so malformed input yields 0 without any decoding.
inline Nat t_pred(RunContext& ctx, const SparseNat& y) {
  auto [r, s] = y.sigma2_parts();
  if (ctx.encoded(r) != s) return Nat(0);
  const Configuration& cfg = ctx.config(r);
  bool terminal = ctx.spec().find(cfg.c, cfg.sym_at(cfg.a)) == nullptr;
  return Nat(terminal ? 1 : 0);
}

inline Nat t_pred(const TmSpec& spec, const std::vector<Nat>& xs, const SparseNat& y,
                  std::uint64_t max_steps = kDefaultMaxSteps) {
  RunContext ctx(spec, xs, max_steps);
  return t_pred(ctx, y);
}

inline Nat t_pred(const Nat& t, const std::vector<Nat>& xs, const SparseNat& y,
                  std::uint64_t max_steps = kDefaultMaxSteps) {
  return t_pred(decode_machine(t), xs, y, max_steps);
}

// U: read the output numeral out of the configuration inside the pair.
inline Nat u_extract(const SparseNat& y) {
  auto [r, s] = y.sigma2_parts();
  (void)r;
  return decode_output(decode_config_loose(s));
}

inline Nat u_extract(const Nat& y) { return u_extract(SparseNat(y)); }

// ---- least-witness search ------------------------------------------------

struct LinearMode {
  std::uint64_t budget = 100000;
};

struct WitnessCheckedMode {
  std::uint64_t samples = 200;
  std::uint64_t seed = 0x5eed;
};

using MuMode = std::variant<LinearMode, WitnessCheckedMode>;

inline Witness mu_search_linear(const TmSpec& spec, const std::vector<Nat>& xs,
                                std::uint64_t budget,
                                std::uint64_t max_steps = kDefaultMaxSteps) {
  RunContext ctx(spec, xs, max_steps);
  for (std::uint64_t y = 0; y < budget; ++y) {
    SparseNat cand{Nat(y)};
    if (t_pred(ctx, cand) == Nat(1)) {
      auto [r, s] = cand.sigma2_parts();
      return Witness{r, s, cand};
    }
  }
  throw BudgetExceeded("linear witness scan exhausted " + std::to_string(budget) +
                       " candidates; real witnesses sit near 2^2^(run size)");
}

namespace kdetail {

// uniform random value below 2^bits
inline Nat random_bits(std::mt19937_64& rng, std::uint64_t bits) {
  Nat out(0);
  std::uint64_t produced = 0;
  while (produced < bits) {
    std::uint64_t take = std::min<std::uint64_t>(64, bits - produced);
    std::uint64_t chunk = rng();
    if (take < 64) chunk >>= (64 - take);
    out = (out << take) + Nat(chunk);
    produced += take;
  }
  return out;
}

// candidate drawn near the run: right pair shape, wrong contents
inline SparseNat perturbed_candidate(std::mt19937_64& rng, RunContext& ctx, std::uint64_t rstar,
                                     long long lo, long long hi) {
  std::uint64_t rprime = rng() % (rstar + 1);
  Configuration cfg = ctx.config(Nat(rprime));
  switch (rng() % 3) {
    case 0: {  // nudge the state
      std::uint32_t m = ctx.spec().M;
      if (m >= 2) {
        cfg.c = cfg.c % m + 1;
        break;
      }
      [[fallthrough]];
    }
    case 1: {  // toggle one tape cell in the reachable window
      long long width = hi - lo + 1;
      long long p = lo + static_cast<long long>(rng() % static_cast<std::uint64_t>(width));
      Nat idx = cell_index(p);
      cfg.set_sym(idx, cfg.sym_at(idx) == 0 ? 1 : 0);
      break;
    }
    default: {  // shift the head
      long long p = phys_of(cfg.a);
      cfg.a = cell_index(rng() % 2 == 0 ? p + 1 : p - 1);
      break;
    }
  }
  return SparseNat::sigma2(Nat(rprime), encode_config(cfg));
}

}  // namespace kdetail

// Simulates to the first terminal step, builds y* = sigma2(r*, s*), then
// attacks its own answer: T must accept y*, reject every properly paired
// earlier step, and reject sampled smaller candidates. Minimality holds
// structurally — T(y) = 1 forces y = sigma2(r, kfun(r)) with step r
// terminal, the frozen tail makes kfun(r) = s* for r >= r*, and sigma2 is
// strictly monotone in r, so no y below sigma2(r*, s*) can pass.
inline Witness mu_search_checked(const TmSpec& spec, const std::vector<Nat>& xs,
                                 const WitnessCheckedMode& mode = {},
                                 std::uint64_t max_steps = kDefaultMaxSteps) {
  RunContext ctx(spec, xs, max_steps);
  std::uint64_t rstar = ctx.halting_step();
  SparseNat sstar = ctx.encoded(Nat(rstar));
  SparseNat ystar = SparseNat::sigma2(Nat(rstar), sstar);
  if (t_pred(ctx, ystar) != Nat(1))
    throw WitnessRefuted("T rejects the simulated terminal witness");
  for (std::uint64_t rp = 0; rp < rstar; ++rp) {
    SparseNat cand = SparseNat::sigma2(Nat(rp), ctx.encoded(Nat(rp)));
    if (t_pred(ctx, cand) != Nat(0))
      throw WitnessRefuted("T accepts the non-terminal step " + std::to_string(rp));
  }

  // reachable physical window, for tape perturbations
  const Configuration& init = ctx.config(Nat(0));
  long long lo = phys_of(init.a), hi = lo;
  for (const auto& [idx, sym] : init.beta) {
    (void)sym;
    lo = std::min(lo, phys_of(idx));
    hi = std::max(hi, phys_of(idx));
  }
  lo -= static_cast<long long>(rstar);
  hi += static_cast<long long>(rstar);

  std::mt19937_64 rng(mode.seed);
  bool dense_range = ystar.dense_ok(1u << 16);
  std::uint64_t ybits = dense_range ? ystar.dense(1u << 16).bits() : 0;
  std::uint64_t accepted = 0, attempts = 0;
  while (accepted < mode.samples) {
    if (++attempts > mode.samples * 64)
      throw Error("witness sampling failed to draw candidates below the witness");
    SparseNat cand;
    switch (attempts % 4) {
      case 0:
        if (dense_range) {
          cand = SparseNat(kdetail::random_bits(rng, ybits));
          break;
        }
        [[fallthrough]];
      case 1:
        cand = kdetail::perturbed_candidate(rng, ctx, rstar, lo, hi);
        break;
      case 2: {  // right step index, configuration code off by one
        std::uint64_t rp = rng() % (rstar + 1);
        SparseNat s = ctx.encoded(Nat(rp));
        cand = SparseNat::sigma2(Nat(rp), rng() % 2 == 0 ? s.plus(Nat(1)) : s.minus(Nat(1)));
        break;
      }
      default: {  // mismatched step/configuration pairing
        std::uint64_t r1 = rng() % (rstar + 1);
        std::uint64_t r2 = rng() % (rstar + 1);
        if (r1 == r2) r1 = (r1 + 1) % (rstar + 1);
        cand = SparseNat::sigma2(Nat(r1), ctx.encoded(Nat(r2)));
        break;
      }
    }
    if (!(cand < ystar)) continue;
    if (t_pred(ctx, cand) != Nat(0))
      throw WitnessRefuted("T accepts a sampled candidate below the witness");
    ++accepted;
  }
  return Witness{Nat(rstar), sstar, ystar};
}

inline Witness mu_search(const TmSpec& spec, const std::vector<Nat>& xs, const MuMode& mode,
                         std::uint64_t max_steps = kDefaultMaxSteps) {
  if (const auto* lin = std::get_if<LinearMode>(&mode))
    return mu_search_linear(spec, xs, lin->budget, max_steps);
  return mu_search_checked(spec, xs, std::get<WitnessCheckedMode>(mode), max_steps);
}

inline Witness mu_search(const Nat& t, const std::vector<Nat>& xs, const MuMode& mode,
                         std::uint64_t max_steps = kDefaultMaxSteps) {
  return mu_search(decode_machine(t), xs, mode, max_steps);
}

inline Nat theorem_b0_eval(const TmSpec& spec, const std::vector<Nat>& xs,
                           std::uint64_t max_steps = kDefaultMaxSteps) {
  return u_extract(mu_search_checked(spec, xs, {}, max_steps).y);
}

inline Nat theorem_b0_eval(const Nat& t, const std::vector<Nat>& xs,
                           std::uint64_t max_steps = kDefaultMaxSteps) {
  return theorem_b0_eval(decode_machine(t), xs, max_steps);
}

// ---- per-run numeric envelopes -------------------------------------------

struct Prop1Bounds {
  Nat a_max;      // largest reachable cell index
  Nat cells_max;  // occupied-cell count bound
  Nat b_max;      // tape-code bound, exact primes over the reachable window
  std::uint32_t c_max = 0;
};

namespace kdetail {

inline std::pair<long long, long long> initial_window(const Configuration& init) {
  long long lo = phys_of(init.a), hi = lo;
  for (const auto& [idx, sym] : init.beta) {
    (void)sym;
    lo = std::min(lo, phys_of(idx));
    hi = std::max(hi, phys_of(idx));
  }
  return {lo, hi};
}

inline Nat window_index_max(long long lo, long long hi) {
  Nat left = cell_index(lo), right = cell_index(hi);
  return left < right ? right : left;
}

}  // namespace kdetail

inline Prop1Bounds prop1_bounds(const TmSpec& spec, const std::vector<Nat>& xs, const Nat& r) {
  Configuration init = encode_args(xs);
  auto [lo, hi] = kdetail::initial_window(init);
  long long steps = static_cast<long long>(r.u64());
  Prop1Bounds out;
  out.a_max = kdetail::window_index_max(lo - steps, hi + steps);
  out.cells_max = Nat(init.beta.size()) + r;
  out.b_max = Nat(1);
  for (long long p = lo - steps; p <= hi + steps; ++p)
    out.b_max = out.b_max * pow(prime(cell_index(p)), Nat(spec.N));
  out.c_max = spec.M;
  return out;
}

inline bool prop1_holds(const Prop1Bounds& bounds, const Configuration& cfg) {
  if (bounds.a_max < cfg.a) return false;
  if (bounds.cells_max < Nat(cfg.beta.size())) return false;
  if (bounds.b_max < encode_tape(cfg)) return false;
  if (cfg.c > bounds.c_max) return false;
  return true;
}

// Replays a run and checks every configuration against the envelope at its
// own step index (the window grows by one cell per step, the product by its
// two boundary primes). Throws with the step index on any violation.
inline Nat validate_prop1(const TmSpec& spec, const std::vector<Nat>& xs,
                          std::uint64_t max_steps = kDefaultMaxSteps) {
  Configuration cfg = encode_args(xs);
  auto [lo, hi] = kdetail::initial_window(cfg);
  Prop1Bounds bounds;
  bounds.cells_max = Nat(cfg.beta.size());
  bounds.b_max = Nat(1);
  for (long long p = lo; p <= hi; ++p)
    bounds.b_max = bounds.b_max * pow(prime(cell_index(p)), Nat(spec.N));
  bounds.c_max = spec.M;
  std::uint64_t z = 0;
  while (true) {
    bounds.a_max = kdetail::window_index_max(lo, hi);
    if (!prop1_holds(bounds, cfg))
      throw Error("step-count envelope violated at step " + std::to_string(z));
    auto next = step(spec, cfg);
    if (!next) return Nat(z);
    if (z == max_steps)
      throw NonTermination("no terminal configuration within " + std::to_string(max_steps) +
                           " steps");
    cfg = std::move(*next);
    ++z;
    --lo;
    ++hi;
    bounds.b_max = bounds.b_max * pow(prime(cell_index(lo)), Nat(spec.N)) *
                   pow(prime(cell_index(hi)), Nat(spec.N));
    bounds.cells_max = bounds.cells_max + Nat(1);
  }
}

// ---- symbolic bounds and the compiler ------------------------------------

namespace kdetail {

inline Term stdref(const char* name) { return Term::ref(name); }

inline Term call(const char* name, std::vector<Term> args) {
  return Term::comp(stdref(name), std::move(args));
}

// the constant k as an n-ary term
inline Term constant(std::uint32_t n, std::uint64_t k) {
  Term t = Term::comp(Term::zero(), {Term::proj(n, 1)});
  for (std::uint64_t i = 0; i < k; ++i) t = Term::comp(Term::succ(), {t});
  return t;
}

inline Term add2(Term a, Term b) { return call("add", {std::move(a), std::move(b)}); }
inline Term mul2(Term a, Term b) { return call("mul", {std::move(a), std::move(b)}); }
inline Term sub2(Term a, Term b) { return call("sub", {std::move(a), std::move(b)}); }
inline Term eq2(Term a, Term b) { return call("eq", {std::move(a), std::move(b)}); }
inline Term nsign1(Term a) { return call("nsign", {std::move(a)}); }
inline Term cond3(Term t, Term a, Term b) {
  return call("cond", {std::move(t), std::move(a), std::move(b)});
}

inline Term sum_chain(std::uint32_t n, std::vector<Term> parts) {
  if (parts.empty()) return constant(n, 0);
  Term acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = add2(std::move(acc), std::move(parts[i]));
  return acc;
}

// cell index one move right / left of index term a, at ambient arity n
inline Term shift_right_index(std::uint32_t n, const Term& a) {
  Term even = eq2(call("mod", {a, constant(n, 2)}), constant(n, 0));
  return cond3(even, add2(a, constant(n, 2)),
               cond3(eq2(a, constant(n, 1)), constant(n, 0), sub2(a, constant(n, 2))));
}

inline Term shift_left_index(std::uint32_t n, const Term& a) {
  Term even = eq2(call("mod", {a, constant(n, 2)}), constant(n, 0));
  return cond3(even, cond3(eq2(a, constant(n, 0)), constant(n, 1), sub2(a, constant(n, 2))),
               add2(a, constant(n, 2)));
}

}  // namespace kdetail

struct YBoundParts {
  Term span;     // initial physical extent as a function of the arguments
  Term a_bound;  // reachable cell-index bound (doubles as the prime-index bound)
  Term b_bound;  // tape-code bound via the prime(j) <= 2^2^j overbound
  Term s_bound;  // configuration-code bound
  Term y;        // sigma2(step bound, s_bound)
};

inline YBoundParts y_bound_parts(const Term& B, const TmSpec& spec, const DefEnv& env) {
  if (classify(B, env) != Classification::PrimitiveRecursive)
    throw NotPrimitiveRecursive("step bound must be a primitive recursive term");
  std::uint32_t n = arity_check(B, env);
  using namespace kdetail;
  std::vector<Term> xs;
  for (std::uint32_t i = 1; i <= n; ++i) xs.push_back(Term::proj(n, i));
  YBoundParts parts;
  // head starts at sum(x_i) + 2n and nothing sits left of offset 0
  parts.span = add2(sum_chain(n, xs), constant(n, 2 * static_cast<std::uint64_t>(n)));
  parts.a_bound =
      add2(mul2(constant(n, 2), add2(parts.span, B)), constant(n, 2));
  Term two_pow_two_pow_j = call("pow", {constant(n, 2), call("pow", {constant(n, 2), parts.a_bound})});
  parts.b_bound = call("pow", {two_pow_two_pow_j,
                               mul2(constant(n, spec.N),
                                    Term::comp(Term::succ(), {parts.a_bound}))});
  parts.s_bound = call("sigma2", {call("sigma2", {parts.a_bound, parts.b_bound}),
                                  constant(n, spec.M)});
  parts.y = call("sigma2", {B, parts.s_bound});
  return parts;
}

inline Term step_bound_to_y_bound(const Term& B, const TmSpec& spec,
                                  const DefEnv& env = stdlib_env()) {
  return y_bound_parts(B, spec, env).y;
}

struct CompileResult {
  Term f;           // U applied to the bounded search over T
  Term next_cfg;    // unary: configuration code -> successor code, frozen at terminal
  Term init_cfg;    // n-ary: arguments -> initial configuration code
  Term kfun_term;   // (n+1)-ary: (arguments, z) -> z-th configuration code
  Term t_term;      // (n+1)-ary predicate T
  Term u_term;      // unary extractor U
  Term y_bound;     // n-ary search bound
  std::uint32_t arity = 0;
};

namespace kdetail {

// b with 0 replaced by 1 (empty tape), so prime-exponent reads stay total
inline Term safe_tape(const Term& b) { return add2(b, nsign1(b)); }

// unary: the machine's transition table unrolled over a configuration code
inline Term build_next_cfg(const TmSpec& spec) {
  const std::uint32_t n = 1;
  Term s = Term::proj(1, 1);
  Term a = call("sigma3_x", {s});
  Term b = call("sigma3_y", {s});
  Term c = call("sigma3_z", {s});
  Term sym = call("exponent_of", {safe_tape(b), a});
  std::vector<Term> parts;
  std::vector<Term> guards;
  for (const auto& [key, val] : spec.delta) {
    auto [q, sg] = key;
    auto [act, q2] = val;
    Term guard = mul2(eq2(c, constant(n, q)), eq2(sym, constant(n, sg)));
    Term a2 = a, b2 = b;
    switch (act.kind) {
      case Action::Write:
        b2 = mul2(call("div", {b, call("prime_pow", {a, sym})}),
                  call("prime_pow", {a, constant(n, act.sym)}));
        break;
      case Action::MoveLeft: a2 = shift_left_index(n, a); break;
      case Action::MoveRight: a2 = shift_right_index(n, a); break;
    }
    Term branch = call("sigma3", {a2, b2, constant(n, q2)});
    parts.push_back(mul2(guard, std::move(branch)));
    guards.push_back(std::move(guard));
  }
  parts.push_back(mul2(nsign1(sum_chain(n, guards)), s));  // terminal: freeze
  return sum_chain(n, std::move(parts));
}

// n-ary: code of the initial configuration for arguments x_1..x_n
inline Term build_init_cfg(const TmSpec& spec, std::uint32_t n) {
  std::vector<Term> xs;
  for (std::uint32_t i = 1; i <= n; ++i) xs.push_back(Term::proj(n, i));
  // words cover offsets 1..T, T = sum(x_i) + 2n - 1; head rests at T + 1
  Term t_extent = add2(sum_chain(n, xs), constant(n, 2 * static_cast<std::uint64_t>(n) - 1));
  Term head = mul2(constant(n, 2), Term::comp(Term::succ(), {t_extent}));

  // occupancy of offset p: 1 unless p is one of the n-1 inter-word gaps
  const std::uint32_t m = n + 1;  // ambient arity with p appended
  Term p_var = Term::proj(m, m);
  std::vector<Term> gap_hits;
  {
    // gap after word i sits at offset sum(x_1..x_i) + 2i
    Term acc = constant(m, 0);
    for (std::uint32_t i = 1; i + 1 <= n; ++i) {
      acc = add2(std::move(acc), Term::proj(m, i));
      Term gap = add2(acc, constant(m, 2 * static_cast<std::uint64_t>(i)));
      gap_hits.push_back(eq2(p_var, std::move(gap)));
    }
  }
  Term occupied = nsign1(sum_chain(m, std::move(gap_hits)));
  Term factor = cond3(occupied, call("prime", {mul2(constant(m, 2), p_var)}), constant(m, 1));

  // tape code = product of factor(p) over p = 1..T, by recursion on T
  const std::uint32_t h_ar = n + 2;
  std::vector<Term> lift;  // factor's arguments inside the recursion step
  for (std::uint32_t i = 1; i <= n; ++i) lift.push_back(Term::proj(h_ar, i));
  lift.push_back(Term::comp(Term::succ(), {Term::proj(h_ar, n + 1)}));  // p = z + 1
  Term step_factor = Term::comp(factor, std::move(lift));
  Term prod_rec = Term::rec(constant(n, 1), mul2(step_factor, Term::proj(h_ar, h_ar)));
  std::vector<Term> prod_args;
  for (std::uint32_t i = 1; i <= n; ++i) prod_args.push_back(Term::proj(n, i));
  prod_args.push_back(t_extent);
  Term tape = Term::comp(prod_rec, std::move(prod_args));

  (void)spec;
  return call("sigma3", {head, tape, constant(n, 1)});
}

// unary: 1 iff no transition applies to the coded configuration
inline Term build_is_terminal(const TmSpec& spec) {
  Term s = Term::proj(1, 1);
  Term a = call("sigma3_x", {s});
  Term b = call("sigma3_y", {s});
  Term c = call("sigma3_z", {s});
  Term sym = call("exponent_of", {safe_tape(b), a});
  std::vector<Term> guards;
  for (const auto& [key, val] : spec.delta) {
    (void)val;
    auto [q, sg] = key;
    guards.push_back(mul2(eq2(c, constant(1, q)), eq2(sym, constant(1, sg))));
  }
  return nsign1(sum_chain(1, std::move(guards)));
}

// unary: stroke-block length immediately left of the head, minus one
inline Term build_u_term() {
  Term s = call("sigma2_y", {Term::proj(1, 1)});
  // iterate the left shift: cells(y, d) = index of the cell d+1 moves left
  Term g = shift_left_index(1, call("sigma3_x", {s}));
  Term h = shift_left_index(3, Term::proj(3, 3));
  Term cells = Term::rec(std::move(g), std::move(h));  // binary: (y, d)
  Term b_lift = Term::comp(call("sigma3_y", {s}), {Term::proj(2, 1)});
  // predicate over (y, d): the cell d+1 left of the head is not a stroke
  Term not_stroke =
      nsign1(eq2(call("exponent_of", {safe_tape(b_lift), cells}), constant(2, 1)));
  Term block = Term::bounded_mu(std::move(not_stroke), Term::proj(1, 1));
  return call("pred", {std::move(block)});
}

}  // namespace kdetail

inline CompileResult theorem1_compile(const TmSpec& spec, const Term& B,
                                      const DefEnv& env = stdlib_env()) {
  if (classify(B, env) != Classification::PrimitiveRecursive)
    throw NotPrimitiveRecursive("step bound must be a primitive recursive term");
  std::uint32_t n = arity_check(B, env);
  using namespace kdetail;
  CompileResult out;
  out.arity = n;
  out.next_cfg = build_next_cfg(spec);
  out.init_cfg = build_init_cfg(spec, n);
  out.kfun_term =
      Term::rec(out.init_cfg, Term::comp(out.next_cfg, {Term::proj(n + 2, n + 2)}));

  Term y_var = Term::proj(n + 1, n + 1);
  Term r = call("sigma2_x", {y_var});
  Term s = call("sigma2_y", {y_var});
  std::vector<Term> kargs;
  for (std::uint32_t i = 1; i <= n; ++i) kargs.push_back(Term::proj(n + 1, i));
  kargs.push_back(r);
  Term ks = Term::comp(out.kfun_term, std::move(kargs));
  Term is_term = Term::comp(build_is_terminal(spec), {s});
  out.t_term = mul2(eq2(std::move(s), std::move(ks)), std::move(is_term));

  out.u_term = build_u_term();
  out.y_bound = y_bound_parts(B, spec, env).y;
  out.f = Term::comp(out.u_term, {Term::bounded_mu(out.t_term, out.y_bound)});
  arity_check(out.f, env);
  return out;
}

}  // namespace primrec
