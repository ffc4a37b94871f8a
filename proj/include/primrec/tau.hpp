#pragma once

// Step-count calculus: measured step counts for the builder machines, fitted
// linear bounds for the initial-function machines, and the recurrences that
// push bounds through composition and primitive recursion. Bounds are PR
// terms; they need not be tight, only dominating on their verification sweep.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "primrec/errors.hpp"
#include "primrec/eval.hpp"
#include "primrec/kleene.hpp"
#include "primrec/nat.hpp"
#include "primrec/stdlib_env.hpp"
#include "primrec/term.hpp"
#include "primrec/tm.hpp"

namespace primrec {

enum class TauProvenance { MeasuredFit, CompositionRule, RecursionRule, Constant };

struct TauBound {
  Term term;
  TauProvenance provenance;
};

// Exact step count of the halting run; output decoding never enters into it.
inline Nat measure_steps(const TmSpec& spec, const std::vector<Nat>& xs,
                         std::uint64_t max_steps = kDefaultMaxSteps) {
  Configuration cfg = encode_args(xs);
  std::uint64_t z = 0;
  while (auto nx = step(spec, cfg)) {
    if (++z > max_steps)
      throw NonTermination("no terminal configuration within " + std::to_string(max_steps) +
                           " steps");
    cfg = std::move(*nx);
  }
  return Nat(z);
}

struct InitialZ {};
struct InitialS {};
struct InitialProj {
  std::uint32_t n = 1;
  std::uint32_t i = 1;
};
using InitialFunction = std::variant<InitialZ, InitialS, InitialProj>;

namespace taudetail {

// c1 * size + c0 at the given arity
inline Term linear_term(std::uint32_t n, std::uint64_t c1, std::uint64_t c0, Term size) {
  using namespace kdetail;
  return add2(mul2(constant(n, c1), std::move(size)), constant(n, c0));
}

inline std::vector<std::vector<Nat>> sweep_tuples(std::uint32_t n, std::uint64_t limit) {
  std::vector<std::vector<Nat>> out;
  std::vector<std::uint64_t> odo(n, 0);
  while (true) {
    std::vector<Nat> tup;
    for (auto v : odo) tup.push_back(Nat(v));
    out.push_back(std::move(tup));
    std::uint32_t k = 0;
    while (k < n && odo[k] == limit) odo[k++] = 0;
    if (k == n) return out;
    ++odo[k];
  }
}

// fit from the two smallest measurements, verify on the sweep, double the
// slope on violation
inline TauBound fit_linear(const TmSpec& spec, std::uint32_t n, const Term& size_term,
                           const std::vector<Nat>& point0, const std::vector<Nat>& point1,
                           std::uint64_t size0, const std::vector<std::vector<Nat>>& sweep,
                           const DefEnv& env, const IntrinsicTable& intr) {
  std::uint64_t m0 = measure_steps(spec, point0).u64();
  std::uint64_t m1 = measure_steps(spec, point1).u64();
  std::uint64_t c1 = m1 > m0 ? m1 - m0 : 1;
  std::uint64_t c0 = m0 > c1 * size0 ? m0 - c1 * size0 : 0;
  for (int rounds = 0; rounds < 32; ++rounds) {
    Term bound = linear_term(n, c1, c0, size_term);
    bool ok = true;
    for (const auto& xs : sweep) {
      if (eval_fast(bound, xs, env, intr) < measure_steps(spec, xs)) {
        ok = false;
        break;
      }
    }
    if (ok) return TauBound{bound, TauProvenance::MeasuredFit};
    c1 *= 2;
  }
  throw FitFailed("linear bound still violated after 32 slope doublings");
}

}  // namespace taudetail

inline TauBound tau_initial(const InitialFunction& which) {
  using namespace kdetail;
  DefEnv env = stdlib_env();
  IntrinsicTable intr = stdlib_intrinsics();
  if (std::holds_alternative<InitialZ>(which))
    return TauBound{constant(1, 3), TauProvenance::Constant};
  if (std::holds_alternative<InitialS>(which)) {
    // size = the argument value; sweep far enough to expose the slope
    std::vector<std::vector<Nat>> sweep;
    for (std::uint64_t x = 0; x <= 30; ++x) sweep.push_back({Nat(x)});
    return taudetail::fit_linear(successor_machine(), 1, Term::proj(1, 1), {Nat(0)}, {Nat(1)},
                                 0, sweep, env, intr);
  }
  auto p = std::get<InitialProj>(which);
  TmSpec spec = projection_machine(p.n, p.i);
  // size = total length of the input words = sum(x_j) + n
  std::vector<Term> projs;
  for (std::uint32_t j = 1; j <= p.n; ++j) projs.push_back(Term::proj(p.n, j));
  Term size = add2(sum_chain(p.n, std::move(projs)), constant(p.n, p.n));
  std::vector<Nat> point0(p.n, Nat(0));
  std::vector<Nat> point1 = point0;
  point1[0] = Nat(1);
  std::uint64_t limit = p.n <= 3 ? 5 : 2;
  return taudetail::fit_linear(spec, p.n, size, point0, point1, p.n,
                               taudetail::sweep_tuples(p.n, limit), env, intr);
}

// tau_F for F = G(H_1, ..., H_m): tau_G at the H-values plus the cost of
// computing every H_i.
inline TauBound tau_compose(const TauBound& tau_g, const std::vector<TauBound>& tau_hs,
                            const std::vector<Term>& hs, const DefEnv& env = stdlib_env()) {
  if (tau_hs.size() != hs.size() || hs.empty())
    throw ArityMismatch("composition cost", "inner bound count does not match inner terms");
  std::uint32_t m = arity_check(tau_g.term, env);
  if (m != hs.size())
    throw ArityMismatch("composition cost", "outer bound arity does not match inner count");
  std::uint32_t n = arity_check(hs[0], env);
  for (const Term& h : hs)
    if (arity_check(h, env) != n)
      throw ArityMismatch("composition cost", "inner terms disagree on arity");
  for (const TauBound& th : tau_hs)
    if (arity_check(th.term, env) != n)
      throw ArityMismatch("composition cost", "inner bound arity does not match inner terms");
  if (classify(tau_g.term, env) != Classification::PrimitiveRecursive)
    throw NotPrimitiveRecursive("outer bound is not primitive recursive");
  for (const TauBound& th : tau_hs)
    if (classify(th.term, env) != Classification::PrimitiveRecursive)
      throw NotPrimitiveRecursive("inner bound is not primitive recursive");
  using namespace kdetail;
  Term acc = Term::comp(tau_g.term, hs);
  for (const TauBound& th : tau_hs) acc = add2(std::move(acc), th.term);
  return TauBound{acc, TauProvenance::CompositionRule};
}

// tau_F for F = rec(G, H): tau_G(x) plus the running sum of tau_H at every
// recursion stage, including the cost argument F(x, y) itself.
inline TauBound tau_recursion(const TauBound& tau_g, const TauBound& tau_h, const Term& f,
                              const DefEnv& env = stdlib_env()) {
  std::uint32_t n = arity_check(tau_g.term, env);
  if (arity_check(tau_h.term, env) != n + 2)
    throw ArityMismatch("recursion cost", "step bound arity must exceed base arity by two");
  if (arity_check(f, env) != n + 1)
    throw ArityMismatch("recursion cost", "function arity must exceed base arity by one");
  if (classify(tau_g.term, env) != Classification::PrimitiveRecursive ||
      classify(tau_h.term, env) != Classification::PrimitiveRecursive)
    throw NotPrimitiveRecursive("cost bounds must be primitive recursive");
  using namespace kdetail;
  const std::uint32_t h_ar = n + 2;
  std::vector<Term> head;  // x-bar and the stage counter, lifted into the step
  for (std::uint32_t i = 1; i <= n + 1; ++i) head.push_back(Term::proj(h_ar, i));
  std::vector<Term> th_args = head;
  th_args.push_back(Term::comp(f, head));
  Term stage_cost = Term::comp(tau_h.term, std::move(th_args));
  Term h = add2(Term::proj(h_ar, h_ar), std::move(stage_cost));
  return TauBound{Term::rec(tau_g.term, std::move(h)), TauProvenance::RecursionRule};
}

struct BoundCheckLine {
  std::vector<Nat> xs;
  Nat measured;
  Nat bound;
  bool ok = false;
};

struct BoundCheckReport {
  std::vector<BoundCheckLine> lines;
  std::size_t violations = 0;

  std::string text() const {
    std::string out;
    for (const auto& line : lines) {
      for (std::size_t i = 0; i < line.xs.size(); ++i)
        out += (i ? "," : "") + line.xs[i].str();
      out += "  " + line.measured.str() + "  " + line.bound.str() + "  " +
             (line.ok ? "OK" : "VIOLATION") + "\n";
    }
    out += std::to_string(violations) + " violations in " + std::to_string(lines.size()) +
           " samples\n";
    return out;
  }
};

inline BoundCheckReport check_bound(const TmSpec& spec, const Term& bound,
                                    const std::vector<std::vector<Nat>>& samples,
                                    const DefEnv& env = stdlib_env()) {
  if (classify(bound, env) != Classification::PrimitiveRecursive)
    throw NotPrimitiveRecursive("step bound must be a primitive recursive term");
  IntrinsicTable intr = stdlib_intrinsics();
  BoundCheckReport report;
  for (const auto& xs : samples) {
    BoundCheckLine line;
    line.xs = xs;
    line.measured = measure_steps(spec, xs);
    line.bound = eval_fast(bound, xs, env, intr);
    line.ok = !(line.bound < line.measured);
    if (!line.ok) ++report.violations;
    report.lines.push_back(std::move(line));
  }
  return report;
}

}  // namespace primrec
