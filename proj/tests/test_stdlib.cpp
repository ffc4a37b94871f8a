#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>
#include <vector>

#include "primrec/errors.hpp"
#include "primrec/eval.hpp"
#include "primrec/stdlib_env.hpp"
#include "primrec/term.hpp"
#include "support/fidelity.hpp"

using namespace primrec;

namespace {

Nat run(const std::string& name, std::vector<Nat> args) {
  return eval_fast(Term::ref(name), args, stdlib_env(), stdlib_intrinsics());
}

}  // namespace

TEST_CASE("fixed values") {
  CHECK(run("add", {Nat(2), Nat(3)}) == Nat(5));
  CHECK(run("mul", {Nat(6), Nat(7)}) == Nat(42));
  CHECK(run("pow", {Nat(0), Nat(0)}) == Nat(1));
  CHECK(run("pred", {Nat(0)}) == Nat(0));
  CHECK(run("sub", {Nat(3), Nat(5)}) == Nat(0));
  CHECK(run("eq", {Nat(9), Nat(9)}) == Nat(1));
  CHECK(run("div", {Nat(7), Nat(2)}) == Nat(3));
  CHECK(run("mod", {Nat(7), Nat(2)}) == Nat(1));
  CHECK(run("div", {Nat(7), Nat(0)}) == Nat(0));
  CHECK(run("mod", {Nat(7), Nat(0)}) == Nat(7));
  CHECK(run("divides", {Nat(3), Nat(12)}) == Nat(1));
  CHECK(run("divides", {Nat(5), Nat(12)}) == Nat(0));
  CHECK(run("cond", {Nat(5), Nat(8), Nat(9)}) == Nat(8));
  CHECK(run("cond", {Nat(0), Nat(8), Nat(9)}) == Nat(9));
  CHECK(run("prime", {Nat(4)}) == Nat(11));
  CHECK(run("exponent_of", {Nat(1458), Nat(1)}) == Nat(6));
  CHECK(run("sigma2", {Nat(2), Nat(1)}) == Nat(11));
  CHECK(run("sigma2_x", {Nat(9)}) == Nat(1));
  CHECK(run("sigma2_y", {Nat(9)}) == Nat(2));
  CHECK(run("sigma3", {Nat(1), Nat(1), Nat(1)}) == Nat(95));
  CHECK(run("sigma3_x", {Nat(95)}) == Nat(1));
  CHECK(run("sigma3_y", {Nat(95)}) == Nat(1));
  CHECK(run("sigma3_z", {Nat(95)}) == Nat(1));
}

TEST_CASE("every entry is a primitive recursive closed term") {
  const DefEnv& env = stdlib_env();
  for (const auto& [name, body] : env.entries()) {
    CAPTURE(name);
    CHECK(classify(body, env) == Classification::PrimitiveRecursive);
    CHECK(classify(Term::ref(name), env) == Classification::PrimitiveRecursive);
  }
  CHECK(stdlib_intrinsics().size() == env.entries().size());
}

TEST_CASE("honest agreement per sampling plan") {
  // light pass here (acceptance runs the full 200-per-entry version)
  for (const auto& plan : fidelity::plans()) {
    auto out = fidelity::run_plan(plan, 25);
    INFO(out.detail);
    CHECK(out.failures == 0);
    CHECK(out.tuples == 25);
  }
}

TEST_CASE("all entries have a plan") {
  auto ps = fidelity::plans();
  const DefEnv& env = stdlib_env();
  CHECK(ps.size() == env.entries().size());
  for (const auto& p : ps) CHECK(env.contains(p.name));
}

TEST_CASE("bounded search substitution matches a literal scan") {
  const DefEnv& env = stdlib_env();
  const IntrinsicTable& tab = stdlib_intrinsics();

  // p(x,y) = [y >= x], b(x) = x: least y <= x with y >= x is x itself
  Term p1 = Term::ref("le");
  Term f1 = corollary_substitute(p1, Term::proj(1, 1), env);
  CHECK(eval_fast(f1, {Nat(4)}, env, tab) == Nat(4));
  for (std::uint64_t x = 0; x < 9; ++x) CHECK(eval_fast(f1, {Nat(x)}, env, tab) == Nat(x));

  // p never true: value 0 by convention
  Term p2 = Term::comp(Term::zero(), {Term::proj(2, 1)});
  Term f2 = corollary_substitute(p2, Term::proj(1, 1), env);
  for (std::uint64_t x = 0; x < 11; ++x) CHECK(eval_fast(f2, {Nat(x)}, env, tab) == Nat(0));

  // p(x,y) = [y*y >= x], b(x) = x
  Term ysq = Term::comp(Term::ref("mul"), {Term::proj(2, 2), Term::proj(2, 2)});
  Term p3 = Term::comp(Term::ref("le"), {Term::proj(2, 1), ysq});
  Term f3 = corollary_substitute(p3, Term::proj(1, 1), env);
  CHECK(eval_fast(f3, {Nat(10)}, env, tab) == Nat(4));
  CHECK(eval_fast(f3, {Nat(0)}, env, tab) == Nat(0));
  CHECK(eval_fast(f3, {Nat(1)}, env, tab) == Nat(1));
  CHECK(eval_fast(f3, {Nat(2)}, env, tab) == Nat(2));
  CHECK(eval_fast(f3, {Nat(5)}, env, tab) == Nat(3));

  // sampled family: p(x,y) = [a*y + c >= x] for a,c in 0..4, b(x) = x,
  // against a direct scan of the predicate
  auto const_term = [](std::uint64_t k) {
    // k as a unary term (composite of k successors over zero)
    Term t = Term::comp(Term::zero(), {Term::proj(2, 1)});
    for (std::uint64_t j = 0; j < k; ++j) t = Term::comp(Term::succ(), {t});
    return t;
  };
  std::mt19937_64 rng(99);
  for (int inst = 0; inst < 12; ++inst) {
    std::uint64_t a = rng() % 5, c = rng() % 5;
    Term ay = Term::comp(Term::ref("mul"), {const_term(a), Term::proj(2, 2)});
    Term val = Term::comp(Term::ref("add"), {ay, const_term(c)});
    Term p = Term::comp(Term::ref("le"), {Term::proj(2, 1), val});
    Term f = corollary_substitute(p, Term::proj(1, 1), env);
    CHECK(classify(f, env) == Classification::PrimitiveRecursive);
    for (std::uint64_t x = 0; x < 8; ++x) {
      std::uint64_t expect = 0;
      for (std::uint64_t y = 0; y <= x; ++y)
        if (a * y + c >= x) {
          expect = y;
          break;
        }
      CHECK(eval_fast(f, {Nat(x)}, env, tab) == Nat(expect));
      CHECK(eval_honest(f, {Nat(x)}, env) == Nat(expect));
    }
  }
}
