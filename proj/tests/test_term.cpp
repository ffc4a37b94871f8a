#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "primrec/errors.hpp"
#include "primrec/term.hpp"
#include "primrec/term_io.hpp"

using namespace primrec;

TEST_CASE("arities of the initial functions and schemas") {
  DefEnv env;
  CHECK(arity_check(Term::succ(), env) == 1);
  CHECK(arity_check(Term::zero(), env) == 1);
  CHECK(arity_check(Term::proj(3, 2), env) == 3);

  Term add = Term::rec(Term::proj(1, 1), Term::comp(Term::succ(), {Term::proj(3, 3)}));
  CHECK(arity_check(add, env) == 2);

  Term bmu = Term::bounded_mu(add, Term::proj(1, 1));  // p binary, b unary
  CHECK(arity_check(bmu, env) == 1);

  Term mu = Term::mu(add);
  CHECK(arity_check(mu, env) == 1);
}

TEST_CASE("arity violations are rejected with a path") {
  DefEnv env;
  Term add = Term::rec(Term::proj(1, 1), Term::comp(Term::succ(), {Term::proj(3, 3)}));
  // comp: g binary but only one inner term
  Term bad1 = Term::comp(add, {Term::succ()});
  CHECK_THROWS_AS(arity_check(bad1, env), ArityMismatch);
  // comp: inner terms of differing arities
  Term bad2 = Term::comp(add, {Term::proj(2, 1), Term::proj(3, 1)});
  CHECK_THROWS_AS(arity_check(bad2, env), ArityMismatch);
  // rec: h must have arity n+2 when g has arity n
  Term bad3 = Term::rec(Term::proj(2, 1), Term::proj(2, 1));
  CHECK_THROWS_AS(arity_check(bad3, env), ArityMismatch);
  // bounded mu: bound arity must be p's arity minus one
  Term bad4 = Term::bounded_mu(add, add);
  CHECK_THROWS_AS(arity_check(bad4, env), ArityMismatch);
  try {
    arity_check(bad2, env);
    FAIL("expected mismatch");
  } catch (const ArityMismatch& e) {
    CHECK(!e.path.empty());
  }
}

TEST_CASE("projection bounds") {
  CHECK_THROWS_AS(Term::proj(3, 0), Error);
  CHECK_THROWS_AS(Term::proj(3, 4), Error);
  CHECK_THROWS_AS(Term::proj(0, 1), Error);  // no 0-ary terms anywhere
}

TEST_CASE("definition environment") {
  DefEnv env;
  env.define("id", Term::proj(1, 1));
  CHECK(env.contains("id"));
  CHECK(env.arity_of("id") == 1);
  CHECK_THROWS_AS(env.define("id", Term::succ()), Error);
  // references resolve only to earlier definitions: no cycles possible
  CHECK_THROWS_AS(env.define("loop", Term::comp(Term::ref("loop"), {Term::succ()})), UnresolvedRef);
  CHECK_THROWS_AS(arity_check(Term::ref("nope"), env), UnresolvedRef);
  env.define("wrap", Term::comp(Term::succ(), {Term::ref("id")}));
  CHECK(env.arity_of("wrap") == 1);
}

TEST_CASE("classification") {
  DefEnv env;
  Term add = Term::rec(Term::proj(1, 1), Term::comp(Term::succ(), {Term::proj(3, 3)}));
  CHECK(classify(Term::succ(), env) == Classification::PrimitiveRecursive);
  CHECK(classify(add, env) == Classification::PrimitiveRecursive);
  CHECK(classify(Term::bounded_mu(add, Term::proj(1, 1)), env) ==
        Classification::PrimitiveRecursive);
  CHECK(classify(Term::mu(add), env) == Classification::MuRecursive);
  // mu hiding behind a reference is still found
  env.define("search", Term::mu(add));
  CHECK(classify(Term::comp(Term::succ(), {Term::ref("search")}), env) ==
        Classification::MuRecursive);
}

TEST_CASE("bounded search substitution shape") {
  DefEnv env;
  Term add = Term::rec(Term::proj(1, 1), Term::comp(Term::succ(), {Term::proj(3, 3)}));
  Term p = add;               // stands in for a binary predicate
  Term b = Term::proj(1, 1);  // b(x) = x
  Term f = corollary_substitute(p, b, env);
  CHECK(arity_check(f, env) == 1);
  CHECK(classify(f, env) == Classification::PrimitiveRecursive);
  // shape: outer composition applying a bounded-mu term to (args..., bound)
  const auto& c = std::get<CompNode>(f.node().v);
  CHECK(std::holds_alternative<BoundedMuNode>(c.g.node().v));
  CHECK(c.hs.size() == 2);
  CHECK(structurally_equal(c.hs.back(), b));

  // binary b: arity carries through
  Term b2 = Term::comp(add, {Term::proj(2, 1), Term::proj(2, 2)});
  Term p2 = Term::comp(add, {Term::proj(3, 1), Term::proj(3, 3)});
  Term f2 = corollary_substitute(p2, b2, env);
  CHECK(arity_check(f2, env) == 2);

  CHECK_THROWS_AS(corollary_substitute(Term::succ(), Term::succ(), env), ArityMismatch);
}

TEST_CASE("parse and print round trip") {
  DefEnv env;
  std::vector<std::string> canonical{
      "S",
      "Z",
      "P[2,1]",
      "C[S; P[2,1]]",
      "C[add; P[2,2], P[2,1]]",
      "R[P[1,1]; C[S; P[3,3]]]",
      "BMU[p; b]",
      "MU[C[S; P[2,1]]]",
  };
  for (const auto& s : canonical) CHECK(to_text(parse_term(s)) == s);
  // whitespace and comments are noise
  CHECK(to_text(parse_term(" C[ S ;\n  P[ 2 , 1 ] ] # tail comment")) == "C[S; P[2,1]]");
  CHECK(structurally_equal(parse_term("C[S; P[2,1]]"), parse_term("C[S;P[2,1]]")));
  CHECK_FALSE(structurally_equal(parse_term("P[2,1]"), parse_term("P[2,2]")));
}

TEST_CASE("parse errors carry positions") {
  auto at = [](const std::string& src) {
    try {
      parse_term(src);
    } catch (const ParseError& e) {
      return static_cast<long>(e.position);
    }
    return -1L;
  };
  CHECK(at("C[S; ]") == 5);       // ']' where a term is expected
  CHECK(at("P[2 2]") == 4);       // missing comma
  CHECK(at("S extra") == 2);      // trailing tokens
  CHECK(at("MU[S") == 4);         // unterminated
  CHECK(at("C[S; @]") == 5);      // bad character
  CHECK_THROWS_AS(parse_term("DEF x = S"), ParseError);
}

TEST_CASE("definition files") {
  DefEnv env;
  parse_defs(
      "# identity and a wrapper\n"
      "DEF id = P[1,1]\n"
      "DEF bump = C[S; id]\n",
      env);
  CHECK(env.arity_of("id") == 1);
  CHECK(env.arity_of("bump") == 1);
  DefEnv env2;
  CHECK_THROWS_AS(parse_defs("DEF a = S\nDEF a = Z\n", env2), Error);
  DefEnv env3;
  CHECK_THROWS_AS(parse_defs("DEF a = C[S; S, S]\n", env3), ArityMismatch);
  DefEnv env4;
  CHECK_THROWS_AS(parse_defs("x = S", env4), ParseError);
}
