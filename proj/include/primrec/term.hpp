#pragma once

// Terms of the recursive-function calculus. A term denotes a function
// N^n -> N built from the initial functions (successor S, the constant-zero
// function Z, projections P[n,i]) by composition C, primitive recursion R,
// bounded minimization BMU, unbounded minimization MU, and references into an
// ordered definition environment.
//
// Every term has arity >= 1; there are no nullary terms. Constants are unary
// functions that ignore their argument.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "primrec/errors.hpp"
#include "primrec/nat.hpp"

namespace primrec {

struct TermNode;

class Term {
 public:
  Term() = default;  // empty; only containers should see this state

  static Term succ();
  static Term zero();
  static Term proj(std::uint32_t n, std::uint32_t i);
  static Term comp(Term g, std::vector<Term> hs);
  static Term rec(Term g, Term h);
  static Term bounded_mu(Term p, Term b);
  static Term mu(Term p);
  static Term ref(std::string name);

  bool valid() const { return static_cast<bool>(n_); }
  const TermNode& node() const { return *n_; }
  const TermNode* id() const { return n_.get(); }  // stable identity for caches

 private:
  explicit Term(std::shared_ptr<const TermNode> n) : n_(std::move(n)) {}
  std::shared_ptr<const TermNode> n_;
};

struct SuccNode {};
struct ZeroNode {};
struct ProjNode {
  std::uint32_t n, i;  // 1 <= i <= n
};
struct CompNode {
  Term g;
  std::vector<Term> hs;
};
struct RecNode {
  Term g, h;  // f(x.., 0) = g(x..); f(x.., y+1) = h(x.., y, f(x.., y))
};
struct BoundedMuNode {
  Term p, b;  // least y <= b(x..) with p(x.., y) != 0, else 0
};
struct MuNode {
  Term p;  // least y with p(x.., y) != 0; scans unboundedly
};
struct RefNode {
  std::string name;
};

struct TermNode {
  std::variant<SuccNode, ZeroNode, ProjNode, CompNode, RecNode, BoundedMuNode, MuNode, RefNode> v;
};

inline Term Term::succ() { return Term(std::make_shared<TermNode>(TermNode{SuccNode{}})); }
inline Term Term::zero() { return Term(std::make_shared<TermNode>(TermNode{ZeroNode{}})); }
inline Term Term::proj(std::uint32_t n, std::uint32_t i) {
  if (n == 0) throw Error("projection arity must be positive (there are no 0-ary terms)");
  if (i == 0 || i > n)
    throw Error("projection index " + std::to_string(i) + " outside 1.." + std::to_string(n));
  return Term(std::make_shared<TermNode>(TermNode{ProjNode{n, i}}));
}
inline Term Term::comp(Term g, std::vector<Term> hs) {
  return Term(std::make_shared<TermNode>(TermNode{CompNode{std::move(g), std::move(hs)}}));
}
inline Term Term::rec(Term g, Term h) {
  return Term(std::make_shared<TermNode>(TermNode{RecNode{std::move(g), std::move(h)}}));
}
inline Term Term::bounded_mu(Term p, Term b) {
  return Term(std::make_shared<TermNode>(TermNode{BoundedMuNode{std::move(p), std::move(b)}}));
}
inline Term Term::mu(Term p) {
  return Term(std::make_shared<TermNode>(TermNode{MuNode{std::move(p)}}));
}
inline Term Term::ref(std::string name) {
  return Term(std::make_shared<TermNode>(TermNode{RefNode{std::move(name)}}));
}

// Ordered, append-only definition environment. A definition may reference
// only names already present, which keeps the graph acyclic by construction.
class DefEnv {
 public:
  void define(const std::string& name, const Term& t);  // arity-checks (below)

  const Term* find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &entries_[it->second].second;
  }
  bool contains(const std::string& name) const { return index_.count(name) != 0; }
  std::uint32_t arity_of(const std::string& name) const {
    auto it = arity_.find(name);
    if (it == arity_.end()) throw UnresolvedRef("unresolved reference: " + name);
    return it->second;
  }
  const std::vector<std::pair<std::string, Term>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, Term>> entries_;
  std::map<std::string, std::size_t> index_;
  std::map<std::string, std::uint32_t> arity_;
};

namespace detail {

inline std::uint32_t arity_walk(const Term& t, const DefEnv& env, const std::string& path) {
  if (!t.valid()) throw ArityMismatch(path, "empty term");
  const TermNode& n = t.node();
  if (std::holds_alternative<SuccNode>(n.v) || std::holds_alternative<ZeroNode>(n.v)) return 1;
  if (const auto* p = std::get_if<ProjNode>(&n.v)) {
    if (p->n < 1 || p->i < 1 || p->i > p->n)
      throw ArityMismatch(path, "projection P[" + std::to_string(p->n) + "," +
                                    std::to_string(p->i) + "] out of range");
    return p->n;
  }
  if (const auto* c = std::get_if<CompNode>(&n.v)) {
    std::uint32_t ag = arity_walk(c->g, env, path + ".g");
    if (c->hs.empty()) throw ArityMismatch(path, "composition with no inner terms");
    if (ag != c->hs.size())
      throw ArityMismatch(path, "outer arity " + std::to_string(ag) + " != " +
                                    std::to_string(c->hs.size()) + " inner terms");
    std::uint32_t an = 0;
    for (std::size_t k = 0; k < c->hs.size(); ++k) {
      std::uint32_t a = arity_walk(c->hs[k], env, path + ".hs[" + std::to_string(k) + "]");
      if (k == 0)
        an = a;
      else if (a != an)
        throw ArityMismatch(path + ".hs[" + std::to_string(k) + "]",
                            "inner arities disagree (" + std::to_string(an) + " vs " +
                                std::to_string(a) + ")");
    }
    return an;
  }
  if (const auto* r = std::get_if<RecNode>(&n.v)) {
    std::uint32_t ag = arity_walk(r->g, env, path + ".g");
    std::uint32_t ah = arity_walk(r->h, env, path + ".h");
    if (ah != ag + 2)
      throw ArityMismatch(path, "recursion step arity " + std::to_string(ah) + " != base + 2 (" +
                                    std::to_string(ag + 2) + ")");
    return ag + 1;
  }
  if (const auto* b = std::get_if<BoundedMuNode>(&n.v)) {
    std::uint32_t ap = arity_walk(b->p, env, path + ".p");
    std::uint32_t ab = arity_walk(b->b, env, path + ".b");
    if (ap != ab + 1)
      throw ArityMismatch(path, "bounded-mu predicate arity " + std::to_string(ap) +
                                    " != bound arity + 1 (" + std::to_string(ab + 1) + ")");
    return ab;
  }
  if (const auto* m = std::get_if<MuNode>(&n.v)) {
    std::uint32_t ap = arity_walk(m->p, env, path + ".p");
    if (ap < 2) throw ArityMismatch(path, "mu predicate must have arity >= 2");
    return ap - 1;
  }
  const auto& ref = std::get<RefNode>(n.v);
  if (!env.contains(ref.name)) throw UnresolvedRef("unresolved reference: " + ref.name);
  return env.arity_of(ref.name);
}

}  // namespace detail

inline std::uint32_t arity_check(const Term& t, const DefEnv& env) {
  return detail::arity_walk(t, env, "root");
}

inline void DefEnv::define(const std::string& name, const Term& t) {
  if (contains(name)) throw Error("duplicate definition: " + name);
  std::uint32_t a = arity_check(t, *this);  // also rejects forward/unknown refs
  index_[name] = entries_.size();
  entries_.emplace_back(name, t);
  arity_[name] = a;
}

enum class Classification { PrimitiveRecursive, MuRecursive };

inline Classification classify(const Term& t, const DefEnv& env) {
  bool saw_mu = false;
  std::vector<const TermNode*> stack{t.id()};
  std::map<std::string, bool> visited_refs;
  while (!stack.empty() && !saw_mu) {
    const TermNode* n = stack.back();
    stack.pop_back();
    if (!n) continue;
    if (std::holds_alternative<MuNode>(n->v)) {
      saw_mu = true;
    } else if (const auto* c = std::get_if<CompNode>(&n->v)) {
      stack.push_back(c->g.id());
      for (const Term& h : c->hs) stack.push_back(h.id());
    } else if (const auto* r = std::get_if<RecNode>(&n->v)) {
      stack.push_back(r->g.id());
      stack.push_back(r->h.id());
    } else if (const auto* b = std::get_if<BoundedMuNode>(&n->v)) {
      stack.push_back(b->p.id());
      stack.push_back(b->b.id());
    } else if (const auto* ref = std::get_if<RefNode>(&n->v)) {
      if (!visited_refs[ref->name]) {
        visited_refs[ref->name] = true;
        const Term* body = env.find(ref->name);
        if (!body) throw UnresolvedRef("unresolved reference: " + ref->name);
        stack.push_back(body->id());
      }
    }
  }
  return saw_mu ? Classification::MuRecursive : Classification::PrimitiveRecursive;
}

// Bounded search with a computed bound, built exactly as in the classical
// corollary: h(x.., k) = least y <= k with p(x.., y), then substitute the
// bound function into k's slot by composition.
inline Term corollary_substitute(const Term& p, const Term& b, const DefEnv& env) {
  std::uint32_t ap = arity_check(p, env);
  std::uint32_t ab = arity_check(b, env);
  if (ap != ab + 1)
    throw ArityMismatch("root", "predicate arity " + std::to_string(ap) +
                                    " != bound arity + 1 (" + std::to_string(ab + 1) + ")");
  std::uint32_t n = ab;
  // p lifted to (x.., k, y) |-> p(x.., y): ignores the bound slot.
  std::vector<Term> lift;
  for (std::uint32_t j = 1; j <= n; ++j) lift.push_back(Term::proj(n + 2, j));
  lift.push_back(Term::proj(n + 2, n + 2));
  Term p_lift = Term::comp(p, std::move(lift));
  Term h = Term::bounded_mu(p_lift, Term::proj(n + 1, n + 1));
  std::vector<Term> outer;
  for (std::uint32_t j = 1; j <= n; ++j) outer.push_back(Term::proj(n, j));
  outer.push_back(b);
  return Term::comp(h, std::move(outer));
}

}  // namespace primrec
