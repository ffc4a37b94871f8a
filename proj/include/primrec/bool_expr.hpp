#pragma once

// Boolean expressions over variables e1, e2, ..., their prime-power numbering
// over the symbol alphabet, and the exhaustive truth-table satisfiability
// decider. ASCII surface syntax: `!E`, `(E|F)`, `(E&F)`; binary connectives
// always carry their parentheses, negation never does.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "primrec/codec.hpp"
#include "primrec/errors.hpp"
#include "primrec/nat.hpp"

namespace primrec {

struct BoolExpr;
using BoolExprPtr = std::shared_ptr<const BoolExpr>;

struct BoolExpr {
  enum Kind { Var, Not, Or, And } kind;
  std::uint64_t var = 0;  // Var only, >= 1
  BoolExprPtr lhs, rhs;   // Not uses lhs alone

  friend bool operator==(const BoolExpr& a, const BoolExpr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case Var: return a.var == b.var;
      case Not: return *a.lhs == *b.lhs;
      default: return *a.lhs == *b.lhs && *a.rhs == *b.rhs;
    }
  }
  friend bool operator!=(const BoolExpr& a, const BoolExpr& b) { return !(a == b); }
};

inline BoolExprPtr bvar(std::uint64_t i) {
  if (i == 0) throw ZeroInput("variable indices start at 1");
  auto e = std::make_shared<BoolExpr>();
  e->kind = BoolExpr::Var;
  e->var = i;
  return e;
}

inline BoolExprPtr bnot(BoolExprPtr sub) {
  auto e = std::make_shared<BoolExpr>();
  e->kind = BoolExpr::Not;
  e->lhs = std::move(sub);
  return e;
}

inline BoolExprPtr bbin(BoolExpr::Kind k, BoolExprPtr l, BoolExprPtr r) {
  auto e = std::make_shared<BoolExpr>();
  e->kind = k;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

inline BoolExprPtr bor(BoolExprPtr l, BoolExprPtr r) {
  return bbin(BoolExpr::Or, std::move(l), std::move(r));
}
inline BoolExprPtr band(BoolExprPtr l, BoolExprPtr r) {
  return bbin(BoolExpr::And, std::move(l), std::move(r));
}

inline std::string bool_to_text(const BoolExprPtr& e) {
  switch (e->kind) {
    case BoolExpr::Var: return "e" + std::to_string(e->var);
    case BoolExpr::Not: return "!" + bool_to_text(e->lhs);
    case BoolExpr::Or: return "(" + bool_to_text(e->lhs) + "|" + bool_to_text(e->rhs) + ")";
    default: return "(" + bool_to_text(e->lhs) + "&" + bool_to_text(e->rhs) + ")";
  }
}

namespace booldetail {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  BoolExprPtr parse() {
    BoolExprPtr e = expr();
    skip_ws();
    if (pos_ < text_.size())
      throw ParseError(pos_, "trailing input after expression");
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  BoolExprPtr expr() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of input");
    char c = text_[pos_];
    if (c == '!') {
      ++pos_;
      return bnot(expr());
    }
    if (c == '(') {
      ++pos_;
      BoolExprPtr l = expr();
      skip_ws();
      if (pos_ >= text_.size() || (text_[pos_] != '|' && text_[pos_] != '&'))
        throw ParseError(pos_, "expected '|' or '&' inside parentheses");
      char op = text_[pos_++];
      BoolExprPtr r = expr();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')')
        throw ParseError(pos_, "expected closing parenthesis");
      ++pos_;
      return bbin(op == '|' ? BoolExpr::Or : BoolExpr::And, std::move(l), std::move(r));
    }
    if (c == 'e') {
      std::size_t at = pos_++;
      std::uint64_t i = 0;
      bool any = false;
      while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
        i = i * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
        if (i > 1000000000ull) throw ParseError(at, "variable index too large");
        ++pos_;
        any = true;
      }
      if (!any) throw ParseError(at, "expected digits after 'e'");
      if (i == 0) throw ParseError(at, "variable indices start at 1");
      return bvar(i);
    }
    throw ParseError(pos_, "expected expression");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace booldetail

inline BoolExprPtr parse_bool(const std::string& text) {
  return booldetail::Parser(text).parse();
}

// ---- symbol numbering ----------------------------------------------------

struct BoolSym {
  enum Kind { NotSym, OrSym, AndSym, LParen, RParen, Variable } kind;
  std::uint64_t index = 0;  // Variable only
};

inline Nat sn(const BoolSym& s) {
  switch (s.kind) {
    case BoolSym::NotSym: return Nat(1);
    case BoolSym::OrSym: return Nat(2);
    case BoolSym::AndSym: return Nat(3);
    case BoolSym::LParen: return Nat(4);
    case BoolSym::RParen: return Nat(5);
    default: return Nat(5 + s.index);
  }
}

inline void symbol_sequence(const BoolExprPtr& e, std::vector<BoolSym>& out) {
  switch (e->kind) {
    case BoolExpr::Var:
      out.push_back({BoolSym::Variable, e->var});
      return;
    case BoolExpr::Not:
      out.push_back({BoolSym::NotSym, 0});
      symbol_sequence(e->lhs, out);
      return;
    default:
      out.push_back({BoolSym::LParen, 0});
      symbol_sequence(e->lhs, out);
      out.push_back({e->kind == BoolExpr::Or ? BoolSym::OrSym : BoolSym::AndSym, 0});
      symbol_sequence(e->rhs, out);
      out.push_back({BoolSym::RParen, 0});
      return;
  }
}

inline std::vector<BoolSym> symbol_sequence(const BoolExprPtr& e) {
  std::vector<BoolSym> out;
  symbol_sequence(e, out);
  return out;
}

// Goedel number: the i-th symbol rides on the i-th prime, starting at 2.
inline Nat gn(const BoolExprPtr& e) {
  Nat out(1);
  std::uint64_t k = 0;
  for (const BoolSym& s : symbol_sequence(e)) out = out * pow(prime(Nat(k++)), sn(s));
  return out;
}

// Inverse where one exists; anything else is simply not a code.
inline std::optional<BoolExprPtr> decode_gn(const Nat& x) {
  if (x < Nat(2)) return std::nullopt;
  Nat rest = x;
  std::vector<std::uint64_t> codes;
  for (std::uint64_t k = 0; rest > Nat(1); ++k) {
    if (k > 4096) return std::nullopt;  // longer than any plausible expression
    Nat e = exponent_of(rest, Nat(k));
    if (e == Nat(0)) return std::nullopt;  // gap, or a factor off the prime tail
    if (!e.fits_u64()) return std::nullopt;
    rest = rest / pow(prime(Nat(k)), e);
    codes.push_back(e.u64());
  }
  // strict grammar parse over the decoded symbol string
  std::size_t at = 0;
  struct Rec {
    const std::vector<std::uint64_t>& cs;
    std::size_t& at;
    BoolExprPtr operator()() {
      if (at >= cs.size()) return nullptr;
      std::uint64_t c = cs[at];
      if (c >= 6) {
        ++at;
        return bvar(c - 5);
      }
      if (c == 1) {
        ++at;
        BoolExprPtr sub = (*this)();
        return sub ? bnot(std::move(sub)) : nullptr;
      }
      if (c == 4) {
        ++at;
        BoolExprPtr l = (*this)();
        if (!l || at >= cs.size() || (cs[at] != 2 && cs[at] != 3)) return nullptr;
        BoolExpr::Kind k = cs[at] == 2 ? BoolExpr::Or : BoolExpr::And;
        ++at;
        BoolExprPtr r = (*this)();
        if (!r || at >= cs.size() || cs[at] != 5) return nullptr;
        ++at;
        return bbin(k, std::move(l), std::move(r));
      }
      return nullptr;
    }
  };
  BoolExprPtr e = Rec{codes, at}();
  if (!e || at != codes.size()) return std::nullopt;
  return e;
}

// ---- satisfiability ------------------------------------------------------

inline bool eval_bool(const BoolExprPtr& e, const std::map<std::uint64_t, bool>& vals) {
  switch (e->kind) {
    case BoolExpr::Var: {
      auto it = vals.find(e->var);
      return it != vals.end() && it->second;
    }
    case BoolExpr::Not: return !eval_bool(e->lhs, vals);
    case BoolExpr::Or: return eval_bool(e->lhs, vals) || eval_bool(e->rhs, vals);
    default: return eval_bool(e->lhs, vals) && eval_bool(e->rhs, vals);
  }
}

inline std::set<std::uint64_t> variables(const BoolExprPtr& e) {
  std::set<std::uint64_t> out;
  std::vector<const BoolExpr*> stack{e.get()};
  while (!stack.empty()) {
    const BoolExpr* cur = stack.back();
    stack.pop_back();
    if (cur->kind == BoolExpr::Var)
      out.insert(cur->var);
    else {
      stack.push_back(cur->lhs.get());
      if (cur->kind != BoolExpr::Not) stack.push_back(cur->rhs.get());
    }
  }
  return out;
}

struct SatResult {
  bool satisfiable = false;
  // first satisfying assignment in mask order, pairs (variable, value)
  std::vector<std::pair<std::uint64_t, bool>> assignment;
};

inline SatResult truth_table_sat(const BoolExprPtr& e) {
  std::set<std::uint64_t> var_set = variables(e);
  if (var_set.size() > 20)
    throw TooManyVariables("truth table over " + std::to_string(var_set.size()) +
                           " variables exceeds the 20-variable guard");
  std::vector<std::uint64_t> vars(var_set.begin(), var_set.end());
  for (std::uint64_t mask = 0; mask < (1ull << vars.size()); ++mask) {
    std::map<std::uint64_t, bool> vals;
    for (std::size_t j = 0; j < vars.size(); ++j) vals[vars[j]] = (mask >> j) & 1;
    if (eval_bool(e, vals)) {
      SatResult out;
      out.satisfiable = true;
      for (std::size_t j = 0; j < vars.size(); ++j)
        out.assignment.emplace_back(vars[j], ((mask >> j) & 1) != 0);
      return out;
    }
  }
  return {};
}

// Total 0/1 decider on all of N: non-codes are unsatisfiable by fiat.
inline Nat sat_fn(const Nat& x) {
  std::optional<BoolExprPtr> e = decode_gn(x);
  if (!e) return Nat(0);
  return Nat(truth_table_sat(*e).satisfiable ? 1 : 0);
}

}  // namespace primrec
