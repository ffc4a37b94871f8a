#pragma once

// Textual term format, whitespace-insensitive, '#' starts a line comment:
//
//   S                successor
//   Z                constant zero (unary)
//   P[n,i]           projection
//   C[g; h1, h2]     composition
//   R[g; h]          primitive recursion
//   BMU[p; b]        bounded minimization
//   MU[p]            unbounded minimization
//   name             reference
//
// Definition files are sequences of `DEF name = term`. Definitions are
// arity-checked as they load; a reference to an unknown or later name fails.

#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "primrec/errors.hpp"
#include "primrec/term.hpp"

namespace primrec {

namespace detail {

class TermLexer {
 public:
  explicit TermLexer(const std::string& src) : src_(src) {}

  struct Tok {
    enum Kind { Ident, Number, LBracket, RBracket, Comma, Semi, Equals, End } kind;
    std::string text;
    std::size_t pos;
  };

  Tok peek() {
    if (!have_) {
      cur_ = lex();
      have_ = true;
    }
    return cur_;
  }
  Tok next() {
    Tok t = peek();
    have_ = false;
    return t;
  }
  std::size_t pos() const { return pos_; }

 private:
  const std::string& src_;
  std::size_t pos_ = 0;
  Tok cur_;
  bool have_ = false;

  Tok lex() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
    if (pos_ >= src_.size()) return {Tok::End, "", pos_};
    std::size_t start = pos_;
    char c = src_[pos_];
    switch (c) {
      case '[': ++pos_; return {Tok::LBracket, "[", start};
      case ']': ++pos_; return {Tok::RBracket, "]", start};
      case ',': ++pos_; return {Tok::Comma, ",", start};
      case ';': ++pos_; return {Tok::Semi, ";", start};
      case '=': ++pos_; return {Tok::Equals, "=", start};
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        num += src_[pos_++];
      return {Tok::Number, num, start};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        id += src_[pos_++];
      return {Tok::Ident, id, start};
    }
    throw ParseError(start, std::string("unexpected character '") + c + "'");
  }
};

class TermParser {
 public:
  explicit TermParser(const std::string& src) : lex_(src) {}

  Term parse_term() {
    auto t = lex_.next();
    if (t.kind != TermLexer::Tok::Ident)
      throw ParseError(t.pos, "expected a term, got '" + t.text + "'");
    if (t.text == "S") return Term::succ();
    if (t.text == "Z") return Term::zero();
    if (t.text == "P") {
      expect(TermLexer::Tok::LBracket, "[");
      std::uint32_t n = number();
      expect(TermLexer::Tok::Comma, ",");
      std::uint32_t i = number();
      expect(TermLexer::Tok::RBracket, "]");
      return Term::proj(n, i);
    }
    if (t.text == "C") {
      expect(TermLexer::Tok::LBracket, "[");
      Term g = parse_term();
      expect(TermLexer::Tok::Semi, ";");
      std::vector<Term> hs{parse_term()};
      while (lex_.peek().kind == TermLexer::Tok::Comma) {
        lex_.next();
        hs.push_back(parse_term());
      }
      expect(TermLexer::Tok::RBracket, "]");
      return Term::comp(g, std::move(hs));
    }
    if (t.text == "R" || t.text == "BMU") {
      bool is_rec = t.text == "R";
      expect(TermLexer::Tok::LBracket, "[");
      Term a = parse_term();
      expect(TermLexer::Tok::Semi, ";");
      Term b = parse_term();
      expect(TermLexer::Tok::RBracket, "]");
      return is_rec ? Term::rec(a, b) : Term::bounded_mu(a, b);
    }
    if (t.text == "MU") {
      expect(TermLexer::Tok::LBracket, "[");
      Term p = parse_term();
      expect(TermLexer::Tok::RBracket, "]");
      return Term::mu(p);
    }
    if (t.text == "DEF") throw ParseError(t.pos, "DEF is not a term");
    return Term::ref(t.text);
  }

  // Whole-input term (no trailing tokens).
  Term parse_only_term() {
    Term t = parse_term();
    auto tail = lex_.next();
    if (tail.kind != TermLexer::Tok::End)
      throw ParseError(tail.pos, "trailing input after term: '" + tail.text + "'");
    return t;
  }

  // `DEF name = term`* appended to env (arity-checked there).
  void parse_defs(DefEnv& env) {
    while (true) {
      auto t = lex_.next();
      if (t.kind == TermLexer::Tok::End) return;
      if (t.kind != TermLexer::Tok::Ident || t.text != "DEF")
        throw ParseError(t.pos, "expected DEF, got '" + t.text + "'");
      auto name = lex_.next();
      if (name.kind != TermLexer::Tok::Ident)
        throw ParseError(name.pos, "expected a definition name");
      expect(TermLexer::Tok::Equals, "=");
      Term body = parse_term();
      env.define(name.text, body);
    }
  }

 private:
  TermLexer lex_;

  void expect(TermLexer::Tok::Kind k, const char* what) {
    auto t = lex_.next();
    if (t.kind != k) throw ParseError(t.pos, std::string("expected '") + what + "'");
  }
  std::uint32_t number() {
    auto t = lex_.next();
    if (t.kind != TermLexer::Tok::Number) throw ParseError(t.pos, "expected a number");
    return static_cast<std::uint32_t>(std::stoul(t.text));
  }
};

}  // namespace detail

inline Term parse_term(const std::string& src) {
  return detail::TermParser(src).parse_only_term();
}

inline void parse_defs(const std::string& src, DefEnv& env) {
  detail::TermParser(src).parse_defs(env);
}

inline std::string to_text(const Term& t) {
  const TermNode& n = t.node();
  if (std::holds_alternative<SuccNode>(n.v)) return "S";
  if (std::holds_alternative<ZeroNode>(n.v)) return "Z";
  if (const auto* p = std::get_if<ProjNode>(&n.v))
    return "P[" + std::to_string(p->n) + "," + std::to_string(p->i) + "]";
  if (const auto* c = std::get_if<CompNode>(&n.v)) {
    std::string s = "C[" + to_text(c->g) + ";";
    for (std::size_t k = 0; k < c->hs.size(); ++k)
      s += (k ? ", " : " ") + to_text(c->hs[k]);
    return s + "]";
  }
  if (const auto* r = std::get_if<RecNode>(&n.v))
    return "R[" + to_text(r->g) + "; " + to_text(r->h) + "]";
  if (const auto* b = std::get_if<BoundedMuNode>(&n.v))
    return "BMU[" + to_text(b->p) + "; " + to_text(b->b) + "]";
  if (const auto* m = std::get_if<MuNode>(&n.v)) return "MU[" + to_text(m->p) + "]";
  return std::get<RefNode>(n.v).name;
}

inline bool structurally_equal(const Term& a, const Term& b) {
  if (a.id() == b.id()) return true;
  const TermNode& x = a.node();
  const TermNode& y = b.node();
  if (x.v.index() != y.v.index()) return false;
  if (const auto* p = std::get_if<ProjNode>(&x.v)) {
    const auto& q = std::get<ProjNode>(y.v);
    return p->n == q.n && p->i == q.i;
  }
  if (const auto* c = std::get_if<CompNode>(&x.v)) {
    const auto& d = std::get<CompNode>(y.v);
    if (c->hs.size() != d.hs.size() || !structurally_equal(c->g, d.g)) return false;
    for (std::size_t k = 0; k < c->hs.size(); ++k)
      if (!structurally_equal(c->hs[k], d.hs[k])) return false;
    return true;
  }
  if (const auto* r = std::get_if<RecNode>(&x.v)) {
    const auto& s = std::get<RecNode>(y.v);
    return structurally_equal(r->g, s.g) && structurally_equal(r->h, s.h);
  }
  if (const auto* bm = std::get_if<BoundedMuNode>(&x.v)) {
    const auto& bn = std::get<BoundedMuNode>(y.v);
    return structurally_equal(bm->p, bn.p) && structurally_equal(bm->b, bn.b);
  }
  if (const auto* m = std::get_if<MuNode>(&x.v))
    return structurally_equal(m->p, std::get<MuNode>(y.v).p);
  if (const auto* rf = std::get_if<RefNode>(&x.v)) return rf->name == std::get<RefNode>(y.v).name;
  return true;  // S or Z
}

}  // namespace primrec
