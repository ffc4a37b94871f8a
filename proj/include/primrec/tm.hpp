#pragma once

// Quadruple-model Turing machines on a two-way infinite tape: each step
// either writes one symbol or moves one cell, and halting means the
// transition table has no entry for (state, scanned symbol).
//
// Cells carry a single nonneg index: physical offset d >= 0 maps to 2d,
// d < 0 maps to 2|d|-1. Numeric machines use one tape symbol (the stroke);
// the number n is written as n+1 strokes. Arguments sit left of the head
// as stroke words separated by single blanks, head on the first blank
// right of the last word; the result is read back from the maximal stroke
// block immediately left of the final head position.

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "primrec/errors.hpp"
#include "primrec/nat.hpp"

namespace primrec {

struct Action {
  enum Kind { Write, MoveLeft, MoveRight } kind;
  std::uint32_t sym = 0;  // written symbol for Write
  friend bool operator==(const Action& a, const Action& b) {
    return a.kind == b.kind && (a.kind != Write || a.sym == b.sym);
  }
};

inline Action write_sym(std::uint32_t j) { return {Action::Write, j}; }
inline Action move_l() { return {Action::MoveLeft, 0}; }
inline Action move_r() { return {Action::MoveRight, 0}; }

struct TmSpec {
  std::uint32_t M = 0;  // states 1..M, start state 1
  std::uint32_t N = 1;  // symbols 1..N, 0 = blank
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::pair<Action, std::uint32_t>> delta;

  const std::pair<Action, std::uint32_t>* find(std::uint32_t q, std::uint32_t sym) const {
    auto it = delta.find({q, sym});
    return it == delta.end() ? nullptr : &it->second;
  }

  void validate() const {
    if (M == 0) throw MalformedMachine("machine needs at least one state");
    for (const auto& [key, val] : delta) {
      auto [q, sym] = key;
      auto [act, q2] = val;
      if (q < 1 || q > M) throw MalformedMachine("transition from state outside 1..M");
      if (sym > N) throw MalformedMachine("transition on symbol outside 0..N");
      if (q2 < 1 || q2 > M) throw MalformedMachine("transition to state outside 1..M");
      if (act.kind == Action::Write && act.sym > N)
        throw MalformedMachine("written symbol outside 0..N");
    }
  }

  friend bool operator==(const TmSpec& a, const TmSpec& b) {
    return a.M == b.M && a.N == b.N && a.delta == b.delta;
  }
};

// Folded cell indexing so the two-way tape gets natural-number cell ids:
// offset 0 -> 0, d > 0 -> 2d, d < 0 -> 2|d|-1.
inline Nat cell_index(long long d) {
  if (d == 0) return Nat(0);
  if (d > 0) return Nat(static_cast<std::uint64_t>(d) * 2);
  return Nat(static_cast<std::uint64_t>(-d) * 2 - 1);
}

inline long long phys_of(const Nat& idx) {
  std::uint64_t v = idx.u64();
  if (v % 2 == 0) return static_cast<long long>(v / 2);
  return -static_cast<long long>((v + 1) / 2);
}

struct Configuration {
  Nat a;                             // head cell index
  std::map<Nat, std::uint32_t> beta;  // occupied cells only, values 1..N
  std::uint32_t c = 1;               // state

  std::uint32_t sym_at(const Nat& idx) const {
    auto it = beta.find(idx);
    return it == beta.end() ? 0 : it->second;
  }
  void set_sym(const Nat& idx, std::uint32_t sym) {
    if (sym == 0)
      beta.erase(idx);
    else
      beta[idx] = sym;
  }

  friend bool operator==(const Configuration& x, const Configuration& y) {
    return x.a == y.a && x.c == y.c && x.beta == y.beta;
  }
};

struct RunResult {
  Nat value;
  Nat steps;
  std::optional<std::vector<Configuration>> trace;
};

inline Configuration encode_args(const std::vector<Nat>& xs) {
  if (xs.empty()) throw EmptyArgs("a machine input needs at least one argument");
  Configuration cfg;
  long long p = 1;  // words start at physical offset +1 (cell index 2)
  for (const Nat& x : xs) {
    std::uint64_t strokes = x.u64() + 1;  // numeral convention: n+1 strokes
    for (std::uint64_t i = 0; i < strokes; ++i) cfg.set_sym(cell_index(p++), 1);
    ++p;  // single blank between words
  }
  cfg.a = cell_index(p - 1);  // first blank right of the last word
  cfg.c = 1;
  return cfg;
}

inline std::optional<Configuration> step(const TmSpec& spec, const Configuration& cfg) {
  const auto* tr = spec.find(cfg.c, cfg.sym_at(cfg.a));
  if (!tr) return std::nullopt;  // terminal configuration
  Configuration next = cfg;
  const auto& [act, q2] = *tr;
  switch (act.kind) {
    case Action::Write: next.set_sym(cfg.a, act.sym); break;
    case Action::MoveLeft: next.a = cell_index(phys_of(cfg.a) - 1); break;
    case Action::MoveRight: next.a = cell_index(phys_of(cfg.a) + 1); break;
  }
  next.c = q2;
  return next;
}

// Output numeral: the maximal stroke block immediately left of the head.
inline Nat decode_output(const Configuration& cfg) {
  long long p = phys_of(cfg.a) - 1;
  std::uint64_t strokes = 0;
  while (cfg.sym_at(cell_index(p)) == 1) {
    ++strokes;
    --p;
  }
  if (strokes == 0)
    throw NoOutputNumeral("cell left of the final head position is blank");
  return Nat(strokes - 1);
}

inline RunResult run(const TmSpec& spec, const std::vector<Nat>& xs, std::uint64_t max_steps,
                     bool want_trace = false) {
  Configuration cfg = encode_args(xs);
  RunResult res;
  if (want_trace) res.trace.emplace().push_back(cfg);
  std::uint64_t steps = 0;
  while (auto next = step(spec, cfg)) {
    if (steps == max_steps)
      throw NonTermination("no terminal configuration within " + std::to_string(max_steps) +
                           " steps");
    cfg = std::move(*next);
    ++steps;
    if (want_trace) res.trace->push_back(cfg);
  }
  res.steps = Nat(steps);
  res.value = decode_output(cfg);
  return res;
}

// ---- builders ------------------------------------------------------------

namespace tmdetail {

struct Builder {
  TmSpec m;
  std::uint32_t next = 1;
  std::uint32_t fresh() { return next++; }
  void add(std::uint32_t q, std::uint32_t sym, Action act, std::uint32_t q2) {
    m.delta[{q, sym}] = {act, q2};
  }
  TmSpec done() {
    m.M = next - 1;
    m.validate();
    return m;
  }
};

}  // namespace tmdetail

// One step right, any scanned symbol.
inline TmSpec move_right() {
  tmdetail::Builder b;
  std::uint32_t s1 = b.fresh(), s2 = b.fresh();
  b.add(s1, 0, move_r(), s2);
  b.add(s1, 1, move_r(), s2);
  return b.done();
}

inline TmSpec move_left() {
  tmdetail::Builder b;
  std::uint32_t s1 = b.fresh(), s2 = b.fresh();
  b.add(s1, 0, move_l(), s2);
  b.add(s1, 1, move_l(), s2);
  return b.done();
}

inline TmSpec print_stroke() {
  tmdetail::Builder b;
  std::uint32_t s1 = b.fresh(), s2 = b.fresh();
  b.add(s1, 0, write_sym(1), s2);
  b.add(s1, 1, write_sym(1), s2);
  return b.done();
}

// Writes a stroke on the scanned blank, then steps right off it.
inline TmSpec stroke_right() {
  tmdetail::Builder b;
  std::uint32_t s1 = b.fresh(), s2 = b.fresh(), s3 = b.fresh();
  b.add(s1, 0, write_sym(1), s2);
  b.add(s2, 1, move_r(), s3);
  return b.done();
}

// Right, print stroke, right: constant three steps from any argument list.
inline TmSpec zero_machine() {
  tmdetail::Builder b;
  std::uint32_t s1 = b.fresh(), s2 = b.fresh(), s3 = b.fresh(), s4 = b.fresh();
  b.add(s1, 0, move_r(), s2);
  b.add(s2, 0, write_sym(1), s3);
  b.add(s3, 1, move_r(), s4);
  return b.done();
}

// Concatenation: renumber m2 after m1 and splice every terminal (q, sym) of
// m1 directly onto m2's start-state action for sym, so no step is wasted.
inline TmSpec seq(const TmSpec& m1, const TmSpec& m2) {
  if (m1.N != m2.N) throw MalformedMachine("cannot concatenate machines over different alphabets");
  TmSpec out;
  out.N = m1.N;
  out.M = m1.M + m2.M;
  out.delta = m1.delta;
  for (const auto& [key, val] : m2.delta)
    out.delta[{key.first + m1.M, key.second}] = {val.first, val.second + m1.M};
  for (std::uint32_t q = 1; q <= m1.M; ++q)
    for (std::uint32_t sym = 0; sym <= m1.N; ++sym)
      if (!m1.find(q, sym))
        if (const auto* tr = m2.find(1, sym)) out.delta[{q, sym}] = {tr->first, tr->second + m1.M};
  out.validate();
  return out;
}

// Copies the k-th stroke word left of the head to the right of the head's
// word region, one separating blank, head ending on the first blank right
// of the copy. The source word is consumed down to a single stroke.
//
// Strategy: walk left over k stroke blocks, erase the leftmost remaining
// source stroke, walk right and append one stroke to the copy; repeat.
// When the source is down to its last stroke it is left in place and the
// final copy stroke is appended on a one-way pass that ends the run.
inline TmSpec copy_machine_n(std::uint32_t k) {
  if (k == 0) throw Error("copy machine needs k >= 1");
  tmdetail::Builder b;
  std::vector<std::uint32_t> A(k), B(k + 1), S(k + 1), G(k);
  for (std::uint32_t j = 0; j < k; ++j) A[j] = b.fresh();  // A[0] = start
  for (std::uint32_t j = 1; j <= k; ++j) B[j] = b.fresh();
  std::uint32_t PRE = b.fresh(), PEEK = b.fresh(), ERASE = b.fresh(), R0 = b.fresh();
  for (std::uint32_t j = 1; j <= k; ++j) S[j] = b.fresh();
  std::uint32_t PROBE = b.fresh(), COPYR = b.fresh(), COPYSCAN = b.fresh();
  std::uint32_t F0 = 0;
  if (k >= 2) {
    F0 = b.fresh();
    for (std::uint32_t j = 1; j <= k - 1; ++j) G[j] = b.fresh();
  }
  std::uint32_t FPROBE = b.fresh(), FCOPYR = b.fresh(), FLAST = b.fresh(), HALT = b.fresh();

  // leftward walk: A_j scans blanks with j blocks crossed, B_j scans inside
  // block j; block k is the source word's remnant
  for (std::uint32_t j = 0; j < k; ++j) {
    b.add(A[j], 0, move_l(), A[j]);
    b.add(A[j], 1, move_l(), B[j + 1]);
  }
  for (std::uint32_t j = 1; j < k; ++j) {
    b.add(B[j], 1, move_l(), B[j]);
    b.add(B[j], 0, move_l(), A[j]);
  }
  b.add(B[k], 1, move_l(), B[k]);
  b.add(B[k], 0, move_r(), PRE);  // one left of the remnant's leftmost stroke

  // PRE sits on the leftmost remnant stroke; PEEK checks whether another
  // stroke follows it (gap right of the source never widens, so a blank
  // there means the remnant is a singleton)
  b.add(PRE, 1, move_r(), PEEK);
  b.add(PEEK, 1, move_l(), ERASE);
  b.add(PEEK, 0, move_r(), k >= 2 ? F0 : FPROBE);

  // normal round: erase the leftmost remnant stroke, walk right over the
  // remaining k blocks (remnant + words k-1..1), append one copy stroke
  b.add(ERASE, 1, write_sym(0), R0);
  b.add(R0, 0, move_r(), R0);
  b.add(R0, 1, move_r(), S[1]);
  for (std::uint32_t j = 1; j < k; ++j) {
    b.add(S[j], 1, move_r(), S[j]);
    b.add(S[j], 0, move_r(), S[j + 1]);  // single gap: lands on next block
  }
  b.add(S[k], 1, move_r(), S[k]);
  b.add(S[k], 0, move_r(), PROBE);  // exited word 1 onto the separator
  b.add(PROBE, 1, move_r(), COPYR);
  b.add(PROBE, 0, write_sym(1), COPYSCAN);  // first copy stroke
  b.add(COPYR, 1, move_r(), COPYR);
  b.add(COPYR, 0, write_sym(1), COPYSCAN);  // append at the copy's end
  b.add(COPYSCAN, 1, move_l(), COPYSCAN);
  b.add(COPYSCAN, 0, move_l(), A[0]);  // exited the copy: next round

  // final round: source is a lone stroke, leave it, append the last copy
  // stroke and halt one cell right of the copy
  if (k >= 2) {
    b.add(F0, 1, move_r(), G[1]);
    for (std::uint32_t j = 1; j + 1 < k; ++j) {
      b.add(G[j], 1, move_r(), G[j]);
      b.add(G[j], 0, move_r(), G[j + 1]);
    }
    b.add(G[k - 1], 1, move_r(), G[k - 1]);
    b.add(G[k - 1], 0, move_r(), FPROBE);
  }
  b.add(FPROBE, 1, move_r(), FCOPYR);
  b.add(FPROBE, 0, write_sym(1), FLAST);
  b.add(FCOPYR, 1, move_r(), FCOPYR);
  b.add(FCOPYR, 0, write_sym(1), FLAST);
  b.add(FLAST, 1, move_r(), HALT);
  (void)HALT;  // no outgoing transitions: terminal
  return b.done();
}

inline TmSpec copy_machine() { return copy_machine_n(1); }

inline TmSpec successor_machine() { return seq(copy_machine(), stroke_right()); }

inline TmSpec projection_machine(std::uint32_t n, std::uint32_t i) {
  if (i < 1 || i > n) throw Error("projection index outside 1..n");
  return copy_machine_n(n + 1 - i);
}

// ---- machine file format -------------------------------------------------

inline TmSpec parse_machine(const std::string& text) {
  TmSpec m;
  bool saw_states = false, saw_alphabet = false;
  std::size_t line_no = 0, pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
    std::istringstream is(line);
    std::string key;
    if (!(is >> key)) continue;  // blank line
    auto need = [&](auto& v, const char* what) {
      if (!(is >> v)) throw ParseError(line_no, std::string("machine file: expected ") + what);
    };
    if (key == "states:") {
      need(m.M, "state count");
      saw_states = true;
    } else if (key == "alphabet:") {
      need(m.N, "alphabet size");
      saw_alphabet = true;
    } else if (key == "start:") {
      std::uint32_t s;
      need(s, "start state");
      if (s != 1) throw ParseError(line_no, "start state must be 1");
    } else if (key == "delta:") {
      std::uint32_t q, sym, q2;
      std::string arrow, act;
      need(q, "state");
      need(sym, "symbol");
      need(arrow, "->");
      if (arrow != "->") throw ParseError(line_no, "machine file: expected ->");
      need(act, "action");
      Action a{};
      if (act == "W") {
        need(a.sym, "written symbol");
        a.kind = Action::Write;
      } else if (act == "L") {
        a.kind = Action::MoveLeft;
      } else if (act == "R") {
        a.kind = Action::MoveRight;
      } else {
        throw ParseError(line_no, "machine file: action must be W, L or R");
      }
      need(q2, "next state");
      if (m.delta.count({q, sym})) throw ParseError(line_no, "duplicate transition");
      m.delta[{q, sym}] = {a, q2};
    } else {
      throw ParseError(line_no, "machine file: unknown line '" + key + "'");
    }
  }
  if (!saw_states || !saw_alphabet)
    throw ParseError(line_no, "machine file needs states: and alphabet: lines");
  try {
    m.validate();
  } catch (const MalformedMachine& e) {
    throw ParseError(line_no, e.what());
  }
  return m;
}

inline std::string machine_to_text(const TmSpec& m) {
  std::ostringstream os;
  os << "states: " << m.M << "\n";
  os << "alphabet: " << m.N << "\n";
  os << "start: 1\n";
  for (const auto& [key, val] : m.delta) {
    os << "delta: " << key.first << " " << key.second << " -> ";
    switch (val.first.kind) {
      case Action::Write: os << "W " << val.first.sym << " "; break;
      case Action::MoveLeft: os << "L "; break;
      case Action::MoveRight: os << "R "; break;
    }
    os << val.second << "\n";
  }
  return os.str();
}

}  // namespace primrec
