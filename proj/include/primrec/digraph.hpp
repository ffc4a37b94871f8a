#pragma once

// Directed graphs with designated endpoints, their pairing-based numeric
// codes, and the brute-force Hamiltonian-path decider.
//
// Code layout: sigma2(u, P) with u = sigma2(sigma2(v, s-1), t-1) and P the
// product of prime((a-1)*v + (b-1)) over edges a->b. The height u grows as
// 2^2^v, so the exact code lives in SparseNat; a dense form exists only for
// the tiniest graphs and is guarded.

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "primrec/codec.hpp"
#include "primrec/errors.hpp"
#include "primrec/nat.hpp"
#include "primrec/sparse_nat.hpp"

namespace primrec {

struct Digraph {
  std::uint32_t v = 1;  // nodes 1..v
  std::uint32_t s = 1;
  std::uint32_t t = 1;
  std::set<std::pair<std::uint32_t, std::uint32_t>> edges;

  void validate() const {
    if (v == 0) throw MalformedGraph("a graph needs at least one node");
    if (s == 0 || s > v || t == 0 || t > v)
      throw MalformedGraph("endpoints must name nodes in 1..v");
    for (const auto& [a, b] : edges)
      if (a == 0 || a > v || b == 0 || b > v)
        throw MalformedGraph("edge endpoints must name nodes in 1..v");
  }

  bool has_edge(std::uint32_t a, std::uint32_t b) const { return edges.count({a, b}) > 0; }

  friend bool operator==(const Digraph& x, const Digraph& y) {
    return x.v == y.v && x.s == y.s && x.t == y.t && x.edges == y.edges;
  }
};

inline SparseNat encode_graph(const Digraph& g) {
  g.validate();
  Nat prod(1);
  for (const auto& [a, b] : g.edges) {
    std::uint64_t idx = static_cast<std::uint64_t>(a - 1) * g.v + (b - 1);
    prod = prod * Nat(prime_u64(idx));
  }
  Nat u = sigma2(sigma2(Nat(g.v), Nat(g.s - 1)), Nat(g.t - 1));
  return SparseNat::sigma2(u, SparseNat(prod));
}

inline Nat encode_graph_dense(const Digraph& g,
                              std::uint64_t guard_bits = kDenseBitGuard) {
  return encode_graph(g).dense(guard_bits);
}

inline Digraph decode_graph(const SparseNat& code) {
  auto [u, prod_part] = code.sigma2_parts();
  if (!prod_part.dense_ok(1u << 16)) throw MalformedGraph("edge product implausibly large");
  Nat prod = prod_part.dense(1u << 16);
  auto [head, t1] = sigma2_inv(u);
  if (Nat(1u << 20) < t1) throw MalformedGraph("end node implausibly large");
  auto [vN, s1] = sigma2_inv(head);
  if (vN == Nat(0) || Nat(100) < vN) throw MalformedGraph("node count missing or implausible");
  Digraph g;
  g.v = static_cast<std::uint32_t>(vN.u64());
  if (Nat(g.v) < s1 + Nat(1) || Nat(g.v) < t1 + Nat(1))
    throw MalformedGraph("endpoints must name nodes in 1..v");
  g.s = static_cast<std::uint32_t>(s1.u64()) + 1;
  g.t = static_cast<std::uint32_t>(t1.u64()) + 1;
  Nat rest = prod;
  std::uint64_t cells = static_cast<std::uint64_t>(g.v) * g.v;
  for (std::uint64_t k = 0; k < cells && rest > Nat(1); ++k) {
    Nat p(prime_u64(k));
    if (rest % p == Nat(0)) {
      rest = rest / p;
      if (rest % p == Nat(0)) throw MalformedGraph("repeated edge factor");
      g.edges.insert({static_cast<std::uint32_t>(k / g.v) + 1,
                      static_cast<std::uint32_t>(k % g.v) + 1});
    }
  }
  if (rest != Nat(1)) throw MalformedGraph("edge product has a factor outside the edge range");
  g.validate();
  return g;
}

inline Digraph decode_graph(const Nat& code) { return decode_graph(SparseNat(code)); }

// ---- Hamiltonian path ----------------------------------------------------

struct HamPathResult {
  bool found = false;
  std::vector<std::uint32_t> path;  // s ... t visiting every node once
};

namespace graphdetail {

inline bool extend_path(const Digraph& g, std::vector<std::uint32_t>& path,
                        std::vector<bool>& used) {
  std::uint32_t cur = path.back();
  if (path.size() == g.v) return cur == g.t;
  for (std::uint32_t next = 1; next <= g.v; ++next) {
    if (used[next] || !g.has_edge(cur, next)) continue;
    // t may only close the path
    if (next == g.t && path.size() + 1 < g.v) continue;
    used[next] = true;
    path.push_back(next);
    if (extend_path(g, path, used)) return true;
    path.pop_back();
    used[next] = false;
  }
  return false;
}

}  // namespace graphdetail

inline HamPathResult hampath_brute(const Digraph& g) {
  g.validate();
  if (g.v > 10)
    throw TooManyNodes("permutation search over " + std::to_string(g.v) +
                       " nodes exceeds the 10-node guard");
  if (g.v == 1) return {g.s == g.t, {g.s}};
  if (g.s == g.t) return {};  // a path on 2+ nodes cannot close on itself
  std::vector<std::uint32_t> path{g.s};
  std::vector<bool> used(g.v + 1, false);
  used[g.s] = true;
  if (graphdetail::extend_path(g, path, used)) return {true, path};
  return {};
}

// Total 0/1 decider: numbers that decode to no graph carry no path.
inline Nat hampath_fn(const SparseNat& code) {
  Digraph g;
  try {
    g = decode_graph(code);
  } catch (const MalformedGraph&) {
    return Nat(0);
  }
  return Nat(hampath_brute(g).found ? 1 : 0);
}

inline Nat hampath_fn(const Nat& code) { return hampath_fn(SparseNat(code)); }

// ---- file format ---------------------------------------------------------

inline std::string graph_to_text(const Digraph& g) {
  std::string out = "nodes: " + std::to_string(g.v) + "\n";
  out += "s: " + std::to_string(g.s) + "\n";
  out += "t: " + std::to_string(g.t) + "\n";
  for (const auto& [a, b] : g.edges)
    out += "edge: " + std::to_string(a) + " " + std::to_string(b) + "\n";
  return out;
}

inline Digraph parse_graph(const std::string& text) {
  Digraph g;
  bool saw_nodes = false, saw_s = false, saw_t = false;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    auto want_u32 = [&](const char* what) {
      long long x = -1;
      if (!(ls >> x) || x < 0 || x > 1000000)
        throw ParseError(lineno, std::string("expected a node count or node id after ") + what);
      return static_cast<std::uint32_t>(x);
    };
    if (key == "nodes:") {
      g.v = want_u32("nodes:");
      saw_nodes = true;
    } else if (key == "s:") {
      g.s = want_u32("s:");
      saw_s = true;
    } else if (key == "t:") {
      g.t = want_u32("t:");
      saw_t = true;
    } else if (key == "edge:") {
      std::uint32_t a = want_u32("edge:");
      std::uint32_t b = want_u32("edge:");
      if (!g.edges.insert({a, b}).second) throw ParseError(lineno, "duplicate edge");
    } else {
      throw ParseError(lineno, "unknown key '" + key + "'");
    }
    std::string extra;
    if (ls >> extra) throw ParseError(lineno, "trailing tokens on line");
  }
  if (!saw_nodes) throw ParseError(lineno, "missing nodes: line");
  if (!saw_s) throw ParseError(lineno, "missing s: line");
  if (!saw_t) throw ParseError(lineno, "missing t: line");
  g.validate();
  return g;
}

}  // namespace primrec
