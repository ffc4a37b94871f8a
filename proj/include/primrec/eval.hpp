#pragma once

// Two evaluators over the same semantics:
//
//   eval_honest — structural evaluation exactly per the schemas. Recursion
//     unrolls its final argument level by level; bounded search scans with
//     early exit; every node application decrements a budget. Nothing is
//     memoized and references are always expanded.
//
//   eval_fast — the same walk, but references whose names are registered as
//     intrinsics dispatch to native arithmetic, and recursion cells may be
//     memoized. Semantically identical where both terminate.
//
// Running out of budget inside a MU scan raises MuDiverged; anywhere else,
// BudgetExceeded.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "primrec/errors.hpp"
#include "primrec/nat.hpp"
#include "primrec/term.hpp"

namespace primrec {

using Intrinsic = std::function<Nat(const std::vector<Nat>&)>;
using IntrinsicTable = std::map<std::string, Intrinsic>;

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

namespace detail {

struct ArgsKey {
  const TermNode* node;
  std::vector<Nat> args;
  bool operator==(const ArgsKey& o) const { return node == o.node && args == o.args; }
};

struct ArgsKeyHash {
  std::size_t operator()(const ArgsKey& k) const {
    std::size_t h = std::hash<const void*>()(k.node);
    for (const Nat& a : k.args) {
      std::uint64_t lo =
          a.fits_u64() ? a.u64() : (a.big() & BigInt(UINT64_MAX)).convert_to<std::uint64_t>();
      h = h * 1315423911u + std::hash<std::uint64_t>()(lo ^ a.bits());
    }
    return h;
  }
};

class Evaluator {
 public:
  Evaluator(const DefEnv& env, const IntrinsicTable* intrinsics, std::uint64_t budget)
      : env_(env), intrinsics_(intrinsics), budget_(budget) {}

  Nat eval(const Term& t, const std::vector<Nat>& args) { return run(t.node(), args); }

 private:
  const DefEnv& env_;
  const IntrinsicTable* intrinsics_;  // null => honest mode
  std::uint64_t budget_;
  int mu_depth_ = 0;
  std::unordered_map<ArgsKey, Nat, ArgsKeyHash> rec_memo_;

  void spend() {
    if (budget_ == 0) {
      if (mu_depth_ > 0) throw MuDiverged("mu search exceeded budget");
      throw BudgetExceeded("evaluation budget exhausted");
    }
    --budget_;
  }

  Nat run(const TermNode& n, const std::vector<Nat>& args) {
    spend();
    if (std::holds_alternative<SuccNode>(n.v)) return args.at(0) + Nat(1);
    if (std::holds_alternative<ZeroNode>(n.v)) return Nat(0);
    if (const auto* p = std::get_if<ProjNode>(&n.v)) return args.at(p->i - 1);
    if (const auto* c = std::get_if<CompNode>(&n.v)) {
      std::vector<Nat> inner;
      inner.reserve(c->hs.size());
      for (const Term& h : c->hs) inner.push_back(run(h.node(), args));
      return run(c->g.node(), inner);
    }
    if (const auto* r = std::get_if<RecNode>(&n.v)) {
      bool memo = intrinsics_ != nullptr;
      ArgsKey key;
      if (memo) {
        key = ArgsKey{&n, args};
        auto it = rec_memo_.find(key);
        if (it != rec_memo_.end()) return it->second;
      }
      // args = (x.., y); unroll y.
      std::vector<Nat> base(args.begin(), args.end() - 1);
      const Nat& y = args.back();
      Nat acc = run(r->g.node(), base);
      std::vector<Nat> step = base;
      step.push_back(Nat(0));  // level counter
      step.push_back(Nat(0));  // accumulator slot
      for (Nat k(0); k < y; ++k) {
        step[step.size() - 2] = k;
        step[step.size() - 1] = acc;
        acc = run(r->h.node(), step);
      }
      if (memo) rec_memo_.emplace(std::move(key), acc);
      return acc;
    }
    if (const auto* b = std::get_if<BoundedMuNode>(&n.v)) {
      Nat bound = run(b->b.node(), args);
      std::vector<Nat> probe = args;
      probe.push_back(Nat(0));
      for (Nat y(0); y <= bound; ++y) {
        probe.back() = y;
        if (!run(b->p.node(), probe).is_zero()) return y;
      }
      return Nat(0);
    }
    if (const auto* m = std::get_if<MuNode>(&n.v)) {
      ++mu_depth_;
      std::vector<Nat> probe = args;
      probe.push_back(Nat(0));
      Nat result;
      for (Nat y(0);; ++y) {
        probe.back() = y;
        if (!run(m->p.node(), probe).is_zero()) {
          result = y;
          break;
        }
      }
      --mu_depth_;
      return result;
    }
    const auto& ref = std::get<RefNode>(n.v);
    if (intrinsics_) {
      auto it = intrinsics_->find(ref.name);
      if (it != intrinsics_->end()) return it->second(args);
    }
    const Term* body = env_.find(ref.name);
    if (!body) throw UnresolvedRef("unresolved reference: " + ref.name);
    return run(body->node(), args);
  }
};

}  // namespace detail

inline Nat eval_honest(const Term& t, const std::vector<Nat>& args, const DefEnv& env,
                       std::uint64_t budget = kDefaultBudget) {
  return detail::Evaluator(env, nullptr, budget).eval(t, args);
}

inline Nat eval_fast(const Term& t, const std::vector<Nat>& args, const DefEnv& env,
                     const IntrinsicTable& intrinsics, std::uint64_t budget = kDefaultBudget * 100) {
  return detail::Evaluator(env, &intrinsics, budget).eval(t, args);
}

// Accelerated evaluation without any intrinsic dispatch (memoization only).
inline Nat eval_fast(const Term& t, const std::vector<Nat>& args, const DefEnv& env,
                     std::uint64_t budget = kDefaultBudget * 100) {
  static const IntrinsicTable empty;
  return detail::Evaluator(env, &empty, budget).eval(t, args);
}

}  // namespace primrec
