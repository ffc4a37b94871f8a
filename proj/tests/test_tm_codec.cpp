#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "primrec/tm_codec.hpp"

using namespace primrec;

namespace {

std::vector<Nat> nats(std::initializer_list<std::uint64_t> xs) {
  std::vector<Nat> out;
  for (auto x : xs) out.emplace_back(x);
  return out;
}

// every configuration a machine passes through, initial one included
std::vector<Configuration> trace_of(const TmSpec& m, const std::vector<Nat>& args,
                                    std::uint64_t cap = 100000) {
  std::vector<Configuration> out{encode_args(args)};
  while (auto next = step(m, out.back())) {
    out.push_back(std::move(*next));
    REQUIRE(out.size() <= cap);
  }
  return out;
}

}  // namespace

TEST_CASE("tape encoding is the prime-power product over occupied cells") {
  Configuration cfg;
  cfg.a = Nat(0);
  cfg.c = 1;
  CHECK(encode_tape(cfg) == Nat(1));  // empty tape: all exponents zero

  cfg.beta[Nat(2)] = 1;
  cfg.beta[Nat(4)] = 1;
  CHECK(encode_tape(cfg) == Nat(55));  // 5 * 11

  Configuration one;
  one.beta[Nat(0)] = 1;
  CHECK(encode_tape(one) == Nat(2));

  CHECK(encode_tape(encode_args(nats({1}))) == Nat(55));  // strokes at cells {2,4}
}

TEST_CASE("configuration encoding nests the pairing exactly") {
  SECTION("stored-component arithmetic anchor") {
    Configuration raw;  // deliberately not a valid machine state: c = 0
    raw.a = Nat(0);
    raw.c = 0;
    CHECK(encode_config_dense(raw) == Nat(3));  // sigma3(0, 1, 0)
  }

  SECTION("zero machine's initial configuration") {
    Configuration cfg = encode_args(nats({0}));
    // a = 4, b = prime(2) = 5, so the inner pair is 2^4*11 - 1 = 175
    SparseNat s = encode_config(cfg);
    CHECK(s.dense() == (Nat(3) << 175) - Nat(1));
    CHECK(decode_config(s, zero_machine()) == cfg);
  }

  SECTION("strictly monotone in the state with a, b fixed") {
    Configuration cfg = encode_args(nats({2}));
    SparseNat lo = encode_config(cfg);
    cfg.c = 2;
    SparseNat hi = encode_config(cfg);
    CHECK(lo < hi);
  }
}

TEST_CASE("configuration codes round-trip on every builder machine's runs") {
  auto roundtrip_all = [](const TmSpec& m, const std::vector<Nat>& args) {
    for (const Configuration& cfg : trace_of(m, args)) {
      SparseNat s = encode_config(cfg);
      CHECK(decode_config(s, m) == cfg);
    }
  };
  roundtrip_all(zero_machine(), nats({2}));
  roundtrip_all(successor_machine(), nats({3}));
  roundtrip_all(copy_machine(), nats({2}));
  roundtrip_all(copy_machine_n(2), nats({1, 2}));
  roundtrip_all(projection_machine(3, 2), nats({1, 0, 2}));
  roundtrip_all(move_right(), nats({1}));
  roundtrip_all(move_left(), nats({2}));
  roundtrip_all(print_stroke(), nats({0}));
  roundtrip_all(stroke_right(), nats({1}));
}

TEST_CASE("malformed configuration codes are rejected") {
  TmSpec z = zero_machine();
  // sigma3(0,1,0) = 3 carries state 0
  CHECK_THROWS_AS(decode_config(Nat(3), z), MalformedConfig);
  // sigma3(0,0,1) = 2 carries tape code 0
  CHECK_THROWS_AS(decode_config(Nat(2), z), MalformedConfig);
  // sigma3(0,4,1) = 767 puts symbol 2 on a one-symbol alphabet
  CHECK_THROWS_AS(decode_config(Nat(767), z), MalformedConfig);
  // state beyond M
  CHECK_THROWS_AS(decode_config(sigma3(Nat(4), Nat(5), Nat(99)), z), MalformedConfig);
  // a prime factor far outside any reachable cell index; the code itself
  // only exists in sparse form (the tape code rides in the exponent)
  Nat far_prime(1000000007);
  SparseNat far = SparseNat::sigma2(sigma2(Nat(0), far_prime), SparseNat(Nat(1)));
  CHECK_THROWS_AS(decode_config(far, z), MalformedConfig);
}

TEST_CASE("machine entry codes match hand-computed values") {
  MachineCode code = machine_code(zero_machine());
  CHECK(code.M == 4);
  CHECK(code.N == 1);
  REQUIRE(code.exps.size() == 3);
  // (1,0)->R 2: sigma2(sigma2(0,0), sigma2(3,1)) = sigma2(0,23) = 46
  CHECK(code.exps[0].dense() == Nat(46));
  // (2,0)->W1 3: sigma2(sigma2(1,0), sigma2(1,2)) = sigma2(1,9) = 37
  CHECK(code.exps[1].dense() == Nat(37));
  // (3,1)->R 4: sigma2(sigma2(2,1), sigma2(3,3)) = sigma2(11,55) = 227327
  CHECK(code.exps[2].dense() == Nat(227327));
}

TEST_CASE("dense machine numbers round-trip where they fit") {
  for (const TmSpec& m :
       {zero_machine(), move_right(), move_left(), print_stroke(), stroke_right()}) {
    Nat t = godel_number(m);
    CHECK(decode_machine(t) == m);
  }
  CHECK(godel_number(move_right()) != godel_number(move_left()));

  // one changed transition target changes the number
  TmSpec z = zero_machine();
  TmSpec z2 = z;
  z2.delta[{3, 1}] = {move_r(), 3};
  CHECK(godel_number(z) != godel_number(z2));

  // the successor machine's entry codes are around 2^98000; its dense
  // number would need astronomically many bits
  CHECK_THROWS_AS(godel_number(successor_machine()), ValueTooLarge);
}

TEST_CASE("structural machine codes round-trip on every builder") {
  for (const TmSpec& m : {zero_machine(), successor_machine(), copy_machine(), copy_machine_n(2),
                          copy_machine_n(3), projection_machine(3, 1), projection_machine(2, 2),
                          move_right(), move_left(), print_stroke(), stroke_right()}) {
    MachineCode code = machine_code(m);
    CHECK(decode_machine(code) == m);
  }
}

TEST_CASE("malformed machine codes are rejected") {
  SECTION("entries out of canonical order") {
    MachineCode code = machine_code(zero_machine());
    std::swap(code.exps[0], code.exps[1]);
    CHECK_THROWS_AS(decode_machine(code), MalformedMachine);
  }
  SECTION("entry component ranges") {
    MachineCode code;
    code.M = 1;
    code.N = 1;
    // q = 6 on a one-state machine
    code.exps = {SparseNat::sigma2(sigma2(Nat(5), Nat(0)), SparseNat(sigma2(Nat(1), Nat(0))))};
    CHECK_THROWS_AS(decode_machine(code), MalformedMachine);
    // action code 9 on alphabet 1 (valid actions stop at N+2 = 3)
    code.exps = {SparseNat::sigma2(Nat(0), SparseNat(sigma2(Nat(9), Nat(0))))};
    CHECK_THROWS_AS(decode_machine(code), MalformedMachine);
    // target state 5 on a one-state machine
    code.exps = {SparseNat::sigma2(Nat(0), SparseNat(sigma2(Nat(0), Nat(4))))};
    CHECK_THROWS_AS(decode_machine(code), MalformedMachine);
  }
  SECTION("dense numbers") {
    // body = 5: entry for prime(0) missing but the list goes on
    CHECK_THROWS_AS(decode_machine(sigma3(Nat(1), Nat(1), Nat(5))), MalformedMachine);
    // zero states
    CHECK_THROWS_AS(decode_machine(sigma3(Nat(0), Nat(1), Nat(1))), MalformedMachine);
    // two entries in swapped canonical order: e(2,0) at prime 0, e(1,0) at prime 1
    CHECK_THROWS_AS(decode_machine(sigma3(Nat(2), Nat(1), Nat(12))), MalformedMachine);
  }
}
