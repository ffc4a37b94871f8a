#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <vector>

#include "primrec/tm.hpp"

using namespace primrec;

namespace {

constexpr std::uint64_t kBudget = 1'000'000;

// Independent layout oracle: word j (1-based) occupies physical offsets
// start_j .. start_j + x_j with start_j = 1 + sum_{i<j} (x_i + 2), and the
// head rests one cell right of the last word. Closed-form prefix sums
// rather than the incremental walk the encoder uses.
struct Layout {
  std::map<Nat, std::uint32_t> beta;
  Nat head;
};

Layout layout_oracle(const std::vector<std::uint64_t>& xs) {
  Layout out;
  long long start = 1;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    for (std::uint64_t d = 0; d <= xs[j]; ++d)
      out.beta[cell_index(start + static_cast<long long>(d))] = 1;
    start += static_cast<long long>(xs[j]) + 2;
  }
  out.head = cell_index(start - 1);
  return out;
}

std::vector<Nat> nats(std::initializer_list<std::uint64_t> xs) {
  std::vector<Nat> out;
  for (auto x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("cell indexing folds the two-way tape onto the naturals") {
  CHECK(cell_index(0) == Nat(0));
  CHECK(cell_index(1) == Nat(2));
  CHECK(cell_index(2) == Nat(4));
  CHECK(cell_index(-1) == Nat(1));
  CHECK(cell_index(-2) == Nat(3));
  for (long long d = -50; d <= 50; ++d) CHECK(phys_of(cell_index(d)) == d);
  // the map is a bijection onto 0..: every small index decodes somewhere
  for (std::uint64_t i = 0; i < 101; ++i) CHECK(cell_index(phys_of(Nat(i))) == Nat(i));
}

TEST_CASE("argument encoding matches the layout oracle") {
  SECTION("frozen small cases") {
    Configuration c0 = encode_args(nats({0}));
    CHECK(c0.beta == std::map<Nat, std::uint32_t>{{Nat(2), 1}});
    CHECK(c0.a == Nat(4));
    CHECK(c0.c == 1);

    Configuration c1 = encode_args(nats({1}));
    CHECK(c1.beta == std::map<Nat, std::uint32_t>{{Nat(2), 1}, {Nat(4), 1}});
    CHECK(c1.a == Nat(6));

    Configuration c00 = encode_args(nats({0, 0}));
    CHECK(c00.beta == std::map<Nat, std::uint32_t>{{Nat(2), 1}, {Nat(6), 1}});
    CHECK(c00.a == Nat(8));

    Configuration c21 = encode_args(nats({2, 1}));
    CHECK(c21.beta == std::map<Nat, std::uint32_t>{
                          {Nat(2), 1}, {Nat(4), 1}, {Nat(6), 1}, {Nat(10), 1}, {Nat(12), 1}});
    CHECK(c21.a == Nat(14));
  }

  SECTION("oracle sweep over small tuples") {
    std::vector<std::vector<std::uint64_t>> cases;
    for (std::uint64_t x = 0; x <= 6; ++x) cases.push_back({x});
    for (std::uint64_t x = 0; x <= 4; ++x)
      for (std::uint64_t y = 0; y <= 4; ++y) cases.push_back({x, y});
    cases.push_back({3, 0, 5});
    cases.push_back({0, 0, 0, 0});
    for (const auto& xs : cases) {
      std::vector<Nat> args;
      for (auto x : xs) args.emplace_back(x);
      Configuration got = encode_args(args);
      Layout want = layout_oracle(xs);
      CHECK(got.beta == want.beta);
      CHECK(got.a == want.head);
    }
  }

  SECTION("no empty argument lists") {
    CHECK_THROWS_AS(encode_args({}), EmptyArgs);
  }
}

TEST_CASE("zero machine writes 0 in exactly three steps whatever the input") {
  TmSpec z = zero_machine();
  CHECK(z.M == 4);
  for (std::uint64_t x = 0; x <= 20; ++x) {
    RunResult r = run(z, nats({x}), kBudget);
    CHECK(r.value == Nat(0));
    CHECK(r.steps == Nat(3));
  }
  RunResult multi = run(z, nats({3, 5}), kBudget);
  CHECK(multi.value == Nat(0));
  CHECK(multi.steps == Nat(3));
}

TEST_CASE("successor machine computes x + 1") {
  TmSpec s = successor_machine();
  for (std::uint64_t x = 0; x <= 50; ++x) {
    RunResult r = run(s, nats({x}), kBudget);
    CHECK(r.value == Nat(x + 1));
  }
  // copy does 7 steps on input 0, the append tail does 2
  CHECK(run(s, nats({0}), kBudget).steps == Nat(9));
}

TEST_CASE("projection machines select their argument") {
  for (std::uint32_t n = 1; n <= 3; ++n) {
    for (std::uint32_t i = 1; i <= n; ++i) {
      TmSpec p = projection_machine(n, i);
      std::vector<std::uint64_t> xs(n, 0);
      // walk the full box {0..5}^n
      while (true) {
        std::vector<Nat> args;
        for (auto x : xs) args.emplace_back(x);
        RunResult r = run(p, args, kBudget);
        CHECK(r.value == Nat(xs[i - 1]));
        std::size_t j = 0;
        while (j < xs.size() && xs[j] == 5) xs[j++] = 0;
        if (j == xs.size()) break;
        ++xs[j];
      }
    }
  }
  CHECK_THROWS_AS(projection_machine(3, 0), Error);
  CHECK_THROWS_AS(projection_machine(3, 4), Error);
}

TEST_CASE("copy machine appends the selected word and spares the rest") {
  SECTION("frozen step counts from hand traces") {
    CHECK(run(copy_machine(), nats({0}), kBudget).steps == Nat(7));
    CHECK(run(copy_machine(), nats({1}), kBudget).steps == Nat(20));
    CHECK(run(copy_machine_n(2), nats({0, 0}), kBudget).steps == Nat(11));
    CHECK(run(copy_machine_n(2), nats({1, 0}), kBudget).steps == Nat(28));
  }

  SECTION("state count scales linearly with the reach") {
    CHECK(copy_machine_n(1).M == 14);
    for (std::uint32_t k = 2; k <= 5; ++k) CHECK(copy_machine_n(k).M == 4 * k + 11);
    CHECK_THROWS_AS(copy_machine_n(0), Error);
  }

  SECTION("final tape keeps later words intact and leaves one source stroke") {
    // copy the 2nd word left of the head on [3, 2]: source is x1 = 3
    RunResult r = run(copy_machine_n(2), nats({3, 2}), kBudget, true);
    CHECK(r.value == Nat(3));
    const Configuration& fin = r.trace->back();
    // words sit at offsets 1..4 and 6..8, so the head starts at 9; the
    // copy (4 strokes) lands at 10..13 with 9 left blank as separator
    for (long long p : {4, 6, 7, 8, 10, 11, 12, 13}) CHECK(fin.sym_at(cell_index(p)) == 1);
    // source eroded to its rightmost stroke at offset 4
    for (long long p : {1, 2, 3, 5, 9}) CHECK(fin.sym_at(cell_index(p)) == 0);
    CHECK(phys_of(fin.a) == 14);  // first blank right of the copy
    CHECK(!step(copy_machine_n(2), fin).has_value());
  }
}

TEST_CASE("concatenation runs the parts back to back with no glue steps") {
  TmSpec s = successor_machine();
  TmSpec ss = seq(s, s);
  for (std::uint64_t x = 0; x <= 10; ++x) {
    RunResult two = run(ss, nats({x}), kBudget);
    CHECK(two.value == Nat(x + 2));
    Nat expect = run(s, nats({x}), kBudget).steps + run(s, nats({x + 1}), kBudget).steps;
    CHECK(two.steps == expect);
  }
  // a one-step tail costs exactly one extra step
  RunResult r = run(seq(zero_machine(), print_stroke()), nats({5}), kBudget);
  CHECK(r.steps == Nat(4));
  CHECK(r.value == Nat(0));
  CHECK_THROWS_AS(seq(TmSpec{1, 1, {}}, TmSpec{1, 2, {}}), MalformedMachine);
}

TEST_CASE("runs respect the head, tape and state bounds") {
  auto check_bounds = [](const TmSpec& m, const std::vector<Nat>& args) {
    RunResult r = run(m, args, kBudget, true);
    const Configuration& init = r.trace->front();
    CHECK(init == encode_args(args));
    long long lo = 0, hi = 0;
    for (const auto& [idx, sym] : init.beta) {
      (void)sym;
      lo = std::min(lo, phys_of(idx));
      hi = std::max(hi, phys_of(idx));
    }
    lo = std::min(lo, phys_of(init.a));
    hi = std::max(hi, phys_of(init.a));
    long long span = hi - lo;
    long long steps = 0;
    for (const auto& cfg : *r.trace) {
      CHECK(cfg.c >= 1);
      CHECK(cfg.c <= m.M);
      // head excursion from the initial window grows at most one per step
      CHECK(phys_of(cfg.a) <= hi + steps);
      CHECK(phys_of(cfg.a) >= lo - steps);
      (void)span;
      // occupied cells grow at most one per step
      CHECK(cfg.beta.size() <= init.beta.size() + static_cast<std::size_t>(steps));
      for (const auto& [idx, sym] : cfg.beta) {
        (void)idx;
        CHECK(sym >= 1);
        CHECK(sym <= m.N);
      }
      ++steps;
    }
  };
  for (std::uint64_t x : {0, 1, 4, 9}) check_bounds(successor_machine(), nats({x}));
  check_bounds(copy_machine_n(3), nats({2, 0, 3}));
  check_bounds(zero_machine(), nats({7}));
}

TEST_CASE("runs without a budget or a numeral report failure") {
  TmSpec loop;
  loop.M = 1;
  loop.delta[{1, 0}] = {move_r(), 1};
  loop.validate();
  CHECK_THROWS_AS(run(loop, nats({3}), 100), NonTermination);

  CHECK_THROWS_AS(run(move_right(), nats({0}), kBudget), NoOutputNumeral);
  CHECK_THROWS_AS(run(move_left(), nats({0}), kBudget), NoOutputNumeral);
  CHECK(run(print_stroke(), nats({0}), kBudget).value == Nat(0));
}

TEST_CASE("machine validation rejects out-of-range entries") {
  TmSpec bad;
  bad.M = 2;
  bad.delta[{1, 0}] = {move_r(), 3};
  CHECK_THROWS_AS(bad.validate(), MalformedMachine);
  bad.delta.clear();
  bad.delta[{0, 0}] = {move_r(), 1};
  CHECK_THROWS_AS(bad.validate(), MalformedMachine);
  bad.delta.clear();
  bad.delta[{1, 2}] = {move_r(), 1};  // symbol beyond the alphabet
  CHECK_THROWS_AS(bad.validate(), MalformedMachine);
  bad.delta.clear();
  bad.delta[{1, 0}] = {write_sym(2), 1};
  CHECK_THROWS_AS(bad.validate(), MalformedMachine);
  CHECK_THROWS_AS(TmSpec{}.validate(), MalformedMachine);
}

TEST_CASE("machine files round-trip through text") {
  for (const TmSpec& m : {zero_machine(), successor_machine(), copy_machine_n(3),
                          projection_machine(2, 1), move_left(), print_stroke()}) {
    TmSpec back = parse_machine(machine_to_text(m));
    CHECK(back == m);
  }

  SECTION("comments, blank lines and spacing are tolerated") {
    TmSpec m = parse_machine(
        "# a tiny scanner\n"
        "states: 2\n"
        "\n"
        "alphabet: 1\n"
        "start: 1\n"
        "delta: 1 0 -> W 1 2   # print\n"
        "delta: 1 1 -> R 2\n");
    CHECK(m.M == 2);
    CHECK(m.find(1, 0)->first == write_sym(1));
    CHECK(m.find(1, 1)->first == move_r());
    CHECK(m.find(1, 1)->second == 2);
  }

  SECTION("parse errors carry the line number") {
    auto line_of = [](const std::string& text) {
      try {
        parse_machine(text);
      } catch (const ParseError& e) {
        return e.position;
      }
      return static_cast<std::size_t>(0);
    };
    CHECK(line_of("states: 1\nalphabet: 1\ndelta: 1 0 -> X 1\n") == 3);
    CHECK(line_of("states: 1\nalphabet: 1\nstart: 2\n") == 3);
    CHECK(line_of("alphabet: 1\n") == 1);  // missing states line
    CHECK(line_of("states: 1\nalphabet: 1\nbogus: 3\n") == 3);
    CHECK(line_of("states: 1\nalphabet: 1\ndelta: 1 0 -> R 1\ndelta: 1 0 -> L 1\n") == 4);
    CHECK(line_of("states: 1\nalphabet: 1\ndelta: 1 0 -> R 9\n") == 3);
  }
}
