// Command-line front end over the library: run and number machines, evaluate
// and classify recursion-scheme terms, drive the witness pipeline, fit and
// check step bounds, and decide the two coded search problems.
//
// Exit codes: 0 verdict or result computed (a 0/false verdict is success),
// 1 usage error, 2 runtime error (budgets, malformed inputs, missing files).

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "primrec/bool_expr.hpp"
#include "primrec/codec.hpp"
#include "primrec/digraph.hpp"
#include "primrec/errors.hpp"
#include "primrec/eval.hpp"
#include "primrec/kleene.hpp"
#include "primrec/nat.hpp"
#include "primrec/sparse_nat.hpp"
#include "primrec/stdlib_env.hpp"
#include "primrec/tau.hpp"
#include "primrec/term.hpp"
#include "primrec/term_io.hpp"
#include "primrec/tm.hpp"
#include "primrec/tm_codec.hpp"

using namespace primrec;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit_or_print(const std::string& emit, const std::string& text) {
  if (emit.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(emit);
  if (!out) throw Error("cannot write " + emit);
  out << text;
}

DefEnv load_env(const std::string& def) {
  DefEnv env = stdlib_env();
  if (!def.empty() && def != "stdlib") parse_defs(slurp(def), env);
  return env;
}

std::vector<Nat> to_nats(const std::vector<std::string>& raw) {
  std::vector<Nat> out;
  for (const auto& s : raw) out.push_back(Nat::from_string(s));
  return out;
}

TmSpec load_machine(const std::string& path) { return parse_machine(slurp(path)); }

// Decimal digit count. Exact via the printed form when the value is dense;
// otherwise floor(log10) + 1 off the leading sparse term with 100-digit
// float precision — the lower-order terms are smaller by astronomical
// factors and cannot move the count.
Nat digit_length(const SparseNat& x) {
  if (x.dense_ok(1u << 20)) {
    Nat d = x.dense(1u << 20);
    if (d.str() == "0") return Nat(1);
    return Nat(d.str().size());
  }
  using Float = boost::multiprecision::cpp_bin_float_100;
  const auto& lead = x.terms().front();
  Float shift = lead.shift.fits_u64() ? Float(lead.shift.u64()) : Float(lead.shift.str());
  Float lg = shift * log10(Float(2)) + log10(Float(lead.coeff));
  return Nat(BigInt(floor(lg).convert_to<BigInt>())) + Nat(1);
}

std::string config_line(std::uint64_t z, const Configuration& cfg) {
  std::string out = "step " + std::to_string(z) + " state " + std::to_string(cfg.c) +
                    " head " + cfg.a.str() + " marks";
  if (cfg.beta.empty()) out += " -";
  for (const auto& [idx, sym] : cfg.beta) {
    out += " " + idx.str();
    if (sym != 1) out += ":" + std::to_string(sym);
  }
  return out + "\n";
}

// ---- per-subcommand state ------------------------------------------------

struct Opts {
  std::string machine, term, def, emit, which, kind, expr, graph;
  std::vector<std::string> args;
  std::string gn, code;
  std::uint64_t budget = kDefaultMaxSteps;
  std::uint64_t eval_budget = 1000000000ull;
  std::uint64_t seed = 0x5eed;
  std::uint64_t samples = 200;
  std::uint64_t sweep_max = 10;
  std::uint32_t arity = 1;
  std::uint32_t n = 1, i = 1, k = 1;
  bool trace = false;
  std::uint32_t jobs = 1;  // accepted for forward compatibility; single-threaded
};

void run_tm_trace(const TmSpec& spec, const std::vector<Nat>& xs, std::uint64_t budget) {
  Configuration cfg = encode_args(xs);
  std::uint64_t z = 0;
  std::cout << config_line(z, cfg);
  while (auto nx = step(spec, cfg)) {
    cfg = std::move(*nx);
    if (++z > budget) throw NonTermination("no terminal configuration within budget");
    std::cout << config_line(z, cfg);
  }
}

void cmd_tm_run(const Opts& o) {
  TmSpec spec = load_machine(o.machine);
  std::vector<Nat> xs = to_nats(o.args);
  if (o.trace) run_tm_trace(spec, xs, o.budget);
  RunResult r = run(spec, xs, o.budget);
  std::cout << "value " << r.value << "\n" << "steps " << r.steps << "\n";
}

void cmd_tm_trace(const Opts& o) {
  TmSpec spec = load_machine(o.machine);
  std::vector<Nat> xs = to_nats(o.args);
  run_tm_trace(spec, xs, o.budget);
  Configuration cfg = encode_args(xs);
  std::uint64_t z = 0;
  while (auto nx = step(spec, cfg)) {
    cfg = std::move(*nx);
    ++z;
  }
  std::cout << "steps " << z << "\n";
  try {
    std::cout << "value " << decode_output(cfg) << "\n";
  } catch (const NoOutputNumeral&) {
    std::cout << "value none\n";
  }
}

void cmd_tm_encode(const Opts& o) {
  TmSpec spec = load_machine(o.machine);
  MachineCode code = machine_code(spec);
  std::cout << "states " << code.M << "\n"
            << "alphabet " << code.N << "\n"
            << "entries " << code.exps.size() << "\n";
  for (std::size_t k = 0; k < code.exps.size(); ++k) {
    std::cout << "entry " << k << " ";
    if (code.exps[k].dense_ok(4096))
      std::cout << code.exps[k].dense(4096) << "\n";
    else
      std::cout << code.exps[k].describe() << "\n";
  }
  try {
    Nat g = godel_number(spec, 1u << 22);
    std::cout << "godel-number " << g << "\n";
  } catch (const ValueTooLarge&) {
    std::cout << "godel-number (exceeds the dense guard; entries above are exact)\n";
  }
}

std::string trimmed(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t at = 0;
  while (at < s.size() && std::isspace(static_cast<unsigned char>(s[at]))) ++at;
  return s.substr(at);
}

void cmd_tm_decode(const Opts& o) {
  std::string digits = o.gn.empty() ? trimmed(slurp(o.code)) : o.gn;
  TmSpec spec = decode_machine(Nat::from_string(digits));
  emit_or_print(o.emit, machine_to_text(spec));
}

void cmd_tm_build(const Opts& o) {
  TmSpec spec;
  if (o.kind == "zero")
    spec = zero_machine();
  else if (o.kind == "succ")
    spec = successor_machine();
  else if (o.kind == "proj")
    spec = projection_machine(o.n, o.i);
  else if (o.kind == "copy")
    spec = copy_machine_n(o.k);
  else
    throw Error("unknown machine kind '" + o.kind + "' (zero, succ, proj, copy)");
  emit_or_print(o.emit, machine_to_text(spec));
}

void cmd_prf_eval(const Opts& o) {
  DefEnv env = load_env(o.def);
  Term t = parse_term(o.term);
  std::cout << eval_fast(t, to_nats(o.args), env, stdlib_intrinsics(), o.eval_budget) << "\n";
}

void cmd_prf_check(const Opts& o) {
  DefEnv env = load_env(o.def);
  std::cout << "arity " << arity_check(parse_term(o.term), env) << "\n";
}

void cmd_prf_classify(const Opts& o) {
  DefEnv env = load_env(o.def);
  Classification c = classify(parse_term(o.term), env);
  std::cout << (c == Classification::PrimitiveRecursive ? "primitive-recursive"
                                                        : "mu-recursive")
            << "\n";
}

void cmd_kleene_verify(const Opts& o) {
  TmSpec spec = load_machine(o.machine);
  std::vector<Nat> xs = to_nats(o.args);
  Nat halted = validate_prop1(spec, xs, o.budget);
  std::cout << "steps " << halted << "\n" << "envelope ok\n";
  Witness w = mu_search_checked(spec, xs, {o.samples, o.seed}, o.budget);
  std::cout << "witness ok (rejected " << w.r << " prefixes and " << o.samples
            << " sampled candidates)\n";
  std::cout << "value " << u_extract(w.y) << "\n";
}

void cmd_kleene_witness(const Opts& o) {
  TmSpec spec = load_machine(o.machine);
  Witness w = mu_search_checked(spec, to_nats(o.args), {o.samples, o.seed}, o.budget);
  std::cout << "r " << w.r << "\n"
            << "s-digits " << digit_length(w.s) << "\n"
            << "y-digits " << digit_length(w.y) << "\n"
            << "value " << u_extract(w.y) << "\n";
}

void cmd_kleene_compile(const Opts& o) {
  TmSpec spec = load_machine(o.machine);
  DefEnv env = load_env(o.def);
  Term bound = parse_term(o.term);
  CompileResult cr = theorem1_compile(spec, bound, env);
  std::cout << "arity " << cr.arity << "\n" << "classification primitive-recursive\n";
  std::string defs;
  defs += "DEF next_cfg = " + to_text(cr.next_cfg) + "\n";
  defs += "DEF init_cfg = " + to_text(cr.init_cfg) + "\n";
  defs += "DEF kfun = " + to_text(cr.kfun_term) + "\n";
  defs += "DEF halt_test = " + to_text(cr.t_term) + "\n";
  defs += "DEF extract = " + to_text(cr.u_term) + "\n";
  defs += "DEF search_bound = " + to_text(cr.y_bound) + "\n";
  defs += "DEF compiled = " + to_text(cr.f) + "\n";
  if (o.emit.empty())
    std::cout << defs;
  else
    emit_or_print(o.emit, defs);
}

void cmd_kleene_bound(const Opts& o) {
  TmSpec spec = load_machine(o.machine);
  DefEnv env = load_env(o.def);
  YBoundParts parts = y_bound_parts(parse_term(o.term), spec, env);
  std::cout << "span = " << to_text(parts.span) << "\n"
            << "a-bound = " << to_text(parts.a_bound) << "\n"
            << "b-bound = " << to_text(parts.b_bound) << "\n"
            << "s-bound = " << to_text(parts.s_bound) << "\n"
            << "y-bound = " << to_text(parts.y) << "\n";
}

void cmd_tau_measure(const Opts& o) {
  TmSpec spec = load_machine(o.machine);
  std::cout << measure_steps(spec, to_nats(o.args), o.budget) << "\n";
}

void cmd_tau_fit(const Opts& o) {
  TauBound b{Term::zero(), TauProvenance::Constant};
  if (o.which == "Z")
    b = tau_initial(InitialZ{});
  else if (o.which == "S")
    b = tau_initial(InitialS{});
  else if (o.which == "P")
    b = tau_initial(InitialProj{o.n, o.i});
  else
    throw Error("unknown initial function '" + o.which + "' (Z, S, P)");
  const char* prov = "constant";
  if (b.provenance == TauProvenance::MeasuredFit) prov = "measured-fit";
  std::cout << "provenance " << prov << "\n" << "bound = " << to_text(b.term) << "\n";
}

void cmd_tau_check(const Opts& o) {
  TmSpec spec = load_machine(o.machine);
  DefEnv env = load_env(o.def);
  Term bound = parse_term(o.term);
  std::vector<std::vector<Nat>> samples;
  for (auto& tup : taudetail::sweep_tuples(o.arity, o.sweep_max)) samples.push_back(tup);
  std::cout << check_bound(spec, bound, samples, env).text();
}

// one expression per line; blank lines and '#' comments pass through silently
void cmd_sat_decide_file(const std::string& path) {
  std::istringstream in(slurp(path));
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trimmed(line);
    if (t.empty() || t[0] == '#') continue;
    std::cout << (truth_table_sat(parse_bool(t)).satisfiable ? 1 : 0) << "\n";
  }
}

void cmd_sat_decide(const Opts& o) {
  BoolExprPtr e;
  if (!o.gn.empty()) {
    auto dec = decode_gn(Nat::from_string(o.gn));
    if (!dec) {
      std::cout << "0\n";
      return;
    }
    e = *dec;
  } else {
    e = parse_bool(o.expr);
  }
  SatResult r = truth_table_sat(e);
  std::cout << (r.satisfiable ? 1 : 0) << "\n";
  if (r.satisfiable) {
    std::cout << "witness";
    if (r.assignment.empty()) std::cout << " (no variables)";
    for (const auto& [var, val] : r.assignment)
      std::cout << " e" << var << "=" << (val ? "T" : "F");
    std::cout << "\n";
  }
}

void cmd_sat_encode(const Opts& o) { std::cout << gn(parse_bool(o.expr)) << "\n"; }

void cmd_sat_decode(const Opts& o) {
  auto dec = decode_gn(Nat::from_string(o.gn));
  std::cout << (dec ? bool_to_text(*dec) : "not-well-formed") << "\n";
}

Digraph load_graph_opt(const Opts& o) {
  if (!o.graph.empty()) return parse_graph(slurp(o.graph));
  return decode_graph(Nat::from_string(o.code));
}

void cmd_hampath_decide(const Opts& o) {
  Digraph g;
  try {
    g = load_graph_opt(o);
  } catch (const MalformedGraph&) {
    if (o.graph.empty()) {
      std::cout << "0\n";  // non-codes carry no path
      return;
    }
    throw;
  }
  HamPathResult r = hampath_brute(g);
  std::cout << (r.found ? 1 : 0) << "\n";
  if (r.found) {
    std::cout << "path";
    for (std::uint32_t node : r.path) std::cout << " " << node;
    std::cout << "\n";
  }
}

void cmd_hampath_encode(const Opts& o) {
  SparseNat code = encode_graph(parse_graph(slurp(o.graph)));
  if (code.dense_ok(1u << 16))
    std::cout << code.dense(1u << 16) << "\n";
  else
    std::cout << "sparse " << code.describe() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  Opts o;
  CLI::App app{"computability workbench: unary machines, recursion schemes, and codes"};
  app.require_subcommand(1);

  auto add_machine = [&](CLI::App* c) {
    c->add_option("--machine", o.machine, "machine description file")->required();
  };
  auto add_args = [&](CLI::App* c) {
    c->add_option("--args", o.args, "input numerals")->required()->expected(-1);
  };
  auto add_common = [&](CLI::App* c) {
    c->add_option("--budget", o.budget, "step budget");
    c->add_option("--seed", o.seed, "sampling seed");
    c->add_option("--jobs", o.jobs, "worker count (reserved)");
  };

  CLI::App* tm = app.add_subcommand("tm", "unary Turing machines");
  tm->require_subcommand(1);
  {
    CLI::App* c = tm->add_subcommand("run", "run a machine and print value and steps");
    add_machine(c);
    add_args(c);
    add_common(c);
    c->add_flag("--trace", o.trace, "print every configuration first");
    c->callback([&] { cmd_tm_run(o); });
  }
  {
    CLI::App* c = tm->add_subcommand("trace", "print every configuration of a run");
    add_machine(c);
    add_args(c);
    add_common(c);
    c->callback([&] { cmd_tm_trace(o); });
  }
  {
    CLI::App* c = tm->add_subcommand("encode", "print the machine's numeric code");
    add_machine(c);
    c->callback([&] { cmd_tm_encode(o); });
  }
  {
    CLI::App* c = tm->add_subcommand("decode", "rebuild a machine from its numeric code");
    auto* g = c->add_option("--gn", o.gn, "machine code (decimal)");
    auto* f = c->add_option("--gn-file", o.code, "file holding the code in decimal");
    g->excludes(f);
    c->add_option("--emit", o.emit, "write the machine file here");
    c->callback([&] {
      if (o.gn.empty() && o.code.empty()) throw CLI::RequiredError("--gn or --gn-file");
      cmd_tm_decode(o);
    });
  }
  {
    CLI::App* c = tm->add_subcommand("build", "write a builder machine");
    c->add_option("--kind", o.kind, "zero | succ | proj | copy")->required();
    c->add_option("--n", o.n, "argument count for proj");
    c->add_option("--i", o.i, "selected argument for proj");
    c->add_option("--k", o.k, "word distance for copy");
    c->add_option("--emit", o.emit, "write the machine file here");
    c->callback([&] { cmd_tm_build(o); });
  }

  CLI::App* prf = app.add_subcommand("prf", "recursion-scheme terms");
  prf->require_subcommand(1);
  {
    CLI::App* c = prf->add_subcommand("eval", "evaluate a term");
    c->add_option("--term", o.term, "term text")->required();
    c->add_option("--def", o.def, "definition file, or 'stdlib'");
    add_args(c);
    c->add_option("--budget", o.eval_budget, "evaluation budget");
    c->callback([&] { cmd_prf_eval(o); });
  }
  {
    CLI::App* c = prf->add_subcommand("check", "arity-check a term");
    c->add_option("--term", o.term, "term text")->required();
    c->add_option("--def", o.def, "definition file, or 'stdlib'");
    c->callback([&] { cmd_prf_check(o); });
  }
  {
    CLI::App* c = prf->add_subcommand("classify", "classify a term");
    c->add_option("--term", o.term, "term text")->required();
    c->add_option("--def", o.def, "definition file, or 'stdlib'");
    c->callback([&] { cmd_prf_classify(o); });
  }

  CLI::App* kleene = app.add_subcommand("kleene", "halting-witness pipeline");
  kleene->require_subcommand(1);
  {
    CLI::App* c = kleene->add_subcommand("verify", "check envelopes and the witness");
    add_machine(c);
    add_args(c);
    add_common(c);
    c->add_option("--samples", o.samples, "sampled candidates below the witness");
    c->callback([&] { cmd_kleene_verify(o); });
  }
  {
    CLI::App* c = kleene->add_subcommand("witness", "print the least-witness facts");
    add_machine(c);
    add_args(c);
    add_common(c);
    c->add_option("--samples", o.samples, "sampled candidates below the witness");
    c->callback([&] { cmd_kleene_witness(o); });
  }
  {
    CLI::App* c = kleene->add_subcommand("compile", "compile a machine to a closed term");
    add_machine(c);
    c->add_option("--term", o.term, "step-bound term")->required();
    c->add_option("--def", o.def, "definition file, or 'stdlib'");
    c->add_option("--emit", o.emit, "write the definitions here");
    c->callback([&] { cmd_kleene_compile(o); });
  }
  {
    CLI::App* c = kleene->add_subcommand("bound", "print the symbolic witness bound");
    add_machine(c);
    c->add_option("--term", o.term, "step-bound term")->required();
    c->add_option("--def", o.def, "definition file, or 'stdlib'");
    c->callback([&] { cmd_kleene_bound(o); });
  }

  CLI::App* tau = app.add_subcommand("tau", "step counts and bounds");
  tau->require_subcommand(1);
  {
    CLI::App* c = tau->add_subcommand("measure", "print the exact step count");
    add_machine(c);
    add_args(c);
    add_common(c);
    c->callback([&] { cmd_tau_measure(o); });
  }
  {
    CLI::App* c = tau->add_subcommand("fit", "fit a bound for an initial function");
    c->add_option("--which", o.which, "Z | S | P")->required();
    c->add_option("--n", o.n, "argument count for P");
    c->add_option("--i", o.i, "selected argument for P");
    c->callback([&] { cmd_tau_fit(o); });
  }
  {
    CLI::App* c = tau->add_subcommand("check", "check a bound over a sweep");
    add_machine(c);
    c->add_option("--term", o.term, "bound term")->required();
    c->add_option("--def", o.def, "definition file, or 'stdlib'");
    c->add_option("--arity", o.arity, "tuple width of the sweep");
    c->add_option("--max", o.sweep_max, "per-component sweep limit");
    c->callback([&] { cmd_tau_check(o); });
  }

  CLI::App* sat = app.add_subcommand("sat", "Boolean satisfiability over codes");
  sat->require_subcommand(1);
  {
    CLI::App* c = sat->add_subcommand("decide", "decide satisfiability");
    auto* g = c->add_option("--gn", o.gn, "expression code (decimal)");
    auto* e = c->add_option("--expr", o.expr, "expression text");
    auto* f = c->add_option("--file", o.code, "expression file, one per line");
    g->excludes(e);
    g->excludes(f);
    e->excludes(f);
    c->callback([&] {
      if (!o.code.empty()) {
        cmd_sat_decide_file(o.code);
        return;
      }
      if (o.gn.empty() && o.expr.empty())
        throw CLI::RequiredError("--gn, --expr, or --file");
      cmd_sat_decide(o);
    });
  }
  {
    CLI::App* c = sat->add_subcommand("encode", "expression text to code");
    c->add_option("--expr", o.expr, "expression text")->required();
    c->callback([&] { cmd_sat_encode(o); });
  }
  {
    CLI::App* c = sat->add_subcommand("decode", "code to expression text");
    c->add_option("--gn", o.gn, "expression code (decimal)")->required();
    c->callback([&] { cmd_sat_decode(o); });
  }

  CLI::App* ham = app.add_subcommand("hampath", "Hamiltonian paths over codes");
  ham->require_subcommand(1);
  {
    CLI::App* c = ham->add_subcommand("decide", "decide path existence");
    auto* g = c->add_option("--graph", o.graph, "graph description file");
    auto* n = c->add_option("--code", o.code, "graph code (decimal)");
    g->excludes(n);
    c->callback([&] {
      if (o.graph.empty() && o.code.empty())
        throw CLI::RequiredError("--graph or --code");
      cmd_hampath_decide(o);
    });
  }
  {
    CLI::App* c = ham->add_subcommand("encode", "graph file to code");
    c->add_option("--graph", o.graph, "graph description file")->required();
    c->callback([&] { cmd_hampath_encode(o); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
