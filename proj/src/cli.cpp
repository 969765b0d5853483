#include "msfmf/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "msfmf/csp.hpp"
#include "msfmf/errors.hpp"
#include "msfmf/oracle.hpp"
#include "msfmf/problem_io.hpp"
#include "msfmf/sort_infer.hpp"
#include "msfmf/symbreak.hpp"

namespace msfmf {
namespace {

struct Options {
  std::string path;
  std::string out;
  std::string plan = "auto";
  std::string witness;
  bool verify = false;
  bool search = false;
  bool timing = false;
  std::uint64_t cap = kDefaultCap;
  std::size_t max_size = 1'000'000;
};

class Report {
 public:
  void add(const std::string& key, const std::string& value) { lines_.emplace_back(key, value); }
  void add(const std::string& key, std::uint64_t value) { add(key, std::to_string(value)); }
  void write(std::ostream& os) const {
    for (const auto& [k, v] : lines_) os << k << ": " << v << '\n';
  }

 private:
  std::vector<std::pair<std::string, std::string>> lines_;
};

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return ss.str();
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

/// FNV-1a, 64 bit.
std::string digest(std::string_view text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

class Command {
 public:
  Command(std::string name, const Options& options, std::ostream& out, std::ostream& err)
      : options_(options), out_(out), err_(err), start_(std::chrono::steady_clock::now()) {
    report_.add("command", name);
  }

  /// Reads and parses the input; returns an exit code on failure.
  std::optional<int> load() {
    auto text = read_file(options_.path);
    if (!text) {
      err_ << "error: cannot read " << options_.path << '\n';
      return kExitIo;
    }
    report_.add("input", options_.path);
    report_.add("digest", digest(*text));
    try {
      problem_ = parse_problem(*text);
    } catch (const ParseError& e) {
      err_ << options_.path << ":" << e.line() << ":" << e.column() << ": " << e.detail() << '\n';
      return kExitDiagnostic;
    }
    auto errors = check_well_sorted(problem_);
    if (!errors.empty()) {
      for (const auto& e : errors) err_ << options_.path << ": " << e.message << " in " << e.subterm << '\n';
      return kExitDiagnostic;
    }
    return std::nullopt;
  }

  const Problem& problem() const { return problem_; }
  Report& report() { return report_; }
  const Options& options() const { return options_; }
  std::ostream& err() { return err_; }

  /// Writes `document` to --out if given, else to stdout; the report goes
  /// wherever the document does not.
  int finish(int code, const std::optional<std::string>& document = std::nullopt) {
    if (options_.timing) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - start_);
      report_.add("elapsed-ms", static_cast<std::uint64_t>(ms.count()));
    }
    if (!document) {
      report_.write(out_);
      return code;
    }
    if (!options_.out.empty()) {
      if (!write_file(options_.out, *document)) {
        err_ << "error: cannot write " << options_.out << '\n';
        return kExitIo;
      }
      report_.add("output", options_.out);
      report_.write(out_);
      return code;
    }
    out_ << *document;
    report_.write(err_);
    return code;
  }

 private:
  const Options& options_;
  std::ostream& out_;
  std::ostream& err_;
  std::chrono::steady_clock::time_point start_;
  Report report_;
  Problem problem_;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

/// "yes"/"no", or "unknown" when the space exceeds the cap.
template <typename Fn>
std::string bounded(Fn&& fn) {
  try {
    return yes_no(fn());
  } catch (const CapExceeded&) {
    return "unknown";
  }
}

int cmd_check(Command& cmd) {
  if (auto code = cmd.load()) return *code;
  const auto& p = cmd.problem();
  cmd.report().add("status", "ok");
  cmd.report().add("sorts", p.signature.sort_count());
  cmd.report().add("functions", p.signature.func_count());
  cmd.report().add("predicates", p.signature.pred_count());
  cmd.report().add("formulas", p.formulas.size());
  cmd.report().add("space", InterpretationSpace(p).exact_size());
  return cmd.finish(kExitOk);
}

int cmd_infer(Command& cmd) {
  if (auto code = cmd.load()) return *code;
  const Problem& p = cmd.problem();
  GeneralizationWitness w = infer_sorts(p);
  std::string document = "; " + format_substitution(w.eta) + "\n" + print_problem(w.generalized);
  cmd.report().add("sorts-before", p.signature.sort_count());
  cmd.report().add("sorts-after", w.generalized.signature.sort_count());
  cmd.report().add("witness", format_substitution(w.eta));
  int code = kExitOk;
  if (cmd.options().verify) {
    WitnessCheck check = verify_witness(p, w);
    cmd.report().add("witness-valid", yes_no(check.ok));
    for (const auto& d : check.diagnostics) cmd.err() << "witness: " << d << '\n';
    std::string preserved = bounded([&] {
      return is_satisfiable(p, cmd.options().cap).satisfiable ==
             is_satisfiable(w.generalized, cmd.options().cap).satisfiable;
    });
    cmd.report().add("sat-preserved", preserved);
    if (!check.ok || preserved == "no") code = kExitDiagnostic;
  }
  return cmd.finish(code, document);
}

int cmd_break(Command& cmd) {
  if (auto code = cmd.load()) return *code;
  const Problem& p = cmd.problem();
  std::vector<SchemeRequest> plan;
  if (cmd.options().plan == "auto") {
    plan = default_plan(p);
  } else {
    auto text = read_file(cmd.options().plan);
    if (!text) {
      cmd.err() << "error: cannot read " << cmd.options().plan << '\n';
      return kExitIo;
    }
    try {
      plan = parse_plan(*text);
    } catch (const ParseError& e) {
      cmd.err() << cmd.options().plan << ":" << e.line() << ":" << e.column() << ": " << e.detail()
                << '\n';
      return kExitDiagnostic;
    }
  }
  CombineResult result;
  try {
    result = combine(p, plan);
  } catch (const SchemeError& e) {
    cmd.err() << "error: " << e.what() << '\n';
    cmd.err() << "ledger: " << format_ledger(p.signature, e.ledger()) << '\n';
    return kExitDiagnostic;
  }

  std::string document;
  std::vector<Formula> emitted;
  for (const auto& app : result.trail) {
    document += audit_line(p.signature, app) + "\n";
    for (const auto& w : app.warnings) document += "; warning: " + w + "\n";
    emitted.insert(emitted.end(), app.formulas.begin(), app.formulas.end());
  }
  document += print_problem(result.problem);

  std::string plan_text;
  for (const auto& r : plan) plan_text += (plan_text.empty() ? "" : " ") + format_request(r);
  cmd.report().add("plan", plan_text.empty() ? "none" : plan_text);
  cmd.report().add("constraints", emitted.size());
  cmd.report().add("ledger", format_ledger(p.signature, result.ledger));
  int code = kExitOk;
  if (cmd.options().verify) {
    std::uint64_t cap = cmd.options().cap;
    std::string sound = bounded([&] {
      return is_satisfiable(p, cap).satisfiable == is_satisfiable(result.problem, cap).satisfiable;
    });
    std::string complete = bounded(
        [&] { return check_symmetry_breaking_completeness(p, emitted, cap).complete; });
    cmd.report().add("sat-preserved", sound);
    cmd.report().add("complete", complete);
    if (sound == "no" || complete == "no") code = kExitDiagnostic;
  }
  return cmd.finish(code, document);
}

int cmd_solve(Command& cmd) {
  if (auto code = cmd.load()) return *code;
  const Problem& p = cmd.problem();
  InterpretationSpace space(p);
  cmd.report().add("space", space.exact_size());
  std::optional<Interpretation> witness;
  if (cmd.options().search) {
    SearchResult r = search_models(p, 1, cmd.options().cap);
    cmd.report().add("nodes", r.nodes);
    if (!r.models.empty()) {
      witness = r.models.front();
    } else if (!r.complete) {
      cmd.report().add("verdict", "unknown");
      return cmd.finish(kExitIo);
    }
  } else {
    try {
      SatResult r = is_satisfiable(p, cmd.options().cap);
      cmd.report().add("examined", r.examined);
      witness = r.witness;
    } catch (const CapExceeded& e) {
      cmd.report().add("verdict", "unknown");
      cmd.report().add("cap", cmd.options().cap);
      return cmd.finish(kExitIo);
    }
  }
  if (!witness) {
    cmd.report().add("verdict", "UNSAT");
    return cmd.finish(kExitUnsat);
  }
  cmd.report().add("verdict", "SAT");
  std::string text = print_interpretation(p, *witness);
  if (!cmd.options().witness.empty()) {
    if (!write_file(cmd.options().witness, text)) {
      cmd.err() << "error: cannot write " << cmd.options().witness << '\n';
      return kExitIo;
    }
    cmd.report().add("witness", cmd.options().witness);
    return cmd.finish(kExitOk);
  }
  return cmd.finish(kExitOk, text);
}

int cmd_orbits(Command& cmd) {
  if (auto code = cmd.load()) return *code;
  OrbitPartition partition;
  try {
    partition = orbit_partition(cmd.problem(), cmd.options().cap);
  } catch (const CapExceeded& e) {
    cmd.err() << "error: " << e.what() << '\n';
    return kExitIo;
  }
  cmd.report().add("space", partition.space);
  cmd.report().add("group-order", partition.group_order);
  cmd.report().add("classes", partition.orbits.size());
  std::size_t models = 0;
  for (const auto& o : partition.orbits) models += o.satisfies;
  cmd.report().add("model-classes", models);
  for (std::size_t i = 0; i < partition.orbits.size(); ++i) {
    const auto& o = partition.orbits[i];
    cmd.report().add("class " + std::to_string(i + 1),
                     "size " + std::to_string(o.members.size()) + " first " +
                         std::to_string(o.members.front()) + " satisfies " + yes_no(o.satisfies));
  }
  return cmd.finish(kExitOk);
}

int cmd_ground(Command& cmd) {
  if (auto code = cmd.load()) return *code;
  Problem grounded;
  try {
    grounded = ground(cmd.problem(), cmd.options().max_size);
  } catch (const std::length_error& e) {
    cmd.err() << "error: " << e.what() << '\n';
    return kExitDiagnostic;
  }
  std::size_t size = 0;
  for (const auto& f : grounded.formulas) size += formula_size(f);
  cmd.report().add("formulas", grounded.formulas.size());
  cmd.report().add("size", size);
  return cmd.finish(kExitOk, print_problem(grounded));
}

int cmd_csp(Command& cmd) {
  if (auto code = cmd.load()) return *code;
  const Problem& p = cmd.problem();
  Csp flat = flat_csp(p);
  cmd.report().add("flat-variables", flat.variables().size());
  cmd.report().add("flat-constraints", flat.constraints().size());
  cmd.report().add("flat-bindings", flat.binding_count());
  try {
    Csp functional = functional_csp(p, cmd.options().cap);
    cmd.report().add("functional-variables", functional.variables().size());
    cmd.report().add("functional-bindings", functional.binding_count());
    if (cmd.options().verify) {
      std::uint64_t cap = cmd.options().cap;
      std::string all = bounded([&] {
        for (const auto& sigma : domain_symmetries(p, cap))
          if (!is_solution_symmetry(functional, functional_extension(p, sigma, cap), cap))
            return false;
        return true;
      });
      cmd.report().add("extensions-are-solution-symmetries", all);
      if (all == "no") return cmd.finish(kExitDiagnostic);
    }
  } catch (const CapExceeded& e) {
    cmd.report().add("functional-variables", "unknown");
  }
  return cmd.finish(kExitOk);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite model finding with domain symmetries", "msfmf"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--timing", o.timing, "Report elapsed time");

  auto input = [&](CLI::App* sub) {
    sub->add_option("path", o.path, "Problem file")->required();
  };
  auto cap = [&](CLI::App* sub) {
    sub->add_option("--cap", o.cap, "Largest search space to enumerate")->capture_default_str();
  };

  auto* check = app.add_subcommand("check", "Parse and sort-check a problem");
  input(check);
  auto* infer = app.add_subcommand("infer", "Split sorts as finely as well-sortedness allows");
  input(infer);
  infer->add_option("--out", o.out, "Write the generalized problem here");
  infer->add_flag("--verify", o.verify, "Check the witness and satisfiability");
  cap(infer);
  auto* brk = app.add_subcommand("break", "Append symmetry-breaking constraints");
  input(brk);
  brk->add_option("--plan", o.plan, "`auto` or a plan file")->capture_default_str();
  brk->add_option("--out", o.out, "Write the extended problem here");
  brk->add_flag("--verify", o.verify, "Check soundness and completeness");
  cap(brk);
  auto* solve = app.add_subcommand("solve", "Decide satisfiability");
  input(solve);
  cap(solve);
  solve->add_option("--witness", o.witness, "Write the model here");
  solve->add_flag("--search", o.search, "Backtracking search; --cap bounds search nodes");
  auto* orbits = app.add_subcommand("orbits", "Orbits of the interpretation space");
  input(orbits);
  cap(orbits);
  auto* gr = app.add_subcommand("ground", "Expand every quantifier");
  input(gr);
  gr->add_option("--out", o.out, "Write the ground problem here");
  gr->add_option("--max-size", o.max_size, "Largest ground output, in nodes")->capture_default_str();
  auto* csp = app.add_subcommand("csp", "Flat and functional CSP summary");
  input(csp);
  cap(csp);
  csp->add_flag("--verify", o.verify, "Check functional extensions of domain symmetries");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitIo;
  }

  std::string name = app.get_subcommands().front()->get_name();
  Command cmd(name, o, out, err);
  if (name == "check") return cmd_check(cmd);
  if (name == "infer") return cmd_infer(cmd);
  if (name == "break") return cmd_break(cmd);
  if (name == "solve") return cmd_solve(cmd);
  if (name == "orbits") return cmd_orbits(cmd);
  if (name == "ground") return cmd_ground(cmd);
  return cmd_csp(cmd);
}

}  // namespace msfmf
