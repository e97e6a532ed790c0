#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "hvalab/builders.hpp"
#include "hvalab/diophantine.hpp"
#include "hvalab/error.hpp"
#include "hvalab/langlab.hpp"
#include "hvalab/machine_io.hpp"
#include "hvalab/simulate.hpp"
#include "hvalab/transforms.hpp"

namespace hvalab::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A machine file parsed but failed validation; diagnostics already emitted.
struct InvalidMachine {};

void emit(std::ostream& out, const Json& j) { out << j.dump() << '\n'; }

Json summary_json(const MachineSummary& s) {
  return Json{{"kind", std::string(to_string(s.kind))}, {"states", s.states}, {"dimension", s.dimension}};
}

Json vector_json(const RowVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x.to_string());
  return out;
}

Json report_json(const TransformReport& r) {
  Json params = Json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  return Json{{"pass", r.pass_name},
              {"input", summary_json(r.input_summary)},
              {"output", summary_json(r.output_summary)},
              {"parameters", params}};
}

Json nullable(const std::optional<std::string>& s) { return s ? Json(*s) : Json(nullptr); }

std::size_t parse_count(const std::string& text, const std::string& what) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) throw UsageError(what + " must be a nonnegative integer, got '" + text + "'");
  return value;
}

struct Options {
  std::optional<std::size_t> budget;
  std::optional<std::size_t> epsilon_budget;

  SearchBudget search_budget() const {
    SearchBudget b;
    if (const char* env = std::getenv(kBudgetEnv); env && *env) b.max_configurations = parse_count(env, kBudgetEnv);
    if (budget) b.max_configurations = *budget;
    b.max_epsilon_per_path = epsilon_budget;
    return b;
  }
};

class Commands {
 public:
  Commands(std::ostream& out, const Options& opts) : out_(out), opts_(opts) {}

  MachineSpec load(const std::string& path) {
    MachineSpec spec = read_machine_file(path);
    const auto diags = validate(spec);
    if (!diags.empty()) {
      for (const auto& d : diags) emit(out_, diagnostic_json(d));
      emit(out_, Json{{"error", "invalid-machine"}, {"file", path}, {"diagnostics", diags.size()}});
      throw InvalidMachine{};
    }
    return spec;
  }

  int validate_file(const std::string& path) {
    const MachineSpec spec = read_machine_file(path);
    const auto diags = validate(spec);
    for (const auto& d : diags) emit(out_, diagnostic_json(d));
    emit(out_, Json{{"command", "validate"},
                    {"file", path},
                    {"valid", diags.empty()},
                    {"summary", summary_json(MachineSummary::of(spec))}});
    return diags.empty() ? kOk : kUsage;
  }

  int run_machine(const std::string& path, const std::string& w, bool with_trace) {
    const MachineSpec spec = load(path);
    check_word(spec, w);
    Json rec{{"command", "run"}, {"input", w}};
    if (spec.kind == Kind::GFA) {
      const Rational value = gfa_value(spec, w);
      const bool ok = value == *spec.gfa_cutpoint;
      rec["verdict"] = ok ? "Accept" : "Reject";
      rec["value"] = value.to_string();
      emit(out_, rec);
      return ok ? kOk : kNegative;
    }
    const RunResult r = spec.mode == Mode::Deterministic ? run_deterministic(spec, w)
                                                         : run_nondeterministic(spec, w, opts_.search_budget());
    rec["verdict"] = std::string(to_string(r.verdict));
    rec["configurations"] = r.configurations_explored;
    if (with_trace && r.trace) {
      Json trace = Json::array();
      for (const auto& c : *r.trace)
        trace.push_back(Json{{"state", spec.states[c.state]}, {"position", c.position}, {"vector", vector_json(c.reg)}});
      rec["trace"] = trace;
    }
    if (with_trace && r.accepting_path) {
      Json path_json = Json::array();
      for (std::size_t i : *r.accepting_path) {
        const auto& t = spec.transitions[i];
        path_json.push_back(Json{{"rule", i},
                                 {"from", spec.states[t.from]},
                                 {"input", t.input.to_string()},
                                 {"to", spec.states[t.to]}});
      }
      rec["path"] = path_json;
    }
    emit(out_, rec);
    switch (r.verdict) {
      case Verdict::Accept: return kOk;
      case Verdict::Reject: return kNegative;
      case Verdict::BudgetExceeded: return kBudget;
    }
    return kUsage;
  }

  int transform(const std::string& pass, const std::string& in, const std::string& out_path,
                const std::optional<std::string>& by) {
    const MachineSpec spec = load(in);
    const SearchBudget budget = opts_.search_budget();
    Transformed t;
    if (pass == "remove-endmarker") t = remove_endmarker(spec, budget);
    else if (pass == "rationals-to-integers") t = rationals_to_integers(spec);
    else if (pass == "eliminate-states") t = eliminate_states(spec);
    else if (pass == "counters-to-hva1") t = counters_to_hva1(spec);
    else if (pass == "counters-to-integer-hva3") t = counters_to_integer_hva3(spec, budget);
    else if (pass == "extendedfa-embed") {
      MachineSpec m = extendedfa_embed(spec);
      t.reports.push_back(TransformReport{pass, MachineSummary::of(spec), MachineSummary::of(m), {}});
      t.machine = std::move(m);
    } else if (pass == "scale-initial-vector") {
      if (!by) throw UsageError("scale-initial-vector needs --by T");
      t = scale_initial_vector(spec, Rational::parse(*by));
    } else {
      throw UsageError("unknown pass '" + pass + "'");
    }
    return finish(t, out_path, "transform");
  }

  int intersect(const std::string& a, const std::string& b, const std::string& out_path) {
    return finish(intersect_blind_hva(load(a), load(b)), out_path, "intersect");
  }

  int build(const std::string& name, const std::optional<std::string>& param, const std::optional<std::string>& out_path) {
    const std::string text = param ? name + ":" + *param : name;
    const auto id = ExampleName::parse(text);
    if (!id)
      throw UsageError("unknown example '" + text +
                       "'; try pow_r, ab_star, mod M, mod_rot M, ab_k_star K, eq, leq, dyck, evenab, "
                       "l_epsilon, unary_point I");
    const MachineSpec spec = example(*id);
    write_or_print(spec, out_path, Json{{"command", "build"}, {"example", id->to_string()}});
    return kOk;
  }

  int separate(const std::string& x, const std::vector<std::string>& ys, const std::string& model,
               const std::vector<std::string>& also, int base, const std::optional<std::string>& out_path) {
    std::set<std::string> accepted{x};
    accepted.insert(also.begin(), also.end());
    MachineSpec spec;
    if (model == "dbva" || model == "dbhva") {
      if (!also.empty()) throw UsageError("--also needs --model va or nbhva");
      spec = model == "dbva" ? binary_distinguisher(x, base) : hva_distinguisher(x, base);
    } else if (model == "va") {
      spec = finite_language_va(accepted, base);
    } else if (model == "nbhva") {
      spec = finite_language_nbhva(accepted, base);
    } else {
      throw UsageError("unknown model '" + model + "'; expected dbva, dbhva, va or nbhva");
    }

    const SearchBudget budget = opts_.search_budget();
    bool all_ok = true;
    const auto verify_one = [&](const std::string& w, bool expect) {
      const bool got = accepts(spec, w, budget);
      all_ok = all_ok && got == expect;
      emit(out_, Json{{"input", w}, {"expected", expect ? "Accept" : "Reject"}, {"verdict", got ? "Accept" : "Reject"}});
    };
    for (const auto& a : accepted) verify_one(a, true);
    std::vector<std::string> rejects = ys;
    if (!accepted.count("")) rejects.insert(rejects.begin(), "");
    for (const auto& y : rejects) {
      if (accepted.count(y)) throw UsageError("'" + y + "' is both accepted and rejected");
      verify_one(y, false);
    }

    Json rec{{"command", "separate"}, {"model", model}, {"summary", summary_json(MachineSummary::of(spec))}, {"ok", all_ok}};
    if (out_path) {
      write_machine_file(*out_path, spec);
      rec["file"] = *out_path;
    }
    emit(out_, rec);
    return all_ok ? kOk : kNegative;
  }

  int verify(const std::string& path, const std::string& against, std::size_t maxlen) {
    const MachineSpec spec = load(path);
    const SearchBudget budget = opts_.search_budget();
    EquivalenceVerdict v;
    std::string against_kind;
    if (std::filesystem::is_regular_file(against)) {
      v = equivalent_up_to(spec, load(against), maxlen, budget);
      against_kind = "machine";
    } else if (auto ref = ReferenceLanguage::named(against)) {
      v = matches_reference(spec, *ref, maxlen, budget);
      against_kind = "reference";
    } else if (auto ex = ExampleName::parse(against)) {
      v = matches_reference(spec, reference_for(*ex), maxlen, budget);
      against_kind = "reference";
    } else {
      throw UsageError("'" + against + "' is neither a machine file nor a reference language");
    }
    emit(out_, Json{{"command", "verify"},
                    {"against", against},
                    {"against_kind", against_kind},
                    {"equal", v.equal},
                    {"bound", v.bound},
                    {"counterexample", nullable(v.counterexample)}});
    return v.equal ? kOk : kNegative;
  }

  int check(const std::string& property, const std::string& path, std::size_t maxlen) {
    const MachineSpec spec = load(path);
    const SearchBudget budget = opts_.search_budget();
    PropertyResult r;
    if (property == "star-closure") r = check_star_closure(spec, maxlen, budget);
    else if (property == "suffix") r = check_suffix_property(spec, maxlen);
    else if (property == "gcd") r = check_gcd_property(spec, maxlen);
    else if (property == "commutative-matrices") r = check_commutative_matrices(spec, maxlen, budget);
    else if (property == "commutative") {
      const auto pair = check_commutative([&](std::string_view w) { return accepts(spec, w, budget); },
                                          spec.alphabet, maxlen);
      if (pair) r = PropertyResult{PropertyResult::Status::Counterexample, {pair->first, pair->second}, "not commutative"};
    } else {
      throw UsageError("unknown property '" + property +
                       "'; expected star-closure, suffix, gcd, commutative-matrices or commutative");
    }
    emit(out_, Json{{"command", "check"},
                    {"property", property},
                    {"result", std::string(to_string(r.status))},
                    {"witnesses", r.witnesses},
                    {"note", r.note},
                    {"bound", maxlen}});
    return r.ok() ? kOk : kNegative;
  }

  int enumerate(const std::string& path, std::size_t maxlen) {
    const MachineSpec spec = load(path);
    emit(out_, Json{{"command", "enumerate"}, {"maxlen", maxlen}, {"accepted", enumerate_accepted(spec, maxlen, opts_.search_budget())}});
    return kOk;
  }

  int to_famw(const std::string& path, const std::optional<std::string>& out_path) {
    write_or_print(famw_from_system(read_system_file(path)), out_path, Json{{"command", "diophantine to-famw"}});
    return kOk;
  }

  int from_famw(const std::string& path, const std::optional<std::string>& out_path) {
    const DiophantineSystem sys = system_from_famw(load(path));
    if (!out_path) {
      out_ << write_system(sys);
      return kOk;
    }
    std::ofstream file(*out_path, std::ios::binary);
    if (!file) throw Error("cannot write " + *out_path);
    file << write_system(sys);
    emit(out_, Json{{"command", "diophantine from-famw"}, {"equations", sys.equations()}, {"file", *out_path}});
    return kOk;
  }

  int solve(const std::string& path, std::size_t bound) {
    const DiophantineSystem sys = read_system_file(path);
    Json solutions = Json::array();
    for (const auto& x : solutions_up_to(sys, bound)) solutions.push_back(x);
    emit(out_, Json{{"command", "diophantine solve"}, {"bound", bound}, {"solutions", solutions}});
    return kOk;
  }

 private:
  static Json diagnostic_json(const Diagnostic& d) {
    return Json{{"diagnostic", d.rule},
                {"transition", d.transition ? Json(*d.transition) : Json(nullptr)},
                {"message", d.message}};
  }

  int finish(const Transformed& t, const std::string& out_path, const char* command) {
    const auto diags = validate(t.machine);
    if (!diags.empty()) throw InternalConsistencyError("pass produced an invalid machine: " + diags.front().to_string());
    for (const auto& r : t.reports) emit(out_, report_json(r));
    write_machine_file(out_path, t.machine);
    emit(out_, Json{{"command", command}, {"file", out_path}, {"summary", summary_json(MachineSummary::of(t.machine))}});
    return kOk;
  }

  void write_or_print(const MachineSpec& spec, const std::optional<std::string>& out_path, Json rec) {
    if (!out_path) {
      out_ << write_machine(spec);
      return;
    }
    write_machine_file(*out_path, spec);
    rec["file"] = *out_path;
    rec["summary"] = summary_json(MachineSummary::of(spec));
    emit(out_, rec);
  }

  std::ostream& out_;
  const Options& opts_;
};

std::string error_kind(const Error& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "parse";
  if (dynamic_cast<const AlphabetError*>(&e)) return "alphabet";
  if (dynamic_cast<const UnsupportedPassError*>(&e)) return "unsupported-pass";
  if (dynamic_cast<const UnsupportedKindError*>(&e)) return "unsupported-kind";
  if (dynamic_cast<const InterfaceError*>(&e)) return "interface";
  if (dynamic_cast<const BuilderError*>(&e)) return "builder";
  if (dynamic_cast<const EncodingError*>(&e)) return "encoding";
  if (dynamic_cast<const DomainError*>(&e)) return "domain";
  if (dynamic_cast<const ShapeError*>(&e)) return "shape";
  if (dynamic_cast<const ScalarFormatError*>(&e)) return "scalar-format";
  if (dynamic_cast<const InvalidScalarError*>(&e)) return "invalid-scalar";
  if (dynamic_cast<const SingularMatrixError*>(&e)) return "singular-matrix";
  if (dynamic_cast<const InternalConsistencyError*>(&e)) return "internal";
  return "error";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact-arithmetic workbench for vector and homing vector automata", "hvalab"};
  app.require_subcommand(1);
  Options opts;
  app.add_option("--budget", opts.budget, "max configurations explored per nondeterministic run (overrides $" +
                                              std::string(kBudgetEnv) + ")");
  app.add_option("--epsilon-budget", opts.epsilon_budget, "max epsilon moves per path (default |Q|*(|w|+2))");

  std::string file, file2, out_file, input, name, pass, against, property, model = "dbva";
  std::optional<std::string> param, out_opt, by;
  std::vector<std::string> rest, also;
  std::size_t maxlen = 8, bound = 3;
  int base = 3;
  bool trace = false;

  auto* validate_cmd = app.add_subcommand("validate", "check a machine file");
  validate_cmd->add_option("machine", file)->required();

  auto* run_cmd = app.add_subcommand("run", "run a machine on one input (empty input if omitted)");
  run_cmd->add_option("machine", file)->required();
  run_cmd->add_option("input", input);
  run_cmd->add_flag("--trace", trace, "include the configuration trace or accepting path");

  auto* transform_cmd = app.add_subcommand("transform", "apply a transformation pass");
  transform_cmd->add_option("pass", pass)->required();
  transform_cmd->add_option("in", file)->required();
  transform_cmd->add_option("out", out_file)->required();
  transform_cmd->add_option("--by", by, "scale factor for scale-initial-vector");

  auto* intersect_cmd = app.add_subcommand("intersect", "tensor-product intersection of two blind HVAs");
  intersect_cmd->add_option("a", file)->required();
  intersect_cmd->add_option("b", file2)->required();
  intersect_cmd->add_option("out", out_file)->required();

  auto* build_cmd = app.add_subcommand("build", "write an example machine");
  build_cmd->add_option("name", name)->required();
  build_cmd->add_option("param", param);
  build_cmd->add_option("-o,--output", out_opt);

  auto* separate_cmd = app.add_subcommand("separate", "build a machine accepting x and check it rejects each y");
  separate_cmd->add_option("x", name)->required();
  separate_cmd->add_option("y", rest);
  separate_cmd->add_option("--model", model, "dbva, dbhva, va or nbhva")->capture_default_str();
  separate_cmd->add_option("--also", also, "further accepted strings (va, nbhva)");
  separate_cmd->add_option("--base", base)->capture_default_str();
  separate_cmd->add_option("-o,--output", out_opt);

  auto* verify_cmd = app.add_subcommand("verify", "bounded equivalence against a reference language or machine");
  verify_cmd->add_option("machine", file)->required();
  verify_cmd->add_option("--against", against)->required();
  verify_cmd->add_option("--maxlen", maxlen)->capture_default_str();

  auto* check_cmd = app.add_subcommand("check", "bounded check of a stateless-machine property");
  check_cmd->add_option("property", property)->required();
  check_cmd->add_option("machine", file)->required();
  check_cmd->add_option("--maxlen", maxlen)->capture_default_str();

  auto* enumerate_cmd = app.add_subcommand("enumerate", "list accepted strings in length-lexicographic order");
  enumerate_cmd->add_option("machine", file)->required();
  enumerate_cmd->add_option("--maxlen", maxlen)->capture_default_str();

  auto* dio_cmd = app.add_subcommand("diophantine", "homogeneous Diophantine systems and stateless DFAMWs");
  dio_cmd->require_subcommand(1);
  auto* to_famw_cmd = dio_cmd->add_subcommand("to-famw", "system file to machine file");
  to_famw_cmd->add_option("system", file)->required();
  to_famw_cmd->add_option("-o,--output", out_opt);
  auto* from_famw_cmd = dio_cmd->add_subcommand("from-famw", "machine file to system file");
  from_famw_cmd->add_option("machine", file)->required();
  from_famw_cmd->add_option("-o,--output", out_opt);
  auto* solve_cmd = dio_cmd->add_subcommand("solve", "nonnegative solutions with every component <= bound");
  solve_cmd->add_option("system", file)->required();
  solve_cmd->add_option("--bound", bound)->capture_default_str();

  app.fallthrough();
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed_args(args.rbegin(), args.rend());
    app.parse(std::move(reversed_args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "hvalab: " << e.what() << '\n';
    emit(out, Json{{"error", "usage"}, {"message", e.what()}});
    return kUsage;
  }

  Commands cmd(out, opts);
  try {
    if (validate_cmd->parsed()) return cmd.validate_file(file);
    if (run_cmd->parsed()) return cmd.run_machine(file, input, trace);
    if (transform_cmd->parsed()) return cmd.transform(pass, file, out_file, by);
    if (intersect_cmd->parsed()) return cmd.intersect(file, file2, out_file);
    if (build_cmd->parsed()) return cmd.build(name, param, out_opt);
    if (separate_cmd->parsed()) return cmd.separate(name, rest, model, also, base, out_opt);
    if (verify_cmd->parsed()) return cmd.verify(file, against, maxlen);
    if (check_cmd->parsed()) return cmd.check(property, file, maxlen);
    if (enumerate_cmd->parsed()) return cmd.enumerate(file, maxlen);
    if (to_famw_cmd->parsed()) return cmd.to_famw(file, out_opt);
    if (from_famw_cmd->parsed()) return cmd.from_famw(file, out_opt);
    if (solve_cmd->parsed()) return cmd.solve(file, bound);
  } catch (const InvalidMachine&) {
    err << "hvalab: machine failed validation\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "hvalab: " << e.what() << '\n';
    emit(out, Json{{"error", "usage"}, {"message", e.what()}});
    return kUsage;
  } catch (const UndecidedError& e) {
    err << "hvalab: " << e.what() << '\n';
    emit(out, Json{{"verdict", "BudgetExceeded"},
                   {"input", e.input()},
                   {"configurations", e.explored()},
                   {"max_configurations", e.budget().max_configurations}});
    return kBudget;
  } catch (const ParseError& e) {
    err << "hvalab: " << e.what() << '\n';
    emit(out, Json{{"error", "parse"}, {"where", e.where()}, {"message", e.what()}});
    return kUsage;
  } catch (const Error& e) {
    err << "hvalab: " << e.what() << '\n';
    emit(out, Json{{"error", error_kind(e)}, {"message", e.what()}});
    return kUsage;
  }
  return kUsage;
}

}  // namespace hvalab::cli
