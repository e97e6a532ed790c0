#include "hvalab/machine.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hvalab/error.hpp"

namespace hvalab {

std::string_view to_string(Kind k) {
  switch (k) {
    case Kind::VA: return "VA";
    case Kind::HVA: return "HVA";
    case Kind::FAM: return "FAM";
    case Kind::GFA: return "GFA";
    case Kind::ExtendedFA: return "ExtendedFA";
    case Kind::CounterMachine: return "CounterMachine";
  }
  return "?";
}

std::string_view to_string(Mode m) { return m == Mode::Deterministic ? "deterministic" : "nondeterministic"; }

std::optional<Kind> parse_kind(std::string_view s) {
  for (Kind k : {Kind::VA, Kind::HVA, Kind::FAM, Kind::GFA, Kind::ExtendedFA, Kind::CounterMachine}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::optional<Mode> parse_mode(std::string_view s) {
  if (s == "deterministic") return Mode::Deterministic;
  if (s == "nondeterministic") return Mode::Nondeterministic;
  return std::nullopt;
}

std::string_view to_string(Test t) {
  switch (t) {
    case Test::Eq: return "=";
    case Test::Ne: return "!=";
    case Test::Any: return "*";
  }
  return "?";
}

std::string Input::to_string() const {
  switch (type) {
    case Type::Epsilon: return "eps";
    case Type::EndMarker: return "$";
    case Type::Symbol: break;
  }
  return std::string(1, symbol);
}

bool StatusPattern::is_wildcard() const {
  return std::all_of(tests.begin(), tests.end(), [](Test t) { return t == Test::Any; });
}

bool StatusPattern::matches(const StatusPattern& status) const {
  if (is_wildcard()) return true;
  if (tests.size() != status.tests.size()) return false;
  for (std::size_t i = 0; i < tests.size(); ++i) {
    if (tests[i] != Test::Any && tests[i] != status.tests[i]) return false;
  }
  return true;
}

std::size_t MachineSpec::register_length() const {
  switch (kind) {
    case Kind::FAM: return 1;
    case Kind::ExtendedFA: return dimension * dimension;
    default: return dimension;
  }
}

bool MachineSpec::is_accepting(StateId q) const {
  return std::find(accept_states.begin(), accept_states.end(), q) != accept_states.end();
}

bool MachineSpec::in_alphabet(Symbol s) const {
  return std::find(alphabet.begin(), alphabet.end(), s) != alphabet.end();
}

bool MachineSpec::is_stateless() const { return states.size() == 1 && is_accepting(0); }

std::optional<StateId> MachineSpec::find_state(std::string_view name) const {
  for (StateId q = 0; q < states.size(); ++q) {
    if (states[q] == name) return q;
  }
  return std::nullopt;
}

std::string Diagnostic::to_string() const {
  std::string s = rule;
  if (transition) s += " (transition " + std::to_string(*transition) + ")";
  return s + ": " + message;
}

RowVector flattened_identity(std::size_t k) {
  RowVector v(k * k);
  for (std::size_t i = 0; i < k; ++i) v[i * k + i] = 1;
  return v;
}

namespace {

bool is_scalar_status_kind(Kind k) { return k != Kind::CounterMachine; }

/// All concrete status values a rule pattern can be tested against.
std::vector<StatusPattern> concrete_statuses(const MachineSpec& spec) {
  if (spec.kind != Kind::CounterMachine) return {StatusPattern::eq(), StatusPattern::ne()};
  std::vector<StatusPattern> out;
  const std::size_t k = spec.dimension;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    StatusPattern p;
    for (std::size_t i = 0; i < k; ++i) p.tests.push_back((mask >> i) & 1 ? Test::Ne : Test::Eq);
    out.push_back(std::move(p));
  }
  return out;
}

class Validator {
 public:
  explicit Validator(const MachineSpec& spec) : spec_(spec) {}

  std::vector<Diagnostic> run() {
    check_header();
    for (std::size_t i = 0; i < spec_.transitions.size(); ++i) check_rule(i, spec_.transitions[i]);
    if (spec_.mode == Mode::Deterministic) check_determinism();
    if (spec_.kind == Kind::GFA) check_gfa_totality();
    return std::move(out_);
  }

 private:
  void add(std::string rule, std::optional<std::size_t> t, std::string msg) {
    out_.push_back({std::move(rule), t, std::move(msg)});
  }

  void check_header() {
    const auto& s = spec_;
    if (s.dimension == 0) add("dimension", {}, "dimension must be at least 1");
    if (s.states.empty()) add("states", {}, "machine has no states");
    if (s.initial_state >= s.states.size()) add("initial_state", {}, "initial state out of range");
    for (StateId q : s.accept_states) {
      if (q >= s.states.size()) add("accept_states", {}, "accept state out of range");
    }
    if (std::set<std::string>(s.states.begin(), s.states.end()).size() != s.states.size())
      add("states", {}, "duplicate state names");
    if (std::set<Symbol>(s.alphabet.begin(), s.alphabet.end()).size() != s.alphabet.size())
      add("alphabet", {}, "duplicate alphabet symbols");
    for (Symbol c : s.alphabet) {
      if (c == '$') add("alphabet", {}, "'$' is reserved for the end-marker");
    }
    if (s.initial_vector.dim() != s.register_length()) {
      add("initial_vector", {},
          "initial vector has dimension " + std::to_string(s.initial_vector.dim()) + ", expected " +
              std::to_string(s.register_length()));
    }
    if (s.mode == Mode::Deterministic && !s.realtime)
      add("determinism", {}, "deterministic machines must be real-time");

    switch (s.kind) {
      case Kind::FAM:
        if (s.dimension != 1) add("fam", {}, "FAM dimension must be 1");
        if (s.initial_vector != RowVector{Rational(1)}) add("fam", {}, "FAM register starts at 1");
        break;
      case Kind::ExtendedFA:
        if (!s.blind) add("extendedfa", {}, "extended finite automata are blind");
        if (s.mode != Mode::Nondeterministic) add("extendedfa", {}, "extended finite automata are nondeterministic");
        if (s.initial_vector != flattened_identity(s.dimension))
          add("extendedfa", {}, "register must start at the identity matrix");
        break;
      case Kind::CounterMachine:
        if (!s.initial_vector.is_zero()) add("counters", {}, "counters start at zero");
        break;
      case Kind::GFA:
        if (!s.gfa_final_vector) add("gfa", {}, "GFA needs a final vector");
        else if (s.gfa_final_vector->dim() != s.dimension) add("gfa", {}, "final vector dimension mismatch");
        if (!s.gfa_cutpoint) add("gfa", {}, "GFA needs a cutpoint");
        if (s.endmarker) add("gfa", {}, "GFA does not read an end-marker");
        if (!s.realtime) add("gfa", {}, "GFA has no epsilon moves");
        if (!s.blind) add("gfa", {}, "GFA has no status checks");
        if (s.states.size() != 1) add("gfa", {}, "GFA is modeled with a single state");
        break;
      default:
        break;
    }
    if (s.kind != Kind::GFA && (s.gfa_final_vector || s.gfa_cutpoint))
      add("gfa", {}, "final vector / cutpoint only apply to GFA");
  }

  void check_rule(std::size_t i, const TransitionRule& r) {
    const auto& s = spec_;
    if (r.from >= s.states.size() || r.to >= s.states.size()) add("state", i, "rule references unknown state");
    switch (r.input.type) {
      case Input::Type::Symbol:
        if (!s.in_alphabet(r.input.symbol))
          add("alphabet", i, std::string("symbol '") + r.input.symbol + "' not in alphabet");
        break;
      case Input::Type::Epsilon:
        if (s.realtime) add("realtime", i, "epsilon rule in a real-time machine");
        break;
      case Input::Type::EndMarker:
        if (!s.endmarker) add("endmarker", i, "end-marker rule in a machine without end-marker");
        break;
    }

    const std::size_t arity = is_scalar_status_kind(s.kind) ? 1 : s.dimension;
    if (!r.status.tests.empty() && r.status.tests.size() != arity)
      add("status", i, "status pattern has " + std::to_string(r.status.tests.size()) + " components, expected " +
                           std::to_string(arity));
    if (s.blind && !r.status.is_wildcard()) add("blind", i, "blind machines cannot test the register");

    if (s.kind == Kind::CounterMachine) {
      if (!std::holds_alternative<CounterUpdate>(r.effect)) {
        add("effect", i, "counter machine rules carry an increment vector");
        return;
      }
      const auto& u = r.update();
      if (u.size() != s.dimension) add("shape", i, "increment vector has wrong length");
      for (int d : u) {
        if (d < -1 || d > 1) add("counters", i, "counter updates must lie in {-1,0,1}");
      }
      return;
    }
    if (!std::holds_alternative<Matrix>(r.effect)) {
      add("effect", i, "rule must carry a matrix");
      return;
    }
    const auto& m = r.matrix();
    const std::size_t k = s.kind == Kind::FAM ? 1 : s.dimension;
    if (m.rows() != k || m.cols() != k) {
      add("shape", i,
          "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
              std::to_string(k) + "x" + std::to_string(k));
      return;
    }
    if (s.kind == Kind::FAM && m(0, 0).sign() <= 0) add("fam-positivity", i, "FAM multipliers must be positive");
  }

  void check_determinism() {
    const auto& s = spec_;
    std::map<std::pair<StateId, Input>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < s.transitions.size(); ++i) {
      const auto& r = s.transitions[i];
      if (r.input.is_epsilon()) add("determinism", i, "epsilon rule in a deterministic machine");
      groups[{r.from, r.input}].push_back(i);
    }
    const auto statuses = concrete_statuses(s);
    for (const auto& [key, idx] : groups) {
      if (idx.size() < 2) continue;
      for (const auto& st : statuses) {
        std::vector<std::size_t> hits;
        for (std::size_t i : idx) {
          if (s.transitions[i].status.matches(st)) hits.push_back(i);
        }
        if (hits.size() > 1) {
          add("determinism", hits[1],
              "more than one rule for (" + s.states[key.first] + ", " + key.second.to_string() + ")");
          break;
        }
      }
    }
  }

  void check_gfa_totality() {
    for (Symbol c : spec_.alphabet) {
      const auto n = std::count_if(spec_.transitions.begin(), spec_.transitions.end(),
                                   [&](const TransitionRule& r) { return r.input == Input::of(c); });
      if (n != 1) add("gfa", {}, std::string("GFA needs exactly one matrix for symbol '") + c + "'");
    }
  }

  const MachineSpec& spec_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> validate(const MachineSpec& spec) { return Validator(spec).run(); }

StatusPattern status_of(const MachineSpec& spec, const Configuration& c) {
  auto flag = [](bool equal) { return equal ? Test::Eq : Test::Ne; };
  switch (spec.kind) {
    case Kind::VA:
      return {{flag(c.reg.dim() > 0 && c.reg[0].is_one())}};
    case Kind::HVA:
    case Kind::ExtendedFA:
      return {{flag(c.reg == spec.initial_vector)}};
    case Kind::FAM:
      return {{flag(c.reg.dim() == 1 && c.reg[0].is_one())}};
    case Kind::CounterMachine: {
      StatusPattern p;
      for (const auto& v : c.reg) p.tests.push_back(flag(v.is_zero()));
      return p;
    }
    case Kind::GFA:
      break;
  }
  throw UnsupportedKindError("GFA has no register status");
}

bool register_accepts(const MachineSpec& spec, const RowVector& reg) {
  switch (spec.kind) {
    case Kind::VA:
      return reg.dim() > 0 && reg[0].is_one();
    case Kind::HVA:
    case Kind::ExtendedFA:
    case Kind::FAM:
      return reg == spec.initial_vector;
    case Kind::CounterMachine:
      return !spec.blind || reg.is_zero();
    case Kind::GFA:
      break;
  }
  throw UnsupportedKindError("GFA acceptance is decided by its cutpoint");
}

RowVector apply_effect(const MachineSpec& spec, const RowVector& reg, const Effect& effect) {
  if (spec.kind == Kind::CounterMachine) {
    const auto& u = std::get<CounterUpdate>(effect);
    if (u.size() != reg.dim()) throw ShapeError("counter update length mismatch");
    RowVector out = reg;
    for (std::size_t i = 0; i < u.size(); ++i) out[i] += u[i];
    return out;
  }
  const auto& m = std::get<Matrix>(effect);
  if (spec.kind == Kind::ExtendedFA) {
    // The register is the k x k matrix X stored row-major; the step is X * M.
    const std::size_t k = spec.dimension;
    Matrix x(k, k, std::vector<Rational>(reg.begin(), reg.end()));
    const Matrix y = mat_mul(x, m);
    return RowVector(std::vector<Rational>(y.entries().begin(), y.entries().end()));
  }
  return vec_mat_mul(reg, m);
}

}  // namespace hvalab
