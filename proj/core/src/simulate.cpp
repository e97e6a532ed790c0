#include "hvalab/simulate.hpp"

#include <deque>
#include <unordered_set>

namespace hvalab {

std::size_t SearchBudget::epsilon_limit(const MachineSpec& spec, std::size_t input_length) const {
  if (max_epsilon_per_path) return *max_epsilon_per_path;
  return spec.states.size() * (input_length + 2);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Accept: return "Accept";
    case Verdict::Reject: return "Reject";
    case Verdict::BudgetExceeded: return "BudgetExceeded";
  }
  return "?";
}

UndecidedError::UndecidedError(std::string input, SearchBudget budget, std::size_t explored)
    : Error("membership of '" + input + "' undecided: search budget exhausted after " + std::to_string(explored) +
            " configurations"),
      input_(std::move(input)),
      budget_(budget),
      explored_(explored) {}

std::vector<Input> tape_of(const MachineSpec& spec, std::string_view w) {
  std::vector<Input> tape;
  tape.reserve(w.size() + 1);
  for (char c : w) tape.push_back(Input::of(c));
  if (spec.endmarker) tape.push_back(Input::end_marker());
  return tape;
}

void check_word(const MachineSpec& spec, std::string_view w) {
  for (char c : w) {
    if (!spec.in_alphabet(c)) throw AlphabetError(std::string("symbol '") + c + "' is not in the alphabet");
  }
}

Configuration initial_configuration(const MachineSpec& spec) {
  return Configuration{spec.initial_state, spec.initial_vector, 0, 0};
}

std::vector<std::pair<Configuration, std::size_t>> step_with_rules(const MachineSpec& spec,
                                                                   const Configuration& c, Input letter) {
  std::vector<std::pair<Configuration, std::size_t>> out;
  std::optional<StatusPattern> status;
  for (std::size_t i = 0; i < spec.transitions.size(); ++i) {
    const auto& r = spec.transitions[i];
    if (r.from != c.state || r.input != letter) continue;
    if (!spec.blind && !r.status.is_wildcard()) {
      if (!status) status = status_of(spec, c);
      if (!r.status.matches(*status)) continue;
    }
    Configuration next;
    next.state = r.to;
    next.reg = apply_effect(spec, c.reg, r.effect);
    next.position = letter.is_epsilon() ? c.position : c.position + 1;
    next.epsilon_spent = c.epsilon_spent + (letter.is_epsilon() ? 1 : 0);
    out.emplace_back(std::move(next), i);
  }
  return out;
}

std::vector<Configuration> step(const MachineSpec& spec, const Configuration& c, Input letter) {
  std::vector<Configuration> out;
  for (auto& [conf, rule] : step_with_rules(spec, c, letter)) out.push_back(std::move(conf));
  return out;
}

RunResult run_deterministic(const MachineSpec& spec, std::string_view w) {
  if (spec.kind == Kind::GFA) throw UnsupportedKindError("GFA runs are evaluated with gfa_value");
  if (spec.mode != Mode::Deterministic) throw InterfaceError("run_deterministic needs a deterministic machine");
  check_word(spec, w);
  RunResult result;
  result.trace.emplace();
  auto& trace = *result.trace;
  trace.push_back(initial_configuration(spec));
  for (Input letter : tape_of(spec, w)) {
    auto next = step(spec, trace.back(), letter);
    if (next.empty()) {
      result.verdict = Verdict::Reject;
      result.configurations_explored = trace.size();
      return result;
    }
    if (next.size() > 1) {
      throw InternalConsistencyError("deterministic machine has " + std::to_string(next.size()) +
                                     " successors on " + letter.to_string());
    }
    trace.push_back(std::move(next.front()));
  }
  const auto& last = trace.back();
  result.verdict =
      spec.is_accepting(last.state) && register_accepts(spec, last.reg) ? Verdict::Accept : Verdict::Reject;
  result.configurations_explored = trace.size();
  return result;
}

namespace {

struct SearchKey {
  StateId state;
  std::size_t position;
  RowVector reg;
  friend bool operator==(const SearchKey&, const SearchKey&) = default;
};

struct SearchKeyHash {
  std::size_t operator()(const SearchKey& k) const noexcept {
    return k.reg.hash() ^ (k.state * 0x9e3779b97f4a7c15ULL) ^ (k.position << 32);
  }
};

struct SearchNode {
  Configuration conf;
  std::size_t parent;
  std::size_t rule;
};

constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

}  // namespace

RunResult run_nondeterministic(const MachineSpec& spec, std::string_view w, const SearchBudget& budget) {
  if (spec.kind == Kind::GFA) {
    RunResult r;
    r.verdict = gfa_value(spec, w) == *spec.gfa_cutpoint ? Verdict::Accept : Verdict::Reject;
    r.configurations_explored = w.size() + 1;
    return r;
  }
  check_word(spec, w);
  const auto tape = tape_of(spec, w);
  const std::size_t eps_limit = budget.epsilon_limit(spec, w.size());

  std::vector<SearchNode> nodes;
  std::unordered_set<SearchKey, SearchKeyHash> seen;
  std::deque<std::size_t> frontier;
  bool pruned = false;

  auto is_accepting = [&](const Configuration& c) {
    return c.position == tape.size() && spec.is_accepting(c.state) && register_accepts(spec, c.reg);
  };
  auto accept_result = [&](std::size_t idx) {
    RunResult r;
    r.verdict = Verdict::Accept;
    std::vector<std::size_t> path;
    for (std::size_t i = idx; nodes[i].parent != kNoParent; i = nodes[i].parent) path.push_back(nodes[i].rule);
    r.accepting_path.emplace(path.rbegin(), path.rend());
    r.configurations_explored = nodes.size();
    return r;
  };

  // Returns true when the pushed configuration accepts.
  auto push = [&](Configuration c, std::size_t parent, std::size_t rule) {
    SearchKey key{c.state, c.position, c.reg};
    if (!seen.insert(std::move(key)).second) return false;
    nodes.push_back({std::move(c), parent, rule});
    frontier.push_back(nodes.size() - 1);
    return is_accepting(nodes.back().conf);
  };

  if (push(initial_configuration(spec), kNoParent, 0)) return accept_result(0);

  while (!frontier.empty()) {
    const std::size_t idx = frontier.front();
    frontier.pop_front();
    const Configuration current = nodes[idx].conf;
    const bool tape_done = current.position == tape.size();

    std::vector<std::pair<Configuration, std::size_t>> successors;
    if (!tape_done) successors = step_with_rules(spec, current, tape[current.position]);
    // No moves after the end-marker has been read.
    if (!(spec.endmarker && tape_done) && !spec.realtime) {
      auto eps = step_with_rules(spec, current, Input::epsilon());
      if (!eps.empty() && current.epsilon_spent >= eps_limit) {
        pruned = true;
      } else {
        for (auto& e : eps) successors.push_back(std::move(e));
      }
    }
    for (auto& [conf, rule] : successors) {
      if (nodes.size() >= budget.max_configurations) {
        RunResult r;
        r.verdict = Verdict::BudgetExceeded;
        r.configurations_explored = nodes.size();
        return r;
      }
      if (push(std::move(conf), idx, rule)) return accept_result(nodes.size() - 1);
    }
  }
  RunResult r;
  r.verdict = pruned ? Verdict::BudgetExceeded : Verdict::Reject;
  r.configurations_explored = nodes.size();
  return r;
}

Rational gfa_value(const MachineSpec& spec, std::string_view w) {
  if (spec.kind != Kind::GFA) throw UnsupportedKindError("gfa_value needs a GFA");
  if (!spec.gfa_final_vector) throw InterfaceError("GFA without final vector");
  check_word(spec, w);
  RowVector v = spec.initial_vector;
  for (char c : w) {
    const TransitionRule* rule = nullptr;
    for (const auto& r : spec.transitions) {
      if (r.input == Input::of(c)) {
        rule = &r;
        break;
      }
    }
    if (!rule) throw InterfaceError(std::string("GFA has no matrix for '") + c + "'");
    v = vec_mat_mul(v, rule->matrix());
  }
  return dot(v, *spec.gfa_final_vector);
}

bool accepts(const MachineSpec& spec, std::string_view w, const SearchBudget& budget) {
  if (spec.kind == Kind::GFA) return gfa_value(spec, w) == *spec.gfa_cutpoint;
  if (spec.mode == Mode::Deterministic) return run_deterministic(spec, w).verdict == Verdict::Accept;
  const auto r = run_nondeterministic(spec, w, budget);
  if (r.verdict == Verdict::BudgetExceeded) throw UndecidedError(std::string(w), budget, r.configurations_explored);
  return r.verdict == Verdict::Accept;
}

MachineSpec extendedfa_embed(const MachineSpec& spec) {
  if (spec.kind != Kind::ExtendedFA) throw UnsupportedKindError("extendedfa_embed needs an ExtendedFA");
  const std::size_t k = spec.dimension;
  MachineSpec out = spec;
  out.kind = Kind::HVA;
  out.mode = Mode::Nondeterministic;
  out.blind = true;
  out.dimension = k * k;
  out.initial_vector = flattened_identity(k);
  const Matrix id = Matrix::identity(k);
  for (auto& r : out.transitions) r.effect = tensor(id, r.matrix());
  return out;
}

}  // namespace hvalab
