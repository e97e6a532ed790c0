#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hvalab/matrix.hpp"

namespace hvalab {

enum class Kind { VA, HVA, FAM, GFA, ExtendedFA, CounterMachine };
enum class Mode { Deterministic, Nondeterministic };

std::string_view to_string(Kind k);
std::string_view to_string(Mode m);
std::optional<Kind> parse_kind(std::string_view s);
std::optional<Mode> parse_mode(std::string_view s);

using Symbol = char;
using StateId = std::size_t;

/// What a transition consumes: an alphabet symbol, nothing, or the end-marker.
struct Input {
  enum class Type { Symbol, Epsilon, EndMarker };
  Type type = Type::Symbol;
  Symbol symbol = 0;

  static Input of(Symbol s) { return {Type::Symbol, s}; }
  static Input epsilon() { return {Type::Epsilon, 0}; }
  static Input end_marker() { return {Type::EndMarker, 0}; }

  bool is_symbol() const { return type == Type::Symbol; }
  bool is_epsilon() const { return type == Type::Epsilon; }
  bool is_end_marker() const { return type == Type::EndMarker; }

  /// "eps", "$" or the symbol itself.
  std::string to_string() const;

  friend bool operator==(const Input&, const Input&) = default;
  friend auto operator<=>(const Input&, const Input&) = default;
};

/// One component of a status test: register equal / not equal to the
/// reference value, or don't care.
enum class Test { Eq, Ne, Any };

/// Status condition of a rule. An empty pattern is the wildcard. VA, HVA,
/// FAM and ExtendedFA use one component; counter machines use one per counter.
struct StatusPattern {
  std::vector<Test> tests;

  static StatusPattern wildcard() { return {}; }
  static StatusPattern eq() { return {{Test::Eq}}; }
  static StatusPattern ne() { return {{Test::Ne}}; }

  bool is_wildcard() const;
  /// `status` must be concrete (no Any components).
  bool matches(const StatusPattern& status) const;

  friend bool operator==(const StatusPattern&, const StatusPattern&) = default;
};

/// Counter increments, each in {-1, 0, 1}.
using CounterUpdate = std::vector<int>;

/// Matrix for VA/HVA/FAM/GFA (k x k; 1x1 for FAM), the k x k monoid element
/// for ExtendedFA, or an increment vector for counter machines.
using Effect = std::variant<Matrix, CounterUpdate>;

struct TransitionRule {
  StateId from = 0;
  Input input;
  StatusPattern status;
  StateId to = 0;
  Effect effect;

  const Matrix& matrix() const { return std::get<Matrix>(effect); }
  const CounterUpdate& update() const { return std::get<CounterUpdate>(effect); }

  friend bool operator==(const TransitionRule&, const TransitionRule&) = default;
};

/// Unified description of every machine variant in the workbench.
///
/// The register is a row vector of length `register_length()`: k for
/// VA/HVA/GFA/counter machines, 1 for FAM, and k*k (row-major flattening of
/// the k x k register matrix) for ExtendedFA.
struct MachineSpec {
  Kind kind = Kind::HVA;
  Mode mode = Mode::Deterministic;
  bool blind = true;
  bool endmarker = false;
  bool realtime = true;
  std::vector<Symbol> alphabet;
  std::vector<std::string> states;
  StateId initial_state = 0;
  std::vector<StateId> accept_states;
  std::size_t dimension = 1;
  RowVector initial_vector;
  std::vector<TransitionRule> transitions;
  std::optional<RowVector> gfa_final_vector;
  std::optional<Rational> gfa_cutpoint;

  std::size_t register_length() const;
  bool is_accepting(StateId q) const;
  bool in_alphabet(Symbol s) const;
  bool is_stateless() const;
  std::optional<StateId> find_state(std::string_view name) const;

  friend bool operator==(const MachineSpec&, const MachineSpec&) = default;
};

struct Diagnostic {
  std::string rule;                       ///< short name of the violated invariant
  std::optional<std::size_t> transition;  ///< offending transition index, if any
  std::string message;

  std::string to_string() const;
};

/// Every violated MachineSpec invariant, one diagnostic each. Empty iff valid.
std::vector<Diagnostic> validate(const MachineSpec& spec);

/// A point in a run.
struct Configuration {
  StateId state = 0;
  RowVector reg;                  ///< register (counters are stored as integer entries)
  std::size_t position = 0;       ///< symbols consumed from w, plus 1 once $ is consumed
  std::size_t epsilon_spent = 0;  ///< epsilon moves taken on this path

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// Concrete status of the configuration (no Any components).
/// VA: first entry vs 1; HVA/ExtendedFA: register vs initial vector; FAM:
/// register vs 1; counters: per-counter zero test. Throws
/// UnsupportedKindError for GFA.
StatusPattern status_of(const MachineSpec& spec, const Configuration& c);

/// The kind's acceptance predicate on a register (state not included).
bool register_accepts(const MachineSpec& spec, const RowVector& reg);

/// Applies a rule's effect to a register.
RowVector apply_effect(const MachineSpec& spec, const RowVector& reg, const Effect& effect);

/// Flattened k x k identity (the ExtendedFA initial register).
RowVector flattened_identity(std::size_t k);

std::string_view to_string(Test t);

}  // namespace hvalab
