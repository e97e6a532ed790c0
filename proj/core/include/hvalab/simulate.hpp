#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hvalab/error.hpp"
#include "hvalab/machine.hpp"

namespace hvalab {

/// Limits for nondeterministic configuration search.
struct SearchBudget {
  /// Max epsilon moves along one path; unset means |Q| * (|w| + 2).
  std::optional<std::size_t> max_epsilon_per_path;
  std::size_t max_configurations = 1'000'000;

  std::size_t epsilon_limit(const MachineSpec& spec, std::size_t input_length) const;
};

enum class Verdict { Accept, Reject, BudgetExceeded };
std::string_view to_string(Verdict v);

struct RunResult {
  Verdict verdict = Verdict::Reject;
  /// Deterministic runs: one configuration per processed letter plus the start.
  std::optional<std::vector<Configuration>> trace;
  /// Nondeterministic accepts: indices into spec.transitions along the path.
  std::optional<std::vector<std::size_t>> accepting_path;
  std::size_t configurations_explored = 0;
};

/// Nondeterministic search ran out of budget, so membership is undecided.
class UndecidedError : public Error {
 public:
  UndecidedError(std::string input, SearchBudget budget, std::size_t explored);
  const std::string& input() const noexcept { return input_; }
  const SearchBudget& budget() const noexcept { return budget_; }
  std::size_t explored() const noexcept { return explored_; }

 private:
  std::string input_;
  SearchBudget budget_;
  std::size_t explored_;
};

/// The input tape w (followed by $ when the machine uses an end-marker).
std::vector<Input> tape_of(const MachineSpec& spec, std::string_view w);

/// Throws AlphabetError if w has a symbol outside the alphabet.
void check_word(const MachineSpec& spec, std::string_view w);

/// All successors of c on `letter`. Epsilon steps do not advance the position.
std::vector<Configuration> step(const MachineSpec& spec, const Configuration& c, Input letter);

/// Like step(), also returning the index of the rule that produced each successor.
std::vector<std::pair<Configuration, std::size_t>> step_with_rules(const MachineSpec& spec,
                                                                   const Configuration& c, Input letter);

Configuration initial_configuration(const MachineSpec& spec);

RunResult run_deterministic(const MachineSpec& spec, std::string_view w);
RunResult run_nondeterministic(const MachineSpec& spec, std::string_view w, const SearchBudget& budget = {});

/// v0 * A_{w[1]} ... A_{w[n]} * f for a GFA.
Rational gfa_value(const MachineSpec& spec, std::string_view w);

/// Language membership; throws UndecidedError when the search budget runs out.
bool accepts(const MachineSpec& spec, std::string_view w, const SearchBudget& budget = {});

/// Rewrites an extended finite automaton over k x k matrices as a blind
/// nondeterministic HVA of dimension k*k: the register matrix X becomes its
/// row-major flattening, and X * M becomes vec(X) * (I_k (x) M).
MachineSpec extendedfa_embed(const MachineSpec& spec);

}  // namespace hvalab
