#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hvalab/machine.hpp"
#include "hvalab/simulate.hpp"

namespace hvalab {

struct MachineSummary {
  Kind kind = Kind::HVA;
  std::size_t states = 0;
  std::size_t dimension = 0;

  static MachineSummary of(const MachineSpec& spec) { return {spec.kind, spec.states.size(), spec.dimension}; }
  friend bool operator==(const MachineSummary&, const MachineSummary&) = default;
};

struct TransformReport {
  std::string pass_name;
  MachineSummary input_summary;
  MachineSummary output_summary;
  std::map<std::string, std::string> parameters;
};

/// Output of a pass (or pipeline): the new machine plus one report per stage.
struct Transformed {
  MachineSpec machine;
  std::vector<TransformReport> reports;
};

/// Replaces v0 by t * v0 in an HVA. Throws InvalidScalarError when t == 0.
Transformed scale_initial_vector(const MachineSpec& spec, const Rational& t);

/// Removes the end-marker from a blind nondeterministic HVA_$ with n states,
/// yielding at most n + 2 states. Every (sigma, $) pair that can end in an
/// accept state is fused into one move into a fresh accept state; a fresh
/// initial accept state with no incoming rules is added iff eps is accepted.
Transformed remove_endmarker(const MachineSpec& spec, const SearchBudget& budget = {});

/// Rational-valued blind HVA_$ of dimension k to an integer-valued one of
/// dimension k + 2. Non-integer initial vectors are first scaled to integers.
Transformed rationals_to_integers(const MachineSpec& spec);

/// The bordered matrix diag(c * A, c, 1) used for every non-$ rule of
/// rationals_to_integers.
Matrix integer_border(const Matrix& a, const BigInt& c);

/// The (k+2) x (k+2) post-processing matrix applied after the bordered $ matrix.
Matrix integer_postprocess(const RowVector& v0);

/// n-state deterministic VA(k) with end-marker to a stateless VA(n*k + 1).
Transformed eliminate_states(const MachineSpec& spec);

/// The zero-matrix prepass of eliminate_states: every $ rule into a
/// non-accept state multiplies by the zero matrix.
MachineSpec zero_nonaccepting_endmarker_rules(const MachineSpec& spec);

/// Blind k-counter machine to a 1-dimensional blind HVA over positive
/// rationals: counter i moves by x p_i or x 1/p_i with p_i the i-th prime.
Transformed counters_to_hva1(const MachineSpec& spec);

/// counters_to_hva1 -> trivial end-marker -> rationals_to_integers ->
/// remove_endmarker. Result: integer NBHVA(3) without end-marker.
Transformed counters_to_integer_hva3(const MachineSpec& spec, const SearchBudget& budget = {});

/// A deterministic finite automaton, possibly partial.
struct Dfa {
  std::vector<Symbol> alphabet;
  std::size_t states = 1;
  std::size_t initial = 0;
  std::vector<std::size_t> accepting;
  /// delta[q][i] is the successor of q on alphabet[i]; nullopt = no move.
  std::vector<std::vector<std::optional<std::size_t>>> delta;
};

/// Dfa whose only accept state is its initial state to a stateless
/// deterministic blind HVA(n) with zero-one matrices; missing moves become
/// zero rows.
Transformed dfa_to_stateless_dbhva(const Dfa& dfa);

/// Product of two deterministic blind HVAs over the same alphabet. Each
/// register is padded with a constant 1 coordinate before tensoring, so the
/// result has dimension (k1 + 1) * (k2 + 1).
Transformed intersect_blind_hva(const MachineSpec& a, const MachineSpec& b);

}  // namespace hvalab
