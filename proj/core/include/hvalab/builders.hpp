#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "hvalab/machine.hpp"

namespace hvalab {

/// e_m(x): x read as a base-m number with digits 1..m-1 (most significant first).
BigInt encode_base(std::string_view x, int m = 3);

/// The same value obtained by multiplying (1 0) by A_d = [[1, d], [0, m]]
/// for each digit d of x, left to right; returns the second entry.
BigInt encode_base_by_matrices(std::string_view x, int m = 3);

/// A_d = [[1, d], [0, m]].
Matrix digit_matrix(int digit, int m = 3);

/// Digit alphabet '1'..'m-1'.
std::vector<Symbol> digit_alphabet(int m = 3);

std::string reversed(std::string_view s);

/// Stateless blind VA(1) over {a, b} with end-marker accepting exactly a^i.
MachineSpec unary_distinguisher(unsigned i);

/// Stateless blind VA(2) with end-marker accepting exactly {x}.
MachineSpec binary_distinguisher(std::string_view x, int m = 3);

/// Stateless blind VA(2^|X| + 1) with end-marker accepting exactly X.
MachineSpec finite_language_va(const std::set<std::string>& words, int m = 3);

/// Two-state deterministic blind HVA(2) accepting exactly {x}.
MachineSpec hva_distinguisher(std::string_view x, int m = 3);

/// Stateless nondeterministic blind HVA_$(2): letters encode the input
/// forwards and the $ move guesses which member of X it was.
MachineSpec finite_language_nbhva_endmarker(const std::set<std::string>& words, int m = 3);

/// finite_language_nbhva_endmarker followed by remove_endmarker: a blind
/// NBHVA(2) with 2 states (3 when eps is in X).
MachineSpec finite_language_nbhva(const std::set<std::string>& words, int m = 3);

struct ExampleName {
  enum class Id { PowR, AbStar, Mod, ModRot, AbKStar, Eq, Leq, Dyck, EvenAb, LEpsilon, UnaryPoint };
  Id id = Id::Eq;
  int param = 0;

  /// "POW_r", "MOD(3)", "AB_K_STAR(2)", ...
  std::string to_string() const;
  /// Accepts the to_string() spelling, case-insensitively, plus "MOD:3" / "mod 3" forms.
  static std::optional<ExampleName> parse(std::string_view text);
};

/// The concrete example machines. Throws BuilderError for parameters
/// outside the construction's range.
MachineSpec example(const ExampleName& name);

}  // namespace hvalab
