#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hvalab/builders.hpp"
#include "hvalab/machine.hpp"
#include "hvalab/simulate.hpp"

namespace hvalab {

using Membership = std::function<bool(std::string_view)>;

/// A named language with a pure membership predicate. Strings with symbols
/// outside the alphabet are not members.
struct ReferenceLanguage {
  std::string name;
  std::vector<Symbol> alphabet;
  Membership membership;

  bool contains(std::string_view w) const;

  /// "EQ", "AB_STAR", "MOD:3", "MOD(3)", "AB_K_STAR:2", "UNARY_POINT:4",
  /// "MOD23", "POW_r", "NEQ", "L_EPSILON", ... or a finite set "{12,21}".
  /// Names are case-insensitive.
  static std::optional<ReferenceLanguage> named(std::string_view text);
  static ReferenceLanguage finite(const std::set<std::string>& words, std::vector<Symbol> alphabet = {});
};

/// The language each example machine is meant to recognize.
ReferenceLanguage reference_for(const ExampleName& name);

/// All strings of length <= maxlen in length-lexicographic order (symbols
/// ordered by their character code).
std::vector<std::string> enumerate_strings(std::vector<Symbol> alphabet, std::size_t maxlen);

/// Accepted strings of length <= maxlen, length-lexicographic. Throws
/// UndecidedError when a membership query runs out of budget.
std::vector<std::string> enumerate_accepted(const MachineSpec& spec, std::size_t maxlen,
                                            const SearchBudget& budget = {});

struct EquivalenceVerdict {
  bool equal = true;
  std::optional<std::string> counterexample;
  std::size_t bound = 0;
};

/// Throws AlphabetError when the alphabets differ as sets.
EquivalenceVerdict equivalent_up_to(const MachineSpec& a, const MachineSpec& b, std::size_t maxlen,
                                    const SearchBudget& budget = {});
EquivalenceVerdict matches_reference(const MachineSpec& spec, const ReferenceLanguage& ref, std::size_t maxlen,
                                     const SearchBudget& budget = {});
EquivalenceVerdict agree_up_to(const Membership& a, const Membership& b, const std::vector<Symbol>& alphabet,
                               std::size_t maxlen);

struct PropertyResult {
  enum class Status { Ok, Counterexample, NotApplicable };
  Status status = Status::Ok;
  /// Counterexample strings in the order named by each check.
  std::vector<std::string> witnesses;
  std::string note;

  bool ok() const { return status == Status::Ok; }
};

std::string_view to_string(PropertyResult::Status s);

/// uv accepted for all accepted u, v with |uv| <= maxlen, and eps accepted.
/// Witnesses: u, v, uv.
PropertyResult check_star_closure(const MachineSpec& spec, std::size_t maxlen, const SearchBudget& budget = {});
PropertyResult check_star_closure(const Membership& accepts, const std::vector<Symbol>& alphabet, std::size_t maxlen);

/// w1 and w1w2 accepted imply w2 accepted. Witnesses: w1, w1w2, w2.
PropertyResult check_suffix_property(const MachineSpec& spec, std::size_t maxlen);
PropertyResult check_suffix_property(const Membership& accepts, const std::vector<Symbol>& alphabet,
                                     std::size_t maxlen);

/// Unary: a^i and a^j accepted (0 < i < j <= maxlen) imply a^gcd(i,j)
/// accepted. Witnesses: a^i, a^j, a^gcd.
PropertyResult check_gcd_property(const MachineSpec& spec, std::size_t maxlen);
PropertyResult check_gcd_property(const Membership& accepts, Symbol letter, std::size_t maxlen);

/// NotApplicable unless the machine is a stateless blind HVA whose matrices
/// pairwise commute; then the bounded accepted set must be closed under
/// permutation (witnesses: w, w') and reversal (witnesses: w, w^r).
PropertyResult check_commutative_matrices(const MachineSpec& spec, std::size_t maxlen,
                                          const SearchBudget& budget = {});

}  // namespace hvalab
