#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hvalab/machine.hpp"

namespace hvalab {

/// Homogeneous system coefficients * x = 0; column i belongs to alphabet[i].
struct DiophantineSystem {
  std::vector<std::vector<long>> coefficients;
  std::vector<Symbol> alphabet;

  std::size_t equations() const { return coefficients.size(); }
  /// Same solution set with all-zero rows dropped.
  DiophantineSystem canonical() const;

  friend bool operator==(const DiophantineSystem&, const DiophantineSystem&) = default;
};

using ParikhVector = std::vector<std::size_t>;

ParikhVector parikh(std::string_view w, const std::vector<Symbol>& alphabet);

/// Stateless deterministic blind FAM: symbol i multiplies by prod_j p_j^{a_ji}.
MachineSpec famw_from_system(const DiophantineSystem& sys);

/// Factorizes the multipliers back into exponent rows, one per prime in the
/// sorted union of their prime factors.
DiophantineSystem system_from_famw(const MachineSpec& famw);

/// Every nonnegative solution with all components <= bound.
std::set<ParikhVector> solutions_up_to(const DiophantineSystem& sys, std::size_t bound);

bool solves(const DiophantineSystem& sys, const ParikhVector& x);

using Membership = std::function<bool(std::string_view)>;

/// First (w, w') with |w| <= bound, w' a permutation of w, and differing
/// membership; nullopt when there is none.
std::optional<std::pair<std::string, std::string>> check_commutative(const Membership& accepts,
                                                                     const std::vector<Symbol>& alphabet,
                                                                     std::size_t bound);

}  // namespace hvalab
