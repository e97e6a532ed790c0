#include "hvalab/diophantine.hpp"

#include <algorithm>
#include <map>

#include "hvalab/error.hpp"
#include "hvalab/primes.hpp"

namespace hvalab {

namespace {

std::size_t symbol_index(Symbol c, const std::vector<Symbol>& alphabet) {
  const auto it = std::find(alphabet.begin(), alphabet.end(), c);
  if (it == alphabet.end()) throw AlphabetError(std::string("symbol '") + c + "' is not in the alphabet");
  return static_cast<std::size_t>(it - alphabet.begin());
}

}  // namespace

DiophantineSystem DiophantineSystem::canonical() const {
  DiophantineSystem out{{}, alphabet};
  for (const auto& row : coefficients)
    if (std::any_of(row.begin(), row.end(), [](long a) { return a != 0; })) out.coefficients.push_back(row);
  return out;
}

ParikhVector parikh(std::string_view w, const std::vector<Symbol>& alphabet) {
  ParikhVector counts(alphabet.size(), 0);
  for (char c : w) ++counts[symbol_index(c, alphabet)];
  return counts;
}

MachineSpec famw_from_system(const DiophantineSystem& sys) {
  const std::size_t n = sys.alphabet.size();
  for (const auto& row : sys.coefficients)
    if (row.size() != n)
      throw ShapeError("system row has " + std::to_string(row.size()) + " coefficients, alphabet has " +
                       std::to_string(n) + " symbols");

  MachineSpec s;
  s.kind = Kind::FAM;
  s.mode = Mode::Deterministic;
  s.blind = true;
  s.endmarker = false;
  s.realtime = true;
  s.alphabet = sys.alphabet;
  s.states = {"q"};
  s.accept_states = {0};
  s.dimension = 1;
  s.initial_vector = RowVector{1};
  for (std::size_t i = 0; i < n; ++i) {
    Rational m = 1;
    for (std::size_t j = 0; j < sys.coefficients.size(); ++j)
      m *= Rational(static_cast<long>(nth_prime(j))).pow(sys.coefficients[j][i]);
    s.transitions.push_back(TransitionRule{0, Input::of(sys.alphabet[i]), StatusPattern::wildcard(), 0, Matrix::scalar(m)});
  }
  return s;
}

DiophantineSystem system_from_famw(const MachineSpec& famw) {
  if (famw.kind != Kind::FAM) throw UnsupportedKindError("system_from_famw needs a FAM, got " + std::string(to_string(famw.kind)));
  if (!famw.is_stateless() || famw.mode != Mode::Deterministic || !famw.blind || famw.endmarker)
    throw UnsupportedKindError("system_from_famw needs a stateless deterministic blind FAM without end-marker");

  std::vector<std::map<unsigned long, long>> exponents(famw.alphabet.size());
  std::vector<bool> seen(famw.alphabet.size(), false);
  for (const auto& rule : famw.transitions) {
    if (rule.input.type != Input::Type::Symbol)
      throw UnsupportedKindError("system_from_famw: only letter moves are allowed");
    const std::size_t i = symbol_index(rule.input.symbol, famw.alphabet);
    const Rational& m = rule.matrix()(0, 0);
    if (m.sign() <= 0) throw DomainError("multiplier " + m.to_string() + " is not positive");
    exponents[i] = prime_exponents(m);
    seen[i] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) throw DomainError(std::string("no move on '") + famw.alphabet[i] + "'");

  std::set<unsigned long> primes;
  for (const auto& e : exponents)
    for (const auto& [p, _] : e) primes.insert(p);

  DiophantineSystem sys{{}, famw.alphabet};
  for (unsigned long p : primes) {
    std::vector<long> row;
    for (const auto& e : exponents) {
      const auto it = e.find(p);
      row.push_back(it == e.end() ? 0 : it->second);
    }
    sys.coefficients.push_back(std::move(row));
  }
  return sys;
}

bool solves(const DiophantineSystem& sys, const ParikhVector& x) {
  for (const auto& row : sys.coefficients) {
    long sum = 0;
    for (std::size_t i = 0; i < row.size(); ++i) sum += row[i] * static_cast<long>(x[i]);
    if (sum != 0) return false;
  }
  return true;
}

std::set<ParikhVector> solutions_up_to(const DiophantineSystem& sys, std::size_t bound) {
  std::set<ParikhVector> out;
  ParikhVector x(sys.alphabet.size(), 0);
  while (true) {
    if (solves(sys, x)) out.insert(x);
    std::size_t i = 0;
    while (i < x.size() && x[i] == bound) x[i++] = 0;
    if (i == x.size()) break;
    ++x[i];
  }
  return out;
}

std::optional<std::pair<std::string, std::string>> check_commutative(const Membership& accepts,
                                                                     const std::vector<Symbol>& alphabet,
                                                                     std::size_t bound) {
  std::map<ParikhVector, std::pair<std::string, bool>> first;
  std::vector<std::string> layer{""};
  for (std::size_t len = 0; len <= bound; ++len) {
    for (const auto& w : layer) {
      const bool a = accepts(w);
      const auto [it, fresh] = first.try_emplace(parikh(w, alphabet), w, a);
      if (!fresh && it->second.second != a) return std::pair{it->second.first, w};
    }
    if (len == bound) break;
    std::vector<std::string> next;
    next.reserve(layer.size() * alphabet.size());
    for (const auto& w : layer)
      for (Symbol c : alphabet) next.push_back(w + c);
    layer = std::move(next);
  }
  return std::nullopt;
}

}  // namespace hvalab
